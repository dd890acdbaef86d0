#include "ornet/cli.hpp"

#include <cstdio>
#include <future>
#include <ostream>
#include <vector>

#include "ornet/analysis.hpp"
#include "ornet/sim.hpp"

namespace ornet::cli {

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

namespace {

std::string fmt(double v) { return format_double(v); }

}  // namespace

int cmd_analyze(const NetworkConfig& config, std::ostream& out,
                std::ostream& err) {
  SteadyStateReport r;
  try {
    r = analyze(config);
  } catch (const UnstableError& e) {
    err << "unstable: " << e.what() << " (psi1=" << e.psi1
        << ", psi2=" << e.psi2 << ")\n";
    return 2;
  }
  out << "p1,p2,p3,p4,psi1,psi2,b1,b2,q1,q2,pr_b1_ge,pr_b2_ge,op,throughput\n";
  out << fmt(r.dist.p[0]) << ',' << fmt(r.dist.p[1]) << ','
      << fmt(r.dist.p[2]) << ',' << fmt(r.dist.p[3]) << ','
      << fmt(r.stab.psi1) << ',' << fmt(r.stab.psi2) << ',' << fmt(r.stab.b1)
      << ',' << fmt(r.stab.b2) << ',' << fmt(r.pdf1.q) << ',' << fmt(r.pdf2.q)
      << ',' << fmt(r.pr_b1_ge) << ',' << fmt(r.pr_b2_ge) << ',' << fmt(r.op)
      << ',' << fmt(r.throughput) << '\n';
  return 0;
}

int cmd_simulate(const NetworkConfig& config, const RunOptions& run_opts,
                 std::ostream& out) {
  const SimStats s = run(config, run_opts.seed, run_opts.slots,
                         run_opts.warmup);
  out << "n_slots,delivered,p1_sim,p2_sim,p3_sim,p4_sim,pr_b1_ge_sim,"
         "pr_b2_ge_sim,op_sim,throughput_sim\n";
  out << s.n_slots << ',' << s.delivered << ',' << fmt(s.cbn_freq[0]) << ','
      << fmt(s.cbn_freq[1]) << ',' << fmt(s.cbn_freq[2]) << ','
      << fmt(s.cbn_freq[3]) << ',' << fmt(s.pr_b1_ge_emp) << ','
      << fmt(s.pr_b2_ge_emp) << ',' << fmt(s.op_emp) << ','
      << fmt(s.throughput_emp) << '\n';
  return 0;
}

int cmd_compare(const NetworkConfig& config, const RunOptions& run_opts,
                std::ostream& out) {
  bool stable = true;
  SteadyStateReport r;
  try {
    r = analyze(config);
  } catch (const UnstableError&) {
    stable = false;
  }
  const SimStats s = run(config, run_opts.seed, run_opts.slots,
                         run_opts.warmup);

  out << "quantity,theory,sim,abs_diff,stderr\n";
  const auto row = [&](const char* name, double theory, double sim,
                       double se) {
    out << name << ',';
    if (stable)
      out << fmt(theory) << ',' << fmt(sim) << ','
          << fmt(std::abs(theory - sim)) << ',' << fmt(se) << '\n';
    else
      out << ',' << fmt(sim) << ",," << fmt(se) << '\n';
  };
  const char* names[4] = {"p1", "p2", "p3", "p4"};
  for (int i = 0; i < 4; ++i)
    row(names[i], r.dist.p[i], s.cbn_freq[i], s.cbn_freq_se[i]);
  row("pr_b1_ge", r.pr_b1_ge, s.pr_b1_ge_emp, s.pr_b1_ge_se);
  row("pr_b2_ge", r.pr_b2_ge, s.pr_b2_ge_emp, s.pr_b2_ge_se);
  row("op", r.op, s.op_emp, s.op_se);
  row("throughput", r.throughput, s.throughput_emp, s.throughput_se);
  return 0;
}

int cmd_sweep(const SweepSpec& spec, const RunOptions& run_opts,
              std::ostream& out) {
  struct PointResult {
    double value = 0.0;
    bool stable = false;
    SteadyStateReport theory;
    SimStats sim;
  };
  const int n = spec.point_count();
  std::vector<std::future<PointResult>> futures;
  futures.reserve(n);
  for (int i = 0; i < n; ++i) {
    futures.push_back(std::async(std::launch::async, [&spec, &run_opts, i] {
      PointResult p;
      p.value = spec.value_at(i);
      const NetworkConfig config = apply_sweep_value(spec, p.value);
      try {
        p.theory = analyze(config);
        p.stable = true;
      } catch (const UnstableError&) {
        p.stable = false;
      }
      p.sim = run(config, run_opts.seed + static_cast<std::uint64_t>(i),
                  run_opts.slots, run_opts.warmup);
      return p;
    }));
  }

  out << "swept_param,value,op_theory,op_sim,thr_theory,thr_sim,p1_theory,"
         "p2_theory,p3_theory,p4_theory,psi1,psi2,stable_flag\n";
  for (auto& f : futures) {
    const PointResult p = f.get();
    out << spec.param << ',' << fmt(p.value) << ',';
    if (p.stable)
      out << fmt(p.theory.op) << ',' << fmt(p.sim.op_emp) << ','
          << fmt(p.theory.throughput) << ',' << fmt(p.sim.throughput_emp)
          << ',' << fmt(p.theory.dist.p[0]) << ',' << fmt(p.theory.dist.p[1])
          << ',' << fmt(p.theory.dist.p[2]) << ',' << fmt(p.theory.dist.p[3])
          << ',' << fmt(p.theory.stab.psi1) << ',' << fmt(p.theory.stab.psi2)
          << ",true\n";
    else
      out << ',' << fmt(p.sim.op_emp) << ",," << fmt(p.sim.throughput_emp)
          << ",,,,,,,false\n";
  }
  return 0;
}

int cmd_pdf(const NetworkConfig& config, int relay,
            const RunOptions& run_opts, std::ostream& out,
            std::ostream& err) {
  SteadyStateReport r;
  try {
    r = analyze(config);
  } catch (const UnstableError& e) {
    err << "unstable: " << e.what() << '\n';
    return 2;
  }
  const LimitingPdf& pdf = relay == 1 ? r.pdf1 : r.pdf2;
  const SimStats s = run(config, run_opts.seed, run_opts.slots,
                         run_opts.warmup);
  const Histogram& hist = relay == 1 ? s.buffer1_hist : s.buffer2_hist;

  out << "x,g_theory,g_empirical\n";
  for (std::size_t i = 0; i < hist.bins.size(); ++i) {
    const double x = static_cast<double>(i) * hist.bin_width;
    out << fmt(x) << ',' << fmt(pdf(x)) << ',' << fmt(hist.density(i))
        << '\n';
  }
  return 0;
}

int cmd_optimal_rate(const NetworkConfig& config, double r0_start,
                     double r0_stop, double r0_step, std::ostream& out,
                     std::ostream& err) {
  OptimalRate best;
  try {
    best = optimal_rate(config, r0_start, r0_stop, r0_step);
  } catch (const UnstableError& e) {
    err << "unstable: " << e.what() << '\n';
    return 2;
  }
  out << "r0_star,pi_max,at_boundary,stable_points\n";
  out << fmt(best.r0_star) << ',' << fmt(best.pi_max) << ','
      << (best.at_boundary ? "true" : "false") << ',' << best.stable_points
      << '\n';
  return 0;
}

}  // namespace ornet::cli
