// Command-line front end over the qsd C API: solves user ensembles and
// regenerates the library's reference figures as CSV data.

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <memory>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "qsd.h"

namespace {

constexpr int kExitInputError = 2;
constexpr int kExitNotConverged = 3;

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

[[noreturn]] void die_input(const std::string& context, qsd_status status) {
  std::cerr << "error: " << context << ": " << qsd_status_name(status);
  if (qsd_last_error()[0] != '\0')
    std::cerr << " (" << qsd_last_error() << ")";
  std::cerr << "\n";
  std::exit(kExitInputError);
}

void check(qsd_status status, const std::string& context) {
  if (status != QSD_OK) die_input(context, status);
}

class Output {
 public:
  explicit Output(const std::string& path) {
    if (path != "-") {
      file_.open(path);
      if (!file_) {
        std::cerr << "error: cannot open '" << path << "' for writing\n";
        std::exit(kExitInputError);
      }
    }
  }
  std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

 private:
  std::ofstream file_;
};

struct EnsembleDeleter {
  void operator()(qsd_ensemble* e) const { qsd_ensemble_free(e); }
};
struct ResultDeleter {
  void operator()(qsd_result* r) const { qsd_result_free(r); }
};
using EnsemblePtr = std::unique_ptr<qsd_ensemble, EnsembleDeleter>;
using ResultPtr = std::unique_ptr<qsd_result, ResultDeleter>;

std::string join_indices(const int* idx, int count) {
  std::string s;
  for (int i = 0; i < count; ++i) {
    if (i) s += ' ';
    s += std::to_string(idx[i]);
  }
  return s;
}

void run_rows(int rows, int threads, const std::function<void(int)>& fill) {
  if (threads <= 0)
    threads = static_cast<int>(std::thread::hardware_concurrency());
  threads = std::max(1, std::min(threads, rows));
  std::vector<std::thread> pool;
  auto worker = [&](int t) {
    for (int r = t; r < rows; r += threads) fill(r);
  };
  for (int t = 1; t < threads; ++t) pool.emplace_back(worker, t);
  worker(0);
  for (std::thread& th : pool) th.join();
}

std::string bounds_csv(const qsd_bounds_report& b) {
  auto row = [](const char* name, double value, int ok) {
    return std::string(name) + "," + (ok ? fmt(value) : std::string()) + "," +
           (ok ? "1" : "0") + "\n";
  };
  std::string out = "name,value,applicable\n";
  out += row("pgm_renes", b.pgm_renes, b.pgm_renes_ok);
  out += row("pgm_renes_pruned", b.pgm_renes_pruned, b.pgm_renes_pruned_ok);
  out += row("fidelity", b.fidelity, b.fidelity_ok);
  out += row("fidelity_pruned", b.fidelity_pruned, b.fidelity_pruned_ok);
  out += row("sqrt_sum", b.sqrt_sum, b.sqrt_sum_ok);
  out += row("sqrt_sum_pruned", b.sqrt_sum_pruned, b.sqrt_sum_pruned_ok);
  out += row("trace_norm", b.trace_norm, b.trace_norm_ok);
  out += row("trace_norm_pruned", b.trace_norm_pruned,
             b.trace_norm_pruned_ok);
  out += row("lower_sqrt_sum", b.lower_sqrt_sum, b.lower_sqrt_sum_ok);
  return out;
}

int cmd_discriminate(const std::string& ensemble_path, double tol,
                     long max_iter, const std::string& out_path) {
  qsd_ensemble* raw = nullptr;
  check(qsd_ensemble_read(ensemble_path.c_str(), &raw),
        "reading '" + ensemble_path + "'");
  EnsemblePtr ens(raw);
  const int n = qsd_ensemble_count(ens.get());
  const int d = qsd_ensemble_dim(ens.get());

  qsd_result* raw_res = nullptr;
  qsd_status solve_status = qsd_solve(ens.get(), tol, max_iter, &raw_res);
  if (solve_status != QSD_OK && solve_status != QSD_ERROR_NOT_CONVERGED)
    die_input("solving", solve_status);
  ResultPtr res(raw_res);

  std::vector<int> support(static_cast<size_t>(n));
  int support_count = 0;
  check(qsd_result_support(res.get(), 0.0, support.data(), &support_count),
        "extracting support");

  qsd_bounds_report bounds;
  check(qsd_bounds(ens.get(), support.data(), support_count, &bounds),
        "evaluating bounds");

  Output output(out_path);
  std::ostream& os = output.stream();
  os << "# qsd discrimination result\n";
  os << "converged " << qsd_result_converged(res.get()) << "\n";
  os << "iterations " << qsd_result_iterations(res.get()) << "\n";
  os << "p_success " << fmt(qsd_result_success_probability(res.get()))
     << "\n";
  os << "upper_bound " << fmt(qsd_result_upper_bound(res.get())) << "\n";
  os << "gap " << fmt(qsd_result_gap(res.get())) << "\n";
  os << "support " << join_indices(support.data(), support_count) << "\n";
  os << "ambiguous_operators " << qsd_result_ambiguous_count(res.get())
     << "\n";
  os << "povm\n";
  os << "dim " << d << "\n";
  os << "n " << n << "\n";
  std::vector<double> buf(static_cast<size_t>(2 * d * d));
  for (int i = 0; i < n; ++i) {
    check(qsd_result_operator(res.get(), i, buf.data()), "reading operator");
    os << "operator " << i << "\n";
    for (int r = 0; r < d; ++r) {
      for (int c = 0; c < d; ++c) {
        size_t k = static_cast<size_t>(2 * (r * d + c));
        if (c) os << "  ";
        os << fmt(buf[k]) << " " << fmt(buf[k + 1]);
      }
      os << "\n";
    }
  }
  os << "bounds\n" << bounds_csv(bounds);

  if (!qsd_result_converged(res.get())) {
    std::cerr << "warning: gap " << fmt(qsd_result_gap(res.get()))
              << " above tolerance; output is the best certified iterate\n";
    return kExitNotConverged;
  }
  return 0;
}

int cmd_fig1(double alpha_min, double alpha_max, int steps, double tol,
             const std::string& out_path) {
  if (alpha_min < 0.5 || alpha_max > 1.0 || alpha_min > alpha_max) {
    std::cerr << "error: alpha range must lie inside [0.5, 1]\n";
    return kExitInputError;
  }
  Output output(out_path);
  std::ostream& os = output.stream();
  os << "alpha,closed_form,solver,abs_diff\n";
  double worst = 0.0;
  for (int i = 0; i < steps; ++i) {
    double alpha = steps == 1 ? alpha_min
                              : alpha_min + (alpha_max - alpha_min) * i /
                                                (steps - 1);
    double closed = 0.0;
    check(qsd_equidistant_popt(alpha, &closed), "closed form");
    qsd_ensemble* raw = nullptr;
    check(qsd_ensemble_equidistant_triple(alpha, &raw), "building ensemble");
    EnsemblePtr ens(raw);
    qsd_result* raw_res = nullptr;
    qsd_status st = qsd_solve(ens.get(), tol, 0, &raw_res);
    ResultPtr res(raw_res);
    if (st != QSD_OK && st != QSD_ERROR_NOT_CONVERGED)
      die_input("solving", st);
    double solved = qsd_result_success_probability(res.get());
    double diff = std::abs(solved - closed);
    worst = std::max(worst, diff);
    os << fmt(alpha) << "," << fmt(closed) << "," << fmt(solved) << ","
       << fmt(diff) << "\n";
  }
  std::cerr << "max discrepancy: " << fmt(worst) << "\n";
  return 0;
}

int cmd_fig2(int grid, int threads, const std::string& out_path) {
  std::vector<std::string> rows(static_cast<size_t>(grid) * grid);
  run_rows(grid, threads, [&](int i) {
    double theta = (i + 0.5) * (M_PI / 2.0) / grid;
    for (int j = 0; j < grid; ++j) {
      double p = (j + 0.5) * 0.5 / grid;
      int in_region = 0;
      check(qsd_mirror_region_condition(p, theta, &in_region), "condition");
      int pruned_tighter = 0;
      const char* region = "none";
      if (in_region) {
        double ppgm = 0.0, lhs = 0.0, rhs = 0.0;
        check(qsd_mirror_pgm_success(p, theta, &ppgm), "pgm closed form");
        check(qsd_bound_renes(ppgm, 3, &lhs), "pgm bound");
        qsd_ensemble* raw = nullptr;
        check(qsd_ensemble_mirror_symmetric(p, theta, &raw), "ensemble");
        EnsemblePtr ens(raw);
        const int first_two[2] = {0, 1};
        check(qsd_bound_renes_pruned(ens.get(), first_two, 2, &rhs),
              "pruned bound");
        pruned_tighter = lhs >= rhs - 1e-12 ? 1 : 0;
        region = pruned_tighter ? "black" : "red";
      }
      char buf[128];
      std::snprintf(buf, sizeof(buf), "%.17g,%.17g,%d,%d,%s\n", theta, p,
                    in_region, pruned_tighter, region);
      rows[static_cast<size_t>(i) * grid + j] = buf;
    }
  });
  Output output(out_path);
  std::ostream& os = output.stream();
  os << "theta,p,region_condition,pruned_tighter,classification\n";
  for (const std::string& row : rows) os << row;
  return 0;
}

int cmd_fig3(int grid, int threads, const std::string& out_path) {
  // psi1 and psi2 sit at Bloch (1,0,0) and (0,1,0); psi3 sweeps the sphere.
  std::vector<std::string> rows(static_cast<size_t>(grid) * grid);
  run_rows(grid, threads, [&](int a) {
    double polar = (a + 0.5) * M_PI / grid;
    for (int b = 0; b < grid; ++b) {
      double azimuth = (b + 0.5) * 2.0 * M_PI / grid;
      double bx = std::sin(polar) * std::cos(azimuth);
      double by = std::sin(polar) * std::sin(azimuth);
      double bz = std::cos(polar);
      const double priors[3] = {1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0};
      const double bloch[9] = {1, 0, 0, 0, 1, 0, bx, by, bz};
      qsd_ensemble* raw = nullptr;
      check(qsd_ensemble_create_pure_qubits(3, priors, bloch, &raw),
            "ensemble");
      EnsemblePtr ens(raw);

      double f12 = 0.0, f13 = 0.0, f23 = 0.0;
      check(qsd_ensemble_fidelity(ens.get(), 0, 1, 1, &f12), "fidelity");
      check(qsd_ensemble_fidelity(ens.get(), 0, 2, 1, &f13), "fidelity");
      check(qsd_ensemble_fidelity(ens.get(), 1, 2, 1, &f23), "fidelity");

      qsd_result* raw_res = nullptr;
      qsd_status st = qsd_solve(ens.get(), 1e-12, 300000, &raw_res);
      ResultPtr res(raw_res);
      if (st != QSD_OK && st != QSD_ERROR_NOT_CONVERGED)
        die_input("solving", st);
      int members[3] = {0, 0, 0};
      int count = 0;
      check(qsd_result_support(res.get(), 0.0, members, &count), "support");

      bool is_g = count == 2 && members[0] == 0 && members[1] == 1;
      bool min_overlap = f12 <= f13 + 1e-12 && f12 <= f23 + 1e-12;
      const char* region = is_g ? "G" : (min_overlap ? "B" : "R");

      double ppgm = 0.0;
      check(qsd_pgm_success(ens.get(), &ppgm), "pgm");
      double rhs = (std::sqrt(1.0 - f12 * f12) + 2.0) / 6.0;
      int pruned_tighter = ppgm >= rhs - 1e-12 ? 1 : 0;

      char buf[192];
      std::snprintf(buf, sizeof(buf),
                    "%.17g,%.17g,%.17g,%.17g,%.17g,%s,%d\n", polar, azimuth,
                    bx, by, bz, region, pruned_tighter);
      rows[static_cast<size_t>(a) * grid + b] = buf;
    }
  });
  Output output(out_path);
  std::ostream& os = output.stream();
  os << "polar,azimuth,bloch_x,bloch_y,bloch_z,region,pruned_tighter\n";
  for (const std::string& row : rows) os << row;
  return 0;
}

int cmd_fig4(long instances, std::uint64_t seed, int threads,
             const std::string& out_path, const std::string& log_path) {
  qsd_coincidence_stats stats;
  check(qsd_coincidence_experiment(instances, 3, 2, seed, threads, &stats),
        "experiment");
  Output output(out_path);
  std::ostream& os = output.stream();
  os << "metric,value,ci_lo,ci_hi\n";
  os << "subset_match," << fmt(stats.subset_match_rate) << ","
     << fmt(stats.subset_match_lo) << "," << fmt(stats.subset_match_hi)
     << "\n";
  os << "superset_match," << fmt(stats.superset_match_rate) << ","
     << fmt(stats.superset_match_lo) << "," << fmt(stats.superset_match_hi)
     << "\n";
  os << "coincide," << fmt(stats.coincide_rate) << ","
     << fmt(stats.coincide_lo) << "," << fmt(stats.coincide_hi) << "\n";
  os << "instances," << stats.instances << ",,\n";
  os << "ambiguous_instances," << stats.ambiguous_instances << ",,\n";
  os << "soundness_violations," << stats.soundness_violations << ",,\n";

  if (!log_path.empty()) {
    // Second pass over the same deterministic instance stream.
    std::ofstream log(log_path);
    if (!log) {
      std::cerr << "error: cannot open '" << log_path << "' for writing\n";
      return kExitInputError;
    }
    log << "instance,subset,exact,superset,ambiguous,coincide\n";
    for (long k = 0; k < instances; ++k) {
      qsd_ensemble* raw = nullptr;
      check(qsd_ensemble_sample(3, 2, seed, static_cast<std::uint64_t>(k),
                                &raw),
            "sampling");
      EnsemblePtr ens(raw);
      int sub[3], sup[3], exact[3];
      int nsub = 0, nsup = 0, nexact = 0;
      check(qsd_support_subset(ens.get(), sub, &nsub), "subset");
      check(qsd_support_superset(ens.get(), nullptr, sup, &nsup), "superset");
      qsd_result* raw_res = nullptr;
      qsd_status st = qsd_solve(ens.get(), 1e-12, 300000, &raw_res);
      ResultPtr res(raw_res);
      if (st != QSD_OK && st != QSD_ERROR_NOT_CONVERGED)
        die_input("solving", st);
      check(qsd_result_support(res.get(), 0.0, exact, &nexact), "support");
      bool coincide = nsub == nsup &&
                      std::equal(sub, sub + nsub, sup);
      log << k << "," << join_indices(sub, nsub) << ","
          << join_indices(exact, nexact) << "," << join_indices(sup, nsup)
          << "," << qsd_result_ambiguous_count(res.get()) << ","
          << (coincide ? 1 : 0) << "\n";
    }
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"minimum-error quantum state discrimination toolkit"};
  app.require_subcommand(1);

  std::string ensemble_path, out_path = "-", log_path;
  double tol = 1e-8;
  long max_iter = 100000;
  double alpha_min = 0.5, alpha_max = 1.0;
  int steps = 51, grid = 400, fig3_grid = 48, threads = 0;
  long instances = 10000;
  std::uint64_t seed = 1;

  CLI::App* discriminate =
      app.add_subcommand("discriminate", "solve one ensemble file");
  discriminate->add_option("--ensemble", ensemble_path, "ensemble file")
      ->required();
  discriminate->add_option("--tol", tol, "certified gap tolerance");
  discriminate->add_option("--max-iter", max_iter, "iteration limit");
  discriminate->add_option("--out", out_path, "output path or -");

  CLI::App* fig1 = app.add_subcommand(
      "fig1", "optimal success probability of the equidistant triple");
  fig1->add_option("--alpha-min", alpha_min, "first alpha");
  fig1->add_option("--alpha-max", alpha_max, "last alpha");
  fig1->add_option("--steps", steps, "number of alpha values");
  fig1->add_option("--tol", tol, "solver tolerance");
  fig1->add_option("--out", out_path, "output path or -");

  CLI::App* fig2 = app.add_subcommand(
      "fig2", "mirror-symmetric bound comparison over the (theta, p) plane");
  fig2->add_option("--grid", grid, "cells per axis");
  fig2->add_option("--threads", threads, "worker threads (0 = all)");
  fig2->add_option("--out", out_path, "output path or -");

  CLI::App* fig3 = app.add_subcommand(
      "fig3", "support regions over the Bloch sphere of the third state");
  fig3->add_option("--grid", fig3_grid, "cells per axis");
  fig3->add_option("--threads", threads, "worker threads (0 = all)");
  fig3->add_option("--out", out_path, "output path or -");

  CLI::App* fig4 = app.add_subcommand(
      "fig4", "subset/superset coincidence Monte Carlo experiment");
  fig4->add_option("--instances", instances, "number of sampled problems");
  fig4->add_option("--seed", seed, "random seed");
  fig4->add_option("--threads", threads, "worker threads (0 = all)");
  fig4->add_option("--out", out_path, "output path or -");
  fig4->add_option("--log", log_path, "optional per-instance CSV");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInputError;
  }

  if (app.got_subcommand(discriminate))
    return cmd_discriminate(ensemble_path, tol, max_iter, out_path);
  if (app.got_subcommand(fig1))
    return cmd_fig1(alpha_min, alpha_max, steps, tol, out_path);
  if (app.got_subcommand(fig2)) return cmd_fig2(grid, threads, out_path);
  if (app.got_subcommand(fig3)) return cmd_fig3(fig3_grid, threads, out_path);
  if (app.got_subcommand(fig4))
    return cmd_fig4(instances, seed, threads, out_path, log_path);
  return kExitInputError;
}
