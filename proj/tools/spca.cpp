// Command-line front end: ingestion, solving, candidate dumps, rank-2 cell
// data, and benchmarking. All user-facing indices are 1-based.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "spca/core.hpp"
#include "spca/enumerate.hpp"
#include "spca/geometry.hpp"
#include "spca/io.hpp"
#include "spca/oracle.hpp"
#include "spca/rank1.hpp"
#include "spca/scoring.hpp"

using nlohmann::ordered_json;
using namespace spca;

namespace {

double elapsed_ms(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double, std::milli>(
             std::chrono::steady_clock::now() - start)
      .count();
}

struct InputArgs {
  std::string input;
  bool factor = false;
  int k = 1;
  std::string sigma = "auto";
  double rank_tol = 1e-9;
  double perturb = 0.0;
};

void add_input_flags(CLI::App* cmd, InputArgs& args, bool with_k = true) {
  cmd->add_option("--input", args.input, "matrix file (CSV or MatrixMarket)")
      ->required();
  cmd->add_flag("--factor", args.factor,
                "treat the input as the factor V rather than C");
  if (with_k) {
    cmd->add_option("--k", args.k, "sparsity budget K")->required();
  }
  cmd->add_option("--sigma", args.sigma,
                  "identity-shift: 'auto' or a real value");
  cmd->add_option("--rank-tol", args.rank_tol,
                  "relative eigenvalue tolerance for rank detection");
  cmd->add_option("--perturb", args.perturb,
                  "seeded jitter magnitude (relative to ||V||_F)");
}

LowRankInstance load_instance(const InputArgs& args) {
  const Matrix m = read_matrix_file(args.input);
  LowRankInstance inst;
  if (args.factor) {
    const double sigma =
        args.sigma == "auto" ? 0.0 : std::stod(args.sigma);
    inst = build_instance(m, sigma, args.k);
  } else if (args.sigma == "auto") {
    inst = extract_from_dense(m, args.k, args.rank_tol);
  } else {
    const double sigma = std::stod(args.sigma);
    inst = extract_from_dense(m, args.k, args.rank_tol, &sigma);
  }
  if (args.perturb != 0.0) {
    inst.v = perturb_factor(inst.v, args.perturb);
  }
  return inst;
}

void emit(const std::string& output, const std::string& text) {
  if (output.empty() || output == "-") {
    std::cout << text;
  } else {
    std::ofstream out(output);
    if (!out) throw ValidationError("cannot open output file: " + output);
    out << text;
  }
}

ordered_json solution_json(const LowRankInstance& inst,
                           const SparseSolution& sol, double wall_ms,
                           const std::string& method) {
  ordered_json doc;
  doc["n"] = inst.n();
  doc["d"] = inst.d();
  doc["k"] = inst.k;
  doc["sigma"] = inst.sigma;
  std::vector<int> support1;
  for (int i : sol.support) support1.push_back(i + 1);
  doc["support"] = support1;
  std::vector<double> x(sol.x.data(), sol.x.data() + sol.x.size());
  doc["x"] = x;
  doc["lambda"] = sol.lambda;
  doc["value"] = sol.value;
  doc["candidates_examined"] = sol.candidates_examined;
  doc["intersection_points"] = sol.intersection_points;
  doc["degenerate_skipped"] = sol.degenerate_skipped;
  doc["wall_time_ms"] = wall_ms;
  doc["method"] = method;
  return doc;
}

int run_solve(const InputArgs& input, const std::string& method_flag,
              bool extra_reductions, int threads, double oracle_cap,
              const std::string& output) {
  const auto start = std::chrono::steady_clock::now();
  const LowRankInstance inst = load_instance(input);

  std::string method = method_flag;
  if (method == "auto") {
    method = inst.d() == 1 ? "rank1" : (inst.d() == 2 ? "rank2" : "rankd");
  }
  if (method == "rank1" && inst.d() != 1) {
    throw ValidationError("--method rank1 requires a rank-1 instance");
  }
  if (method == "rank2" && inst.d() != 2) {
    throw ValidationError("--method rank2 requires a rank-2 instance");
  }

  SparseSolution sol;
  if (method == "oracle") {
    OracleOptions oopts;
    oopts.cap = oracle_cap;
    sol = solve_exhaustive(inst.v, inst.k, oopts);
    sol.value = inst.sigma + sol.lambda;
  } else {
    SolveOptions sopts;
    sopts.threads = threads;
    sopts.extra_reductions = extra_reductions;
    sol = solve(inst, sopts);
  }

  emit(output, solution_json(inst, sol, elapsed_ms(start), method).dump() + "\n");
  return 0;
}

int run_candidates(const InputArgs& input, bool extra_reductions, int threads,
                   const std::string& output) {
  const LowRankInstance inst = load_instance(input);
  EnumOptions opts;
  opts.threads = threads;
  opts.extra_reductions = extra_reductions;
  const CandidateFamily fam = enumerate_total(inst.v, inst.k, opts);

  std::ostringstream out;
  for (const Support& s : fam.supports) {
    ordered_json line = ordered_json::array();
    for (int i : s) line.push_back(i + 1);
    out << line.dump() << "\n";
  }
  ordered_json summary;
  summary["points_examined"] = fam.points_examined;
  summary["degenerate_skipped"] = fam.degenerate_skipped;
  summary["family_size"] = fam.supports.size();
  summary["bound"] = candidate_bound(inst.n(), inst.d());
  out << summary.dump() << "\n";
  emit(output, out.str());
  return 0;
}

int run_cells(const InputArgs& input, int samples, const std::string& output) {
  InputArgs args = input;
  args.k = 1;  // extraction needs a valid K; cells only uses V
  const LowRankInstance inst = load_instance(args);
  if (inst.d() != 2) {
    throw ValidationError("cells requires a rank-2 instance");
  }
  const Matrix& v = inst.v;
  const int n = inst.n();
  constexpr double pi = 3.141592653589793;

  std::ostringstream out;
  out.precision(17);
  out << "phi";
  for (int i = 0; i < n; ++i) out << ",row" << (i + 1);
  out << "\n";
  for (int m = 1; m <= samples; ++m) {
    const double phi = -pi / 2 + m * pi / samples;
    out << phi;
    for (int i = 0; i < n; ++i) {
      out << ',' << std::abs(v(i, 0) * std::sin(phi) + v(i, 1) * std::cos(phi));
    }
    out << "\n";
  }
  out << "\n";
  out << "phi,i,j,sign\n";
  for (const auto& rec : rank2_intersections(v)) {
    out << rec.phi << ',' << (rec.i + 1) << ',' << (rec.j + 1) << ','
        << rec.sign << "\n";
  }
  emit(output, out.str());
  return 0;
}

double fit_slope(const std::vector<double>& log_n,
                 const std::vector<double>& log_y) {
  const size_t m = log_n.size();
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (size_t i = 0; i < m; ++i) {
    sx += log_n[i];
    sy += log_y[i];
    sxx += log_n[i] * log_n[i];
    sxy += log_n[i] * log_y[i];
  }
  return (m * sxy - sx * sy) / (m * sxx - sx * sx);
}

int run_bench(const std::vector<int>& d_list, const std::vector<int>& n_list,
              double k_frac, int seeds, int threads,
              const std::string& output) {
  std::ostringstream out;
  out << "d,n,k,seed,wall_time_ms,points_examined,family_size,candidate_bound\n";
  std::ostringstream summary;
  summary << "\nd,time_slope,points_slope\n";

  for (int d : d_list) {
    std::vector<double> log_n, log_time, log_points;
    for (int n : n_list) {
      if (n < d) continue;
      const int k = std::max(1, static_cast<int>(std::lround(k_frac * n)));
      double mean_ms = 0, mean_points = 0;
      for (int seed = 0; seed < seeds; ++seed) {
        std::mt19937_64 gen(1000003ULL * seed + 131ULL * n + d);
        std::normal_distribution<double> dist(0.0, 1.0);
        Matrix v(n, d);
        for (int i = 0; i < n; ++i) {
          for (int j = 0; j < d; ++j) v(i, j) = dist(gen);
        }
        EnumOptions opts;
        opts.threads = threads;
        const auto start = std::chrono::steady_clock::now();
        const CandidateFamily fam = enumerate_total(v, k, opts);
        const double ms = elapsed_ms(start);
        out << d << ',' << n << ',' << k << ',' << seed << ',' << ms << ','
            << fam.points_examined << ',' << fam.supports.size() << ','
            << candidate_bound(n, d) << "\n";
        mean_ms += ms / seeds;
        mean_points += static_cast<double>(fam.points_examined) / seeds;
      }
      log_n.push_back(std::log(n));
      log_time.push_back(std::log(std::max(mean_ms, 1e-6)));
      log_points.push_back(std::log(mean_points));
    }
    if (log_n.size() >= 2) {
      summary << d << ',' << fit_slope(log_n, log_time) << ','
              << fit_slope(log_n, log_points) << "\n";
    }
  }
  emit(output, out.str() + summary.str());
  return 0;
}

int fail(const std::string& kind, const std::string& detail, int code) {
  ordered_json err;
  err["error"] = kind;
  err["detail"] = detail;
  std::cerr << err.dump() << "\n";
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact K-sparse principal component of C = sigma*I + V*V^T"};
  app.require_subcommand(1);
  const int hw_threads =
      std::max(1u, std::thread::hardware_concurrency());

  InputArgs input;
  std::string method = "auto";
  bool extra_reductions = false;
  int threads = hw_threads;
  double oracle_cap = 1e7;
  std::string output = "-";

  auto* solve_cmd = app.add_subcommand("solve", "compute the sparse PC");
  add_input_flags(solve_cmd, input);
  solve_cmd->add_option("--method", method)
      ->check(CLI::IsMember({"auto", "rank1", "rank2", "rankd", "oracle"}));
  solve_cmd->add_flag("--extra-reductions", extra_reductions);
  solve_cmd->add_option("--threads", threads);
  solve_cmd->add_option("--oracle-cap", oracle_cap);
  solve_cmd->add_option("--output", output);

  auto* oracle_cmd =
      app.add_subcommand("oracle", "brute-force reference solver");
  InputArgs oracle_input;
  int oracle_threads = hw_threads;
  double oracle_cap2 = 1e7;
  std::string oracle_output = "-";
  add_input_flags(oracle_cmd, oracle_input);
  oracle_cmd->add_option("--threads", oracle_threads);
  oracle_cmd->add_option("--oracle-cap", oracle_cap2);
  oracle_cmd->add_option("--output", oracle_output);

  auto* cand_cmd =
      app.add_subcommand("candidates", "dump the candidate support family");
  InputArgs cand_input;
  bool cand_extra = false;
  int cand_threads = hw_threads;
  std::string cand_output = "-";
  add_input_flags(cand_cmd, cand_input);
  cand_cmd->add_flag("--extra-reductions", cand_extra);
  cand_cmd->add_option("--threads", cand_threads);
  cand_cmd->add_option("--output", cand_output);

  auto* cells_cmd =
      app.add_subcommand("cells", "rank-2 curve magnitudes and crossings");
  InputArgs cells_input;
  int samples = 721;
  std::string cells_output = "-";
  add_input_flags(cells_cmd, cells_input, /*with_k=*/false);
  cells_cmd->add_option("--samples", samples);
  cells_cmd->add_option("--output", cells_output);

  auto* bench_cmd = app.add_subcommand("bench", "enumeration scaling report");
  std::vector<int> d_list = {2, 3};
  std::vector<int> n_list = {25, 50, 100, 200};
  double k_frac = 0.25;
  int bench_seeds = 3;
  int bench_threads = hw_threads;
  std::string bench_output = "-";
  bench_cmd->add_option("--d-list", d_list)->delimiter(',');
  bench_cmd->add_option("--n-list", n_list)->delimiter(',');
  bench_cmd->add_option("--k-frac", k_frac);
  bench_cmd->add_option("--seeds", bench_seeds);
  bench_cmd->add_option("--threads", bench_threads);
  bench_cmd->add_option("--output", bench_output);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    return fail("usage", e.what(), 2);
  }

  try {
    if (solve_cmd->parsed()) {
      return run_solve(input, method, extra_reductions, threads, oracle_cap,
                       output);
    }
    if (oracle_cmd->parsed()) {
      return run_solve(oracle_input, "oracle", false, oracle_threads,
                       oracle_cap2, oracle_output);
    }
    if (cand_cmd->parsed()) {
      return run_candidates(cand_input, cand_extra, cand_threads, cand_output);
    }
    if (cells_cmd->parsed()) {
      return run_cells(cells_input, samples, cells_output);
    }
    if (bench_cmd->parsed()) {
      return run_bench(d_list, n_list, k_frac, bench_seeds, bench_threads,
                       bench_output);
    }
  } catch (const CapExceededError& e) {
    return fail("cap_exceeded", e.what(), 4);
  } catch (const DegenerateError& e) {
    return fail("degenerate", e.what(), 3);
  } catch (const ValidationError& e) {
    return fail("validation", e.what(), 2);
  } catch (const std::exception& e) {
    return fail("internal", e.what(), 2);
  }
  return 0;
}
