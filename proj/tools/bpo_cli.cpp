// Command-line front end: bounds, exact regret, simulation and the
// experiment reproductions. Exit codes: 0 success, 2 invalid input,
// 3 numerical failure.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "bpo/bounds.hpp"
#include "bpo/exact.hpp"
#include "bpo/format.hpp"
#include "bpo/harness.hpp"
#include "bpo/io.hpp"
#include "bpo/sim.hpp"

namespace fs = std::filesystem;
using bpo::format_real;
using bpo::io::json;

namespace {

constexpr int kExitValidation = 2;
constexpr int kExitNumerical = 3;

bpo::CorollaryKind corollary_kind(const bpo::PolicyDescriptor& d) {
  switch (d.kind) {
    case bpo::IndexKind::Greedy: return bpo::CorollaryKind::Greedy;
    case bpo::IndexKind::Lcb: return bpo::CorollaryKind::Lcb;
    case bpo::IndexKind::Ucb: return bpo::CorollaryKind::Ucb;
    default:
      throw bpo::Error(bpo::Errc::DomainError, "corollary bounds exist only for greedy, lcb and ucb");
  }
}

std::ofstream open_out(const fs::path& dir, const std::string& name) {
  fs::create_directories(dir);
  std::ofstream out(dir / name, std::ios::binary);
  if (!out) throw bpo::Error(bpo::Errc::ParseError, "cannot write " + (dir / name).string());
  return out;
}

void write_curve(std::ostream& out, const std::string& x_name, const std::vector<bpo::harness::CurveRow>& rows,
                 double delta, const std::string& extra_header = "", const std::string& extra_value = "") {
  out << "# delta=" << format_real(delta) << "\n";
  out << extra_header << x_name << ",policy,exact_regret,mc_regret,mc_se\n";
  for (const auto& r : rows) {
    out << extra_value << format_real(r.x) << "," << bpo::harness::algorithm_name(r.alg) << ","
        << format_real(r.exact_regret) << "," << format_real(r.mc_regret) << "," << format_real(r.mc_se) << "\n";
  }
}

struct Args {
  std::string instance_file;
  std::string policy_text;
  std::string method = "general";
  double delta = bpo::harness::kDefaultDelta;
  std::size_t reps = 0;
  std::uint64_t seed = 0;
  std::string figure;
  std::string out_dir;
  std::vector<double> totals;
  std::vector<std::size_t> ks;
  std::size_t outer_runs = 5;
  double n1 = 0.0, n2 = 0.0;
  std::string beta_grid = "-5:5:0.1";
  std::string n1_grid = "2:1024:geometric";
  std::string counts_file;
  double lower_constant = 1.0;
};

int run_bound(const Args& a) {
  const auto inst = bpo::io::load_instance(a.instance_file);
  auto descriptor = bpo::io::parse_policy(bpo::io::parse_text(a.policy_text, "--policy"));
  if (!descriptor.delta) descriptor.delta = a.delta;
  const auto policy = bpo::make_index_policy(descriptor, inst.counts());
  bpo::BoundReport report;
  if (a.method == "general") {
    report = bpo::regret_bound_general(inst, policy.bias);
  } else if (a.method == "simplified") {
    report.method = "simplified";
    report.regret_bound = bpo::regret_bound_simplified(inst, policy.bias, a.delta);
  } else {
    report.method = "corollary";
    report.regret_bound = bpo::regret_bound_corollary(corollary_kind(descriptor), inst, a.delta);
  }
  auto doc = bpo::io::to_json(report);
  doc["delta"] = a.delta;
  doc["policy"] = bpo::index_kind_name(descriptor.kind);
  std::cout << doc.dump(2) << "\n";
  return 0;
}

int run_exact(const Args& a) {
  const auto inst = bpo::io::load_instance(a.instance_file);
  const auto policy =
      bpo::make_index_policy(bpo::io::parse_policy(bpo::io::parse_text(a.policy_text, "--policy")), inst.counts());
  const auto dist = bpo::exact_pick_probabilities(inst, policy);
  std::cout << bpo::io::to_json(dist, bpo::rank_cdf_from_probs(inst, dist.probs)).dump(2) << "\n";
  return 0;
}

int run_simulate(const Args& a) {
  const auto inst = bpo::io::load_instance(a.instance_file);
  const auto doc = bpo::io::parse_text(a.policy_text, "--policy");
  const auto policy = bpo::io::parse_any_policy(doc, inst);
  const auto result = bpo::mc_regret(inst, policy, {a.reps, a.seed, 1});
  std::cout << bpo::sim_csv_header(inst.arms()) << "\n"
            << bpo::sim_csv_row(doc.value("kind", std::string("policy")), result, a.seed) << "\n";
  return 0;
}

int run_reproduce(const Args& a) {
  namespace h = bpo::harness;
  const fs::path dir(a.out_dir);
  if (a.figure == "two-arm") {
    const std::size_t reps = a.reps ? a.reps : 100;
    for (auto [n1, n2] : {std::pair{10.0, 5.0}, std::pair{100.0, 10.0}}) {
      const auto rows = h::reproduce_two_arm(n1, n2, 41, a.delta, reps, a.seed);
      auto out = open_out(dir, "two_arm_n1_" + format_real(n1) + "_n2_" + format_real(n2) + ".csv");
      write_curve(out, "gap", rows, a.delta);
    }
  } else if (a.figure == "fraction") {
    const std::size_t reps = a.reps ? a.reps : 100;
    auto out = open_out(dir, "fraction.csv");
    out << "# delta=" << format_real(a.delta) << "\n";
    out << "k,m,run,alg,best_fraction\n";
    const auto ks = a.ks.empty() ? std::vector<std::size_t>{2, 4, 8, 16} : a.ks;
    for (std::size_t k : ks) {
      for (std::size_t divisor : {2u, 4u}) {
        const std::size_t m = k / divisor;
        if (m < 1) continue;
        h::FractionRunSpec spec;
        spec.k = k;
        spec.m = m;
        spec.reps = reps;
        spec.outer_runs = a.outer_runs;
        spec.seed = a.seed;
        spec.delta = a.delta;
        const auto summary = h::run_fraction(spec);
        for (std::size_t run = 0; run < summary.per_run.size(); ++run) {
          for (std::size_t alg = 0; alg < std::size(h::kAlgorithms); ++alg) {
            out << k << "," << m << "," << run << "," << h::algorithm_name(h::kAlgorithms[alg]) << ","
                << format_real(summary.per_run[run][alg]) << "\n";
          }
        }
      }
    }
  } else {
    const auto config = h::parse_hundred_arm(a.figure);
    const std::size_t reps = a.reps ? a.reps : 500;
    const auto rows = h::reproduce_hundred_arm(config, a.totals.empty() ? h::kDefaultTotals : a.totals, a.delta,
                                               reps, a.seed);
    auto out = open_out(dir, a.figure + ".csv");
    write_curve(out, "total_n", rows, a.delta, "figure,", a.figure + ",");
  }
  return 0;
}

int run_hard_pair(const Args& a) {
  const auto rows = bpo::harness::run_hard_pair(a.n1, a.n2, bpo::harness::parse_grid(a.beta_grid));
  std::cout << "beta,regret_theta1,regret_theta2,max_regret,greedy_regret,log_ratio,log_ratio_lower_bound\n";
  for (const auto& r : rows) {
    std::cout << format_real(r.beta) << "," << format_real(r.regret_theta1) << "," << format_real(r.regret_theta2)
              << "," << format_real(std::max(r.regret_theta1, r.regret_theta2)) << ","
              << format_real(r.greedy_regret) << "," << (r.has_ratio ? format_real(r.log_ratio) : "") << ","
              << (r.has_ratio ? format_real(r.log_ratio_lower_bound) : "") << "\n";
  }
  return 0;
}

int run_divergence(const Args& a) {
  const auto rows = bpo::harness::run_divergence(bpo::harness::parse_grid(a.n1_grid));
  std::cout << "n1,delta,ucb_regret,greedy_regret,lcb_regret,ucb_weighted,greedy_weighted,lcb_weighted,"
               "lcb_weighted_per_sqrt_log\n";
  for (const auto& r : rows) {
    std::cout << format_real(r.n1) << "," << format_real(r.delta) << "," << format_real(r.ucb_regret) << ","
              << format_real(r.greedy_regret) << "," << format_real(r.lcb_regret) << ","
              << format_real(r.ucb_weighted) << "," << format_real(r.greedy_weighted) << ","
              << format_real(r.lcb_weighted) << "," << format_real(r.lcb_weighted_per_sqrt_log) << "\n";
  }
  return 0;
}

int run_minimax(const Args& a) {
  const auto counts = bpo::io::parse_counts(bpo::io::load_json(a.counts_file));
  const auto upper = bpo::minimax_upper(counts);
  json doc{{"k", counts.size()},
           {"delta_star", upper.delta_star},
           {"upper_bound", upper.bound},
           {"lower_shape", bpo::minimax_lower_shape(counts, a.lower_constant)},
           {"lower_constant", a.lower_constant}};
  std::cout << doc.dump(2) << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Batch bandit policy selection: bounds, exact regret and simulation"};
  app.require_subcommand(1);
  Args a;

  auto* bound = app.add_subcommand("bound", "Instance-dependent regret bound (JSON)");
  bound->add_option("--instance", a.instance_file, "Instance JSON file")->required()->check(CLI::ExistingFile);
  bound->add_option("--policy", a.policy_text, "Policy descriptor JSON")->required();
  bound->add_option("--delta", a.delta, "Confidence parameter");
  bound->add_option("--method", a.method, "general|simplified|corollary")
      ->check(CLI::IsMember({"general", "simplified", "corollary"}));

  auto* exact = app.add_subcommand("exact", "Exact pick distribution by quadrature (JSON)");
  exact->add_option("--instance", a.instance_file)->required()->check(CLI::ExistingFile);
  exact->add_option("--policy", a.policy_text)->required();

  auto* simulate = app.add_subcommand("simulate", "Monte Carlo regret (CSV)");
  simulate->add_option("--instance", a.instance_file)->required()->check(CLI::ExistingFile);
  simulate->add_option("--policy", a.policy_text)->required();
  simulate->add_option("--reps", a.reps)->required()->check(CLI::PositiveNumber);
  simulate->add_option("--seed", a.seed)->required();

  auto* reproduce = app.add_subcommand("reproduce", "Regenerate experiment tables (CSV files)");
  reproduce->add_option("--figure", a.figure)
      ->required()
      ->check(CLI::IsMember({"lcb1", "lcb2", "ucb1", "ucb2", "two-arm", "fraction"}));
  reproduce->add_option("--out", a.out_dir)->required();
  reproduce->add_option("--total-n", a.totals, "Total sample sizes (default 200 500 1000 2000 5000)");
  reproduce->add_option("--delta", a.delta);
  reproduce->add_option("--reps", a.reps);
  reproduce->add_option("--seed", a.seed);
  reproduce->add_option("--k", a.ks, "Arm counts for the fraction experiment (default 2 4 8 16)");
  reproduce->add_option("--runs", a.outer_runs, "Outer repetitions for the fraction experiment")
      ->check(CLI::PositiveNumber);

  auto* hard = app.add_subcommand("hard-pair", "Exact regrets on the mirrored two-arm pair (CSV)");
  hard->add_option("--n1", a.n1)->required()->check(CLI::PositiveNumber);
  hard->add_option("--n2", a.n2)->required()->check(CLI::PositiveNumber);
  hard->add_option("--beta-grid", a.beta_grid, "LO:HI:STEP");

  auto* divergence = app.add_subcommand("divergence", "Weighted-minimax divergence table (CSV)");
  divergence->add_option("--n1", a.n1_grid, "LO:HI:geometric or LO:HI:STEP");

  auto* minimax = app.add_subcommand("minimax", "Minimax upper bound and lower-bound shape (JSON)");
  minimax->add_option("--counts", a.counts_file)->required()->check(CLI::ExistingFile);
  minimax->add_option("--lower-constant", a.lower_constant, "Universal constant for the lower bound");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitValidation;
  }

  try {
    if (*bound) return run_bound(a);
    if (*exact) return run_exact(a);
    if (*simulate) return run_simulate(a);
    if (*reproduce) return run_reproduce(a);
    if (*hard) return run_hard_pair(a);
    if (*divergence) return run_divergence(a);
    if (*minimax) return run_minimax(a);
  } catch (const bpo::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return bpo::is_validation_error(e.code()) ? kExitValidation : kExitNumerical;
  } catch (const json::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  }
  return 0;
}
