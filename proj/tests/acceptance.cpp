// End-to-end acceptance checks. Prints one PASS/FAIL line per criterion and
// exits nonzero if any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "bpo/bounds.hpp"
#include "bpo/core.hpp"
#include "bpo/exact.hpp"
#include "bpo/harness.hpp"
#include "bpo/policies.hpp"
#include "bpo/sim.hpp"

#ifndef BPO_CLI_PATH
#error "BPO_CLI_PATH must point at the bpo executable"
#endif

namespace fs = std::filesystem;
using namespace bpo;

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass = true;
  std::string detail;
};

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

// k in {2..8}, counts log-uniform on [1, 1e3], means uniform on [0, 1].
std::vector<BanditInstance> random_suite(std::size_t count, std::uint64_t seed, std::size_t k_max = 8) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> pick_k(2, k_max);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_real_distribution<double> log_count(0.0, std::log(1e3));
  std::vector<BanditInstance> out;
  for (std::size_t s = 0; s < count; ++s) {
    const std::size_t k = pick_k(rng);
    std::vector<double> means(k), counts(k);
    for (std::size_t i = 0; i < k; ++i) {
      means[i] = unit(rng);
      counts[i] = std::exp(log_count(rng));
    }
    out.push_back(validate_instance(means, counts));
  }
  return out;
}

std::vector<IndexPolicy> bias_suite(const BanditInstance& inst, std::mt19937_64& rng) {
  std::vector<IndexPolicy> out;
  out.push_back(make_index_policy(PolicyDescriptor::greedy(), inst.counts()));
  out.push_back(make_index_policy(PolicyDescriptor::lcb(0.1), inst.counts()));
  out.push_back(make_index_policy(PolicyDescriptor::ucb(0.1), inst.counts()));
  std::uniform_real_distribution<double> b(-3.0, 3.0);
  for (int v = 0; v < 50; ++v) {
    std::vector<double> bias(inst.arms());
    for (double& x : bias) x = b(rng);
    out.push_back(IndexPolicy{bias});
  }
  return out;
}

// 1. Instance bound soundness: rank CDF and regret dominated by the bound.
Outcome instance_bound_soundness() {
  constexpr double tol = 1e-8;
  const auto t0 = Clock::now();
  const auto suite = random_suite(200, 101);
  std::mt19937_64 rng(202);
  std::size_t checks = 0, failures = 0;
  double worst = -1e300;
  for (const auto& inst : suite) {
    for (const auto& policy : bias_suite(inst, rng)) {
      const auto report = regret_bound_general(inst, policy.bias);
      const auto dist = exact_pick_probabilities(inst, policy);
      const auto cdf = rank_cdf_from_probs(inst, dist.probs);
      bool ok = true;
      for (std::size_t r = 0; r < cdf.size(); ++r) {
        worst = std::max(worst, cdf[r] - report.rank_cdf_bound[r]);
        ok = ok && cdf[r] <= report.rank_cdf_bound[r] + tol;
      }
      worst = std::max(worst, dist.regret - report.regret_bound);
      ok = ok && dist.regret <= report.regret_bound + tol;
      ++checks;
      if (!ok) ++failures;
    }
  }
  const double elapsed = seconds_since(t0);
  return {failures == 0 && elapsed < 300.0,
          std::to_string(checks - failures) + "/" + std::to_string(checks) +
              " (instance, bias) pairs; max(exact - bound) = " + fmt(worst) + "; " + fmt(elapsed) + " s"};
}

// 2. Per-algorithm corollary bounds dominate the exact regret.
Outcome corollary_soundness() {
  const auto suite = random_suite(200, 101);
  std::size_t checks = 0, failures = 0;
  double worst = -1e300;
  const std::pair<CorollaryKind, IndexKind> kinds[] = {{CorollaryKind::Greedy, IndexKind::Greedy},
                                                        {CorollaryKind::Lcb, IndexKind::Lcb},
                                                        {CorollaryKind::Ucb, IndexKind::Ucb}};
  for (const auto& inst : suite) {
    for (double delta : {0.01, 0.1, 0.3}) {
      for (const auto& [ck, ik] : kinds) {
        PolicyDescriptor d;
        d.kind = ik;
        d.delta = delta;
        const double regret = exact_regret(inst, make_index_policy(d, inst.counts()));
        const double bound = regret_bound_corollary(ck, inst, delta);
        worst = std::max(worst, regret - bound);
        ++checks;
        if (!(regret <= bound)) ++failures;
      }
    }
  }
  return {failures == 0, std::to_string(checks - failures) + "/" + std::to_string(checks) +
                             " checks; max(exact - bound) = " + fmt(worst)};
}

// 3. Quadrature agrees with the two-arm closed form and with Monte Carlo.
Outcome exact_oracle_agreement() {
  const auto pairs = random_suite(100, 303, 2);
  double worst_closed = 0.0;
  std::mt19937_64 rng(304);
  std::uniform_real_distribution<double> alpha(-3.0, 3.0);
  for (const auto& inst : pairs) {
    const auto policy = make_index_policy(PolicyDescriptor::constant_alpha(alpha(rng)), inst.counts());
    const double closed = exact_regret_two_arm(inst, index_to_threshold(policy, inst.counts()));
    const double quad = exact_pick_probabilities(inst, policy).regret;
    worst_closed = std::max(worst_closed, std::abs(closed - quad));
  }

  const auto suite = random_suite(50, 305, 6);
  std::size_t within = 0;
  double worst_z = 0.0;
  for (std::size_t s = 0; s < suite.size(); ++s) {
    const auto& inst = suite[s];
    const auto policy = make_index_policy(PolicyDescriptor::constant_alpha(alpha(rng)), inst.counts());
    const double quad = exact_regret(inst, policy);
    const auto mc = mc_regret(inst, policy, {100000, 1000 + s, 0});
    const double z = mc.std_error > 0.0 ? std::abs(mc.mean_regret - quad) / mc.std_error
                                        : (std::abs(mc.mean_regret - quad) < 1e-12 ? 0.0 : 1e300);
    worst_z = std::max(worst_z, z);
    if (z <= 4.0) ++within;
  }
  const double rate = static_cast<double>(within) / static_cast<double>(suite.size());
  return {worst_closed <= 1e-8 && rate >= 0.98,
          "closed form vs quadrature max |diff| = " + fmt(worst_closed) + " on 100; MC within 4 SE: " +
              std::to_string(within) + "/50 (max z = " + fmt(worst_z) + ")"};
}

// 4. Hard-pair identities.
Outcome hard_pair_identities() {
  const auto t0 = Clock::now();
  bool ok = true;
  double worst_sym = 0.0, worst_margin = 1e300;
  std::vector<double> grid(101);
  for (int i = 0; i <= 100; ++i) grid[i] = -5.0 + 0.1 * i;
  grid[50] = 0.0;
  std::string argmin_note;
  for (double n : {4.0, 16.0, 64.0, 256.0, 1024.0}) {
    const auto pair = make_hard_pair(n, n);
    const double r1 = exact_regret_two_arm(pair.theta1, 0.0);
    const double r2 = exact_regret_two_arm(pair.theta2, 0.0);
    worst_sym = std::max(worst_sym, std::abs(r1 - r2));
    ok = ok && std::abs(r1 - r2) <= 1e-12;

    const auto rows = harness::run_hard_pair(n, n, grid);
    std::size_t best = 0;
    for (std::size_t i = 1; i < rows.size(); ++i) {
      if (std::max(rows[i].regret_theta1, rows[i].regret_theta2) <
          std::max(rows[best].regret_theta1, rows[best].regret_theta2)) {
        best = i;
      }
    }
    if (rows[best].beta != 0.0) {
      ok = false;
      argmin_note += " n=" + fmt(n) + " argmin beta=" + fmt(rows[best].beta);
    }

    for (double beta : {0.5, 1.0, 2.0, 4.0}) {
      const double lhs = hard_pair_ratio(pair, beta).log_ratio;
      const double rhs = ratio_lower_bound_beta(n, beta).log_value;
      worst_margin = std::min(worst_margin, lhs - rhs);
      ok = ok && lhs >= rhs;
    }
  }
  const double elapsed = seconds_since(t0);
  return {ok && elapsed < 1.0, "max |R(theta1) - R(theta2)| = " + fmt(worst_sym) +
                                   "; min log-ratio margin = " + fmt(worst_margin) + "; " + fmt(elapsed) + " s" +
                                   (argmin_note.empty() ? "; minimax beta = 0 for all n" : argmin_note)};
}

// 5. Exhaustive LCB-vs-UCB dominance.
Outcome dominance_enumeration() {
  constexpr double delta = 0.1;
  bool ok = true;
  std::size_t cases = 0;
  double worst_margin = 1e300;
  for (std::size_t k = 2; k <= 8; ++k) {
    std::vector<double> means(k);
    for (std::size_t i = 0; i < k; ++i) means[i] = 1.0 - static_cast<double>(i) / static_cast<double>(k);
    const double max_gap = means.front() - means.back();
    const bool condition = std::sqrt(8.0 * std::log(static_cast<double>(k) / delta)) > max_gap;
    for (std::size_t m = 1; m < k; ++m) {
      const auto d = lcb_dominance(k, m, delta, means);
      ++cases;
      worst_margin = std::min(worst_margin, d.fraction_exact - d.bound);
      ok = ok && d.fraction_exact >= d.bound;
      if (condition) {
        std::vector<std::size_t> bottom(m);
        for (std::size_t j = 0; j < m; ++j) bottom[j] = k - m + 1 + j;
        ok = ok && d.ucb_better == 1 && d.ucb_subset == bottom;
      }
    }
  }
  return {ok, std::to_string(cases) + " (k, m) cases; min(fraction - bound) = " + fmt(worst_margin)};
}

// 6. Well-separated instances: every suboptimal rank bound is at most delta.
Outcome minimax_recovery() {
  constexpr double delta = 0.1;
  std::mt19937_64 rng(606);
  std::uniform_int_distribution<std::size_t> pick_k(2, 8);
  std::uniform_real_distribution<double> log_count(std::log(10.0), std::log(1e4));
  std::uniform_real_distribution<double> extra(0.0, 0.5);
  std::size_t passed = 0;
  double worst = 0.0;
  for (int s = 0; s < 50; ++s) {
    const std::size_t k = pick_k(rng);
    std::vector<double> counts(k);
    for (double& n : counts) n = std::exp(log_count(rng));
    const double n_min = *std::min_element(counts.begin(), counts.end());
    const double min_gap = 4.0 * std::sqrt(2.0 / n_min * std::log(static_cast<double>(k) / delta));
    std::vector<double> means(k);
    means[0] = 0.0;
    for (std::size_t i = 1; i < k; ++i) means[i] = -(min_gap + extra(rng));
    std::shuffle(means.begin(), means.end(), rng);
    const auto inst = validate_instance(means, counts, false);
    bool ok = true;
    for (const auto& d : {PolicyDescriptor::greedy(), PolicyDescriptor::lcb(delta), PolicyDescriptor::ucb(delta)}) {
      const auto report = regret_bound_general(inst, make_index_policy(d, counts).bias);
      for (std::size_t r = 1; r < k; ++r) {
        worst = std::max(worst, report.rank_cdf_bound[r]);
        ok = ok && report.rank_cdf_bound[r] <= delta;
      }
    }
    if (ok) ++passed;
  }
  return {passed == 50, std::to_string(passed) + "/50 instances (greedy, lcb, ucb); max rank bound = " + fmt(worst)};
}

// 7. Minimax upper bound: fixed point and Monte Carlo domination.
Outcome minimax_upper_check() {
  constexpr double n_min = 1000.0;
  const double counts[] = {n_min, n_min};
  const auto mu = minimax_upper(counts);
  bool ok = std::abs(mu.delta_star - 0.2566) <= 1e-3 && std::abs(mu.bound - 0.5441) <= 1e-3;

  const double beta = beta_delta(2, mu.delta_star);
  std::mt19937_64 rng(707);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_real_distribution<double> log_count(std::log(n_min), std::log(1e5));
  std::size_t checks = 0, passed = 0;
  double worst = -1e300;
  for (int s = 0; s < 100; ++s) {
    std::vector<double> c = {n_min, std::exp(log_count(rng))};
    if (unit(rng) < 0.5) std::swap(c[0], c[1]);
    const auto inst = validate_instance({unit(rng), unit(rng)}, c);
    std::vector<AnyPolicy> policies;
    for (double alpha : {-beta, 0.0, beta}) {
      policies.push_back(make_index_policy(PolicyDescriptor::constant_alpha(alpha), c));
    }
    const auto results = mc_compare(inst, policies, {10000, 7000 + static_cast<std::uint64_t>(s), 0});
    for (const auto& r : results) {
      ++checks;
      worst = std::max(worst, r.mean_regret - (0.5441 + 3.0 * r.std_error));
      if (r.mean_regret <= 0.5441 + 3.0 * r.std_error) ++passed;
    }
  }
  ok = ok && passed == checks;
  return {ok, "delta* = " + fmt(mu.delta_star) + ", bound = " + fmt(mu.bound) + "; MC " + std::to_string(passed) +
                  "/" + std::to_string(checks) + " below 0.5441 + 3 SE (max excess " + fmt(worst) + ")"};
}

// 8. Weighted-minimax divergence.
Outcome weighted_divergence() {
  const auto rows = harness::run_divergence(harness::parse_grid("2:1024:geometric"));
  bool ok = rows.size() == 10;
  double lcb_max = 0.0;
  for (const auto& r : rows) {
    ok = ok && r.ucb_regret >= 0.05 && r.greedy_regret >= 0.046017;
    lcb_max = std::max(lcb_max, r.lcb_weighted_per_sqrt_log);
  }
  const double growth = rows.back().ucb_weighted / rows.front().ucb_weighted;
  ok = ok && growth >= 10.0 && lcb_max <= 10.0;
  return {ok, "UCB weighted growth 2 -> 1024 = " + fmt(growth) + "; max LCB weighted / sqrt(ln n) = " + fmt(lcb_max)};
}

// 9. Qualitative figure reproductions.
Outcome figure_reproductions() {
  const auto t0 = Clock::now();
  constexpr double delta = harness::kDefaultDelta;
  bool ok = true;
  std::string notes;
  using harness::Algorithm;
  const std::pair<harness::HundredArm, Algorithm> panels[] = {{harness::HundredArm::Lcb1, Algorithm::Lcb},
                                                              {harness::HundredArm::Lcb2, Algorithm::Lcb},
                                                              {harness::HundredArm::Ucb1, Algorithm::Ucb},
                                                              {harness::HundredArm::Ucb2, Algorithm::Ucb}};
  for (const auto& [panel, winner] : panels) {
    for (double total : harness::kDefaultTotals) {
      const auto inst = harness::gen_hundred_arm(panel, total);
      double regret[3];
      for (std::size_t a = 0; a < 3; ++a) {
        regret[a] = exact_regret(inst, harness::algorithm_policy(harness::kAlgorithms[a], delta, inst));
      }
      const std::size_t w = static_cast<std::size_t>(winner);
      for (std::size_t a = 0; a < 3; ++a) {
        if (a != w && !(regret[w] < regret[a])) {
          ok = false;
          notes += " " + harness::hundred_arm_name(panel) + "@" + fmt(total) + ":" +
                   harness::algorithm_name(harness::kAlgorithms[a]) + "=" + fmt(regret[a]) + "<=" + fmt(regret[w]);
        }
      }
    }
  }

  double worst_mirror = 0.0;
  for (auto [n1, n2] : {std::pair{10.0, 5.0}, std::pair{100.0, 10.0}}) {
    const auto sweep = harness::gen_two_arm_sweep(n1, n2, -1.0, 1.0, 41);
    for (const auto& inst : sweep) {
      const double g = inst.means()[1];
      const auto mirror = validate_instance({0.0, -g}, inst.counts(), false);
      for (double alpha : {-beta_delta(2, delta), 0.0, beta_delta(2, delta)}) {
        const auto p = make_index_policy(PolicyDescriptor::constant_alpha(alpha), inst.counts());
        const auto q = make_index_policy(PolicyDescriptor::constant_alpha(-alpha), inst.counts());
        worst_mirror = std::max(worst_mirror, std::abs(exact_regret(inst, p) - exact_regret(mirror, q)));
      }
    }
  }
  ok = ok && worst_mirror <= 1e-12;

  harness::FractionRunSpec small;
  small.k = 2;
  small.m = 1;
  small.seed = 9;
  const auto f2 = harness::run_fraction(small);
  harness::FractionRunSpec large = small;
  large.k = 16;
  large.m = 8;
  const auto f16 = harness::run_fraction(large);
  const double lcb2 = f2.mean[1], ucb2 = f2.mean[2], lcb16 = f16.mean[1];
  ok = ok && lcb2 >= 0.35 && lcb2 <= 0.65 && ucb2 >= 0.35 && ucb2 <= 0.65 && lcb16 >= 0.8;

  const double elapsed = seconds_since(t0);
  ok = ok && elapsed < 600.0;
  return {ok, "mirror max diff = " + fmt(worst_mirror) + "; fraction k=2: lcb " + fmt(lcb2) + ", ucb " + fmt(ucb2) +
                  "; k=16: lcb " + fmt(lcb16) + "; " + fmt(elapsed) + " s" +
                  (notes.empty() ? "; orderings hold" : ";" + notes)};
}

// 10. Every CLI command is byte-deterministic.
std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string dir_digest(const fs::path& dir) {
  std::vector<fs::path> files;
  for (const auto& e : fs::recursive_directory_iterator(dir)) {
    if (e.is_regular_file()) files.push_back(e.path());
  }
  std::sort(files.begin(), files.end());
  std::string all;
  for (const auto& f : files) all += fs::relative(f, dir).string() + "\n" + slurp(f);
  return all;
}

Outcome cli_determinism() {
  const fs::path work = fs::temp_directory_path() / "bpo_acceptance_cli";
  fs::remove_all(work);
  fs::create_directories(work);
  {
    std::ofstream(work / "instance.json") << R"({"means": [0.7, 0.5, 0.45, 0.2], "counts": [5, 40, 12, 3]})";
    std::ofstream(work / "counts.json") << "[1000, 1500, 4000]";
  }
  const std::string cli = BPO_CLI_PATH;
  const std::string inst = (work / "instance.json").string();
  const std::vector<std::string> commands = {
      "bound --instance " + inst + " --policy '{\"kind\":\"lcb\"}' --delta 0.1",
      "bound --instance " + inst + " --policy '{\"kind\":\"ucb\"}' --delta 0.1 --method simplified",
      "bound --instance " + inst + " --policy '{\"kind\":\"greedy\"}' --delta 0.1 --method corollary",
      "exact --instance " + inst + " --policy '{\"kind\":\"alpha\",\"alpha\":0.5}'",
      "simulate --instance " + inst + " --policy '{\"kind\":\"lcb\",\"delta\":0.1}' --reps 2000 --seed 3",
      "reproduce --figure lcb1 --reps 50 --seed 1 --total-n 200 1000 --out {OUT}",
      "reproduce --figure ucb2 --reps 50 --seed 1 --total-n 500 --out {OUT}",
      "reproduce --figure two-arm --reps 50 --seed 1 --out {OUT}",
      "reproduce --figure fraction --reps 20 --runs 2 --k 2 4 --seed 1 --out {OUT}",
      "hard-pair --n1 16 --n2 64 --beta-grid -2:2:0.5",
      "divergence --n1 2:256:geometric",
      "minimax --counts " + (work / "counts.json").string(),
  };
  std::size_t same = 0;
  std::string failed;
  for (std::size_t c = 0; c < commands.size(); ++c) {
    std::string outputs[2];
    for (int run = 0; run < 2; ++run) {
      const fs::path out = work / ("cmd" + std::to_string(c) + "_" + std::to_string(run));
      fs::create_directories(out);
      std::string cmd = commands[c];
      const auto pos = cmd.find("{OUT}");
      if (pos != std::string::npos) cmd.replace(pos, 5, out.string());
      const std::string line = cli + " " + cmd + " > " + (out / "stdout.txt").string() + " 2>&1";
      const int status = std::system(line.c_str());
      outputs[run] = (status == 0 ? std::string() : "exit failure\n") + dir_digest(out);
    }
    if (outputs[0] == outputs[1] && outputs[0].rfind("exit failure", 0) != 0) {
      ++same;
    } else {
      failed += " [" + commands[c].substr(0, commands[c].find(' ')) + "]";
    }
  }
  fs::remove_all(work);
  return {same == commands.size(),
          std::to_string(same) + "/" + std::to_string(commands.size()) + " commands byte-identical" + failed};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"instance bound soundness", instance_bound_soundness},
      {"corollary bound soundness", corollary_soundness},
      {"exact oracle agreement", exact_oracle_agreement},
      {"hard-pair identities", hard_pair_identities},
      {"lcb/ucb dominance enumeration", dominance_enumeration},
      {"minimax recovery from instance bound", minimax_recovery},
      {"minimax upper bound", minimax_upper_check},
      {"weighted-minimax divergence", weighted_divergence},
      {"figure reproductions", figure_reproductions},
      {"cli determinism", cli_determinism},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.pass) ++failures;
    std::cout << (o.pass ? "PASS" : "FAIL") << " [" << (i + 1) << "] " << criteria[i].first << ": " << o.detail
              << std::endl;
  }
  return failures == 0 ? 0 : 1;
}
