#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "bpo/core.hpp"
#include "bpo/numerics.hpp"
#include "bpo/policies.hpp"

namespace bpo::harness {

// ---------------------------------------------------------------------------
// Hundred-arm epsilon-greedy style logging policies.
//
// Arms have means 1, 0.99, ..., 0.01. Each arm in the favoured set S1 gets
// pi * n observations and the rest share n (1 - pi |S1|) evenly. Counts stay
// fractional and are floored at 1e-3.

enum class HundredArm { Lcb1, Lcb2, Ucb1, Ucb2 };

std::string hundred_arm_name(HundredArm config);
HundredArm parse_hundred_arm(const std::string& name);

BanditInstance gen_hundred_arm(HundredArm config, double total_n);

inline const std::vector<double> kDefaultTotals = {200, 500, 1000, 2000, 5000};
inline constexpr double kDefaultDelta = 0.1;

// ---------------------------------------------------------------------------
// Two-arm sweep: means (0, g) for g on a uniform grid; lax validation.

std::vector<BanditInstance> gen_two_arm_sweep(double n1, double n2, double grid_lo, double grid_hi,
                                              std::size_t grid_points);

// ---------------------------------------------------------------------------
// Random-subset experiment.

struct FractionInstance {
  std::vector<double> means;
  std::vector<std::size_t> subset;  // zero-based arms observed 100 times
  BanditInstance instance;
};

struct FractionBatchSpec {
  std::size_t k = 4;
  std::size_t m = 2;
  double noise_std = 0.05;
  std::size_t n_mu = 100;
  std::size_t n_subsets = 100;
  std::uint64_t seed = 0;
};

/// Base means (i-1)/(2(k-1)) + 1/4 plus Gaussian noise, each paired with up to
/// n_subsets distinct uniformly drawn size-m subsets (all of them when
/// C(k, m) <= n_subsets).
std::vector<FractionInstance> gen_fraction_batch(const FractionBatchSpec& spec);

enum class Algorithm { Greedy, Lcb, Ucb };
inline constexpr Algorithm kAlgorithms[] = {Algorithm::Greedy, Algorithm::Lcb, Algorithm::Ucb};
std::string algorithm_name(Algorithm alg);

struct FractionSummary {
  std::size_t k = 0;
  std::size_t m = 0;
  std::vector<std::vector<double>> per_run;  // [run][algorithm] share of instances won
  std::vector<double> mean;                  // per algorithm
  std::vector<double> std_dev;               // sample std over runs
};

struct FractionRunSpec {
  std::size_t k = 4;
  std::size_t m = 2;
  std::size_t reps = 100;
  std::size_t outer_runs = 5;
  std::uint64_t seed = 0;
  double delta = kDefaultDelta;
  std::size_t n_mu = 100;
  std::size_t n_subsets = 100;
  double noise_std = 0.05;
};

/// Scores greedy/LCB/UCB on every generated instance with shared-noise Monte
/// Carlo and credits the strict minimizer (ties credit nobody).
FractionSummary run_fraction(const FractionRunSpec& spec);

// ---------------------------------------------------------------------------
// Divergence of the weighted-minimax ratio for UCB and greedy.

struct DivergenceRow {
  double n1 = 0.0;
  double delta = 0.0;
  double ucb_regret = 0.0;
  double greedy_regret = 0.0;
  double lcb_regret = 0.0;
  double ucb_weighted = 0.0;
  double greedy_weighted = 0.0;
  double lcb_weighted = 0.0;
  double lcb_weighted_per_sqrt_log = 0.0;  // lcb_weighted / sqrt(ln(n1 + 1))
};

std::vector<DivergenceRow> run_divergence(const std::vector<double>& n1_list);

// ---------------------------------------------------------------------------
// Figure tables.

IndexPolicy algorithm_policy(Algorithm alg, double delta, const BanditInstance& instance);

struct CurveRow {
  double x = 0.0;  // total_n for hundred-arm panels, mu_1 - mu_2 for two-arm panels
  Algorithm alg = Algorithm::Greedy;
  double exact_regret = 0.0;
  double mc_regret = 0.0;
  double mc_se = 0.0;
};

std::vector<CurveRow> reproduce_hundred_arm(HundredArm config, const std::vector<double>& totals, double delta,
                                            std::size_t reps, std::uint64_t seed,
                                            const numerics::QuadratureSpec& quad = {});

std::vector<CurveRow> reproduce_two_arm(double n1, double n2, std::size_t grid_points, double delta,
                                        std::size_t reps, std::uint64_t seed);

struct HardPairRow {
  double beta = 0.0;
  double regret_theta1 = 0.0;
  double regret_theta2 = 0.0;
  double greedy_regret = 0.0;
  bool has_ratio = false;  // ratio terms need beta > 0
  double log_ratio = 0.0;
  double log_ratio_lower_bound = 0.0;
};

std::vector<HardPairRow> run_hard_pair(double n1, double n2, const std::vector<double>& betas);

/// "LO:HI:STEP" (inclusive, linear) or "LO:HI:geometric" (doubling).
std::vector<double> parse_grid(const std::string& text);

}  // namespace bpo::harness
