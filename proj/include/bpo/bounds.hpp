#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "bpo/core.hpp"

namespace bpo {

/// Instance with arms reordered by nonincreasing mean, bias carried along.
struct RankedProblem {
  std::vector<double> means;
  std::vector<double> counts;
  std::vector<double> bias;
  std::vector<double> gaps;

  std::size_t arms() const noexcept { return means.size(); }
};

RankedProblem rank_problem(const BanditInstance& instance, std::span<const double> bias);

/// g_i(eta) = sum_{j>=i} exp(-n_j/2 (eta - mu_j - b_j)_+^2)
///          + min_{j<i} exp(-n_j/2 (mu_j + b_j - eta)_+^2)
/// with `rank` the one-based sorted rank i, 2 <= i <= k.
double g_value(const RankedProblem& problem, std::size_t rank, double eta);

struct GStar {
  std::size_t rank = 0;
  double eta = 0.0;
  double value = 0.0;
};

/// Approximate minimizer of g_value over eta. The value is g evaluated at the
/// returned eta, so it is a valid tail bound however coarse the search.
GStar g_star(const RankedProblem& problem, std::size_t rank);

struct BoundReport {
  std::string method;
  double regret_bound = 0.0;
  std::vector<double> rank_cdf_bound;  // entry r bounds P(rank >= r + 1); entry 0 is 1
  std::vector<GStar> g_star;           // ranks 2..k
};

/// Rank-CDF bounds min(1, g_i*) and the regret bound
/// sum_{i=2..k} (Delta_i - Delta_{i-1}) min(1, g_i*).
BoundReport regret_bound_general(const BanditInstance& instance, std::span<const double> bias);

/// Confidence-interval relaxation through the split rank h.
double regret_bound_simplified(const BanditInstance& instance, std::span<const double> bias, double delta);

/// Split rank h of the relaxation above (one-based, h >= 1).
std::size_t simplified_split_rank(const RankedProblem& problem, double delta);

enum class CorollaryKind { Greedy, Lcb, Ucb };

std::string corollary_kind_name(CorollaryKind kind);

/// Closed-form per-algorithm bounds for greedy, LCB and UCB.
double regret_bound_corollary(CorollaryKind kind, const BanditInstance& instance, double delta);

struct MinimaxUpper {
  double delta_star = 0.0;
  double bound = 0.0;
};

/// Solves delta = sqrt(32 ln(k/delta) / n_min) and returns
/// 12 sqrt(ln(k/delta*) / n_min). Throws NoValidDelta when delta* >= 1.
MinimaxUpper minimax_upper(std::span<const double> counts, double tol = 1e-14);

/// c * max_m sqrt(max(1, ln m) / n_(m)) over ascending counts. The universal
/// constant defaults to 1 (shape only).
double minimax_lower_shape(std::span<const double> counts, double constant = 1.0);

struct LimitBound {
  double value = 0.0;
  bool is_lower_bound = false;  // greedy: the analysis only gives a lower bound on the limit
};

/// Limit of the corollary bound when counts in `subset` (one-based sorted
/// ranks) grow without bound and all other counts equal 1.
LimitBound limit_bound(CorollaryKind kind, std::span<const std::size_t> subset, std::span<const double> means,
                       double delta);

struct Dominance {
  double fraction_exact = 0.0;  // share of size-m subsets where LCB's limit is strictly smaller
  double bound = 0.0;           // 1 - (k-m)! m! / k!
  std::size_t subsets = 0;
  std::size_t lcb_better = 0;
  std::size_t ucb_better = 0;
  std::vector<std::size_t> ucb_subset;  // last subset favoring UCB, one-based ranks
};

Dominance lcb_dominance(std::size_t k, std::size_t m, double delta, std::span<const double> means);

/// Two mirrored two-arm instances around lambda = 1/2 with eta = n_min / 2.
struct HardPair {
  BanditInstance theta1;
  BanditInstance theta2;
  double gap = 0.0;
  double sigma = 0.0;
  double lambda = 0.5;
  double eta = 0.0;
};

HardPair make_hard_pair(double n1, double n2);

struct LogValue {
  double log_value = 0.0;
  double value = 0.0;  // exp(log_value); +inf when it overflows
};

/// (n_min / (n_min + 4)) exp(beta^2/4 + beta sqrt(n_min)/4) with beta = c c0 - 2.
LogValue ratio_lower_bound(double n_min, double c, double c0);
LogValue ratio_lower_bound_beta(double n_min, double beta);

struct HardPairRatio {
  double log_ratio = 0.0;
  double ratio = 0.0;
  double greedy_regret = 0.0;   // R(A_0, theta1)
  double shifted_regret = 0.0;  // R(A_{-beta}, theta1)
};

HardPairRatio hard_pair_ratio(const HardPair& pair, double beta);

/// regret * sqrt(n_{a*}): proxy for regret relative to the instance's
/// mean-estimation difficulty.
double weighted_ratio(double regret, const BanditInstance& instance);

struct DivergenceCase {
  BanditInstance instance;
  double delta = 0.0;
};

/// means (0.55, 0.45), counts (n1, 1), delta = 1 / sqrt(n1 + 1).
DivergenceCase divergence_construction(double n1);

/// Lower bound on P(N(0, 1/n) >= gap) used by the spike-prior argument.
double prior_tail(double n, double gap);

/// Gap solving prior_tail(n, gap) = 1 / (2m).
double prior_delta(double n, std::size_t m);

}  // namespace bpo
