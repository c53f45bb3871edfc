#include "bpo/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>

#include "bpo/numerics.hpp"

namespace bpo {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

double positive_part(double x) { return x > 0.0 ? x : 0.0; }

double log_sum_exp(std::span<const double> logs) {
  double peak = kNegInf;
  for (double l : logs) peak = std::max(peak, l);
  if (peak == kNegInf) return kNegInf;
  double acc = 0.0;
  for (double l : logs) acc += std::exp(l - peak);
  return peak + std::log(acc);
}

void check_delta_unit(double delta) {
  if (!(delta > 0.0 && delta < 1.0)) throw Error(Errc::DomainError, "delta must lie in (0,1)");
}

struct SortedMeans {
  std::vector<double> means;
  std::vector<double> gaps;
};

SortedMeans sort_means(std::span<const double> means) {
  SortedMeans s{std::vector<double>(means.begin(), means.end()), {}};
  std::sort(s.means.begin(), s.means.end(), std::greater<>());
  for (double m : s.means) s.gaps.push_back(s.means.front() - m);
  return s;
}

}  // namespace

RankedProblem rank_problem(const BanditInstance& instance, std::span<const double> bias) {
  const std::size_t k = instance.arms();
  if (bias.size() != k) throw Error(Errc::LengthMismatch, "bias arity differs from instance");
  const auto perm = sort_order(instance.means());
  RankedProblem p;
  for (std::size_t arm : perm) {
    p.means.push_back(instance.means()[arm]);
    p.counts.push_back(instance.counts()[arm]);
    p.bias.push_back(bias[arm]);
    p.gaps.push_back(instance.means()[perm[0]] - instance.means()[arm]);
  }
  return p;
}

double g_value(const RankedProblem& problem, std::size_t rank, double eta) {
  const std::size_t k = problem.arms();
  if (rank < 2 || rank > k) {
    throw Error(Errc::RankOutOfRange, "rank " + std::to_string(rank) + " outside [2," + std::to_string(k) + "]");
  }
  const std::size_t i = rank - 1;
  std::vector<double> upper_logs;
  upper_logs.reserve(k - i);
  for (std::size_t j = i; j < k; ++j) {
    const double excess = positive_part(eta - problem.means[j] - problem.bias[j]);
    upper_logs.push_back(-0.5 * problem.counts[j] * excess * excess);
  }
  double lower_log = 0.0;
  for (std::size_t j = 0; j < i; ++j) {
    const double shortfall = positive_part(problem.means[j] + problem.bias[j] - eta);
    lower_log = std::min(lower_log, -0.5 * problem.counts[j] * shortfall * shortfall);
  }
  return std::exp(log_sum_exp(upper_logs)) + std::exp(lower_log);
}

GStar g_star(const RankedProblem& problem, std::size_t rank) {
  std::vector<double> kinks(problem.arms());
  double widest = 0.0;
  for (std::size_t j = 0; j < problem.arms(); ++j) {
    kinks[j] = problem.means[j] + problem.bias[j];
    widest = std::max(widest, 1.0 / std::sqrt(problem.counts[j]));
  }
  // validates the rank before the scan
  (void)g_value(problem, rank, kinks[0]);
  const auto best = numerics::minimize_1d([&](double eta) { return g_value(problem, rank, eta); }, kinks,
                                          3.0 * widest + 1.0, 1e-10);
  return GStar{rank, best.argmin, best.min};
}

BoundReport regret_bound_general(const BanditInstance& instance, std::span<const double> bias) {
  const RankedProblem problem = rank_problem(instance, bias);
  const std::size_t k = problem.arms();
  BoundReport report;
  report.method = "general";
  report.rank_cdf_bound.assign(k, 1.0);
  for (std::size_t rank = 2; rank <= k; ++rank) {
    const GStar g = g_star(problem, rank);
    report.g_star.push_back(g);
    report.rank_cdf_bound[rank - 1] = std::min(1.0, g.value);
    report.regret_bound += (problem.gaps[rank - 1] - problem.gaps[rank - 2]) * report.rank_cdf_bound[rank - 1];
  }
  return report;
}

std::size_t simplified_split_rank(const RankedProblem& problem, double delta) {
  const std::size_t k = problem.arms();
  const double beta = beta_delta(k, delta);
  std::vector<double> upper(k), lower(k);
  for (std::size_t j = 0; j < k; ++j) {
    const double radius = beta / std::sqrt(problem.counts[j]);
    upper[j] = problem.means[j] + problem.bias[j] + radius;
    lower[j] = problem.means[j] + problem.bias[j] - radius;
  }
  // suffix maxima of U so each rank's test is O(1)
  std::vector<double> upper_tail(k + 1, kNegInf);
  for (std::size_t j = k; j-- > 0;) upper_tail[j] = std::max(upper_tail[j + 1], upper[j]);
  std::size_t h = 1;
  double lower_head = kNegInf;
  for (std::size_t i = 1; i < k; ++i) {
    lower_head = std::max(lower_head, lower[i - 1]);
    if (lower_head < upper_tail[i]) h = i + 1;
  }
  return h;
}

double regret_bound_simplified(const BanditInstance& instance, std::span<const double> bias, double delta) {
  check_delta_unit(delta);
  const RankedProblem problem = rank_problem(instance, bias);
  const std::size_t k = problem.arms();
  const double kd = static_cast<double>(k);
  const double beta = beta_delta(k, delta);
  const std::size_t h = simplified_split_rank(problem, delta);

  std::vector<double> upper(k), lower(k);
  for (std::size_t j = 0; j < k; ++j) {
    const double radius = beta / std::sqrt(problem.counts[j]);
    upper[j] = problem.means[j] + problem.bias[j] + radius;
    lower[j] = problem.means[j] + problem.bias[j] - radius;
  }

  double tail = 0.0;
  double lower_head = kNegInf;
  for (std::size_t i = 1; i < k; ++i) {
    lower_head = std::max(lower_head, lower[i - 1]);
    if (i + 1 <= h) continue;
    std::vector<double> logs;
    for (std::size_t j = i; j < k; ++j) {
      const double sep = lower_head - upper[j];
      logs.push_back(-0.5 * problem.counts[j] * sep * sep);
    }
    tail += (problem.gaps[i] - problem.gaps[i - 1]) * std::exp(log_sum_exp(logs));
  }
  return problem.gaps[h - 1] + delta / kd * problem.gaps.back() + delta / kd * tail;
}

std::string corollary_kind_name(CorollaryKind kind) {
  switch (kind) {
    case CorollaryKind::Greedy: return "greedy";
    case CorollaryKind::Lcb: return "lcb";
    case CorollaryKind::Ucb: return "ucb";
  }
  return "unknown";
}

double regret_bound_corollary(CorollaryKind kind, const BanditInstance& instance, double delta) {
  check_delta_unit(delta);
  const std::size_t k = instance.arms();
  const RankedProblem problem = rank_problem(instance, std::vector<double>(k, 0.0));
  const double log_term = std::log(static_cast<double>(k) / delta);
  const double width = kind == CorollaryKind::Greedy ? 2.0 : 8.0;

  std::vector<double> radius(k);
  for (std::size_t j = 0; j < k; ++j) radius[j] = std::sqrt(width / problem.counts[j] * log_term);
  // worse_max[i] = max_{j>i} radius_j, zero over the empty set
  std::vector<double> worse_max(k, 0.0);
  for (std::size_t i = k - 1; i-- > 0;) worse_max[i] = std::max(worse_max[i + 1], radius[i + 1]);

  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < k; ++i) {
    double term = problem.gaps[i];
    switch (kind) {
      case CorollaryKind::Greedy: term += radius[i] + worse_max[i]; break;
      case CorollaryKind::Lcb: term += radius[i]; break;
      case CorollaryKind::Ucb: term += worse_max[i]; break;
    }
    best = std::min(best, term);
  }
  return best + delta;
}

MinimaxUpper minimax_upper(std::span<const double> counts, double tol) {
  if (counts.size() < 1) throw Error(Errc::TooFewArms, "minimax_upper needs counts");
  for (double n : counts) {
    if (!(n > 0.0) || !std::isfinite(n)) throw Error(Errc::NonPositiveCount, "counts must be positive");
  }
  const double kd = static_cast<double>(counts.size());
  const double n_min = *std::min_element(counts.begin(), counts.end());
  auto f = [&](double d) { return d - std::sqrt(32.0 * std::log(kd / d) / n_min); };
  constexpr double eps = 1e-12;
  const double root = numerics::find_root(f, eps, kd * (1.0 - eps), tol);
  if (!(root < 1.0)) {
    throw Error(Errc::NoValidDelta, "fixed point " + std::to_string(root) + " is not below 1");
  }
  return MinimaxUpper{root, 12.0 * std::sqrt(std::log(kd / root) / n_min)};
}

double minimax_lower_shape(std::span<const double> counts, double constant) {
  std::vector<double> sorted(counts.begin(), counts.end());
  for (double n : sorted) {
    if (!(n > 0.0)) throw Error(Errc::NonPositiveCount, "counts must be positive");
  }
  std::sort(sorted.begin(), sorted.end());
  double best = 0.0;
  for (std::size_t m = 1; m <= sorted.size(); ++m) {
    const double lg = std::max(1.0, std::log(static_cast<double>(m)));
    best = std::max(best, std::sqrt(lg / sorted[m - 1]));
  }
  return constant * best;
}

LimitBound limit_bound(CorollaryKind kind, std::span<const std::size_t> subset, std::span<const double> means,
                       double delta) {
  check_delta_unit(delta);
  if (subset.empty()) throw Error(Errc::EmptySubset, "limit_bound needs a nonempty subset");
  const std::size_t k = means.size();
  std::vector<bool> in_subset(k, false);
  for (std::size_t r : subset) {
    if (r < 1 || r > k) throw Error(Errc::RankOutOfRange, "subset rank " + std::to_string(r));
    in_subset[r - 1] = true;
  }
  const SortedMeans sorted = sort_means(means);
  const double log_term = std::log(static_cast<double>(k) / delta);

  if (kind == CorollaryKind::Lcb) {
    const std::size_t first = static_cast<std::size_t>(std::find(in_subset.begin(), in_subset.end(), true) -
                                                       in_subset.begin());
    return LimitBound{sorted.gaps[first] + delta, false};
  }

  const double penalty = std::sqrt((kind == CorollaryKind::Ucb ? 8.0 : 2.0) * log_term);
  // uncovered_below[i]: some rank j > i lies outside the subset
  std::vector<bool> uncovered_below(k, false);
  for (std::size_t i = k - 1; i-- > 0;) uncovered_below[i] = uncovered_below[i + 1] || !in_subset[i + 1];
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < k; ++i) {
    best = std::min(best, sorted.gaps[i] + (uncovered_below[i] ? penalty : 0.0));
  }
  return LimitBound{best + delta, kind == CorollaryKind::Greedy};
}

Dominance lcb_dominance(std::size_t k, std::size_t m, double delta, std::span<const double> means) {
  if (k > 20) throw Error(Errc::EnumerationTooLarge, "k = " + std::to_string(k) + " exceeds 20");
  if (k < 2 || m < 1 || m >= k) throw Error(Errc::DomainError, "need 2 <= k and 1 <= m < k");
  if (means.size() != k) throw Error(Errc::LengthMismatch, "means must have k entries");
  check_delta_unit(delta);
  const SortedMeans sorted = sort_means(means);
  for (std::size_t i = 1; i < k; ++i) {
    if (!(sorted.means[i] < sorted.means[i - 1])) throw Error(Errc::DomainError, "means must be distinct");
  }

  Dominance out;
  // 1 - 1/C(k, m); C(k, m) is an exact integer for k <= 20, so the bound is
  // the correctly rounded ratio (C - 1) / C, comparable bit-for-bit with the
  // enumerated fraction.
  std::uint64_t choose = 1;
  for (std::size_t j = 1; j <= m; ++j) choose = choose * (k - m + j) / j;
  out.bound = static_cast<double>(choose - 1) / static_cast<double>(choose);

  // walk all size-m subsets of [k] in lexicographic order
  std::vector<std::size_t> subset(m);
  std::iota(subset.begin(), subset.end(), std::size_t{1});
  while (true) {
    const double lcb = limit_bound(CorollaryKind::Lcb, subset, sorted.means, delta).value;
    const double ucb = limit_bound(CorollaryKind::Ucb, subset, sorted.means, delta).value;
    ++out.subsets;
    if (lcb < ucb) ++out.lcb_better;
    if (ucb < lcb) {
      ++out.ucb_better;
      out.ucb_subset = subset;
    }
    std::size_t pos = m;
    while (pos > 0 && subset[pos - 1] == k - m + pos) --pos;
    if (pos == 0) break;
    ++subset[pos - 1];
    for (std::size_t q = pos; q < m; ++q) subset[q] = subset[q - 1] + 1;
  }
  out.fraction_exact = static_cast<double>(out.lcb_better) / static_cast<double>(out.subsets);
  return out;
}

HardPair make_hard_pair(double n1, double n2) {
  if (!(n1 > 0.0) || !(n2 > 0.0)) throw Error(Errc::NonPositiveCount, "hard pair counts must be positive");
  const double lambda = 0.5;
  const double eta = std::min(n1, n2) / 2.0;
  const double var = 1.0 / n1 + 1.0 / n2;
  return HardPair{validate_instance({lambda + eta / n1, lambda - eta / n2}, {n1, n2}, true),
                  validate_instance({lambda - eta / n1, lambda + eta / n2}, {n1, n2}, true),
                  var * eta,
                  std::sqrt(var),
                  lambda,
                  eta};
}

LogValue ratio_lower_bound_beta(double n_min, double beta) {
  if (!(beta > 0.0)) throw Error(Errc::DomainError, "ratio bound needs beta = c c0 - 2 > 0");
  if (!(n_min > 0.0)) throw Error(Errc::NonPositiveCount, "n_min must be positive");
  const double log_value = std::log(n_min / (n_min + 4.0)) + beta * beta / 4.0 + beta * std::sqrt(n_min) / 4.0;
  return LogValue{log_value, std::exp(log_value)};
}

LogValue ratio_lower_bound(double n_min, double c, double c0) { return ratio_lower_bound_beta(n_min, c * c0 - 2.0); }

HardPairRatio hard_pair_ratio(const HardPair& pair, double beta) {
  if (!(beta >= 0.0)) throw Error(Errc::DomainError, "hard_pair_ratio needs beta >= 0");
  const double n_min = pair.theta1.min_count();
  const double z0 = -pair.gap / pair.sigma;
  const double z1 = -beta / (pair.sigma * std::sqrt(n_min)) - pair.gap / pair.sigma;
  const double log_num = numerics::log_norm_cdf(z0);
  const double log_den = numerics::log_norm_cdf(z1);
  HardPairRatio out;
  out.log_ratio = log_num - log_den;
  out.ratio = std::exp(out.log_ratio);
  out.greedy_regret = pair.gap * std::exp(log_num);
  out.shifted_regret = pair.gap * std::exp(log_den);
  return out;
}

double weighted_ratio(double regret, const BanditInstance& instance) {
  if (!(regret >= 0.0)) throw Error(Errc::DomainError, "regret must be nonnegative");
  const auto view = sorted_view(instance);
  return regret * std::sqrt(instance.counts()[view.optimal_arm]);
}

DivergenceCase divergence_construction(double n1) {
  if (!(n1 >= 2.0)) throw Error(Errc::DomainError, "divergence construction needs n1 >= 2");
  return DivergenceCase{validate_instance({0.55, 0.45}, {n1, 1.0}, true), 1.0 / std::sqrt(n1 + 1.0)};
}

double prior_tail(double n, double gap) {
  const double root_n = std::sqrt(n);
  return std::sqrt(2.0 / M_PI) * std::exp(-n * gap * gap / 2.0) / (gap * root_n + std::sqrt(4.0 + n * gap * gap));
}

double prior_delta(double n, std::size_t m) {
  if (!(n > 0.0)) throw Error(Errc::NonPositiveCount, "prior_delta needs n > 0");
  if (m < 2) throw Error(Errc::DomainError, "prior_delta needs m >= 2");
  const double target = 1.0 / (2.0 * static_cast<double>(m));
  return numerics::find_root([&](double gap) { return prior_tail(n, gap) - target; }, 1e-9,
                             1e3 / std::sqrt(n), 1e-15);
}

}  // namespace bpo
