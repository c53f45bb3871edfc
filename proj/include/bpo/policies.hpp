#pragma once

#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "bpo/core.hpp"

namespace bpo {

/// Index rule: pick argmax_i mu_hat_i + bias_i, ties to the lowest index.
struct IndexPolicy {
  std::vector<double> bias;
};

/// Two-arm rule A_beta: arm 1 iff mu_hat_1 - mu_hat_2 >= beta / sqrt(n_min).
struct ThresholdPolicy {
  double beta = 0.0;
};

/// Bayes-optimal rule under a uniform spike prior of height delta_gap:
/// argmin_b n_b (delta_gap / 2 - mu_hat_b).
struct SpikeBayesPolicy {
  double delta_gap = 1.0;
};

using AnyPolicy = std::variant<IndexPolicy, ThresholdPolicy, SpikeBayesPolicy>;

enum class IndexKind { Greedy, Lcb, Ucb, ConstantAlpha, Custom };

/// User-facing description of an index rule; the bias vector is only
/// materialized once the counts are known.
struct PolicyDescriptor {
  IndexKind kind = IndexKind::Greedy;
  std::optional<double> delta;
  std::optional<double> alpha;
  std::vector<double> bias;

  static PolicyDescriptor greedy() { return {}; }
  static PolicyDescriptor lcb(double delta) { return {IndexKind::Lcb, delta, {}, {}}; }
  static PolicyDescriptor ucb(double delta) { return {IndexKind::Ucb, delta, {}, {}}; }
  static PolicyDescriptor constant_alpha(double alpha) {
    return {IndexKind::ConstantAlpha, {}, alpha, {}};
  }
  static PolicyDescriptor custom(std::vector<double> bias) {
    return {IndexKind::Custom, {}, {}, std::move(bias)};
  }
};

std::string index_kind_name(IndexKind kind);

/// greedy: b = 0; lcb/ucb: b_i = -/+ beta_delta / sqrt(n_i); constant_alpha:
/// b_i = alpha / sqrt(n_i); custom: bias copied after a length check.
IndexPolicy make_index_policy(const PolicyDescriptor& descriptor, std::span<const double> counts);

ArmIndex select_arm(const IndexPolicy& policy, const LoggedStats& stats);
ArmIndex threshold_select(const ThresholdPolicy& policy, const LoggedStats& stats);
ArmIndex spike_bayes_select(const SpikeBayesPolicy& policy, const LoggedStats& stats);
ArmIndex select(const AnyPolicy& policy, const LoggedStats& stats);

/// For k = 2: the scalar t such that the index rule picks arm 1 iff
/// mu_hat_1 - mu_hat_2 >= t.
double index_to_threshold(const IndexPolicy& policy, std::span<const double> counts);

/// The same scalar for A_beta, i.e. beta / sqrt(min(n_1, n_2)).
double threshold_of(const ThresholdPolicy& policy, std::span<const double> counts);

}  // namespace bpo
