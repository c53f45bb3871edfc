#include "bpo/policies.hpp"

#include <algorithm>
#include <cmath>

namespace bpo {

namespace {

void require_arity(std::size_t got, std::size_t want, const char* what) {
  if (got != want) {
    throw Error(Errc::LengthMismatch, std::string(what) + ": expected " + std::to_string(want) +
                                          " arms, got " + std::to_string(got));
  }
}

void require_two_arms(std::size_t k) {
  if (k != 2) throw Error(Errc::WrongArity, "rule is only defined for two arms, got " + std::to_string(k));
}

}  // namespace

std::string index_kind_name(IndexKind kind) {
  switch (kind) {
    case IndexKind::Greedy: return "greedy";
    case IndexKind::Lcb: return "lcb";
    case IndexKind::Ucb: return "ucb";
    case IndexKind::ConstantAlpha: return "alpha";
    case IndexKind::Custom: return "custom";
  }
  return "unknown";
}

IndexPolicy make_index_policy(const PolicyDescriptor& descriptor, std::span<const double> counts) {
  for (double n : counts) {
    if (!(n > 0.0)) throw Error(Errc::NonPositiveCount, "policy counts must be positive");
  }
  const std::size_t k = counts.size();
  IndexPolicy policy{std::vector<double>(k, 0.0)};

  auto scaled = [&](double alpha) {
    for (std::size_t i = 0; i < k; ++i) policy.bias[i] = alpha / std::sqrt(counts[i]);
  };

  switch (descriptor.kind) {
    case IndexKind::Greedy:
      break;
    case IndexKind::Lcb:
    case IndexKind::Ucb: {
      if (!descriptor.delta) throw Error(Errc::DomainError, "lcb/ucb need delta");
      const double beta = beta_delta(k, *descriptor.delta);
      scaled(descriptor.kind == IndexKind::Lcb ? -beta : beta);
      break;
    }
    case IndexKind::ConstantAlpha:
      if (!descriptor.alpha || !std::isfinite(*descriptor.alpha)) {
        throw Error(Errc::DomainError, "alpha policy needs a finite alpha");
      }
      scaled(*descriptor.alpha);
      break;
    case IndexKind::Custom:
      require_arity(descriptor.bias.size(), k, "custom bias");
      for (double b : descriptor.bias) {
        if (!std::isfinite(b)) throw Error(Errc::NonFiniteEntry, "custom bias");
      }
      policy.bias = descriptor.bias;
      break;
  }
  return policy;
}

ArmIndex select_arm(const IndexPolicy& policy, const LoggedStats& stats) {
  const std::size_t k = stats.arms();
  require_arity(policy.bias.size(), k, "select_arm");
  std::size_t best = 0;
  double best_index = stats.emp_means[0] + policy.bias[0];
  for (std::size_t i = 1; i < k; ++i) {
    const double index = stats.emp_means[i] + policy.bias[i];
    if (index > best_index) {
      best_index = index;
      best = i;
    }
  }
  return ArmIndex::from_zero_based(best, k);
}

double threshold_of(const ThresholdPolicy& policy, std::span<const double> counts) {
  require_two_arms(counts.size());
  return policy.beta / std::sqrt(std::min(counts[0], counts[1]));
}

ArmIndex threshold_select(const ThresholdPolicy& policy, const LoggedStats& stats) {
  const double t = threshold_of(policy, stats.counts);
  const std::size_t arm = stats.emp_means[0] - stats.emp_means[1] >= t ? 0 : 1;
  return ArmIndex::from_zero_based(arm, 2);
}

ArmIndex spike_bayes_select(const SpikeBayesPolicy& policy, const LoggedStats& stats) {
  const double half = policy.delta_gap / 2.0;
  std::size_t best = 0;
  double best_score = stats.counts[0] * (half - stats.emp_means[0]);
  for (std::size_t b = 1; b < stats.arms(); ++b) {
    const double score = stats.counts[b] * (half - stats.emp_means[b]);
    if (score < best_score) {
      best_score = score;
      best = b;
    }
  }
  return ArmIndex::from_zero_based(best, stats.arms());
}

ArmIndex select(const AnyPolicy& policy, const LoggedStats& stats) {
  return std::visit(
      [&](const auto& p) -> ArmIndex {
        using P = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<P, IndexPolicy>) {
          return select_arm(p, stats);
        } else if constexpr (std::is_same_v<P, ThresholdPolicy>) {
          return threshold_select(p, stats);
        } else {
          return spike_bayes_select(p, stats);
        }
      },
      policy);
}

double index_to_threshold(const IndexPolicy& policy, std::span<const double> counts) {
  require_two_arms(counts.size());
  require_arity(policy.bias.size(), 2, "index_to_threshold");
  return policy.bias[1] - policy.bias[0];
}

}  // namespace bpo
