#pragma once

#include <vector>

#include "bpo/core.hpp"
#include "bpo/numerics.hpp"
#include "bpo/policies.hpp"

namespace bpo {

/// Exact selection law of an index rule on a Gaussian instance.
struct PickDistribution {
  std::vector<double> probs;  // original arm order
  double regret = 0.0;
};

/// Closed-form regret for k = 2 of the rule "arm 1 iff mu_hat_1 - mu_hat_2 >= threshold".
double exact_regret_two_arm(const BanditInstance& instance, double threshold);

/// P(pick i) = int sqrt(n_i) phi(sqrt(n_i)(x - c_i)) prod_{j != i} Phi(sqrt(n_j)(x - c_j)) dx
/// with c_i = mu_i + b_i, evaluated for all arms at once by vector quadrature
/// over the widest +-12 sd window.
PickDistribution exact_pick_probabilities(const BanditInstance& instance, const IndexPolicy& policy,
                                          const numerics::QuadratureSpec& spec = {});

/// Entry r (zero-based) is P(selected arm has sorted rank >= r + 1).
std::vector<double> exact_rank_cdf(const BanditInstance& instance, const IndexPolicy& policy,
                                   const numerics::QuadratureSpec& spec = {});

/// Rank CDF from a pick distribution already in hand.
std::vector<double> rank_cdf_from_probs(const BanditInstance& instance, const std::vector<double>& probs);

/// Exact regret of an index rule: closed form for two arms, quadrature otherwise.
double exact_regret(const BanditInstance& instance, const IndexPolicy& policy,
                    const numerics::QuadratureSpec& spec = {});

}  // namespace bpo
