#include "bpo/exact.hpp"

#include <algorithm>
#include <cmath>

namespace bpo {

using numerics::log_norm_cdf;
using numerics::norm_cdf;

double exact_regret_two_arm(const BanditInstance& instance, double threshold) {
  if (instance.arms() != 2) throw Error(Errc::WrongArity, "closed form needs two arms");
  const auto& mu = instance.means();
  const auto& n = instance.counts();
  const double d = mu[0] - mu[1];
  const double sigma = std::sqrt(1.0 / n[0] + 1.0 / n[1]);
  if (d >= 0.0) return d * norm_cdf((threshold - d) / sigma);
  return -d * norm_cdf((d - threshold) / sigma);
}

PickDistribution exact_pick_probabilities(const BanditInstance& instance, const IndexPolicy& policy,
                                          const numerics::QuadratureSpec& spec) {
  const std::size_t k = instance.arms();
  if (policy.bias.size() != k) throw Error(Errc::LengthMismatch, "policy arity differs from instance");
  const auto& mu = instance.means();
  const auto& n = instance.counts();

  std::vector<double> center(k), scale(k);
  double lo = INFINITY, hi = -INFINITY;
  std::vector<double> breaks;
  breaks.reserve(3 * k);
  for (std::size_t i = 0; i < k; ++i) {
    center[i] = mu[i] + policy.bias[i];
    scale[i] = std::sqrt(n[i]);
    const double sd = 1.0 / scale[i];
    lo = std::min(lo, center[i] - 12.0 * sd);
    hi = std::max(hi, center[i] + 12.0 * sd);
    breaks.insert(breaks.end(), {center[i] - 3.0 * sd, center[i], center[i] + 3.0 * sd});
  }

  // prefix/suffix sums of log Phi give the leave-one-out product exactly.
  std::vector<double> log_cdf(k), prefix(k + 1), suffix(k + 1);
  const numerics::VectorIntegrand integrand = [&](double x, std::span<double> out) {
    for (std::size_t j = 0; j < k; ++j) log_cdf[j] = log_norm_cdf(scale[j] * (x - center[j]));
    prefix[0] = 0.0;
    for (std::size_t j = 0; j < k; ++j) prefix[j + 1] = prefix[j] + log_cdf[j];
    suffix[k] = 0.0;
    for (std::size_t j = k; j-- > 0;) suffix[j] = suffix[j + 1] + log_cdf[j];
    for (std::size_t i = 0; i < k; ++i) {
      const double z = scale[i] * (x - center[i]);
      const double log_density = std::log(scale[i]) - 0.5 * z * z - numerics::kLogSqrt2Pi;
      out[i] = std::exp(log_density + prefix[i] + suffix[i + 1]);
    }
  };

  PickDistribution dist;
  dist.probs = numerics::integrate_vector(integrand, k, lo, hi, breaks, spec);
  const double best = *std::max_element(mu.begin(), mu.end());
  for (std::size_t i = 0; i < k; ++i) {
    dist.probs[i] = std::clamp(dist.probs[i], 0.0, 1.0);
    dist.regret += (best - mu[i]) * dist.probs[i];
  }
  return dist;
}

std::vector<double> rank_cdf_from_probs(const BanditInstance& instance, const std::vector<double>& probs) {
  const auto perm = sort_order(instance.means());
  std::vector<double> cdf(perm.size(), 0.0);
  double tail = 0.0;
  for (std::size_t r = perm.size(); r-- > 0;) {
    tail += probs[perm[r]];
    cdf[r] = std::min(tail, 1.0);
  }
  cdf[0] = 1.0;
  return cdf;
}

std::vector<double> exact_rank_cdf(const BanditInstance& instance, const IndexPolicy& policy,
                                   const numerics::QuadratureSpec& spec) {
  return rank_cdf_from_probs(instance, exact_pick_probabilities(instance, policy, spec).probs);
}

double exact_regret(const BanditInstance& instance, const IndexPolicy& policy,
                    const numerics::QuadratureSpec& spec) {
  if (instance.arms() == 2) {
    return exact_regret_two_arm(instance, index_to_threshold(policy, instance.counts()));
  }
  return exact_pick_probabilities(instance, policy, spec).regret;
}

}  // namespace bpo
