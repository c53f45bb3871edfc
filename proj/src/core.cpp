#include "bpo/core.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace bpo {

namespace {

void check_entries(std::span<const double> means, std::span<const double> counts) {
  if (means.size() != counts.size()) {
    throw Error(Errc::LengthMismatch, "means has " + std::to_string(means.size()) +
                                          " entries, counts has " + std::to_string(counts.size()));
  }
  for (std::size_t i = 0; i < means.size(); ++i) {
    if (!std::isfinite(means[i]) || !std::isfinite(counts[i])) {
      throw Error(Errc::NonFiniteEntry, "arm " + std::to_string(i + 1));
    }
    if (counts[i] <= 0.0) {
      throw Error(Errc::NonPositiveCount, "arm " + std::to_string(i + 1));
    }
  }
}

}  // namespace

double BanditInstance::total_count() const noexcept {
  return std::accumulate(counts_.begin(), counts_.end(), 0.0);
}

double BanditInstance::min_count() const noexcept {
  return *std::min_element(counts_.begin(), counts_.end());
}

BanditInstance validate_instance(std::vector<double> means, std::vector<double> counts,
                                 bool strict) {
  check_entries(means, counts);
  if (means.size() < 2) {
    throw Error(Errc::TooFewArms, "need at least two arms, got " + std::to_string(means.size()));
  }
  if (strict) {
    for (std::size_t i = 0; i < means.size(); ++i) {
      if (means[i] < 0.0 || means[i] > 1.0) {
        throw Error(Errc::MeanOutOfRange, "arm " + std::to_string(i + 1) + " mean outside [0,1]");
      }
    }
  }
  return BanditInstance(std::move(means), std::move(counts));
}

std::vector<std::size_t> sort_order(std::span<const double> means) {
  std::vector<std::size_t> perm(means.size());
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  std::stable_sort(perm.begin(), perm.end(),
                   [&](std::size_t a, std::size_t b) { return means[a] > means[b]; });
  return perm;
}

SortedView sorted_view(const BanditInstance& instance) {
  const auto& means = instance.means();
  SortedView view;
  view.perm = sort_order(means);
  view.optimal_arm = view.perm.front();
  const double best = means[view.optimal_arm];
  view.gaps.reserve(means.size());
  for (std::size_t arm : view.perm) view.gaps.push_back(best - means[arm]);
  view.delta_max = view.gaps.back();
  for (double g : view.gaps) {
    if (g > 0.0) {
      view.delta_min = g;
      break;
    }
  }
  return view;
}

LoggedStats make_stats(std::vector<double> emp_means, std::vector<double> counts) {
  check_entries(emp_means, counts);
  return LoggedStats{std::move(emp_means), std::move(counts)};
}

ArmIndex::ArmIndex(std::size_t one_based, std::size_t arms) : value_(one_based) {
  if (one_based < 1 || one_based > arms) {
    throw Error(Errc::DomainError,
                "arm index " + std::to_string(one_based) + " outside [1," + std::to_string(arms) + "]");
  }
}

double beta_delta(std::size_t k, double delta) {
  const double kd = static_cast<double>(k);
  if (k < 1 || !(delta > 0.0) || delta > kd) {
    throw Error(Errc::DomainError, "beta_delta needs 0 < delta <= k");
  }
  if (delta == kd) return 0.0;
  return std::sqrt(2.0 * std::log(kd / delta));
}

void sample_stats_into(const BanditInstance& instance, std::mt19937_64& rng, LoggedStats& out) {
  const auto& means = instance.means();
  const auto& counts = instance.counts();
  out.emp_means.resize(means.size());
  out.counts.assign(counts.begin(), counts.end());
  std::normal_distribution<double> normal(0.0, 1.0);
  for (std::size_t i = 0; i < means.size(); ++i) {
    out.emp_means[i] = means[i] + normal(rng) / std::sqrt(counts[i]);
  }
}

LoggedStats sample_stats(const BanditInstance& instance, std::mt19937_64& rng) {
  LoggedStats out;
  sample_stats_into(instance, rng, out);
  return out;
}

}  // namespace bpo
