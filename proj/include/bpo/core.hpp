#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "bpo/error.hpp"

namespace bpo {

/// A k-armed Gaussian bandit instance: per-arm true means and (possibly
/// fractional) observation counts. Only constructible through
/// validate_instance, so every live value satisfies the invariants.
class BanditInstance {
 public:
  const std::vector<double>& means() const noexcept { return means_; }
  const std::vector<double>& counts() const noexcept { return counts_; }
  std::size_t arms() const noexcept { return means_.size(); }
  double total_count() const noexcept;
  double min_count() const noexcept;

 private:
  friend BanditInstance validate_instance(std::vector<double>, std::vector<double>, bool);
  BanditInstance(std::vector<double> means, std::vector<double> counts)
      : means_(std::move(means)), counts_(std::move(counts)) {}

  std::vector<double> means_;
  std::vector<double> counts_;
};

/// Checks lengths, finiteness, positive counts and k >= 2. Strict mode also
/// requires every mean to lie in [0, 1].
BanditInstance validate_instance(std::vector<double> means, std::vector<double> counts,
                                 bool strict = true);

/// Arms reordered by nonincreasing mean. Indices in `perm` are zero-based arm
/// positions; ties keep the original order.
struct SortedView {
  std::vector<std::size_t> perm;
  std::vector<double> gaps;
  double delta_max = 0.0;
  double delta_min = 0.0;  // smallest strictly positive gap, 0 when none
  std::size_t optimal_arm = 0;
};

SortedView sorted_view(const BanditInstance& instance);

/// Same ordering rule applied to a bare vector of means.
std::vector<std::size_t> sort_order(std::span<const double> means);

/// Empirical means with their counts: the sufficient statistic of the logged data.
struct LoggedStats {
  std::vector<double> emp_means;
  std::vector<double> counts;

  std::size_t arms() const noexcept { return emp_means.size(); }
};

LoggedStats make_stats(std::vector<double> emp_means, std::vector<double> counts);

/// One-based arm label, as reported to users.
class ArmIndex {
 public:
  ArmIndex(std::size_t one_based, std::size_t arms);
  static ArmIndex from_zero_based(std::size_t zero_based, std::size_t arms) {
    return ArmIndex(zero_based + 1, arms);
  }

  std::size_t value() const noexcept { return value_; }
  std::size_t zero_based() const noexcept { return value_ - 1; }

  friend bool operator==(ArmIndex, ArmIndex) = default;

 private:
  std::size_t value_;
};

/// sqrt(2 ln(k / delta)); zero at delta == k.
double beta_delta(std::size_t k, double delta);

/// Draws mu_hat_i ~ N(mu_i, 1 / n_i) independently per arm.
LoggedStats sample_stats(const BanditInstance& instance, std::mt19937_64& rng);

/// In-place variant reusing `out`'s storage; used on the simulation hot path.
void sample_stats_into(const BanditInstance& instance, std::mt19937_64& rng, LoggedStats& out);

}  // namespace bpo
