#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "bpo/core.hpp"
#include "bpo/policies.hpp"

namespace bpo {

struct SimConfig {
  std::size_t reps = 1000;
  std::uint64_t master_seed = 0;
  std::size_t threads = 1;  // 0 = hardware concurrency
};

struct SimResult {
  double mean_regret = 0.0;
  double std_error = 0.0;
  std::vector<std::uint64_t> pick_counts;
  std::vector<double> rank_cdf;  // entry r estimates P(rank >= r + 1)
  std::size_t reps = 0;
};

/// Seed of replication r. The pair (master_seed, r) goes through two rounds
/// of the splitmix64 finalizer:
///   replication_seed = fmix(fmix(master_seed) + r),
///   fmix(z) = splitmix64 output for state z (golden-gamma increment included).
/// Each replication draws from std::mt19937_64 seeded with this value and
/// std::normal_distribution, so results depend only on (master_seed, r).
std::uint64_t replication_seed(std::uint64_t master_seed, std::uint64_t r);

/// Monte Carlo estimate of the simple regret of `policy` on `instance`.
SimResult mc_regret(const BanditInstance& instance, const AnyPolicy& policy, const SimConfig& config);

/// Several policies scored on the same per-replication statistics.
std::vector<SimResult> mc_compare(const BanditInstance& instance, const std::vector<AnyPolicy>& policies,
                                  const SimConfig& config);

/// CSV schema of one result row: policy,reps,seed,mean_regret,std_error,pick_1..pick_k.
std::string sim_csv_header(std::size_t arms);
std::string sim_csv_row(const std::string& policy_label, const SimResult& result, std::uint64_t seed);

}  // namespace bpo
