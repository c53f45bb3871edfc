#include "bpo/sim.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <thread>

#include "bpo/format.hpp"

namespace bpo {

namespace {

std::uint64_t splitmix64(std::uint64_t z) {
  z += 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

// Pick tallies for one block of replications, one row per policy.
using Tally = std::vector<std::vector<std::uint64_t>>;

void run_block(const BanditInstance& instance, const std::vector<AnyPolicy>& policies, std::uint64_t seed,
               std::size_t begin, std::size_t end, Tally& tally) {
  LoggedStats stats;
  std::mt19937_64 rng;
  for (std::size_t r = begin; r < end; ++r) {
    rng.seed(replication_seed(seed, r));
    sample_stats_into(instance, rng, stats);
    for (std::size_t p = 0; p < policies.size(); ++p) {
      ++tally[p][select(policies[p], stats).zero_based()];
    }
  }
}

SimResult summarize(const BanditInstance& instance, std::vector<std::uint64_t> picks, std::size_t reps) {
  const auto view = sorted_view(instance);
  const double best = instance.means()[view.optimal_arm];
  // Regret of a replication is the gap of the picked arm, so the integer
  // tallies determine both moments exactly, independent of partitioning.
  double sum = 0.0, sum_sq = 0.0;
  for (std::size_t i = 0; i < picks.size(); ++i) {
    const double gap = best - instance.means()[i];
    sum += gap * static_cast<double>(picks[i]);
    sum_sq += gap * gap * static_cast<double>(picks[i]);
  }
  SimResult out;
  out.reps = reps;
  const double n = static_cast<double>(reps);
  out.mean_regret = sum / n;
  if (reps > 1) {
    const double var = std::max(0.0, (sum_sq - n * out.mean_regret * out.mean_regret) / (n - 1.0));
    out.std_error = std::sqrt(var / n);
  }
  out.rank_cdf.assign(picks.size(), 0.0);
  double tail = 0.0;
  for (std::size_t r = picks.size(); r-- > 0;) {
    tail += static_cast<double>(picks[view.perm[r]]);
    out.rank_cdf[r] = tail / n;
  }
  out.pick_counts = std::move(picks);
  return out;
}

void check_arity(const BanditInstance& instance, const AnyPolicy& policy) {
  const std::size_t k = instance.arms();
  if (const auto* index = std::get_if<IndexPolicy>(&policy); index && index->bias.size() != k) {
    throw Error(Errc::LengthMismatch, "policy bias has " + std::to_string(index->bias.size()) + " entries");
  }
  if (std::holds_alternative<ThresholdPolicy>(policy) && k != 2) {
    throw Error(Errc::WrongArity, "threshold rule needs two arms");
  }
}

}  // namespace

std::uint64_t replication_seed(std::uint64_t master_seed, std::uint64_t r) {
  return splitmix64(splitmix64(master_seed) + r);
}

std::vector<SimResult> mc_compare(const BanditInstance& instance, const std::vector<AnyPolicy>& policies,
                                  const SimConfig& config) {
  if (config.reps < 1) throw Error(Errc::DomainError, "reps must be at least 1");
  for (const auto& p : policies) check_arity(instance, p);
  const std::size_t k = instance.arms();

  std::size_t workers = config.threads == 0 ? std::max(1u, std::thread::hardware_concurrency()) : config.threads;
  workers = std::min(workers, config.reps);

  std::vector<Tally> tallies(workers, Tally(policies.size(), std::vector<std::uint64_t>(k, 0)));
  const std::size_t chunk = (config.reps + workers - 1) / workers;
  if (workers == 1) {
    run_block(instance, policies, config.master_seed, 0, config.reps, tallies[0]);
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < workers; ++w) {
      const std::size_t begin = std::min(config.reps, w * chunk);
      const std::size_t end = std::min(config.reps, begin + chunk);
      pool.emplace_back([&, w, begin, end] { run_block(instance, policies, config.master_seed, begin, end, tallies[w]); });
    }
  }

  std::vector<SimResult> results;
  for (std::size_t p = 0; p < policies.size(); ++p) {
    std::vector<std::uint64_t> merged(k, 0);
    for (const auto& t : tallies) {
      for (std::size_t i = 0; i < k; ++i) merged[i] += t[p][i];
    }
    results.push_back(summarize(instance, std::move(merged), config.reps));
  }
  return results;
}

SimResult mc_regret(const BanditInstance& instance, const AnyPolicy& policy, const SimConfig& config) {
  return mc_compare(instance, {policy}, config).front();
}

std::string sim_csv_header(std::size_t arms) {
  std::string header = "policy,reps,seed,mean_regret,std_error";
  for (std::size_t i = 1; i <= arms; ++i) header += ",pick_" + std::to_string(i);
  return header;
}

std::string sim_csv_row(const std::string& policy_label, const SimResult& result, std::uint64_t seed) {
  std::string row = policy_label + "," + std::to_string(result.reps) + "," + std::to_string(seed) + "," +
                    format_real(result.mean_regret) + "," + format_real(result.std_error);
  for (auto c : result.pick_counts) row += "," + std::to_string(c);
  return row;
}

}  // namespace bpo
