#include "bpo/harness.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <set>

#include "bpo/bounds.hpp"
#include "bpo/exact.hpp"
#include "bpo/sim.hpp"

namespace bpo::harness {

std::string hundred_arm_name(HundredArm config) {
  switch (config) {
    case HundredArm::Lcb1: return "lcb1";
    case HundredArm::Lcb2: return "lcb2";
    case HundredArm::Ucb1: return "ucb1";
    case HundredArm::Ucb2: return "ucb2";
  }
  return "unknown";
}

HundredArm parse_hundred_arm(const std::string& name) {
  for (auto c : {HundredArm::Lcb1, HundredArm::Lcb2, HundredArm::Ucb1, HundredArm::Ucb2}) {
    if (hundred_arm_name(c) == name) return c;
  }
  throw Error(Errc::ParseError, "unknown hundred-arm configuration \"" + name + "\"");
}

BanditInstance gen_hundred_arm(HundredArm config, double total_n) {
  if (!(total_n > 0.0)) throw Error(Errc::DomainError, "total_n must be positive");
  constexpr std::size_t k = 100;
  std::vector<std::size_t> favoured;
  double pi = 0.0;
  switch (config) {
    case HundredArm::Lcb1: favoured = {0}; pi = 0.3; break;
    case HundredArm::Lcb2: favoured = {9}; pi = 0.3; break;
    case HundredArm::Ucb1: favoured = {0}; pi = 1e-4; break;
    case HundredArm::Ucb2:
      favoured.resize(10);
      std::iota(favoured.begin(), favoured.end(), std::size_t{0});
      pi = 1e-4;
      break;
  }
  const double s1 = static_cast<double>(favoured.size());
  const double rest = total_n * (1.0 - pi * s1) / (static_cast<double>(k) - s1);
  std::vector<double> means(k), counts(k, rest);
  for (std::size_t i = 0; i < k; ++i) means[i] = 1.0 - 0.01 * static_cast<double>(i);
  for (std::size_t i : favoured) counts[i] = pi * total_n;
  for (double& n : counts) n = std::max(n, 1e-3);
  return validate_instance(std::move(means), std::move(counts), true);
}

std::vector<BanditInstance> gen_two_arm_sweep(double n1, double n2, double grid_lo, double grid_hi,
                                              std::size_t grid_points) {
  if (grid_points < 2) throw Error(Errc::DomainError, "two-arm sweep needs at least two grid points");
  std::vector<BanditInstance> out;
  const double step = (grid_hi - grid_lo) / static_cast<double>(grid_points - 1);
  for (std::size_t p = 0; p < grid_points; ++p) {
    const double g = p + 1 == grid_points ? grid_hi : grid_lo + step * static_cast<double>(p);
    out.push_back(validate_instance({0.0, g}, {n1, n2}, false));
  }
  return out;
}

namespace {

double log_binomial(std::size_t k, std::size_t m) {
  return std::lgamma(double(k) + 1.0) - std::lgamma(double(m) + 1.0) - std::lgamma(double(k - m) + 1.0);
}

std::vector<std::vector<std::size_t>> all_subsets(std::size_t k, std::size_t m) {
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> s(m);
  std::iota(s.begin(), s.end(), std::size_t{0});
  while (true) {
    out.push_back(s);
    std::size_t pos = m;
    while (pos > 0 && s[pos - 1] == k - m + pos - 1) --pos;
    if (pos == 0) break;
    ++s[pos - 1];
    for (std::size_t q = pos; q < m; ++q) s[q] = s[q - 1] + 1;
  }
  return out;
}

}  // namespace

std::vector<FractionInstance> gen_fraction_batch(const FractionBatchSpec& spec) {
  if (spec.m < 1 || spec.m >= spec.k) throw Error(Errc::DomainError, "need 1 <= m < k");
  std::mt19937_64 rng(spec.seed);
  std::normal_distribution<double> noise(0.0, 1.0);
  const double kd = static_cast<double>(spec.k);
  const bool exhaustive = log_binomial(spec.k, spec.m) <= std::log(static_cast<double>(spec.n_subsets)) + 1e-9;
  const auto every_subset = exhaustive ? all_subsets(spec.k, spec.m) : std::vector<std::vector<std::size_t>>{};

  std::vector<std::size_t> arms(spec.k);
  std::iota(arms.begin(), arms.end(), std::size_t{0});

  std::vector<FractionInstance> out;
  for (std::size_t v = 0; v < spec.n_mu; ++v) {
    std::vector<double> means(spec.k);
    for (std::size_t i = 0; i < spec.k; ++i) {
      means[i] = static_cast<double>(i) / (2.0 * (kd - 1.0)) + 0.25 + spec.noise_std * noise(rng);
    }
    std::vector<std::vector<std::size_t>> subsets = every_subset;
    if (!exhaustive) {
      std::set<std::vector<std::size_t>> seen;
      while (subsets.size() < spec.n_subsets) {
        std::vector<std::size_t> s;
        std::sample(arms.begin(), arms.end(), std::back_inserter(s), spec.m, rng);
        if (seen.insert(s).second) subsets.push_back(std::move(s));
      }
    }
    for (auto& s : subsets) {
      std::vector<double> counts(spec.k, 1.0);
      for (std::size_t i : s) counts[i] = 100.0;
      auto instance = validate_instance(means, std::move(counts), false);
      out.push_back(FractionInstance{means, std::move(s), std::move(instance)});
    }
  }
  return out;
}

std::string algorithm_name(Algorithm alg) {
  switch (alg) {
    case Algorithm::Greedy: return "greedy";
    case Algorithm::Lcb: return "lcb";
    case Algorithm::Ucb: return "ucb";
  }
  return "unknown";
}

IndexPolicy algorithm_policy(Algorithm alg, double delta, const BanditInstance& instance) {
  switch (alg) {
    case Algorithm::Greedy: return make_index_policy(PolicyDescriptor::greedy(), instance.counts());
    case Algorithm::Lcb: return make_index_policy(PolicyDescriptor::lcb(delta), instance.counts());
    case Algorithm::Ucb: return make_index_policy(PolicyDescriptor::ucb(delta), instance.counts());
  }
  throw Error(Errc::DomainError, "unknown algorithm");
}

namespace {

std::vector<AnyPolicy> three_policies(double delta, const BanditInstance& instance) {
  std::vector<AnyPolicy> out;
  for (auto alg : kAlgorithms) out.emplace_back(algorithm_policy(alg, delta, instance));
  return out;
}

}  // namespace

FractionSummary run_fraction(const FractionRunSpec& spec) {
  if (spec.outer_runs < 1) throw Error(Errc::DomainError, "outer_runs must be at least 1");
  FractionSummary summary;
  summary.k = spec.k;
  summary.m = spec.m;
  constexpr std::size_t kAlgs = std::size(kAlgorithms);

  for (std::size_t run = 0; run < spec.outer_runs; ++run) {
    const std::uint64_t run_seed = replication_seed(spec.seed, run);
    const auto batch =
        gen_fraction_batch({spec.k, spec.m, spec.noise_std, spec.n_mu, spec.n_subsets, run_seed});
    std::vector<double> wins(kAlgs, 0.0);
    for (std::size_t idx = 0; idx < batch.size(); ++idx) {
      const auto& inst = batch[idx].instance;
      const auto results =
          mc_compare(inst, three_policies(spec.delta, inst), {spec.reps, replication_seed(run_seed ^ 0x5A5A5A5AULL, idx), 1});
      std::size_t best = 0;
      bool tie = false;
      for (std::size_t a = 1; a < kAlgs; ++a) {
        if (results[a].mean_regret < results[best].mean_regret) {
          best = a;
          tie = false;
        } else if (results[a].mean_regret == results[best].mean_regret) {
          tie = true;
        }
      }
      if (!tie) wins[best] += 1.0;
    }
    for (double& w : wins) w /= static_cast<double>(batch.size());
    summary.per_run.push_back(std::move(wins));
  }

  const double runs = static_cast<double>(spec.outer_runs);
  summary.mean.assign(kAlgs, 0.0);
  summary.std_dev.assign(kAlgs, 0.0);
  for (std::size_t a = 0; a < kAlgs; ++a) {
    for (const auto& row : summary.per_run) summary.mean[a] += row[a] / runs;
    if (spec.outer_runs > 1) {
      double ss = 0.0;
      for (const auto& row : summary.per_run) ss += (row[a] - summary.mean[a]) * (row[a] - summary.mean[a]);
      summary.std_dev[a] = std::sqrt(ss / (runs - 1.0));
    }
  }
  return summary;
}

std::vector<DivergenceRow> run_divergence(const std::vector<double>& n1_list) {
  std::vector<DivergenceRow> rows;
  for (double n1 : n1_list) {
    const auto dc = divergence_construction(n1);
    DivergenceRow row;
    row.n1 = n1;
    row.delta = dc.delta;
    row.ucb_regret = exact_regret(dc.instance, algorithm_policy(Algorithm::Ucb, dc.delta, dc.instance));
    row.greedy_regret = exact_regret(dc.instance, algorithm_policy(Algorithm::Greedy, dc.delta, dc.instance));
    row.lcb_regret = exact_regret(dc.instance, algorithm_policy(Algorithm::Lcb, dc.delta, dc.instance));
    row.ucb_weighted = weighted_ratio(row.ucb_regret, dc.instance);
    row.greedy_weighted = weighted_ratio(row.greedy_regret, dc.instance);
    row.lcb_weighted = weighted_ratio(row.lcb_regret, dc.instance);
    row.lcb_weighted_per_sqrt_log = row.lcb_weighted / std::sqrt(std::log(dc.instance.total_count()));
    rows.push_back(row);
  }
  return rows;
}

std::vector<CurveRow> reproduce_hundred_arm(HundredArm config, const std::vector<double>& totals, double delta,
                                            std::size_t reps, std::uint64_t seed,
                                            const numerics::QuadratureSpec& quad) {
  std::vector<CurveRow> rows;
  for (std::size_t t = 0; t < totals.size(); ++t) {
    const auto inst = gen_hundred_arm(config, totals[t]);
    const auto policies = three_policies(delta, inst);
    const auto mc = mc_compare(inst, policies, {reps, replication_seed(seed, t), 1});
    for (std::size_t a = 0; a < std::size(kAlgorithms); ++a) {
      const auto exact = exact_pick_probabilities(inst, std::get<IndexPolicy>(policies[a]), quad);
      rows.push_back({totals[t], kAlgorithms[a], exact.regret, mc[a].mean_regret, mc[a].std_error});
    }
  }
  return rows;
}

std::vector<CurveRow> reproduce_two_arm(double n1, double n2, std::size_t grid_points, double delta,
                                        std::size_t reps, std::uint64_t seed) {
  const auto sweep = gen_two_arm_sweep(n1, n2, -1.0, 1.0, grid_points);
  std::vector<CurveRow> rows;
  // reversed so the mu_1 - mu_2 column ascends
  for (std::size_t p = sweep.size(); p-- > 0;) {
    const auto& inst = sweep[p];
    const double gap = inst.means()[0] - inst.means()[1];
    const auto policies = three_policies(delta, inst);
    const auto mc = mc_compare(inst, policies, {reps, replication_seed(seed, p), 1});
    for (std::size_t a = 0; a < std::size(kAlgorithms); ++a) {
      const double exact = exact_regret(inst, std::get<IndexPolicy>(policies[a]));
      rows.push_back({gap, kAlgorithms[a], exact, mc[a].mean_regret, mc[a].std_error});
    }
  }
  return rows;
}

std::vector<HardPairRow> run_hard_pair(double n1, double n2, const std::vector<double>& betas) {
  const auto pair = make_hard_pair(n1, n2);
  const double root_n_min = std::sqrt(std::min(n1, n2));
  const double greedy = exact_regret_two_arm(pair.theta1, 0.0);
  std::vector<HardPairRow> rows;
  for (double beta : betas) {
    HardPairRow row;
    row.beta = beta;
    row.regret_theta1 = exact_regret_two_arm(pair.theta1, beta / root_n_min);
    row.regret_theta2 = exact_regret_two_arm(pair.theta2, beta / root_n_min);
    row.greedy_regret = greedy;
    if (beta > 0.0) {
      row.has_ratio = true;
      row.log_ratio = hard_pair_ratio(pair, beta).log_ratio;
      row.log_ratio_lower_bound = ratio_lower_bound_beta(std::min(n1, n2), beta).log_value;
    }
    rows.push_back(row);
  }
  return rows;
}

std::vector<double> parse_grid(const std::string& text) {
  const auto first = text.find(':');
  const auto second = first == std::string::npos ? std::string::npos : text.find(':', first + 1);
  if (second == std::string::npos) throw Error(Errc::ParseError, "grid must look like LO:HI:STEP");
  double lo = 0.0, hi = 0.0;
  try {
    lo = std::stod(text.substr(0, first));
    hi = std::stod(text.substr(first + 1, second - first - 1));
  } catch (const std::exception&) {
    throw Error(Errc::ParseError, "grid bounds in \"" + text + "\" are not numbers");
  }
  const std::string step_text = text.substr(second + 1);
  std::vector<double> out;
  if (step_text == "geometric") {
    if (!(lo > 0.0) || hi < lo) throw Error(Errc::ParseError, "geometric grid needs 0 < LO <= HI");
    for (double v = lo; v <= hi * (1.0 + 1e-12); v *= 2.0) out.push_back(v);
    return out;
  }
  double step = 0.0;
  try {
    step = std::stod(step_text);
  } catch (const std::exception&) {
    throw Error(Errc::ParseError, "grid step \"" + step_text + "\" is not a number");
  }
  if (!(step > 0.0) || hi < lo) throw Error(Errc::ParseError, "grid needs STEP > 0 and LO <= HI");
  const auto n = static_cast<std::size_t>(std::floor((hi - lo) / step + 1e-9)) + 1;
  for (std::size_t i = 0; i < n; ++i) out.push_back(lo + step * static_cast<double>(i));
  return out;
}

}  // namespace bpo::harness
