#include "dap/divpol.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

#include "dap/metrics.hpp"
#include "dap/rng.hpp"
#include "dap/transport.hpp"

namespace dap {

namespace {

constexpr std::size_t kDiversityMaxK = 5;

std::map<Ballot, std::size_t> ballot_counts(const std::vector<Ballot>& ballots) {
  std::map<Ballot, std::size_t> counts;
  for (const auto& b : ballots) ++counts[b];
  return counts;
}

double match_cost(const std::vector<std::pair<Ballot, double>>& sources,
                  const std::vector<std::pair<Ballot, double>>& sinks) {
  std::vector<double> supply;
  std::vector<double> demand;
  std::vector<double> cost;
  supply.reserve(sources.size());
  demand.reserve(sinks.size());
  cost.reserve(sources.size() * sinks.size());
  for (const auto& [b, mass] : sources) supply.push_back(mass);
  for (const auto& [b, mass] : sinks) demand.push_back(mass);
  for (const auto& [u, mu] : sources) {
    for (const auto& [v, mv] : sinks) cost.push_back(static_cast<double>(hamming(u, v)));
  }
  return solve_transport(supply, demand, cost).cost;
}

double sampled_distance(const Election& e, double p, const OuterDiversityConfig& cfg) {
  if (cfg.sample_multiplier == 0) throw std::invalid_argument("out_div: sample_multiplier must be >= 1");
  const auto m = e.num_candidates();
  const auto total = cfg.sample_multiplier * e.num_voters();
  const Rng root(cfg.seed);
  std::vector<Ballot> samples;
  samples.reserve(total);
  for (std::size_t s = 0; s < total; ++s) {
    Rng rng = root.substream(s);
    Ballot b(m);
    for (std::size_t j = 0; j < m; ++j) {
      if (rng.bernoulli(p)) b.set(j);
    }
    samples.push_back(std::move(b));
  }
  std::vector<std::pair<Ballot, double>> sources;
  for (const auto& [b, c] : ballot_counts(e.ballots())) {
    sources.emplace_back(b, static_cast<double>(c * cfg.sample_multiplier));
  }
  std::vector<std::pair<Ballot, double>> sinks;
  for (const auto& [b, c] : ballot_counts(samples)) sinks.emplace_back(b, static_cast<double>(c));
  return match_cost(sources, sinks) / (static_cast<double>(total) * static_cast<double>(m));
}

double exact_distance(const Election& e, double p) {
  const auto m = e.num_candidates();
  if (m > 20) throw std::invalid_argument("out_div: exact mode supports at most 20 candidates");
  const double n = static_cast<double>(e.num_voters());
  std::vector<std::pair<Ballot, double>> sources;
  for (const auto& [b, c] : ballot_counts(e.ballots())) sources.emplace_back(b, static_cast<double>(c) / n);
  std::vector<std::pair<Ballot, double>> universe;
  universe.reserve(std::size_t{1} << m);
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << m); ++mask) {
    Ballot b(m);
    std::size_t ones = 0;
    for (std::size_t j = 0; j < m; ++j) {
      if ((mask >> j) & 1u) {
        b.set(j);
        ++ones;
      }
    }
    const double weight =
        std::pow(p, static_cast<double>(ones)) * std::pow(1.0 - p, static_cast<double>(m - ones));
    universe.emplace_back(std::move(b), weight);
  }
  return match_cost(sources, universe) / static_cast<double>(m);
}

std::vector<Partition> ladder(const Election& e, const PartitionHeuristic& clusterer, std::uint64_t seed,
                              std::size_t max_k) {
  std::vector<std::size_t> ks;
  for (std::size_t k = 2; k <= max_k; ++k) ks.push_back(k);
  return clusterer.partitions(e, ks, seed);
}

}  // namespace

DivPol a_div_pol(const Election& e, AgreementIndex agr, const PartitionHeuristic& clusterer, std::uint64_t seed) {
  const double whole = agreement(agr, e);
  const auto parts = ladder(e, clusterer, seed, kDiversityMaxK);
  double sum = whole;
  double two_way = whole;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    const double w = weighted_cluster_agreement(e, parts[i], agr);
    sum += w;
    if (i == 0) two_way = std::max(whole, w);
  }
  DivPol out;
  out.div = std::clamp(1.0 - sum / static_cast<double>(kDiversityMaxK), 0.0, 1.0);
  out.pol = std::clamp(two_way - whole, 0.0, 1.0);
  return out;
}

double a_div(const Election& e, AgreementIndex agr, const PartitionHeuristic& clusterer, std::uint64_t seed) {
  return a_div_pol(e, agr, clusterer, seed).div;
}

double a_pol(const Election& e, AgreementIndex agr, const PartitionHeuristic& clusterer, std::uint64_t seed) {
  const double whole = agreement(agr, e);
  const auto parts = ladder(e, clusterer, seed, 2);
  const double two_way = std::max(whole, weighted_cluster_agreement(e, parts.front(), agr));
  return std::clamp(two_way - whole, 0.0, 1.0);
}

double pair_pol(const Election& e) {
  const auto dist = hamming_matrix(e);
  const double count = static_cast<double>(dist.data().size());
  double mean = 0.0;
  for (auto d : dist.data()) mean += d;
  mean /= count;
  double var = 0.0;
  for (auto d : dist.data()) var += (d - mean) * (d - mean);
  var /= count;
  return 2.0 * std::sqrt(var) / static_cast<double>(e.num_candidates());
}

double ham_single_to_unc(double p, double q) {
  if (!(p >= 0.0 && p <= 1.0 && q >= 0.0 && q <= 1.0)) {
    throw std::invalid_argument("ham_single_to_unc: p and q must lie in [0, 1]");
  }
  return p * (1.0 - q) + q * (1.0 - p);
}

double ham_to_weighted_universe(const Election& e, const OuterDiversityConfig& cfg) {
  const double p = stats(e).satr;
  bool exact = cfg.mode == OuterDiversityMode::exact;
  if (cfg.mode == OuterDiversityMode::automatic) exact = e.num_candidates() <= kExactOuterDiversityMaxCandidates;
  return exact ? exact_distance(e, p) : sampled_distance(e, p, cfg);
}

double out_div(const Election& e, const OuterDiversityConfig& cfg) {
  const auto total = e.total_approvals();
  if (total == 0 || total == e.num_voters() * e.num_candidates()) return 0.0;
  const double p = stats(e).satr;
  const double d = ham_to_weighted_universe(e, cfg);
  return std::clamp(1.0 - d / (2.0 * p * (1.0 - p)), 0.0, 1.0);
}

}  // namespace dap
