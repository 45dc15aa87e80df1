#pragma once

#include <cstdint>

#include "dap/agreement.hpp"
#include "dap/clustering.hpp"
#include "dap/election.hpp"

namespace dap {

// Clustering-based diversity and polarization. The clusterer is asked for
// k = 2..5 (diversity) or k = 2 (polarization); k = 1 is the whole election.

/// 1 - (1/5) * sum_{k=1..5} weighted_cluster_agreement(clusterer(e, k)), clamped to [0, 1].
double a_div(const Election& e, AgreementIndex agr, const PartitionHeuristic& clusterer, std::uint64_t seed);

/// max(agr(e), weighted agreement of the clusterer's 2-partition) - agr(e), clamped to [0, 1].
double a_pol(const Election& e, AgreementIndex agr, const PartitionHeuristic& clusterer, std::uint64_t seed);

struct DivPol {
  double div = 0.0;
  double pol = 0.0;
};

/// Both indices from a single run of the clusterer (the k = 2 partition is shared).
DivPol a_div_pol(const Election& e, AgreementIndex agr, const PartitionHeuristic& clusterer, std::uint64_t seed);

/// (2 / m) times the population standard deviation of ham(u, v) over all
/// ordered voter pairs, self-pairs included.
double pair_pol(const Election& e);

/// Normalized expected Hamming distance between one ballot with a q fraction
/// of approvals and a ballot drawn from p-IC: p(1-q) + q(1-p).
double ham_single_to_unc(double p, double q);

enum class OuterDiversityMode {
  automatic,  // exact when m <= kExactOuterDiversityMaxCandidates, sampled otherwise
  sampled,
  exact,
};

inline constexpr std::size_t kExactOuterDiversityMaxCandidates = 8;

struct OuterDiversityConfig {
  /// Samples drawn from p-IC per ballot of the election (>= 1).
  std::size_t sample_multiplier = 5;
  std::uint64_t seed = 0;
  OuterDiversityMode mode = OuterDiversityMode::automatic;
};

/// Estimated (or, in exact mode, exact) optimal-matching distance
/// ham(V, p-U_C) per candidate, with p = satr(e). Exact mode enumerates all
/// 2^m ballots; it throws std::invalid_argument for m > 20.
double ham_to_weighted_universe(const Election& e, const OuterDiversityConfig& cfg);

/// 1 - ham(V, p-U_C) / (2p(1-p)), clamped to [0, 1]; 0 when p is 0 or 1.
double out_div(const Election& e, const OuterDiversityConfig& cfg = {});

}  // namespace dap
