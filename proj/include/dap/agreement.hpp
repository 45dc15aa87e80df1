#pragma once

#include <optional>
#include <string_view>

#include "dap/election.hpp"

namespace dap {

/// A ballot agreeing with at least half of the voters on every candidate,
/// together with its summed Hamming distance to all ballots.
struct CentralVote {
  Ballot ballot;
  std::size_t chd = 0;
};

// Every index maps an election into [0, 1]. Elections with saturation 0 or 1
// (equivalently min(avl, rev_avl) = 0) are identity elections and score 1.

/// Mean over candidates of |1 - 2|A(c)|/n|.
double av_agr(const Election& e);

/// Candidate j is approved iff more than n/2 voters approve it; exact ties
/// resolve to disapproval (chd does not depend on that choice).
CentralVote central_vote(const Election& e);

/// 1 - chd / (n * min(avl, rev_avl)).
double cntr_agr(const Election& e);

/// Per-candidate O(nm) form of cntr_agr. Throws std::invalid_argument when
/// min(avl, rev_avl) = 0.
double cntr_agr_closed_form(const Election& e);

/// Hamming pairwise agreement evaluated from approval scores in O(nm).
double pair_agr(const Election& e);

/// Hamming pairwise agreement as the explicit double sum over voter pairs.
/// Throws std::invalid_argument when the saturation is 0 or 1.
double pair_agr_naive(const Election& e);

// Pairwise similarity averages over all ordered voter pairs, self-pairs included.
double jacc_agr(const Election& e);
double pcc_agr(const Election& e);
double pccplus_agr(const Election& e);

enum class AgreementIndex { av, cntr, pair, jacc, pcc, pccplus };

double agreement(AgreementIndex index, const Election& e);
std::string_view to_string(AgreementIndex index);
std::optional<AgreementIndex> parse_agreement_index(std::string_view name);

}  // namespace dap
