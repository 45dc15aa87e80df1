#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dap/election.hpp"

namespace dap {

// Deterministic special elections. Group sizes differ by at most one; when
// sizes do not divide evenly the earlier groups receive the extra members.

/// Every voter approves candidates 0..floor(pm)-1.
Election gen_p_id(std::size_t m, std::size_t n, double p);
/// k disjoint voter blocks, block i approving exactly candidate block i.
Election gen_k_party(std::size_t m, std::size_t n, std::size_t k);
/// 2-Party with round(x m) candidates and round(y n) voters in the first group.
Election gen_xy_two_party(std::size_t m, std::size_t n, double x, double y);
/// m-Party election with n = m.
Election gen_diagonal(std::size_t m);
/// Voter i approves the first i candidates (n = m).
Election gen_triangle(std::size_t m);
/// Voter 1 approves candidate 1 and the last floor(m/2)-1 candidates; each
/// next voter is the previous ballot shifted cyclically by one (n = m).
Election gen_cyclic(std::size_t m);

// Random cultures. Every voter draws from its own substream of the seed, so
// the result does not depend on generation order.

Election gen_p_ic(std::size_t m, std::size_t n, double p, std::uint64_t seed);
Election gen_iam(std::size_t m, std::size_t n, const std::vector<double>& probs, std::uint64_t seed);
/// Central ballot approves the first floor(pm) candidates; each entry is
/// copied with probability 1 - phi, otherwise redrawn as Bernoulli(p).
Election gen_resampling(std::size_t m, std::size_t n, double p, double phi, std::uint64_t seed);

/// 2D Euclidean variants, voters and candidates uniform in the unit square:
///   1: radius 0.117   2: radius 0.167   3: radius r_i ~ U[0, 0.5]
///   4: min(10, m) nearest candidates   5: U{1..m} nearest candidates
/// A radius override applies to variants 1 and 2.
Election gen_euclidean(std::size_t m, std::size_t n, int variant, std::uint64_t seed,
                       std::optional<double> radius = std::nullopt);

/// First half of the voters p-ID, second half p-IC.
Election gen_id_ic(std::size_t m, std::size_t n, double p, std::uint64_t seed);
/// Voter i (0-based) drawn from (1 - i/n)-IC.
Election gen_lin_ic(std::size_t m, std::size_t n, std::uint64_t seed);
/// Replaces each ballot v by a (q, phi)-resampling draw centred on v, q = |A(v)|/m.
Election gen_noisy(const Election& base, double phi, std::uint64_t seed);
/// Voters split uniformly at random into k groups; each group shares one p-IC ballot.
Election gen_id_mixture(std::size_t m, std::size_t n, std::size_t k, double p, std::uint64_t seed);
/// Voters split uniformly at random into k groups; each group samples from an
/// IAM with per-candidate probabilities drawn from U[0, 1].
Election gen_iam_mixture(std::size_t m, std::size_t n, std::size_t k, std::uint64_t seed);
/// k = 3 + Poisson(1) parties; voter and candidate counts per party are two
/// independent uniformly random compositions of n and m into k positive parts.
Election gen_uneven_party_list(std::size_t m, std::size_t n, std::uint64_t seed);

/// Uniformly random composition of total into k positive parts.
std::vector<std::size_t> random_composition(std::size_t total, std::size_t k, std::uint64_t seed);

enum class Family {
  p_id,
  k_party,
  xy_two_party,
  diagonal,
  triangle,
  cyclic,
  p_ic,
  iam,
  resampling,
  euclidean,
  id_ic,
  lin_ic,
  noisy,
  id_mixture,
  iam_mixture,
  uneven_party_list,
};

std::string_view to_string(Family f);
std::optional<Family> parse_family(std::string_view name);

/// Declarative description of one election draw. Unused parameters are ignored.
struct CultureSpec {
  Family family = Family::p_ic;
  std::size_t m = 0;
  std::size_t n = 0;  // 0 means n = m
  double p = 0.5;
  double phi = 0.0;
  double x = 0.5;
  double y = 0.5;
  std::size_t k = 2;
  int variant = 1;
  std::optional<double> radius;
  std::vector<double> probs;
  std::shared_ptr<const CultureSpec> base;  // for noisy
  std::uint64_t seed = 0;
  std::string label;
};

/// Throws std::invalid_argument describing the first out-of-range parameter.
void validate(const CultureSpec& spec);

Election generate(const CultureSpec& spec);

/// Short human-readable name such as "p_ic(p=0.5)".
std::string describe(const CultureSpec& spec);

}  // namespace dap
