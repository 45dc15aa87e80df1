#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "dap/election.hpp"
#include "dap/generators.hpp"
#include "dap/mds.hpp"
#include "dap/metrics.hpp"

namespace dap {

/// The thirteen indices reported per election, in table order.
enum class IndexId {
  satr,
  av_agr,
  cntr_agr,
  pair_agr,
  pcc_agr,
  jacc_agr,
  pccplus_agr,
  cntr_div,
  pcc_div,
  out_div,
  cntr_pol,
  pcc_pol,
  pair_pol,
};

inline constexpr std::array<IndexId, 13> kAllIndices = {
    IndexId::satr,     IndexId::av_agr,  IndexId::cntr_agr, IndexId::pair_agr, IndexId::pcc_agr,
    IndexId::jacc_agr, IndexId::pccplus_agr, IndexId::cntr_div, IndexId::pcc_div, IndexId::out_div,
    IndexId::cntr_pol, IndexId::pcc_pol, IndexId::pair_pol,
};

std::string_view to_string(IndexId id);
std::optional<IndexId> parse_index(std::string_view name);

/// cntr-div/pol use k-medoids under Hamming distance with Central
/// Agreement; pcc-div/pol use spectral clustering with PCC Agreement.
/// Sub-seeds for the two clusterers and the out-div sampler are derived from
/// `seed`, so requesting a subset does not change any value.
std::vector<double> compute_indices(const Election& e, std::span<const IndexId> ids, std::uint64_t seed);
double compute_index(const Election& e, IndexId id, std::uint64_t seed);

struct ResamplingMatrix {
  IndexId index = IndexId::pair_agr;
  std::vector<double> ps;    // 0.1 .. 0.9
  std::vector<double> phis;  // 0.0 .. 1.0
  std::vector<std::vector<double>> values;  // [p][phi], mean over samples
  std::size_t samples = 0;
};

ResamplingMatrix resampling_experiment(IndexId index, std::size_t m, std::size_t n, std::size_t samples,
                                       std::uint64_t seed);

struct TableRow {
  std::string label;
  std::vector<double> mean;
  std::vector<double> std;  // population standard deviation over samples
};

struct IndexTable {
  std::vector<IndexId> indices;
  std::vector<TableRow> rows;
};

/// Every spec is drawn `samples` times; the spec's own seed is replaced by
/// one derived from (seed, row, sample).
IndexTable index_table(const std::vector<CultureSpec>& specs, std::size_t samples, std::uint64_t seed,
                       std::span<const IndexId> ids = kAllIndices);

/// The fourteen compass elections of the reference table.
std::vector<CultureSpec> compass_specs(std::size_t m = 60, std::size_t n = 60);

struct FeatureVector {
  double agr = 0.0;
  double div = 0.0;
  double pol = 0.0;
};

using FeatureTriple = std::array<IndexId, 3>;
inline constexpr FeatureTriple kDefaultFeatures = {IndexId::pcc_agr, IndexId::pcc_div, IndexId::pcc_pol};

inline constexpr std::size_t kFeatureMaxCandidates = 200;
inline constexpr std::size_t kFeatureMaxVoters = 1000;

/// Subsamples to at most 200 candidates and 1000 voters, then evaluates the triple.
FeatureVector feature_vector(const Election& e, std::uint64_t seed, const FeatureTriple& triple = kDefaultFeatures);

double feature_distance(const FeatureVector& a, const FeatureVector& b);

/// Feature vectors of many elections; election i uses derive_seed(seed, {i}).
std::vector<FeatureVector> feature_vectors(const std::vector<Election>& elections, std::uint64_t seed,
                                           const FeatureTriple& triple = kDefaultFeatures);

SquareMatrix<double> feature_distances(const std::vector<FeatureVector>& features);

struct ElectionMap {
  std::vector<FeatureVector> features;
  SquareMatrix<double> distances;
  Embedding embedding;
};

ElectionMap build_map(const std::vector<Election>& elections, std::uint64_t seed,
                      const FeatureTriple& triple = kDefaultFeatures);

}  // namespace dap
