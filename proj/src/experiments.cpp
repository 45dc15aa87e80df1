#include "dap/experiments.hpp"

#include <cmath>
#include <memory>
#include <stdexcept>

#include "dap/agreement.hpp"
#include "dap/clustering.hpp"
#include "dap/divpol.hpp"
#include "dap/parallel.hpp"
#include "dap/rng.hpp"

namespace dap {

std::string_view to_string(IndexId id) {
  switch (id) {
    case IndexId::satr: return "satr";
    case IndexId::av_agr: return "av_agr";
    case IndexId::cntr_agr: return "cntr_agr";
    case IndexId::pair_agr: return "pair_agr";
    case IndexId::pcc_agr: return "pcc_agr";
    case IndexId::jacc_agr: return "jacc_agr";
    case IndexId::pccplus_agr: return "pccplus_agr";
    case IndexId::cntr_div: return "cntr_div";
    case IndexId::pcc_div: return "pcc_div";
    case IndexId::out_div: return "out_div";
    case IndexId::cntr_pol: return "cntr_pol";
    case IndexId::pcc_pol: return "pcc_pol";
    case IndexId::pair_pol: return "pair_pol";
  }
  return "?";
}

std::optional<IndexId> parse_index(std::string_view name) {
  for (auto id : kAllIndices) {
    if (to_string(id) == name) return id;
  }
  return std::nullopt;
}

std::vector<double> compute_indices(const Election& e, std::span<const IndexId> ids, std::uint64_t seed) {
  std::optional<DivPol> cntr, spectral;
  auto cntr_dp = [&] {
    if (!cntr) cntr = a_div_pol(e, AgreementIndex::cntr, KMedoidsHamming(), derive_seed(seed, {1}));
    return *cntr;
  };
  auto pcc_dp = [&] {
    if (!spectral) spectral = a_div_pol(e, AgreementIndex::pcc, SpectralPcc(), derive_seed(seed, {2}));
    return *spectral;
  };
  std::vector<double> out;
  out.reserve(ids.size());
  for (auto id : ids) {
    switch (id) {
      case IndexId::satr: out.push_back(stats(e).satr); break;
      case IndexId::av_agr: out.push_back(av_agr(e)); break;
      case IndexId::cntr_agr: out.push_back(cntr_agr(e)); break;
      case IndexId::pair_agr: out.push_back(pair_agr(e)); break;
      case IndexId::pcc_agr: out.push_back(pcc_agr(e)); break;
      case IndexId::jacc_agr: out.push_back(jacc_agr(e)); break;
      case IndexId::pccplus_agr: out.push_back(pccplus_agr(e)); break;
      case IndexId::cntr_div: out.push_back(cntr_dp().div); break;
      case IndexId::pcc_div: out.push_back(pcc_dp().div); break;
      case IndexId::cntr_pol: out.push_back(cntr_dp().pol); break;
      case IndexId::pcc_pol: out.push_back(pcc_dp().pol); break;
      case IndexId::out_div: {
        OuterDiversityConfig cfg;
        cfg.seed = derive_seed(seed, {3});
        out.push_back(out_div(e, cfg));
        break;
      }
      case IndexId::pair_pol: out.push_back(pair_pol(e)); break;
    }
  }
  return out;
}

double compute_index(const Election& e, IndexId id, std::uint64_t seed) {
  const IndexId one[] = {id};
  return compute_indices(e, one, seed).front();
}

ResamplingMatrix resampling_experiment(IndexId index, std::size_t m, std::size_t n, std::size_t samples,
                                       std::uint64_t seed) {
  if (samples == 0) throw std::invalid_argument("resampling_experiment: samples must be >= 1");
  ResamplingMatrix out;
  out.index = index;
  out.samples = samples;
  for (int i = 1; i <= 9; ++i) out.ps.push_back(i / 10.0);
  for (int j = 0; j <= 10; ++j) out.phis.push_back(j / 10.0);
  const auto rows = out.ps.size(), cols = out.phis.size();
  std::vector<double> draws(rows * cols * samples);
  parallel_for(draws.size(), [&](std::size_t t) {
    const auto i = t / (cols * samples);
    const auto j = (t / samples) % cols;
    const auto s = t % samples;
    const auto e = gen_resampling(m, n, out.ps[i], out.phis[j], derive_seed(seed, {i, j, s}));
    draws[t] = compute_index(e, index, derive_seed(seed, {i, j, s, 1}));
  });
  out.values.assign(rows, std::vector<double>(cols, 0.0));
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) {
      double sum = 0.0;
      for (std::size_t s = 0; s < samples; ++s) sum += draws[(i * cols + j) * samples + s];
      out.values[i][j] = sum / static_cast<double>(samples);
    }
  }
  return out;
}

IndexTable index_table(const std::vector<CultureSpec>& specs, std::size_t samples, std::uint64_t seed,
                       std::span<const IndexId> ids) {
  if (samples == 0) throw std::invalid_argument("index_table: samples must be >= 1");
  for (const auto& s : specs) validate(s);
  std::vector<std::vector<double>> draws(specs.size() * samples);
  parallel_for(draws.size(), [&](std::size_t t) {
    const auto r = t / samples, s = t % samples;
    auto spec = specs[r];
    spec.seed = derive_seed(seed, {r, s, 0});
    draws[t] = compute_indices(generate(spec), ids, derive_seed(seed, {r, s, 1}));
  });
  IndexTable table;
  table.indices.assign(ids.begin(), ids.end());
  for (std::size_t r = 0; r < specs.size(); ++r) {
    TableRow row;
    row.label = specs[r].label.empty() ? describe(specs[r]) : specs[r].label;
    row.mean.assign(ids.size(), 0.0);
    row.std.assign(ids.size(), 0.0);
    for (std::size_t c = 0; c < ids.size(); ++c) {
      double sum = 0.0;
      for (std::size_t s = 0; s < samples; ++s) sum += draws[r * samples + s][c];
      const double mean = sum / static_cast<double>(samples);
      double var = 0.0;
      for (std::size_t s = 0; s < samples; ++s) {
        const double dlt = draws[r * samples + s][c] - mean;
        var += dlt * dlt;
      }
      row.mean[c] = mean;
      row.std[c] = std::sqrt(var / static_cast<double>(samples));
    }
    table.rows.push_back(std::move(row));
  }
  return table;
}

std::vector<CultureSpec> compass_specs(std::size_t m, std::size_t n) {
  auto make = [&](Family f, std::string label) {
    CultureSpec s;
    s.family = f;
    s.m = m;
    s.n = n;
    s.label = std::move(label);
    return s;
  };
  auto noisy = [&](CultureSpec base, double phi, std::string label) {
    auto s = make(Family::noisy, std::move(label));
    s.phi = phi;
    s.base = std::make_shared<const CultureSpec>(std::move(base));
    return s;
  };
  std::vector<CultureSpec> out;
  auto id = make(Family::p_id, "1/3-ID");
  id.p = 1.0 / 3.0;
  out.push_back(id);
  auto two = make(Family::k_party, "2-Party");
  two.k = 2;
  out.push_back(two);
  out.push_back(noisy(two, 0.6, "N(2-Party,0.6)"));
  auto three = make(Family::k_party, "3-Party");
  three.k = 3;
  out.push_back(three);
  auto four = make(Family::k_party, "4-Party");
  four.k = 4;
  out.push_back(four);
  auto xy = make(Family::xy_two_party, "(1/3,1/3)-2-Party");
  xy.x = 19.0 / 60.0;
  xy.y = 1.0 / 3.0;
  out.push_back(xy);
  out.push_back(make(Family::cyclic, "Cyclic"));
  out.push_back(make(Family::diagonal, "Diagonal"));
  const auto tri = make(Family::triangle, "Triangle");
  out.push_back(tri);
  out.push_back(noisy(tri, 0.6, "N(Triangle,0.6)"));
  auto idic = make(Family::id_ic, "1/2-ID/IC");
  idic.p = 0.5;
  out.push_back(idic);
  auto ic = make(Family::p_ic, "1/2-IC");
  ic.p = 0.5;
  out.push_back(ic);
  auto ic4 = make(Family::p_ic, "1/4-IC");
  ic4.p = 0.25;
  out.push_back(ic4);
  out.push_back(make(Family::lin_ic, "Lin-IC"));
  return out;
}

FeatureVector feature_vector(const Election& e, std::uint64_t seed, const FeatureTriple& triple) {
  const auto small = subsample(e, kFeatureMaxCandidates, kFeatureMaxVoters, derive_seed(seed, {0}));
  const auto v = compute_indices(small, triple, derive_seed(seed, {1}));
  return {v[0], v[1], v[2]};
}

double feature_distance(const FeatureVector& a, const FeatureVector& b) {
  const double dx = a.agr - b.agr, dy = a.div - b.div, dz = a.pol - b.pol;
  return std::sqrt(dx * dx + dy * dy + dz * dz);
}

std::vector<FeatureVector> feature_vectors(const std::vector<Election>& elections, std::uint64_t seed,
                                           const FeatureTriple& triple) {
  std::vector<FeatureVector> out(elections.size());
  parallel_for(elections.size(), [&](std::size_t i) { out[i] = feature_vector(elections[i], derive_seed(seed, {i}), triple); });
  return out;
}

SquareMatrix<double> feature_distances(const std::vector<FeatureVector>& f) {
  SquareMatrix<double> d(f.size(), 0.0);
  for (std::size_t i = 0; i < f.size(); ++i) {
    for (std::size_t j = i + 1; j < f.size(); ++j) d(i, j) = d(j, i) = feature_distance(f[i], f[j]);
  }
  return d;
}

ElectionMap build_map(const std::vector<Election>& elections, std::uint64_t seed, const FeatureTriple& triple) {
  ElectionMap map;
  map.features = feature_vectors(elections, seed, triple);
  map.distances = feature_distances(map.features);
  map.embedding = mds_embed(map.distances, derive_seed(seed, {1u << 20}));
  return map;
}

}  // namespace dap
