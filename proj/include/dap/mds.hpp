#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "dap/metrics.hpp"

namespace dap {

struct Embedding {
  std::vector<std::array<double, 2>> coords;
  /// Mean over pairs with true distance > 1e-9 of max(emb/true, true/emb).
  double distortion = 1.0;
  /// Raw stress sum_{i<j} (d_ij - |x_i - x_j|)^2 after every SMACOF step of
  /// the returned run, starting with its initial configuration.
  std::vector<double> stress_history;
};

/// Metric MDS into the plane by SMACOF (Guttman transform). The first run
/// starts from classical scaling of the double-centred squared distances,
/// four more from seeded Gaussian configurations; the run with the lowest
/// final stress is returned together with its stress history. Each run
/// takes at most 300 iterations and stops once a step lowers the stress by
/// less than 1e-9 relative. An axis left degenerate by classical scaling is
/// jittered with the seed.
///
/// Throws std::invalid_argument for an asymmetric matrix, a nonzero
/// diagonal, or a negative or non-finite entry.
Embedding mds_embed(const SquareMatrix<double>& distances, std::uint64_t seed);

double mean_distortion(const SquareMatrix<double>& distances, const std::vector<std::array<double, 2>>& coords);

}  // namespace dap
