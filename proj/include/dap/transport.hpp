#pragma once

#include <span>
#include <vector>

namespace dap {

struct TransportResult {
  double cost = 0.0;
  /// flow[i * num_sinks + j] shipped from source i to sink j.
  std::vector<double> flow;
};

/// Balanced transportation problem: ship supply[i] out of every source and
/// demand[j] into every sink at cost[i * sinks + j] per unit, minimizing the
/// total. Solved with successive shortest paths (Dijkstra with potentials on
/// the dense residual graph). Amounts may be fractional.
///
/// Throws std::invalid_argument if totals differ by more than a relative
/// 1e-9, any amount is negative, or cost has the wrong size.
TransportResult solve_transport(std::span<const double> supply, std::span<const double> demand,
                                std::span<const double> cost);

}  // namespace dap
