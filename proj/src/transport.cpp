#include "dap/transport.hpp"

#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace dap {

TransportResult solve_transport(std::span<const double> supply, std::span<const double> demand,
                                std::span<const double> cost) {
  const auto ns = supply.size();
  const auto nt = demand.size();
  if (cost.size() != ns * nt) throw std::invalid_argument("solve_transport: cost matrix has the wrong size");
  for (double s : supply) {
    if (!(s >= 0.0)) throw std::invalid_argument("solve_transport: negative supply");
  }
  for (double d : demand) {
    if (!(d >= 0.0)) throw std::invalid_argument("solve_transport: negative demand");
  }
  const double total_supply = std::accumulate(supply.begin(), supply.end(), 0.0);
  const double total_demand = std::accumulate(demand.begin(), demand.end(), 0.0);
  if (std::abs(total_supply - total_demand) > 1e-9 * std::max(1.0, total_supply)) {
    throw std::invalid_argument("solve_transport: supply and demand totals differ");
  }

  TransportResult result;
  result.flow.assign(ns * nt, 0.0);
  if (ns == 0 || nt == 0 || total_supply == 0.0) return result;

  const double tol = 1e-12 * total_supply;
  std::vector<double> rem_supply(supply.begin(), supply.end());
  std::vector<double> rem_demand(demand.begin(), demand.end());
  for (auto& s : rem_supply) if (s < tol) s = 0.0;
  for (auto& d : rem_demand) if (d < tol) d = 0.0;
  double outstanding = std::accumulate(rem_demand.begin(), rem_demand.end(), 0.0);

  // Nodes: sources [0, ns), sinks [ns, ns + nt). The virtual super-source has
  // potential 0 throughout; potentials of real nodes never exceed it.
  const auto nv = ns + nt;
  constexpr double kInf = std::numeric_limits<double>::infinity();
  constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();
  std::vector<double> potential(nv, 0.0);
  std::vector<double> dist(nv);
  std::vector<std::size_t> parent(nv);
  std::vector<char> done(nv);
  auto& flow = result.flow;

  while (outstanding > tol) {
    std::fill(dist.begin(), dist.end(), kInf);
    std::fill(parent.begin(), parent.end(), kNone);
    std::fill(done.begin(), done.end(), 0);
    for (std::size_t i = 0; i < ns; ++i) {
      if (rem_supply[i] > 0.0) dist[i] = -potential[i];
    }
    for (;;) {
      std::size_t u = kNone;
      for (std::size_t v = 0; v < nv; ++v) {
        if (!done[v] && dist[v] < kInf && (u == kNone || dist[v] < dist[u])) u = v;
      }
      if (u == kNone) break;
      done[u] = 1;
      if (u < ns) {
        for (std::size_t j = 0; j < nt; ++j) {
          const auto v = ns + j;
          if (done[v]) continue;
          const double nd = dist[u] + cost[u * nt + j] + potential[u] - potential[v];
          if (nd < dist[v]) {
            dist[v] = nd;
            parent[v] = u;
          }
        }
      } else {
        const auto j = u - ns;
        for (std::size_t i = 0; i < ns; ++i) {
          if (done[i] || flow[i * nt + j] <= 0.0) continue;
          const double nd = dist[u] - cost[i * nt + j] + potential[u] - potential[i];
          if (nd < dist[i]) {
            dist[i] = nd;
            parent[i] = u;
          }
        }
      }
    }

    std::size_t target = kNone;
    double best = kInf;
    for (std::size_t j = 0; j < nt; ++j) {
      const auto v = ns + j;
      if (rem_demand[j] <= 0.0 || dist[v] == kInf) continue;
      const double actual = dist[v] + potential[v];
      if (actual < best) {
        best = actual;
        target = v;
      }
    }
    if (target == kNone) throw std::runtime_error("solve_transport: no augmenting path");

    double finite_max = 0.0;
    for (double d : dist) if (d < kInf) finite_max = std::max(finite_max, d);
    for (std::size_t v = 0; v < nv; ++v) potential[v] += dist[v] < kInf ? dist[v] : finite_max;

    double delta = rem_demand[target - ns];
    std::size_t v = target;
    while (parent[v] != kNone) {
      const auto p = parent[v];
      if (p >= ns) delta = std::min(delta, flow[v * nt + (p - ns)]);  // reverse edge sink p -> source v
      v = p;
    }
    delta = std::min(delta, rem_supply[v]);

    rem_supply[v] -= delta;
    if (rem_supply[v] < tol) rem_supply[v] = 0.0;
    rem_demand[target - ns] -= delta;
    if (rem_demand[target - ns] < tol) rem_demand[target - ns] = 0.0;
    v = target;
    while (parent[v] != kNone) {
      const auto p = parent[v];
      if (p < ns) {
        flow[p * nt + (v - ns)] += delta;
      } else {
        auto& f = flow[v * nt + (p - ns)];
        f -= delta;
        if (f < tol) f = 0.0;
      }
      v = p;
    }
    outstanding = std::accumulate(rem_demand.begin(), rem_demand.end(), 0.0);
  }

  for (std::size_t k = 0; k < flow.size(); ++k) result.cost += flow[k] * cost[k];
  return result;
}

}  // namespace dap
