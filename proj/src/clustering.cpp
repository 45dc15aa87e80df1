#include "dap/clustering.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cassert>
#include <limits>
#include <stdexcept>

#include "dap/metrics.hpp"
#include "dap/rng.hpp"

namespace dap {

namespace {

constexpr std::size_t kMaxMedoidIterations = 100;
constexpr std::size_t kKMeansInits = 10;
constexpr std::size_t kKMeansIterations = 50;

struct Clustering {
  std::vector<std::size_t> assignment;
  double cost = std::numeric_limits<double>::infinity();
};

std::size_t sample_weighted(const std::vector<double>& weights, Rng& rng) {
  double total = 0.0;
  for (double w : weights) total += w;
  double r = rng.uniform() * total;
  std::size_t last_positive = 0;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    if (weights[i] <= 0.0) continue;
    last_positive = i;
    if (r < weights[i]) return i;
    r -= weights[i];
  }
  return last_positive;
}

// Uniform pick among indices not yet chosen; used when every remaining point
// coincides with a chosen one.
std::size_t pick_unchosen(std::size_t n, const std::vector<std::size_t>& chosen, Rng& rng) {
  std::vector<std::size_t> free;
  for (std::size_t i = 0; i < n; ++i) {
    if (std::find(chosen.begin(), chosen.end(), i) == chosen.end()) free.push_back(i);
  }
  return free[static_cast<std::size_t>(rng.below(free.size()))];
}

Clustering kmedoids_once(const SquareMatrix<std::uint32_t>& dist, std::size_t k, Rng rng) {
  const auto n = dist.size();
  std::vector<std::size_t> medoids{static_cast<std::size_t>(rng.below(n))};
  std::vector<double> nearest(n);
  for (std::size_t i = 0; i < n; ++i) nearest[i] = dist(i, medoids[0]);
  while (medoids.size() < k) {
    std::vector<double> weights(n);
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      weights[i] = nearest[i] * nearest[i];
      total += weights[i];
    }
    const auto next = total > 0.0 ? sample_weighted(weights, rng) : pick_unchosen(n, medoids, rng);
    medoids.push_back(next);
    for (std::size_t i = 0; i < n; ++i) nearest[i] = std::min<double>(nearest[i], dist(i, next));
  }

  auto assign = [&](std::vector<std::size_t>& labels) {
    double cost = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      std::size_t best = 0;
      for (std::size_t c = 1; c < k; ++c) {
        if (dist(i, medoids[c]) < dist(i, medoids[best])) best = c;
      }
      // A medoid always belongs to its own cluster, even if another medoid is identical.
      for (std::size_t c = 0; c < k; ++c) {
        if (medoids[c] == i) best = c;
      }
      labels[i] = best;
      cost += dist(i, medoids[best]);
    }
    return cost;
  };

  Clustering current;
  current.assignment.assign(n, 0);
  current.cost = assign(current.assignment);
  for (std::size_t iter = 0; iter < kMaxMedoidIterations; ++iter) {
    auto candidate = medoids;
    for (std::size_t c = 0; c < k; ++c) {
      double best_sum = std::numeric_limits<double>::infinity();
      for (std::size_t i = 0; i < n; ++i) {
        if (current.assignment[i] != c) continue;
        double s = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
          if (current.assignment[j] == c) s += dist(i, j);
        }
        if (s < best_sum) {
          best_sum = s;
          candidate[c] = i;
        }
      }
    }
    const auto previous = medoids;
    medoids = candidate;
    std::vector<std::size_t> labels(n);
    const double cost = assign(labels);
    if (cost >= current.cost) {
      medoids = previous;
      break;
    }
    assert(cost < current.cost);
    current.assignment = std::move(labels);
    current.cost = cost;
  }
  return current;
}

Clustering kmeans_once(const Eigen::MatrixXd& x, std::size_t k, Rng rng) {
  const auto n = static_cast<Eigen::Index>(x.rows());
  const auto kk = static_cast<Eigen::Index>(k);
  Eigen::MatrixXd centers(kk, x.cols());
  std::vector<std::size_t> chosen{static_cast<std::size_t>(rng.below(static_cast<std::uint64_t>(n)))};
  centers.row(0) = x.row(static_cast<Eigen::Index>(chosen[0]));
  std::vector<double> nearest(static_cast<std::size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i) nearest[static_cast<std::size_t>(i)] = (x.row(i) - centers.row(0)).squaredNorm();
  for (Eigen::Index c = 1; c < kk; ++c) {
    double total = 0.0;
    for (double d : nearest) total += d;
    const auto next = total > 1e-15 ? sample_weighted(nearest, rng) : pick_unchosen(static_cast<std::size_t>(n), chosen, rng);
    chosen.push_back(next);
    centers.row(c) = x.row(static_cast<Eigen::Index>(next));
    for (Eigen::Index i = 0; i < n; ++i) {
      nearest[static_cast<std::size_t>(i)] =
          std::min(nearest[static_cast<std::size_t>(i)], (x.row(i) - centers.row(c)).squaredNorm());
    }
  }

  Clustering result;
  result.assignment.assign(static_cast<std::size_t>(n), k);
  for (std::size_t iter = 0; iter < kKMeansIterations; ++iter) {
    bool changed = false;
    for (Eigen::Index i = 0; i < n; ++i) {
      Eigen::Index best = 0;
      double best_d = (x.row(i) - centers.row(0)).squaredNorm();
      for (Eigen::Index c = 1; c < kk; ++c) {
        const double d = (x.row(i) - centers.row(c)).squaredNorm();
        if (d < best_d) {
          best_d = d;
          best = c;
        }
      }
      auto& slot = result.assignment[static_cast<std::size_t>(i)];
      if (slot != static_cast<std::size_t>(best)) {
        slot = static_cast<std::size_t>(best);
        changed = true;
      }
    }
    if (!changed) break;
    Eigen::MatrixXd sums = Eigen::MatrixXd::Zero(kk, x.cols());
    std::vector<std::size_t> counts(k, 0);
    for (Eigen::Index i = 0; i < n; ++i) {
      const auto c = result.assignment[static_cast<std::size_t>(i)];
      sums.row(static_cast<Eigen::Index>(c)) += x.row(i);
      ++counts[c];
    }
    for (Eigen::Index c = 0; c < kk; ++c) {
      if (counts[static_cast<std::size_t>(c)] > 0) {
        centers.row(c) = sums.row(c) / static_cast<double>(counts[static_cast<std::size_t>(c)]);
      }
    }
  }
  result.cost = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    result.cost += (x.row(i) - centers.row(static_cast<Eigen::Index>(result.assignment[static_cast<std::size_t>(i)]))).squaredNorm();
  }
  return result;
}

Partition kmeans_best(const Eigen::MatrixXd& x, std::size_t k, std::uint64_t seed) {
  Rng rng(seed);
  Clustering best;
  for (std::size_t init = 0; init < kKMeansInits; ++init) {
    auto c = kmeans_once(x, k, rng.substream(init));
    if (c.cost < best.cost) best = std::move(c);
  }
  return Partition(std::move(best.assignment), k);
}

}  // namespace

Partition::Partition(std::vector<std::size_t> assignment, std::size_t k) : assignment_(std::move(assignment)), k_(k) {
  if (k_ == 0) throw std::invalid_argument("Partition: k must be positive");
  std::vector<std::size_t> relabel(k_, k_);
  std::size_t next = 0;
  for (auto& a : assignment_) {
    if (a >= k_) throw std::invalid_argument("Partition: cluster id out of range");
    if (relabel[a] == k_) relabel[a] = next++;
    a = relabel[a];
  }
}

Partition Partition::single(std::size_t n) { return Partition(std::vector<std::size_t>(n, 0), 1); }

Partition Partition::singletons(std::size_t n, std::size_t k) {
  std::vector<std::size_t> a(n);
  for (std::size_t i = 0; i < n; ++i) a[i] = i;
  return Partition(std::move(a), std::max(k, n));
}

std::vector<std::vector<std::size_t>> Partition::members() const {
  std::vector<std::vector<std::size_t>> out(k_);
  for (std::size_t i = 0; i < assignment_.size(); ++i) out[assignment_[i]].push_back(i);
  return out;
}

double weighted_cluster_agreement(const Election& e, const Partition& p, AgreementIndex agr) {
  if (p.num_voters() != e.num_voters()) {
    throw std::invalid_argument("weighted_cluster_agreement: partition does not cover the election");
  }
  const double n = static_cast<double>(e.num_voters());
  double total = 0.0;
  for (const auto& cluster : p.members()) {
    if (cluster.empty()) continue;
    const double weight = static_cast<double>(cluster.size()) / n;
    if (cluster.size() == e.num_voters()) {
      total += weight * agreement(agr, e);
    } else {
      total += weight * agreement(agr, e.restrict_voters(cluster));
    }
  }
  return total;
}

std::vector<Partition> PartitionHeuristic::partitions(const Election& e, std::span<const std::size_t> ks,
                                                      std::uint64_t seed) const {
  std::vector<Partition> out;
  out.reserve(ks.size());
  for (auto k : ks) out.push_back(partition(e, k, seed));
  return out;
}

Partition KMedoidsHamming::partition(const Election& e, std::size_t k, std::uint64_t seed) const {
  const std::size_t ks[] = {k};
  return partitions(e, ks, seed).front();
}

std::vector<Partition> KMedoidsHamming::partitions(const Election& e, std::span<const std::size_t> ks,
                                                   std::uint64_t seed) const {
  const auto n = e.num_voters();
  std::vector<Partition> out;
  out.reserve(ks.size());
  SquareMatrix<std::uint32_t> dist;
  for (auto k : ks) {
    if (k == 0) throw std::invalid_argument("kmedoids: k must be positive");
    if (k == 1) {
      out.push_back(Partition::single(n));
      continue;
    }
    if (k >= n) {
      out.push_back(Partition::singletons(n, k));
      continue;
    }
    if (dist.size() == 0) dist = hamming_matrix(e);
    Rng rng(derive_seed(seed, {k}));
    Clustering best;
    for (std::size_t r = 0; r < std::max<std::size_t>(1, restarts_); ++r) {
      auto c = kmedoids_once(dist, k, rng.substream(r));
      if (c.cost < best.cost) best = std::move(c);
    }
    out.emplace_back(std::move(best.assignment), k);
  }
  return out;
}

Partition SpectralPcc::partition(const Election& e, std::size_t k, std::uint64_t seed) const {
  const std::size_t ks[] = {k};
  return partitions(e, ks, seed).front();
}

std::vector<Partition> SpectralPcc::partitions(const Election& e, std::span<const std::size_t> ks,
                                               std::uint64_t seed) const {
  const auto n = e.num_voters();
  std::vector<Partition> out;
  out.reserve(ks.size());
  std::optional<Eigen::MatrixXd> eigvecs;
  for (auto k : ks) {
    if (k == 0) throw std::invalid_argument("spectral: k must be positive");
    if (k == 1) {
      out.push_back(Partition::single(n));
      continue;
    }
    if (k >= n) {
      out.push_back(Partition::singletons(n, k));
      continue;
    }
    if (!eigvecs) {
      const auto pm = pcc_matrix(e);
      const auto nn = static_cast<Eigen::Index>(n);
      Eigen::MatrixXd affinity(nn, nn);
      for (Eigen::Index i = 0; i < nn; ++i) {
        for (Eigen::Index j = 0; j < nn; ++j) {
          const double r = pm(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
          affinity(i, j) = form_ == AffinityForm::rescaled ? 0.5 * (1.0 + r) : 1.0 + 0.5 * r;
        }
      }
      Eigen::VectorXd inv_sqrt_deg = affinity.rowwise().sum();
      for (Eigen::Index i = 0; i < nn; ++i) {
        inv_sqrt_deg(i) = inv_sqrt_deg(i) > 0.0 ? 1.0 / std::sqrt(inv_sqrt_deg(i)) : 0.0;
      }
      Eigen::MatrixXd laplacian =
          Eigen::MatrixXd::Identity(nn, nn) - inv_sqrt_deg.asDiagonal() * affinity * inv_sqrt_deg.asDiagonal();
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(laplacian);
      if (solver.info() != Eigen::Success) throw std::runtime_error("spectral: eigensolver failed");
      eigvecs = solver.eigenvectors();  // columns sorted by increasing eigenvalue
    }
    Eigen::MatrixXd embed = eigvecs->leftCols(static_cast<Eigen::Index>(k));
    for (Eigen::Index i = 0; i < embed.rows(); ++i) {
      const double norm = embed.row(i).norm();
      if (norm > 0.0) embed.row(i) /= norm;
    }
    out.push_back(kmeans_best(embed, k, derive_seed(seed, {k})));
  }
  return out;
}

Partition kmedoids_hamming(const Election& e, std::size_t k, std::uint64_t seed, std::size_t restarts) {
  return KMedoidsHamming(restarts).partition(e, k, seed);
}

Partition spectral_pcc(const Election& e, std::size_t k, std::uint64_t seed, AffinityForm form) {
  return SpectralPcc(form).partition(e, k, seed);
}

std::size_t medoid_cost(const Election& e, const Partition& p) {
  std::size_t total = 0;
  for (const auto& cluster : p.members()) {
    std::size_t best = std::numeric_limits<std::size_t>::max();
    for (auto i : cluster) {
      std::size_t s = 0;
      for (auto j : cluster) s += hamming(e.ballot(i), e.ballot(j));
      best = std::min(best, s);
    }
    if (!cluster.empty()) total += best;
  }
  return total;
}

}  // namespace dap
