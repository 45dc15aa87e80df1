#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "dap/agreement.hpp"
#include "dap/election.hpp"

namespace dap {

/// Assignment of n voters to clusters 0..k-1. Cluster ids are numbered by
/// first appearance, so the ids in use always form a prefix of [0, k); when
/// k > n the trailing clusters stay empty.
class Partition {
 public:
  Partition(std::vector<std::size_t> assignment, std::size_t k);

  static Partition single(std::size_t n);
  static Partition singletons(std::size_t n, std::size_t k);

  std::size_t k() const noexcept { return k_; }
  std::size_t num_voters() const noexcept { return assignment_.size(); }
  std::size_t cluster_of(std::size_t voter) const { return assignment_.at(voter); }
  const std::vector<std::size_t>& assignment() const noexcept { return assignment_; }

  /// Voter indices of each cluster (k lists, possibly empty at the tail).
  std::vector<std::vector<std::size_t>> members() const;

  friend bool operator==(const Partition&, const Partition&) = default;

 private:
  std::vector<std::size_t> assignment_;
  std::size_t k_;
};

/// Sum over clusters of |V_i|/n times the agreement of the sub-election on
/// V_i (same candidate set). Empty clusters contribute nothing.
double weighted_cluster_agreement(const Election& e, const Partition& p, AgreementIndex agr);

/// A voter-partition heuristic. Both implementations are deterministic in
/// (election, k, seed). Requests with k > n return n singleton clusters.
class PartitionHeuristic {
 public:
  virtual ~PartitionHeuristic() = default;
  virtual Partition partition(const Election& e, std::size_t k, std::uint64_t seed) const = 0;

  /// One partition per requested k. Implementations may share work across k.
  virtual std::vector<Partition> partitions(const Election& e, std::span<const std::size_t> ks,
                                            std::uint64_t seed) const;
};

/// k-medoids under Hamming distance with medoids restricted to observed
/// ballots. Each restart seeds medoids k-means++ style (probability
/// proportional to squared distance to the nearest chosen medoid), then
/// alternates assignment and medoid update until the objective stops
/// decreasing or 100 iterations pass. The cheapest restart wins.
class KMedoidsHamming final : public PartitionHeuristic {
 public:
  explicit KMedoidsHamming(std::size_t restarts = 10) : restarts_(restarts) {}
  Partition partition(const Election& e, std::size_t k, std::uint64_t seed) const override;
  std::vector<Partition> partitions(const Election& e, std::span<const std::size_t> ks,
                                    std::uint64_t seed) const override;

 private:
  std::size_t restarts_;
};

enum class AffinityForm {
  rescaled,  // (1 + pcc) / 2, in [0, 1]
  literal,   // 1 + pcc / 2, in [0.5, 1.5]
};

/// Spectral clustering on the PCC affinity: symmetric normalized Laplacian,
/// eigenvectors of the k smallest eigenvalues, row-normalized, then k-means.
/// The eigendecomposition is shared across all k in partitions().
class SpectralPcc final : public PartitionHeuristic {
 public:
  explicit SpectralPcc(AffinityForm form = AffinityForm::rescaled) : form_(form) {}
  Partition partition(const Election& e, std::size_t k, std::uint64_t seed) const override;
  std::vector<Partition> partitions(const Election& e, std::span<const std::size_t> ks,
                                    std::uint64_t seed) const override;

 private:
  AffinityForm form_;
};

Partition kmedoids_hamming(const Election& e, std::size_t k, std::uint64_t seed, std::size_t restarts = 10);
Partition spectral_pcc(const Election& e, std::size_t k, std::uint64_t seed,
                       AffinityForm form = AffinityForm::rescaled);

/// Objective of k-medoids: sum of Hamming distances of voters to their
/// cluster medoid, where each cluster's medoid is its best member.
std::size_t medoid_cost(const Election& e, const Partition& p);

}  // namespace dap
