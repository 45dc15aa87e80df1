#pragma once

#include <cstddef>
#include <vector>

#include "dap/election.hpp"

namespace dap {

/// 2x2 contingency counts of two ballots: n11 + n10 + n01 + n00 = m.
struct PairCounts {
  std::size_t n11 = 0;
  std::size_t n10 = 0;
  std::size_t n01 = 0;
  std::size_t n00 = 0;
};

PairCounts pair_counts(const Ballot& u, const Ballot& v);

// All per-pair metrics throw std::invalid_argument on length mismatch.
std::size_t hamming(const Ballot& u, const Ballot& v);

/// 1 - |u and v| / |u or v|; two empty ballots are at distance 0.
double jaccard(const Ballot& u, const Ballot& v);

/// Phi coefficient from the contingency counts. Defined as 1 when either
/// ballot is constant (all zeros or all ones).
double pcc(const Ballot& u, const Ballot& v);
double pcc(const PairCounts& c);

/// 1 - ham / (2 m p (1 - p)); equals pcc(u, v) when |A(u)| = |A(v)| = p m.
/// Throws std::invalid_argument unless 0 < p < 1.
double pcc_from_hamming(double p, std::size_t m, std::size_t ham);

/// Dense n x n matrix, row-major.
template <class T>
class SquareMatrix {
 public:
  SquareMatrix() = default;
  explicit SquareMatrix(std::size_t n, T init = T{}) : n_(n), data_(n * n, init) {}

  std::size_t size() const noexcept { return n_; }
  T& operator()(std::size_t i, std::size_t j) noexcept { return data_[i * n_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const noexcept { return data_[i * n_ + j]; }
  const std::vector<T>& data() const noexcept { return data_; }

 private:
  std::size_t n_ = 0;
  std::vector<T> data_;
};

// Batched all-pairs kernels over the voters of an election. Rows are filled
// independently, so the output does not depend on the worker count.
SquareMatrix<std::uint32_t> hamming_matrix(const Election& e);
SquareMatrix<double> pcc_matrix(const Election& e);
/// 1 - jaccard(u, v) for every pair.
SquareMatrix<double> jaccard_similarity_matrix(const Election& e);

}  // namespace dap
