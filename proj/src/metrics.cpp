#include "dap/metrics.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>

#include "dap/parallel.hpp"

namespace dap {

namespace {

void require_same_length(const Ballot& u, const Ballot& v) {
  if (u.size() != v.size()) throw std::invalid_argument("ballots have different lengths");
}

std::size_t intersection_count(const Ballot& u, const Ballot& v) noexcept {
  const auto a = u.words();
  const auto b = v.words();
  std::size_t c = 0;
  for (std::size_t w = 0; w < a.size(); ++w) c += static_cast<std::size_t>(std::popcount(a[w] & b[w]));
  return c;
}

PairCounts counts_from(std::size_t m, std::size_t lu, std::size_t lv, std::size_t both) noexcept {
  PairCounts c;
  c.n11 = both;
  c.n10 = lu - both;
  c.n01 = lv - both;
  c.n00 = m - lu - lv + both;
  return c;
}

// Upper triangle computed row by row, then mirrored.
template <class T, class PairFn>
SquareMatrix<T> all_pairs(const Election& e, PairFn&& fn) {
  const auto n = e.num_voters();
  SquareMatrix<T> out(n);
  parallel_for(n, [&](std::size_t i) {
    for (std::size_t j = i; j < n; ++j) out(i, j) = fn(i, j);
  });
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < i; ++j) out(i, j) = out(j, i);
  }
  return out;
}

}  // namespace

PairCounts pair_counts(const Ballot& u, const Ballot& v) {
  require_same_length(u, v);
  return counts_from(u.size(), u.count(), v.count(), intersection_count(u, v));
}

std::size_t hamming(const Ballot& u, const Ballot& v) {
  require_same_length(u, v);
  const auto a = u.words();
  const auto b = v.words();
  std::size_t d = 0;
  for (std::size_t w = 0; w < a.size(); ++w) d += static_cast<std::size_t>(std::popcount(a[w] ^ b[w]));
  return d;
}

double jaccard(const Ballot& u, const Ballot& v) {
  const auto c = pair_counts(u, v);
  const auto uni = c.n11 + c.n10 + c.n01;
  if (uni == 0) return 0.0;
  return 1.0 - static_cast<double>(c.n11) / static_cast<double>(uni);
}

double pcc(const PairCounts& c) {
  const double a = static_cast<double>(c.n10 + c.n11);  // |A(u)|
  const double b = static_cast<double>(c.n00 + c.n01);  // m - |A(u)|
  const double x = static_cast<double>(c.n01 + c.n11);  // |A(v)|
  const double y = static_cast<double>(c.n00 + c.n10);  // m - |A(v)|
  if (a == 0 || b == 0 || x == 0 || y == 0) return 1.0;
  const double num = static_cast<double>(c.n00) * static_cast<double>(c.n11) -
                     static_cast<double>(c.n01) * static_cast<double>(c.n10);
  const double r = num / (std::sqrt(a * b) * std::sqrt(x * y));
  return std::clamp(r, -1.0, 1.0);
}

double pcc(const Ballot& u, const Ballot& v) { return pcc(pair_counts(u, v)); }

double pcc_from_hamming(double p, std::size_t m, std::size_t ham) {
  if (!(p > 0.0 && p < 1.0)) throw std::invalid_argument("pcc_from_hamming: p must lie strictly between 0 and 1");
  if (m == 0) throw std::invalid_argument("pcc_from_hamming: m must be positive");
  return 1.0 - static_cast<double>(ham) / (2.0 * static_cast<double>(m) * p * (1.0 - p));
}

SquareMatrix<std::uint32_t> hamming_matrix(const Election& e) {
  const auto& bs = e.ballots();
  return all_pairs<std::uint32_t>(e, [&](std::size_t i, std::size_t j) {
    return static_cast<std::uint32_t>(hamming(bs[i], bs[j]));
  });
}

SquareMatrix<double> pcc_matrix(const Election& e) {
  const auto& bs = e.ballots();
  const auto m = e.num_candidates();
  std::vector<std::size_t> len(bs.size());
  for (std::size_t i = 0; i < bs.size(); ++i) len[i] = bs[i].count();
  return all_pairs<double>(e, [&](std::size_t i, std::size_t j) {
    if (i == j) return 1.0;
    return pcc(counts_from(m, len[i], len[j], intersection_count(bs[i], bs[j])));
  });
}

SquareMatrix<double> jaccard_similarity_matrix(const Election& e) {
  const auto& bs = e.ballots();
  std::vector<std::size_t> len(bs.size());
  for (std::size_t i = 0; i < bs.size(); ++i) len[i] = bs[i].count();
  return all_pairs<double>(e, [&](std::size_t i, std::size_t j) {
    const auto both = intersection_count(bs[i], bs[j]);
    const auto uni = len[i] + len[j] - both;
    return uni == 0 ? 1.0 : static_cast<double>(both) / static_cast<double>(uni);
  });
}

}  // namespace dap
