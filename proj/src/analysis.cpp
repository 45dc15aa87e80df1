#include "dap/analysis.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace dap {

namespace {

constexpr double kUndefined = std::numeric_limits<double>::quiet_NaN();

long double std_long(std::span<const long double> x) {
  if (std::all_of(x.begin(), x.end(), [&](long double v) { return v == x[0]; })) return 0.0L;
  long double mean = 0.0L;
  for (auto v : x) mean += v;
  mean /= static_cast<long double>(x.size());
  long double var = 0.0L;
  for (auto v : x) var += (v - mean) * (v - mean);
  return std::sqrt(var / static_cast<long double>(x.size()));
}

long double covariance_long(std::span<const long double> x, std::span<const long double> y) {
  const auto n = static_cast<long double>(x.size());
  long double mx = 0.0L, my = 0.0L;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  long double s = 0.0L;
  for (std::size_t i = 0; i < x.size(); ++i) s += (x[i] - mx) * (y[i] - my);
  return s / n;
}

std::vector<long double> widen(std::span<const double> x) { return {x.begin(), x.end()}; }

std::int64_t tie_pairs(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  std::int64_t total = 0;
  for (std::size_t i = 0; i < v.size();) {
    std::size_t j = i;
    while (j < v.size() && v[j] == v[i]) ++j;
    const auto t = static_cast<std::int64_t>(j - i);
    total += t * (t - 1) / 2;
    i = j;
  }
  return total;
}

std::int64_t count_inversions(std::vector<double>& v, std::vector<double>& buf, std::size_t lo, std::size_t hi) {
  if (hi - lo < 2) return 0;
  const auto mid = lo + (hi - lo) / 2;
  auto inv = count_inversions(v, buf, lo, mid) + count_inversions(v, buf, mid, hi);
  std::size_t i = lo, j = mid, k = lo;
  while (i < mid && j < hi) {
    if (v[j] < v[i]) {
      inv += static_cast<std::int64_t>(mid - i);
      buf[k++] = v[j++];
    } else {
      buf[k++] = v[i++];
    }
  }
  while (i < mid) buf[k++] = v[i++];
  while (j < hi) buf[k++] = v[j++];
  std::copy(buf.begin() + static_cast<std::ptrdiff_t>(lo), buf.begin() + static_cast<std::ptrdiff_t>(hi),
            v.begin() + static_cast<std::ptrdiff_t>(lo));
  return inv;
}

void require_same_length(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw std::invalid_argument("columns must have equal length");
}

}  // namespace

double population_std(std::span<const double> x) {
  if (x.empty()) throw std::invalid_argument("population_std: empty input");
  const auto w = widen(x);
  return static_cast<double>(std_long(w));
}

double complementarity(std::span<const double> x, std::span<const double> y, std::span<const double> z) {
  require_same_length(x, y);
  require_same_length(x, z);
  if (x.size() < 2) throw std::invalid_argument("complementarity: need at least two values");
  const std::array<std::vector<long double>, 3> w = {widen(x), widen(y), widen(z)};
  std::vector<long double> sum(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) sum[i] = w[0][i] + w[1][i] + w[2][i];

  // 1 - std(x+y+z) / (std x + std y + std z), with both sides expressed through
  // the covariance matrix: var(sum) = sum of C_ab, (sum of stds)^2 = sum of sqrt(C_aa C_bb).
  std::array<std::array<long double, 3>, 3> c{};
  for (std::size_t a = 0; a < 3; ++a) {
    for (std::size_t b = a; b < 3; ++b) c[a][b] = c[b][a] = covariance_long(w[a], w[b]);
  }
  long double num = 0.0L, den = 0.0L;
  for (std::size_t a = 0; a < 3; ++a) {
    for (std::size_t b = 0; b < 3; ++b) {
      num += c[a][b];
      den += std::sqrt(c[a][a] * c[b][b]);
    }
  }
  if (den == 0.0L) throw std::invalid_argument("complementarity: all three inputs are constant");
  if (std_long(sum) == 0.0L) return 1.0;
  return std::clamp(static_cast<double>(1.0L - std::sqrt(std::max(num, 0.0L) / den)), 0.0, 1.0);
}

double pearson(std::span<const double> x, std::span<const double> y) {
  require_same_length(x, y);
  const auto n = static_cast<double>(x.size());
  if (x.size() < 2) return kUndefined;
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
    syy += (y[i] - my) * (y[i] - my);
  }
  if (sxx == 0.0 || syy == 0.0) return kUndefined;
  return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

double kendall_tau_b(std::span<const double> x, std::span<const double> y) {
  require_same_length(x, y);
  const auto n = x.size();
  if (n < 2) return kUndefined;
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return x[a] < x[b] || (x[a] == x[b] && y[a] < y[b]);
  });

  const auto nn = static_cast<std::int64_t>(n);
  const std::int64_t n0 = nn * (nn - 1) / 2;
  const std::int64_t n1 = tie_pairs({x.begin(), x.end()});
  const std::int64_t n2 = tie_pairs({y.begin(), y.end()});
  std::int64_t n3 = 0;
  for (std::size_t i = 0; i < n;) {
    std::size_t j = i;
    while (j < n && x[order[j]] == x[order[i]] && y[order[j]] == y[order[i]]) ++j;
    const auto t = static_cast<std::int64_t>(j - i);
    n3 += t * (t - 1) / 2;
    i = j;
  }
  std::vector<double> ys(n), buf(n);
  for (std::size_t i = 0; i < n; ++i) ys[i] = y[order[i]];
  const std::int64_t swaps = count_inversions(ys, buf, 0, n);

  if (n0 == n1 || n0 == n2) return kUndefined;
  const std::int64_t s = n0 - n1 - n2 + n3 - 2 * swaps;
  return static_cast<double>(s) / std::sqrt(static_cast<double>(n0 - n1) * static_cast<double>(n0 - n2));
}

CorrelationMatrices correlations(const std::vector<std::vector<double>>& columns) {
  const auto k = columns.size();
  for (const auto& c : columns) {
    if (c.size() != columns.front().size()) throw std::invalid_argument("correlations: ragged columns");
  }
  if (k > 0 && columns.front().size() < 2) throw std::invalid_argument("correlations: need at least two rows");
  CorrelationMatrices out;
  out.pearson.assign(k, std::vector<double>(k, kUndefined));
  out.kendall.assign(k, std::vector<double>(k, kUndefined));
  for (std::size_t a = 0; a < k; ++a) {
    for (std::size_t b = a; b < k; ++b) {
      out.pearson[a][b] = out.pearson[b][a] = pearson(columns[a], columns[b]);
      out.kendall[a][b] = out.kendall[b][a] = kendall_tau_b(columns[a], columns[b]);
    }
  }
  return out;
}

}  // namespace dap
