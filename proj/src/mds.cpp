#include "dap/mds.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "dap/rng.hpp"

namespace dap {

namespace {

constexpr int kMaxIterations = 300;
constexpr double kStressTolerance = 1e-9;
constexpr int kRandomStarts = 4;

double stress(const SquareMatrix<double>& d, const Eigen::MatrixX2d& x) {
  const auto n = d.size();
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double r = d(i, j) - (x.row(static_cast<Eigen::Index>(i)) - x.row(static_cast<Eigen::Index>(j))).norm();
      s += r * r;
    }
  }
  return s;
}

Eigen::MatrixX2d classical_scaling(const SquareMatrix<double>& d, std::uint64_t seed) {
  const auto n = static_cast<Eigen::Index>(d.size());
  Eigen::MatrixXd b(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      const double v = d(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
      b(i, j) = -0.5 * v * v;
    }
  }
  const Eigen::VectorXd row_mean = b.rowwise().mean();
  const double grand = row_mean.mean();
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) b(i, j) += grand - row_mean(i) - row_mean(j);
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(b);
  if (solver.info() != Eigen::Success) throw std::runtime_error("mds_embed: eigendecomposition failed");

  double scale = 0.0;
  for (std::size_t i = 0; i < d.size(); ++i) {
    for (std::size_t j = 0; j < d.size(); ++j) scale = std::max(scale, d(i, j));
  }
  Eigen::MatrixX2d x = Eigen::MatrixX2d::Zero(n, 2);
  Rng rng(seed);
  for (int axis = 0; axis < 2; ++axis) {
    const Eigen::Index col = n - 1 - axis;
    const double lambda = col >= 0 ? solver.eigenvalues()(col) : 0.0;
    if (col >= 0 && lambda > 1e-12 * std::max(1.0, scale * scale)) {
      x.col(axis) = solver.eigenvectors().col(col) * std::sqrt(lambda);
    } else {
      for (Eigen::Index i = 0; i < n; ++i) x(i, axis) = 1e-3 * std::max(scale, 1e-12) * rng.normal();
    }
  }
  return x;
}


/// Runs SMACOF in place; returns the stress after every step, starting with
/// the initial configuration.
std::vector<double> smacof(const SquareMatrix<double>& d, Eigen::MatrixX2d& x) {
  const auto ni = static_cast<Eigen::Index>(d.size());
  std::vector<double> history = {stress(d, x)};
  Eigen::MatrixX2d next(ni, 2);
  for (int it = 0; it < kMaxIterations && history.back() > 0.0; ++it) {
    // Guttman transform: X <- (1/n) B(X) X.
    next.setZero();
    for (Eigen::Index i = 0; i < ni; ++i) {
      double diag = 0.0;
      for (Eigen::Index j = 0; j < ni; ++j) {
        if (i == j) continue;
        const double dist = (x.row(i) - x.row(j)).norm();
        if (dist <= 0.0) continue;
        const double bij = -d(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) / dist;
        next.row(i) += bij * x.row(j);
        diag -= bij;
      }
      next.row(i) += diag * x.row(i);
    }
    next /= static_cast<double>(ni);
    const double current = history.back();
    const double s = stress(d, next);
    x = next;
    history.push_back(s);
    if (current - s < kStressTolerance * std::max(s, 1e-300)) break;
  }
  return history;
}

}  // namespace

double mean_distortion(const SquareMatrix<double>& d, const std::vector<std::array<double, 2>>& coords) {
  const auto n = d.size();
  if (coords.size() != n) throw std::invalid_argument("mean_distortion: size mismatch");
  double sum = 0.0;
  std::size_t pairs = 0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double truth = d(i, j);
      if (truth <= 1e-9) continue;
      const double emb = std::hypot(coords[i][0] - coords[j][0], coords[i][1] - coords[j][1]);
      sum += std::max(emb / truth, truth / emb);
      ++pairs;
    }
  }
  return pairs == 0 ? 1.0 : sum / static_cast<double>(pairs);
}

Embedding mds_embed(const SquareMatrix<double>& d, std::uint64_t seed) {
  const auto n = d.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (d(i, i) != 0.0) throw std::invalid_argument("mds_embed: diagonal must be zero");
    for (std::size_t j = 0; j < n; ++j) {
      const double v = d(i, j);
      if (!std::isfinite(v) || v < 0.0) throw std::invalid_argument("mds_embed: entries must be finite and nonnegative");
      if (v != d(j, i)) throw std::invalid_argument("mds_embed: matrix must be symmetric");
    }
  }
  Embedding out;
  if (n == 0) return out;

  Eigen::MatrixX2d best = classical_scaling(d, seed);
  out.stress_history = smacof(d, best);
  double scale = 0.0;
  for (auto v : d.data()) scale = std::max(scale, v);
  Rng rng(derive_seed(seed, {1}));
  for (int start = 0; start < kRandomStarts && out.stress_history.back() > 0.0; ++start) {
    Eigen::MatrixX2d x(static_cast<Eigen::Index>(n), 2);
    for (Eigen::Index i = 0; i < x.rows(); ++i) {
      x(i, 0) = scale * rng.normal();
      x(i, 1) = scale * rng.normal();
    }
    auto history = smacof(d, x);
    if (history.back() < out.stress_history.back()) {
      best = x;
      out.stress_history = std::move(history);
    }
  }
  const Eigen::MatrixX2d& x = best;

  out.coords.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    out.coords[i] = {x(static_cast<Eigen::Index>(i), 0), x(static_cast<Eigen::Index>(i), 1)};
  }
  out.distortion = mean_distortion(d, out.coords);
  return out;
}

}  // namespace dap
