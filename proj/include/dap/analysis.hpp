#pragma once

#include <span>
#include <vector>

namespace dap {

/// Population standard deviation.
double population_std(std::span<const double> x);

/// 1 - std(x + y + z) / (std(x) + std(y) + std(z)) with population stds.
/// Throws std::invalid_argument if lengths differ, are below 2, or all
/// three vectors are constant.
double complementarity(std::span<const double> x, std::span<const double> y, std::span<const double> z);

/// Pearson correlation; NaN when either column is constant.
double pearson(std::span<const double> x, std::span<const double> y);

/// Kendall tau-b, computed in O(n log n) with Knight's merge-sort count of
/// discordant pairs. NaN when either column is constant.
double kendall_tau_b(std::span<const double> x, std::span<const double> y);

struct CorrelationMatrices {
  std::vector<std::vector<double>> pearson;
  std::vector<std::vector<double>> kendall;
};

/// Coefficients between every pair of columns (all of equal length >= 2).
/// Undefined entries are NaN.
CorrelationMatrices correlations(const std::vector<std::vector<double>>& columns);

}  // namespace dap
