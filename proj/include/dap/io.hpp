#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include "dap/election.hpp"
#include "dap/generators.hpp"

namespace dap {

/// Structured failure from any parser in this module. line() is 1-based, or 0
/// when the error is not tied to a line; where() is a JSON pointer for
/// JSON inputs.
class ParseError : public std::runtime_error {
 public:
  explicit ParseError(const std::string& message, std::size_t line = 0, std::string where = {});
  std::size_t line() const noexcept { return line_; }
  const std::string& where() const noexcept { return where_; }

 private:
  std::size_t line_;
  std::string where_;
};

// Native format:
//   {"label": "...", "num_candidates": m, "ballots": [[0, 3], [], ...]}
// with 0-based candidate indices.
std::string write_native(const Election& e);
Election read_native(std::string_view text);

/// Approval-type Pabulib file. Candidates are the projects in declaration
/// order; each VOTES row becomes one ballot. META and project costs are
/// ignored apart from vote_type, which must be "approval" when present.
Election parse_pabulib(std::string_view text);

/// Voter i approves candidate j iff scores[i][j] >= threshold.
Election threshold_scores(const std::vector<std::vector<double>>& scores, double threshold,
                          std::string label = {});

/// Six significant digits ("%.6g"); NaN prints as "NA".
std::string format_number(double x);

/// RFC 4180 quoting: fields holding a comma, quote or line break are quoted.
std::string csv_field(std::string_view s);
std::string write_csv(const std::vector<std::string>& headers, const std::vector<std::vector<std::string>>& rows);
std::string write_csv_matrix(const std::vector<std::vector<double>>& rows, const std::vector<std::string>& headers);

struct ScatterPoint {
  double x = 0.0;
  double y = 0.0;
};

/// One circle per point. labels[i] names the group of point i and colors[i]
/// its fill; the legend lists each distinct label once, in first-appearance
/// order. labels and colors must match points in length.
std::string write_svg_scatter(const std::vector<ScatterPoint>& points, const std::vector<std::string>& labels,
                              const std::vector<std::string>& colors, std::string_view title = {});

/// Grid of cells coloured on a white-to-blue ramp over [lo, hi], with a
/// colour-bar legend and the numeric value printed in every cell.
std::string write_svg_heatmap(const std::vector<std::vector<double>>& values, const std::vector<std::string>& row_labels,
                              const std::vector<std::string>& col_labels, double lo = 0.0, double hi = 1.0,
                              std::string_view title = {});

/// Categorical palette, cycling after ten entries.
std::string palette_color(std::size_t i);

nlohmann::json to_json(const CultureSpec& spec);
/// Throws ParseError whose where() is `pointer` extended by the offending key.
CultureSpec culture_spec_from_json(const nlohmann::json& j, const std::string& pointer = {});

std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view contents);

}  // namespace dap
