#include "dap/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

namespace dap {

ParseError::ParseError(const std::string& message, std::size_t line, std::string where)
    : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + message
                                  : (where.empty() ? message : where + ": " + message)),
      line_(line),
      where_(std::move(where)) {}

// ---------------------------------------------------------------- native

std::string write_native(const Election& e) {
  std::ostringstream os;
  os << "{\n  \"label\": " << nlohmann::json(e.label()).dump() << ",\n";
  os << "  \"num_candidates\": " << e.num_candidates() << ",\n";
  os << "  \"ballots\": [";
  for (std::size_t i = 0; i < e.num_voters(); ++i) {
    os << (i == 0 ? "\n    [" : ",\n    [");
    const auto approved = e.ballot(i).approved();
    for (std::size_t t = 0; t < approved.size(); ++t) os << (t ? "," : "") << approved[t];
    os << "]";
  }
  os << "\n  ]\n}\n";
  return os.str();
}

Election read_native(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text.begin(), text.end());
  } catch (const nlohmann::json::exception& ex) {
    throw ParseError(std::string("malformed JSON: ") + ex.what());
  }
  if (!j.is_object()) throw ParseError("expected a JSON object", 0, "");
  std::string label;
  if (j.contains("label")) {
    if (!j["label"].is_string()) throw ParseError("must be a string", 0, "/label");
    label = j["label"].get<std::string>();
  }
  if (!j.contains("num_candidates") || !j["num_candidates"].is_number_unsigned() ||
      j["num_candidates"].get<std::uint64_t>() == 0) {
    throw ParseError("must be a positive integer", 0, "/num_candidates");
  }
  const auto m64 = j["num_candidates"].get<std::uint64_t>();
  if (m64 > (std::uint64_t{1} << 32)) throw ParseError("too many candidates", 0, "/num_candidates");
  const auto m = static_cast<std::size_t>(m64);
  if (!j.contains("ballots") || !j["ballots"].is_array() || j["ballots"].empty()) {
    throw ParseError("must be a nonempty array", 0, "/ballots");
  }
  std::vector<Ballot> ballots;
  const auto& arr = j["ballots"];
  for (std::size_t i = 0; i < arr.size(); ++i) {
    const auto where = "/ballots/" + std::to_string(i);
    if (!arr[i].is_array()) throw ParseError("must be an array of candidate indices", 0, where);
    Ballot b(m);
    for (std::size_t t = 0; t < arr[i].size(); ++t) {
      const auto& x = arr[i][t];
      if (!x.is_number_unsigned() || x.get<std::uint64_t>() >= m64) {
        throw ParseError("candidate index out of range", 0, where + "/" + std::to_string(t));
      }
      b.set(static_cast<std::size_t>(x.get<std::uint64_t>()));
    }
    ballots.push_back(std::move(b));
  }
  return Election(m, std::move(ballots), label);
}

// --------------------------------------------------------------- pabulib

namespace {

std::string_view trim(std::string_view s) {
  const auto ws = " \t\r\n\v\f";
  const auto b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(ws);
  return s.substr(b, e - b + 1);
}

std::string lower(std::string_view s) {
  std::string out(s);
  for (auto& c : out) {
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  }
  return out;
}

std::vector<std::string> split_fields(std::string_view line, std::size_t line_no) {
  std::vector<std::string> fields;
  std::string cur;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          cur += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        cur += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ';') {
      fields.emplace_back(trim(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (quoted) throw ParseError("unterminated quoted field", line_no);
  fields.emplace_back(trim(cur));
  return fields;
}

struct Section {
  std::size_t header_line = 0;
  std::size_t columns_line = 0;
  std::vector<std::string> columns;
  std::vector<std::pair<std::size_t, std::vector<std::string>>> rows;
};

std::ptrdiff_t column_of(const Section& s, std::string_view name) {
  for (std::size_t i = 0; i < s.columns.size(); ++i) {
    if (lower(s.columns[i]) == name) return static_cast<std::ptrdiff_t>(i);
  }
  return -1;
}

}  // namespace

Election parse_pabulib(std::string_view text) {
  if (text.substr(0, 3) == "\xEF\xBB\xBF") text.remove_prefix(3);

  std::map<std::string, Section> sections;
  Section* current = nullptr;
  bool expecting_header = false;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto nl = text.find('\n', pos);
    const auto raw = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;
    const auto line = trim(raw);
    if (line.empty()) continue;

    const auto name = lower(line);
    if (name == "meta" || name == "projects" || name == "votes") {
      if (sections.count(name)) throw ParseError("duplicate " + std::string(line) + " section", line_no);
      current = &sections[name];
      current->header_line = line_no;
      expecting_header = true;
      continue;
    }
    if (!current) throw ParseError("content before the first section header", line_no);
    auto fields = split_fields(line, line_no);
    if (expecting_header) {
      current->columns = std::move(fields);
      current->columns_line = line_no;
      expecting_header = false;
      continue;
    }
    while (fields.size() > current->columns.size() && fields.back().empty()) fields.pop_back();
    if (fields.size() != current->columns.size()) {
      throw ParseError("expected " + std::to_string(current->columns.size()) + " fields, found " +
                           std::to_string(fields.size()),
                       line_no);
    }
    current->rows.emplace_back(line_no, std::move(fields));
  }

  for (const auto& [name, s] : sections) {
    if (s.columns.empty()) throw ParseError(name + " section has no column header", s.header_line);
  }

  if (auto it = sections.find("meta"); it != sections.end()) {
    const auto& meta = it->second;
    for (const auto& [ln, row] : meta.rows) {
      if (row.size() >= 2 && lower(row[0]) == "vote_type" && lower(row[1]) != "approval") {
        throw ParseError("unsupported vote_type '" + row[1] + "' (only approval)", ln);
      }
    }
  }

  const auto projects_it = sections.find("projects");
  if (projects_it == sections.end()) throw ParseError("missing PROJECTS section");
  const auto& projects = projects_it->second;
  const auto id_col = column_of(projects, "project_id");
  if (id_col < 0) throw ParseError("PROJECTS header lacks project_id", projects.columns_line);
  std::map<std::string, std::size_t> index;
  for (const auto& [ln, row] : projects.rows) {
    const auto& id = row[static_cast<std::size_t>(id_col)];
    if (id.empty()) throw ParseError("empty project_id", ln);
    if (!index.emplace(id, index.size()).second) throw ParseError("duplicate project_id '" + id + "'", ln);
  }
  if (index.empty()) throw ParseError("no projects declared", projects.columns_line);

  const auto votes_it = sections.find("votes");
  if (votes_it == sections.end()) throw ParseError("missing VOTES section");
  const auto& votes = votes_it->second;
  const auto vote_col = column_of(votes, "vote");
  if (vote_col < 0) throw ParseError("VOTES header lacks vote", votes.columns_line);
  if (votes.rows.empty()) throw ParseError("no votes", votes.columns_line);

  const auto m = index.size();
  std::vector<Ballot> ballots;
  ballots.reserve(votes.rows.size());
  for (const auto& [ln, row] : votes.rows) {
    Ballot b(m);
    std::string_view list = row[static_cast<std::size_t>(vote_col)];
    while (!list.empty()) {
      const auto comma = list.find(',');
      const auto id = trim(list.substr(0, comma));
      list = comma == std::string_view::npos ? std::string_view{} : list.substr(comma + 1);
      if (id.empty()) continue;
      const auto it = index.find(std::string(id));
      if (it == index.end()) throw ParseError("vote names undeclared project '" + std::string(id) + "'", ln);
      b.set(it->second);
    }
    ballots.push_back(std::move(b));
  }
  return Election(m, std::move(ballots));
}

Election threshold_scores(const std::vector<std::vector<double>>& scores, double threshold, std::string label) {
  if (scores.empty() || scores.front().empty()) throw std::invalid_argument("threshold_scores: empty matrix");
  const auto m = scores.front().size();
  std::vector<Ballot> ballots;
  for (const auto& row : scores) {
    if (row.size() != m) throw std::invalid_argument("threshold_scores: ragged matrix");
    Ballot b(m);
    for (std::size_t j = 0; j < m; ++j) {
      if (row[j] >= threshold) b.set(j);
    }
    ballots.push_back(std::move(b));
  }
  return Election(m, std::move(ballots), std::move(label));
}

// ------------------------------------------------------------------- csv

std::string format_number(double x) {
  if (std::isnan(x)) return "NA";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

std::string csv_field(std::string_view s) {
  if (s.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(s);
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::string write_csv(const std::vector<std::string>& headers, const std::vector<std::vector<std::string>>& rows) {
  std::string out;
  auto emit = [&](const std::vector<std::string>& fields) {
    for (std::size_t i = 0; i < fields.size(); ++i) {
      if (i) out += ',';
      out += csv_field(fields[i]);
    }
    out += '\n';
  };
  emit(headers);
  for (const auto& r : rows) emit(r);
  return out;
}

std::string write_csv_matrix(const std::vector<std::vector<double>>& rows, const std::vector<std::string>& headers) {
  std::vector<std::vector<std::string>> text;
  text.reserve(rows.size());
  for (const auto& r : rows) {
    std::vector<std::string> line;
    line.reserve(r.size());
    for (double x : r) line.push_back(format_number(x));
    text.push_back(std::move(line));
  }
  return write_csv(headers, text);
}

// ------------------------------------------------------------------- svg

namespace {

std::string xml_escape(std::string_view s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string fixed(double x, int digits = 2) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.*f", digits, x);
  return buf;
}

std::string ramp(double t) {
  t = std::clamp(std::isnan(t) ? 0.0 : t, 0.0, 1.0);
  const int r = static_cast<int>(std::lround(255 + (8 - 255) * t));
  const int g = static_cast<int>(std::lround(255 + (48 - 255) * t));
  const int b = static_cast<int>(std::lround(255 + (107 - 255) * t));
  char buf[16];
  std::snprintf(buf, sizeof buf, "#%02x%02x%02x", r, g, b);
  return buf;
}

}  // namespace

std::string palette_color(std::size_t i) {
  static const char* const colors[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd",
                                       "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};
  return colors[i % 10];
}

std::string write_svg_scatter(const std::vector<ScatterPoint>& points, const std::vector<std::string>& labels,
                              const std::vector<std::string>& colors, std::string_view title) {
  if (labels.size() != points.size() || colors.size() != points.size()) {
    throw std::invalid_argument("write_svg_scatter: labels and colors must match points");
  }
  constexpr double plot = 560.0;
  constexpr double margin = 40.0;
  constexpr double legend_w = 240.0;
  double xmin = 0.0, xmax = 1.0, ymin = 0.0, ymax = 1.0;
  if (!points.empty()) {
    xmin = xmax = points[0].x;
    ymin = ymax = points[0].y;
    for (const auto& p : points) {
      xmin = std::min(xmin, p.x);
      xmax = std::max(xmax, p.x);
      ymin = std::min(ymin, p.y);
      ymax = std::max(ymax, p.y);
    }
  }
  const double span = std::max({xmax - xmin, ymax - ymin, 1e-12});
  const double cx = (xmin + xmax) / 2.0, cy = (ymin + ymax) / 2.0;
  auto sx = [&](double x) { return margin + plot / 2.0 + (x - cx) / span * plot; };
  auto sy = [&](double y) { return margin + plot / 2.0 - (y - cy) / span * plot; };

  std::vector<std::pair<std::string, std::string>> legend;
  for (std::size_t i = 0; i < points.size(); ++i) {
    const bool seen = std::any_of(legend.begin(), legend.end(), [&](const auto& l) { return l.first == labels[i]; });
    if (!seen) legend.emplace_back(labels[i], colors[i]);
  }

  const double width = plot + 2 * margin + legend_w;
  const double height = std::max(plot + 2 * margin, margin + 20.0 * static_cast<double>(legend.size()) + margin);
  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << fixed(width, 0) << "\" height=\"" << fixed(height, 0)
     << "\" viewBox=\"0 0 " << fixed(width, 0) << ' ' << fixed(height, 0) << "\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  if (!title.empty()) {
    os << "<text x=\"" << fixed(margin, 0) << "\" y=\"24\" font-family=\"sans-serif\" font-size=\"16\">"
       << xml_escape(title) << "</text>\n";
  }
  os << "<rect x=\"" << fixed(margin, 0) << "\" y=\"" << fixed(margin, 0) << "\" width=\"" << fixed(plot, 0)
     << "\" height=\"" << fixed(plot, 0) << "\" fill=\"none\" stroke=\"#cccccc\"/>\n";
  os << "<g stroke=\"black\" stroke-width=\"0.3\">\n";
  for (std::size_t i = 0; i < points.size(); ++i) {
    os << "<circle cx=\"" << fixed(sx(points[i].x)) << "\" cy=\"" << fixed(sy(points[i].y)) << "\" r=\"4\" fill=\""
       << xml_escape(colors[i]) << "\"><title>" << xml_escape(labels[i]) << "</title></circle>\n";
  }
  os << "</g>\n<g font-family=\"sans-serif\" font-size=\"12\">\n";
  for (std::size_t l = 0; l < legend.size(); ++l) {
    const double y = margin + 20.0 * static_cast<double>(l);
    os << "<rect x=\"" << fixed(plot + 2 * margin) << "\" y=\"" << fixed(y) << "\" width=\"12\" height=\"12\" fill=\""
       << xml_escape(legend[l].second) << "\"/>";
    os << "<text x=\"" << fixed(plot + 2 * margin + 18) << "\" y=\"" << fixed(y + 10) << "\">"
       << xml_escape(legend[l].first) << "</text>\n";
  }
  os << "</g>\n</svg>\n";
  return os.str();
}

std::string write_svg_heatmap(const std::vector<std::vector<double>>& values, const std::vector<std::string>& row_labels,
                              const std::vector<std::string>& col_labels, double lo, double hi,
                              std::string_view title) {
  if (values.size() != row_labels.size()) throw std::invalid_argument("write_svg_heatmap: row label count");
  for (const auto& r : values) {
    if (r.size() != col_labels.size()) throw std::invalid_argument("write_svg_heatmap: column label count");
  }
  if (!(hi > lo)) throw std::invalid_argument("write_svg_heatmap: need hi > lo");
  constexpr double cell = 44.0;
  constexpr double left = 60.0;
  constexpr double top = 50.0;
  const double grid_w = cell * static_cast<double>(col_labels.size());
  const double grid_h = cell * static_cast<double>(row_labels.size());
  const double width = left + grid_w + 110.0;
  const double height = top + grid_h + 40.0;

  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << fixed(width, 0) << "\" height=\"" << fixed(height, 0)
     << "\" font-family=\"sans-serif\" font-size=\"11\">\n";
  os << "<defs><linearGradient id=\"scale\" x1=\"0\" y1=\"1\" x2=\"0\" y2=\"0\">"
     << "<stop offset=\"0\" stop-color=\"" << ramp(0.0) << "\"/><stop offset=\"1\" stop-color=\"" << ramp(1.0)
     << "\"/></linearGradient></defs>\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  if (!title.empty()) os << "<text x=\"" << fixed(left, 0) << "\" y=\"20\" font-size=\"14\">" << xml_escape(title) << "</text>\n";
  for (std::size_t c = 0; c < col_labels.size(); ++c) {
    os << "<text x=\"" << fixed(left + cell * (static_cast<double>(c) + 0.5)) << "\" y=\"" << fixed(top - 6)
       << "\" text-anchor=\"middle\">" << xml_escape(col_labels[c]) << "</text>\n";
  }
  for (std::size_t r = 0; r < row_labels.size(); ++r) {
    const double y = top + cell * static_cast<double>(r);
    os << "<text x=\"" << fixed(left - 6) << "\" y=\"" << fixed(y + cell / 2 + 4) << "\" text-anchor=\"end\">"
       << xml_escape(row_labels[r]) << "</text>\n";
    for (std::size_t c = 0; c < col_labels.size(); ++c) {
      const double v = values[r][c];
      const double t = (v - lo) / (hi - lo);
      const double x = left + cell * static_cast<double>(c);
      os << "<rect x=\"" << fixed(x) << "\" y=\"" << fixed(y) << "\" width=\"" << fixed(cell) << "\" height=\""
         << fixed(cell) << "\" fill=\"" << ramp(t) << "\"/>";
      os << "<text x=\"" << fixed(x + cell / 2) << "\" y=\"" << fixed(y + cell / 2 + 4)
         << "\" text-anchor=\"middle\" fill=\"" << (t > 0.55 ? "white" : "black") << "\">"
         << (std::isnan(v) ? std::string("NA") : fixed(v)) << "</text>\n";
    }
  }
  const double bar_x = left + grid_w + 30.0;
  os << "<rect x=\"" << fixed(bar_x) << "\" y=\"" << fixed(top) << "\" width=\"16\" height=\"" << fixed(grid_h)
     << "\" fill=\"url(#scale)\" stroke=\"#999999\"/>\n";
  os << "<text x=\"" << fixed(bar_x + 22) << "\" y=\"" << fixed(top + 10) << "\">" << format_number(hi) << "</text>\n";
  os << "<text x=\"" << fixed(bar_x + 22) << "\" y=\"" << fixed(top + grid_h) << "\">" << format_number(lo) << "</text>\n";
  os << "</svg>\n";
  return os.str();
}

// ----------------------------------------------------------- culture spec

nlohmann::json to_json(const CultureSpec& s) {
  nlohmann::json j;
  j["family"] = std::string(to_string(s.family));
  if (s.family != Family::noisy) j["m"] = s.m;
  if (s.n != 0) j["n"] = s.n;
  switch (s.family) {
    case Family::p_id:
    case Family::p_ic:
    case Family::id_ic: j["p"] = s.p; break;
    case Family::resampling:
      j["p"] = s.p;
      j["phi"] = s.phi;
      break;
    case Family::k_party:
    case Family::iam_mixture: j["k"] = s.k; break;
    case Family::id_mixture:
      j["k"] = s.k;
      j["p"] = s.p;
      break;
    case Family::xy_two_party:
      j["x"] = s.x;
      j["y"] = s.y;
      break;
    case Family::iam: j["probs"] = s.probs; break;
    case Family::euclidean:
      j["variant"] = s.variant;
      if (s.radius) j["radius"] = *s.radius;
      break;
    case Family::noisy:
      j["phi"] = s.phi;
      if (s.base) j["base"] = to_json(*s.base);
      break;
    default: break;
  }
  j["seed"] = s.seed;
  if (!s.label.empty()) j["label"] = s.label;
  return j;
}

CultureSpec culture_spec_from_json(const nlohmann::json& j, const std::string& pointer) {
  if (!j.is_object()) throw ParseError("expected an object describing an election", 0, pointer.empty() ? "/" : pointer);
  CultureSpec s;
  bool has_family = false;
  bool has_m = false;
  auto at = [&](const std::string& key) { return pointer + "/" + key; };
  auto number = [&](const std::string& key, const nlohmann::json& v) {
    if (!v.is_number()) throw ParseError("must be a number", 0, at(key));
    return v.get<double>();
  };
  auto count = [&](const std::string& key, const nlohmann::json& v) {
    if (!v.is_number_unsigned()) throw ParseError("must be a nonnegative integer", 0, at(key));
    return v.get<std::uint64_t>();
  };
  for (const auto& [key, v] : j.items()) {
    if (key == "family") {
      if (!v.is_string()) throw ParseError("must be a string", 0, at(key));
      const auto f = parse_family(v.get<std::string>());
      if (!f) throw ParseError("unknown family '" + v.get<std::string>() + "'", 0, at(key));
      s.family = *f;
      has_family = true;
    } else if (key == "m") {
      s.m = static_cast<std::size_t>(count(key, v));
      has_m = true;
    } else if (key == "n") {
      s.n = static_cast<std::size_t>(count(key, v));
    } else if (key == "k") {
      s.k = static_cast<std::size_t>(count(key, v));
    } else if (key == "variant") {
      const auto variant = count(key, v);
      s.variant = variant > 1000 ? 0 : static_cast<int>(variant);
    } else if (key == "seed") {
      s.seed = count(key, v);
    } else if (key == "p") {
      s.p = number(key, v);
    } else if (key == "phi") {
      s.phi = number(key, v);
    } else if (key == "x") {
      s.x = number(key, v);
    } else if (key == "y") {
      s.y = number(key, v);
    } else if (key == "radius") {
      s.radius = number(key, v);
    } else if (key == "probs") {
      if (!v.is_array()) throw ParseError("must be an array of numbers", 0, at(key));
      for (std::size_t i = 0; i < v.size(); ++i) s.probs.push_back(number(key + "/" + std::to_string(i), v[i]));
    } else if (key == "base") {
      s.base = std::make_shared<const CultureSpec>(culture_spec_from_json(v, at(key)));
    } else if (key == "label") {
      if (!v.is_string()) throw ParseError("must be a string", 0, at(key));
      s.label = v.get<std::string>();
    } else {
      throw ParseError("unknown key", 0, at(key));
    }
  }
  if (!has_family) throw ParseError("missing required key", 0, at("family"));
  if (s.family == Family::noisy) {
    if (!s.base) throw ParseError("missing required key", 0, at("base"));
  } else if (!has_m) {
    throw ParseError("missing required key", 0, at("m"));
  }
  try {
    validate(s);
  } catch (const std::invalid_argument& ex) {
    throw ParseError(ex.what(), 0, pointer.empty() ? "/" : pointer);
  }
  return s;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_file(const std::string& path, std::string_view contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
  if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace dap
