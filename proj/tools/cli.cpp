#include "cli.hpp"

#include <CLI11.hpp>
#include <cstdio>
#include <filesystem>
#include <limits>
#include <map>
#include <ostream>
#include <sstream>

#include "dap/analysis.hpp"
#include "dap/election.hpp"
#include "dap/experiments.hpp"
#include "dap/generators.hpp"
#include "dap/io.hpp"
#include "dap/manifest.hpp"
#include "dap/parallel.hpp"
#include "dap/rng.hpp"

namespace dap::cli {

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::vector<IndexId> parse_index_list(const std::string& list) {
  std::vector<IndexId> ids;
  if (list.empty() || list == "all") return {kAllIndices.begin(), kAllIndices.end()};
  std::stringstream ss(list);
  std::string name;
  while (std::getline(ss, name, ',')) {
    const auto id = parse_index(name);
    if (!id) throw UsageError("unknown index '" + name + "'");
    ids.push_back(*id);
  }
  return ids;
}

std::filesystem::path prepare_out_dir(const std::string& dir) {
  std::filesystem::path p(dir.empty() ? "." : dir);
  std::filesystem::create_directories(p);
  return p;
}

std::string stats_line(const Election& e) {
  const auto s = stats(e);
  return "m=" + std::to_string(e.num_candidates()) + " n=" + std::to_string(e.num_voters()) +
         " satr=" + format_number(s.satr);
}

void seed_notice(bool given, std::ostream& err) {
  if (!given) err << "note: no --seed given, using seed 0\n";
}

std::string resolve_out(const std::string& flag, const Manifest& m) {
  if (!flag.empty()) return flag;
  return m.out ? *m.out : std::string(".");
}

// ------------------------------------------------------------- commands

struct GenerateArgs {
  std::string family;
  std::string spec_path;
  std::string base_family;
  std::size_t m = 0;
  std::size_t n = 0;
  double p = 0.5;
  double phi = 0.0;
  double x = 0.5;
  double y = 0.5;
  std::size_t k = 2;
  int variant = 1;
  std::optional<double> radius;
  std::vector<double> probs;
  std::uint64_t seed = 0;
  std::string label;
  std::string out;
};

int cmd_generate(const GenerateArgs& a, bool seed_given, std::ostream& out, std::ostream& err) {
  CultureSpec spec;
  if (!a.spec_path.empty()) {
    spec = culture_spec_from_json(nlohmann::json::parse(read_file(a.spec_path)));
  } else {
    if (a.family.empty()) throw UsageError("--family or --spec is required");
    const auto f = parse_family(a.family);
    if (!f) throw UsageError("unknown family '" + a.family + "'");
    spec.family = *f;
    spec.m = a.m;
    spec.n = a.n;
    spec.p = a.p;
    spec.phi = a.phi;
    spec.x = a.x;
    spec.y = a.y;
    spec.k = a.k;
    spec.variant = a.variant;
    spec.radius = a.radius;
    spec.probs = a.probs;
    spec.seed = a.seed;
    spec.label = a.label;
    if (spec.m == 0) throw UsageError("--m is required");
    if (spec.family == Family::noisy) {
      if (a.base_family.empty()) throw UsageError("noisy requires --base-family");
      const auto bf = parse_family(a.base_family);
      if (!bf || *bf == Family::noisy) throw UsageError("invalid --base-family '" + a.base_family + "'");
      auto base = spec;
      base.family = *bf;
      base.label.clear();
      spec.base = std::make_shared<const CultureSpec>(base);
    }
    seed_notice(seed_given, err);
  }
  validate(spec);
  const auto e = generate(spec);
  const auto text = write_native(e);
  if (a.out.empty() || a.out == "-") {
    out << text;
    err << stats_line(e) << '\n';
  } else {
    write_file(a.out, text);
    out << a.out << ": " << stats_line(e) << '\n';
  }
  return kExitOk;
}

int cmd_index(const std::vector<std::string>& inputs, const std::string& indices, std::uint64_t seed,
              bool seed_given, std::ostream& out, std::ostream& err) {
  const auto ids = parse_index_list(indices);
  seed_notice(seed_given, err);
  std::vector<std::string> headers = {"file", "label", "m", "n"};
  for (auto id : ids) headers.emplace_back(to_string(id));
  std::vector<std::vector<std::string>> rows;
  bool failed = false;
  for (std::size_t i = 0; i < inputs.size(); ++i) {
    try {
      const auto e = load_election(inputs[i]);
      const auto values = compute_indices(e, ids, derive_seed(seed, {i}));
      std::vector<std::string> row = {inputs[i], e.label(), std::to_string(e.num_candidates()),
                                      std::to_string(e.num_voters())};
      for (double v : values) row.push_back(format_number(v));
      rows.push_back(std::move(row));
    } catch (const std::exception& ex) {
      err << "error: " << inputs[i] << ": " << ex.what() << '\n';
      failed = true;
    }
  }
  out << write_csv(headers, rows);
  return failed ? kExitFailure : kExitOk;
}

std::vector<CultureSpec> manifest_specs(const Manifest& m) {
  std::vector<CultureSpec> specs;
  const auto items = expand(m);
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (!items[i].spec) throw ParseError("table entries must be generator specs", 0, "/elections");
    auto s = *items[i].spec;
    s.label = items[i].label;
    specs.push_back(std::move(s));
  }
  return specs;
}

int cmd_table(const std::string& manifest_path, const std::string& out_flag, std::size_t samples_flag,
              std::ostream& out) {
  const auto m = load_manifest(manifest_path);
  const auto specs = manifest_specs(m);
  const auto samples = samples_flag ? samples_flag : m.samples;
  const auto table = index_table(specs, samples, m.seed, m.indices);

  std::vector<std::string> headers = {"label"};
  for (auto id : table.indices) {
    headers.emplace_back(to_string(id));
    headers.push_back(std::string(to_string(id)) + "_std");
  }
  std::vector<std::vector<std::string>> rows;
  for (const auto& r : table.rows) {
    std::vector<std::string> row = {r.label};
    for (std::size_t c = 0; c < r.mean.size(); ++c) {
      row.push_back(format_number(r.mean[c]));
      row.push_back(format_number(r.std[c]));
    }
    rows.push_back(std::move(row));
  }
  const auto dir = prepare_out_dir(resolve_out(out_flag, m));
  write_file((dir / "table.csv").string(), write_csv(headers, rows));

  char buf[32];
  out << "label";
  for (auto id : table.indices) out << '\t' << to_string(id);
  out << '\n';
  for (const auto& r : table.rows) {
    out << r.label;
    for (double v : r.mean) {
      std::snprintf(buf, sizeof buf, "\t%.2f", v);
      out << buf;
    }
    out << '\n';
  }
  out << "wrote " << (dir / "table.csv").string() << '\n';
  return kExitOk;
}

int cmd_resample(const std::string& index, std::size_t m, std::size_t n, std::size_t samples, std::uint64_t seed,
                 bool seed_given, const std::string& out_dir, std::ostream& out, std::ostream& err) {
  const auto id = parse_index(index);
  if (!id) throw UsageError("unknown index '" + index + "'");
  if (m == 0 || n == 0 || samples == 0) throw UsageError("--m, --n and --samples must be positive");
  seed_notice(seed_given, err);
  const auto mat = resampling_experiment(*id, m, n, samples, seed);
  std::vector<std::string> headers = {"p"};
  std::vector<std::string> col_labels;
  for (double phi : mat.phis) {
    headers.push_back("phi=" + format_number(phi));
    col_labels.push_back(format_number(phi));
  }
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> row_labels;
  for (std::size_t i = 0; i < mat.ps.size(); ++i) {
    std::vector<std::string> row = {format_number(mat.ps[i])};
    for (double v : mat.values[i]) row.push_back(format_number(v));
    rows.push_back(std::move(row));
    row_labels.push_back("p=" + format_number(mat.ps[i]));
  }
  const auto dir = prepare_out_dir(out_dir);
  const auto stem = "resampling_" + std::string(to_string(*id));
  write_file((dir / (stem + ".csv")).string(), write_csv(headers, rows));
  write_file((dir / (stem + ".svg")).string(),
             write_svg_heatmap(mat.values, row_labels, col_labels, 0.0, 1.0,
                               std::string(to_string(*id)) + " (rows p, columns phi)"));
  out << "wrote " << (dir / (stem + ".csv")).string() << " and " << (dir / (stem + ".svg")).string() << '\n';
  return kExitOk;
}

struct Loaded {
  std::vector<ManifestItem> items;
  std::vector<Election> elections;
};

Loaded load_all(const Manifest& m) {
  Loaded l;
  l.items = expand(m);
  for (const auto& item : l.items) l.elections.push_back(materialize(item));
  return l;
}

int cmd_map(const std::string& manifest_path, const std::string& out_flag, std::ostream& out) {
  const auto m = load_manifest(manifest_path);
  const auto data = load_all(m);
  const auto map = build_map(data.elections, m.seed, m.features);
  const auto dir = prepare_out_dir(resolve_out(out_flag, m));

  std::vector<std::string> labels;
  for (const auto& item : data.items) labels.push_back(item.label);
  std::vector<std::vector<double>> dist_rows;
  for (std::size_t i = 0; i < map.distances.size(); ++i) {
    std::vector<double> r(map.distances.size());
    for (std::size_t j = 0; j < r.size(); ++j) r[j] = map.distances(i, j);
    dist_rows.push_back(std::move(r));
  }
  write_file((dir / "distances.csv").string(), write_csv_matrix(dist_rows, labels));

  std::map<std::string, std::size_t> group_index;
  std::vector<std::string> groups, colors;
  std::vector<ScatterPoint> points;
  std::vector<std::vector<std::string>> rows;
  for (std::size_t i = 0; i < data.items.size(); ++i) {
    const auto& g = data.items[i].group;
    const auto gi = group_index.emplace(g, group_index.size()).first->second;
    groups.push_back(g);
    colors.push_back(palette_color(gi));
    const auto& c = map.embedding.coords[i];
    points.push_back({c[0], c[1]});
    const auto& f = map.features[i];
    rows.push_back({data.items[i].label, g, format_number(c[0]), format_number(c[1]), format_number(f.agr),
                    format_number(f.div), format_number(f.pol)});
  }
  write_file((dir / "embedding.csv").string(),
             write_csv({"label", "group", "x", "y", std::string(to_string(m.features[0])),
                        std::string(to_string(m.features[1])), std::string(to_string(m.features[2]))},
                       rows));
  write_file((dir / "map.svg").string(), write_svg_scatter(points, groups, colors, "map of elections"));
  out << "elections " << data.elections.size() << '\n';
  out << "distortion " << format_number(map.embedding.distortion) << '\n';
  out << "wrote " << dir.string() << "/{distances.csv,embedding.csv,map.svg}\n";
  return kExitOk;
}

int cmd_analyze(const std::string& manifest_path, const std::string& out_flag, std::ostream& out) {
  const auto m = load_manifest(manifest_path);
  const auto data = load_all(m);
  const auto ids = m.indices;
  std::vector<std::vector<double>> table(data.elections.size());
  parallel_for(data.elections.size(), [&](std::size_t i) {
    const auto small = subsample(data.elections[i], kFeatureMaxCandidates, kFeatureMaxVoters, derive_seed(m.seed, {i, 0}));
    table[i] = compute_indices(small, ids, derive_seed(m.seed, {i, 1}));
  });
  const auto dir = prepare_out_dir(resolve_out(out_flag, m));

  std::vector<std::string> names;
  for (auto id : ids) names.emplace_back(to_string(id));
  std::vector<std::string> headers = {"label"};
  headers.insert(headers.end(), names.begin(), names.end());
  std::vector<std::vector<std::string>> rows;
  for (std::size_t i = 0; i < table.size(); ++i) {
    std::vector<std::string> r = {data.items[i].label};
    for (double v : table[i]) r.push_back(format_number(v));
    rows.push_back(std::move(r));
  }
  write_file((dir / "indices.csv").string(), write_csv(headers, rows));

  std::vector<std::vector<double>> columns(ids.size(), std::vector<double>(table.size()));
  for (std::size_t i = 0; i < table.size(); ++i) {
    for (std::size_t c = 0; c < ids.size(); ++c) columns[c][i] = table[i][c];
  }
  if (table.size() >= 2) {
    const auto corr = correlations(columns);
    auto with_names = [&](const std::vector<std::vector<double>>& mat) {
      std::vector<std::vector<std::string>> out_rows;
      for (std::size_t a = 0; a < mat.size(); ++a) {
        std::vector<std::string> r = {names[a]};
        for (double v : mat[a]) r.push_back(format_number(v));
        out_rows.push_back(std::move(r));
      }
      std::vector<std::string> h = {"index"};
      h.insert(h.end(), names.begin(), names.end());
      return write_csv(h, out_rows);
    };
    write_file((dir / "pearson.csv").string(), with_names(corr.pearson));
    write_file((dir / "kendall.csv").string(), with_names(corr.kendall));

    auto column_of = [&](IndexId id) -> const std::vector<double>* {
      for (std::size_t c = 0; c < ids.size(); ++c) {
        if (ids[c] == id) return &columns[c];
      }
      return nullptr;
    };
    const IndexId agrs[] = {IndexId::av_agr, IndexId::cntr_agr, IndexId::pair_agr,
                            IndexId::pcc_agr, IndexId::jacc_agr, IndexId::pccplus_agr};
    const IndexId divs[] = {IndexId::cntr_div, IndexId::pcc_div, IndexId::out_div};
    const IndexId pols[] = {IndexId::cntr_pol, IndexId::pcc_pol, IndexId::pair_pol};
    std::vector<std::vector<std::string>> cm;
    for (auto a : agrs) {
      for (auto d : divs) {
        for (auto p : pols) {
          const auto *x = column_of(a), *y = column_of(d), *z = column_of(p);
          if (!x || !y || !z) continue;
          double v;
          try {
            v = complementarity(*x, *y, *z);
          } catch (const std::invalid_argument&) {
            v = std::numeric_limits<double>::quiet_NaN();
          }
          cm.push_back({std::string(to_string(a)), std::string(to_string(d)), std::string(to_string(p)),
                        format_number(v)});
          if (a == IndexId::pcc_agr && d == IndexId::pcc_div && p == IndexId::pcc_pol) {
            out << "complementarity(pcc_agr, pcc_div, pcc_pol) " << format_number(v) << '\n';
          }
        }
      }
    }
    write_file((dir / "complementarity.csv").string(), write_csv({"agr", "div", "pol", "cmpl"}, cm));
  }
  out << "wrote " << dir.string() << "/{indices,pearson,kendall,complementarity}.csv\n";
  return kExitOk;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Agreement, diversity and polarization indices for approval elections"};
  app.name("dap");
  app.require_subcommand(1);

  GenerateArgs gen;
  auto* generate_cmd = app.add_subcommand("generate", "Sample one election and write it as native JSON");
  generate_cmd->add_option("--family", gen.family, "Culture family, e.g. p_ic, k_party, resampling");
  generate_cmd->add_option("--spec", gen.spec_path, "Culture spec JSON file instead of flags");
  generate_cmd->add_option("--base-family", gen.base_family, "Base family for --family noisy");
  generate_cmd->add_option("--m", gen.m, "Number of candidates");
  generate_cmd->add_option("--n", gen.n, "Number of voters (default m)");
  generate_cmd->add_option("--p", gen.p, "Approval probability / fraction");
  generate_cmd->add_option("--phi", gen.phi, "Resampling / noise parameter");
  generate_cmd->add_option("--x", gen.x, "Candidate share of the first group (xy_two_party)");
  generate_cmd->add_option("--y", gen.y, "Voter share of the first group (xy_two_party)");
  generate_cmd->add_option("--k", gen.k, "Number of parties or groups");
  generate_cmd->add_option("--variant", gen.variant, "Euclidean variant 1..5");
  generate_cmd->add_option("--radius", gen.radius, "Euclidean radius override (variants 1, 2)");
  generate_cmd->add_option("--probs", gen.probs, "IAM probabilities, comma separated")->delimiter(',');
  auto* gen_seed = generate_cmd->add_option("--seed", gen.seed, "Random seed (default 0)");
  generate_cmd->add_option("--label", gen.label, "Election label");
  generate_cmd->add_option("--out,-o", gen.out, "Output file (default stdout)");

  std::vector<std::string> index_inputs;
  std::string index_list;
  std::uint64_t index_seed = 0;
  auto* index_cmd = app.add_subcommand("index", "Compute indices of election files; CSV to stdout");
  index_cmd->add_option("inputs", index_inputs, "Native .json or Pabulib .pb files")->required();
  index_cmd->add_option("--indices", index_list, "Comma separated index names, or 'all'");
  auto* idx_seed = index_cmd->add_option("--seed", index_seed, "Random seed (default 0)");

  std::string manifest_path, out_dir;
  std::size_t table_samples = 0;
  auto* table_cmd = app.add_subcommand("table", "Mean and std of every index per manifest entry");
  table_cmd->add_option("--manifest", manifest_path, "Run manifest")->required();
  table_cmd->add_option("--out", out_dir, "Output directory");
  table_cmd->add_option("--samples", table_samples, "Override the manifest's sample count");

  std::string resample_index = "pair_agr";
  std::size_t rs_m = 60, rs_n = 60, rs_samples = 10;
  std::uint64_t rs_seed = 0;
  auto* resample_cmd = app.add_subcommand("resample", "Resampling matrix of one index over p and phi");
  resample_cmd->add_option("--index", resample_index, "Index name");
  resample_cmd->add_option("--m", rs_m, "Number of candidates");
  resample_cmd->add_option("--n", rs_n, "Number of voters");
  resample_cmd->add_option("--samples", rs_samples, "Elections per cell");
  auto* rs_seed_opt = resample_cmd->add_option("--seed", rs_seed, "Random seed (default 0)");
  resample_cmd->add_option("--out", out_dir, "Output directory");

  auto* map_cmd = app.add_subcommand("map", "Feature distances, MDS embedding and map SVG");
  map_cmd->add_option("--manifest", manifest_path, "Run manifest")->required();
  map_cmd->add_option("--out", out_dir, "Output directory");

  auto* analyze_cmd = app.add_subcommand("analyze", "Index table, correlations and complementarity");
  analyze_cmd->add_option("--manifest", manifest_path, "Run manifest")->required();
  analyze_cmd->add_option("--out", out_dir, "Output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& ex) {
    err << "error: " << ex.what() << '\n';
    return kExitUsage;
  }

  try {
    if (generate_cmd->parsed()) return cmd_generate(gen, gen_seed->count() > 0, out, err);
    if (index_cmd->parsed()) return cmd_index(index_inputs, index_list, index_seed, idx_seed->count() > 0, out, err);
    if (table_cmd->parsed()) return cmd_table(manifest_path, out_dir, table_samples, out);
    if (resample_cmd->parsed()) {
      return cmd_resample(resample_index, rs_m, rs_n, rs_samples, rs_seed, rs_seed_opt->count() > 0, out_dir, out, err);
    }
    if (map_cmd->parsed()) return cmd_map(manifest_path, out_dir, out);
    if (analyze_cmd->parsed()) return cmd_analyze(manifest_path, out_dir, out);
  } catch (const UsageError& ex) {
    err << "error: " << ex.what() << '\n';
    return kExitUsage;
  } catch (const ParseError& ex) {
    err << "error: " << ex.what() << '\n';
    return kExitUsage;
  } catch (const std::invalid_argument& ex) {
    err << "error: " << ex.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& ex) {
    err << "error: " << ex.what() << '\n';
    return kExitFailure;
  }
  return kExitUsage;
}

}  // namespace dap::cli
