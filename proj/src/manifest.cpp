#include "dap/manifest.hpp"

#include <filesystem>
#include <functional>

#include "dap/io.hpp"
#include "dap/rng.hpp"

namespace dap {

namespace {

using nlohmann::json;

std::uint64_t unsigned_at(const json& v, const std::string& where) {
  if (!v.is_number_unsigned()) throw ParseError("must be a nonnegative integer", 0, where);
  return v.get<std::uint64_t>();
}

std::string string_at(const json& v, const std::string& where) {
  if (!v.is_string()) throw ParseError("must be a string", 0, where);
  return v.get<std::string>();
}

IndexId index_at(const json& v, const std::string& where) {
  const auto name = string_at(v, where);
  const auto id = parse_index(name);
  if (!id) throw ParseError("unknown index '" + name + "'", 0, where);
  return *id;
}

void check_uniforms(const json& v, const std::string& where) {
  if (v.is_object()) {
    if (v.contains("uniform")) {
      const auto& u = v["uniform"];
      if (v.size() != 1 || !u.is_array() || u.size() != 2 || !u[0].is_number() || !u[1].is_number() ||
          !(u[0].get<double>() <= u[1].get<double>())) {
        throw ParseError("expected {\"uniform\": [a, b]} with a <= b", 0, where);
      }
      return;
    }
    for (const auto& [key, x] : v.items()) check_uniforms(x, where + "/" + key);
  }
}

void draw_uniforms(json& v, Rng& rng) {
  if (!v.is_object()) return;
  if (v.contains("uniform")) {
    const auto& u = v["uniform"];
    v = rng.uniform(u[0].get<double>(), u[1].get<double>());
    return;
  }
  for (auto& [key, x] : v.items()) draw_uniforms(x, rng);
}

ManifestEntry parse_entry(const json& j, const std::string& where) {
  if (!j.is_object()) throw ParseError("expected an object", 0, where);
  ManifestEntry entry;
  entry.pointer = where;
  if (j.contains("count")) {
    entry.count = static_cast<std::size_t>(unsigned_at(j["count"], where + "/count"));
    if (entry.count == 0) throw ParseError("must be positive", 0, where + "/count");
  }
  if (j.contains("group")) entry.group = string_at(j["group"], where + "/group");
  if (j.contains("label")) entry.label = string_at(j["label"], where + "/label");
  if (j.contains("path")) {
    entry.path = string_at(j["path"], where + "/path");
    for (const auto& [key, v] : j.items()) {
      if (key != "path" && key != "label" && key != "group" && key != "count") {
        throw ParseError("not allowed next to \"path\"", 0, where + "/" + key);
      }
    }
    return entry;
  }
  entry.spec = j;
  entry.spec.erase("count");
  entry.spec.erase("group");
  check_uniforms(entry.spec, where);
  // Validate with every uniform replaced by its lower end.
  json probe = entry.spec;
  std::function<void(json&)> lower = [&](json& v) {
    if (!v.is_object()) return;
    if (v.contains("uniform")) {
      v = v["uniform"][0];
      return;
    }
    for (auto& [key, x] : v.items()) lower(x);
  };
  lower(probe);
  culture_spec_from_json(probe, where);
  return entry;
}

}  // namespace

Manifest parse_manifest(std::string_view text, std::string base_dir) {
  json j;
  try {
    j = json::parse(text.begin(), text.end());
  } catch (const json::exception& ex) {
    throw ParseError(std::string("malformed JSON: ") + ex.what());
  }
  if (!j.is_object()) throw ParseError("manifest must be a JSON object", 0, "/");
  Manifest m;
  m.base_dir = std::move(base_dir);
  if (!j.contains("seed")) throw ParseError("missing required key", 0, "/seed");
  for (const auto& [key, v] : j.items()) {
    const auto where = "/" + key;
    if (key == "seed") {
      m.seed = unsigned_at(v, where);
    } else if (key == "command") {
      m.command = string_at(v, where);
      if (m.command != "table" && m.command != "map" && m.command != "index" && m.command != "resample") {
        throw ParseError("unknown command '" + m.command + "'", 0, where);
      }
    } else if (key == "samples") {
      m.samples = static_cast<std::size_t>(unsigned_at(v, where));
      if (m.samples == 0) throw ParseError("must be positive", 0, where);
    } else if (key == "indices") {
      if (!v.is_array()) throw ParseError("must be an array of index names", 0, where);
      for (std::size_t i = 0; i < v.size(); ++i) m.indices.push_back(index_at(v[i], where + "/" + std::to_string(i)));
    } else if (key == "features") {
      if (!v.is_array() || v.size() != 3) throw ParseError("must list exactly three index names", 0, where);
      for (std::size_t i = 0; i < 3; ++i) m.features[i] = index_at(v[i], where + "/" + std::to_string(i));
    } else if (key == "out") {
      m.out = string_at(v, where);
    } else if (key == "description") {
      string_at(v, where);
    } else if (key == "elections") {
      if (!v.is_array() || v.empty()) throw ParseError("must be a nonempty array", 0, where);
      for (std::size_t i = 0; i < v.size(); ++i) m.entries.push_back(parse_entry(v[i], where + "/" + std::to_string(i)));
    } else {
      throw ParseError("unknown key", 0, where);
    }
  }
  if (m.entries.empty()) throw ParseError("missing required key", 0, "/elections");
  if (m.indices.empty()) m.indices.assign(kAllIndices.begin(), kAllIndices.end());
  return m;
}

Manifest load_manifest(const std::string& path) {
  const auto dir = std::filesystem::path(path).parent_path();
  return parse_manifest(read_file(path), dir.empty() ? std::string(".") : dir.string());
}

std::vector<ManifestItem> expand(const Manifest& manifest) {
  std::vector<ManifestItem> items;
  for (std::size_t i = 0; i < manifest.entries.size(); ++i) {
    const auto& entry = manifest.entries[i];
    for (std::size_t t = 0; t < entry.count; ++t) {
      ManifestItem item;
      item.group = entry.group;
      if (!entry.path.empty()) {
        const std::filesystem::path p(entry.path);
        item.path = p.is_absolute() ? p.string() : (std::filesystem::path(manifest.base_dir) / p).string();
        if (!std::filesystem::exists(item.path)) {
          throw ParseError("file not found: " + item.path, 0, entry.pointer + "/path");
        }
        item.label = entry.label.empty() ? p.filename().string() : entry.label;
      } else {
        Rng rng(derive_seed(manifest.seed, {i, t, 7}));
        json spec = entry.spec;
        draw_uniforms(spec, rng);
        auto cs = culture_spec_from_json(spec, entry.pointer);
        if (entry.spec.contains("seed")) {
          if (entry.count > 1) cs.seed = derive_seed(cs.seed, {t});
        } else {
          cs.seed = derive_seed(manifest.seed, {i, t});
        }
        item.label = cs.label.empty() ? describe(cs) : cs.label;
        if (item.group.empty()) item.group = item.label;
        if (entry.count > 1) item.label += "#" + std::to_string(t + 1);
        item.spec = std::move(cs);
      }
      if (item.group.empty()) item.group = item.label;
      items.push_back(std::move(item));
    }
  }
  return items;
}

Election load_election(const std::string& path) {
  const auto text = read_file(path);
  const bool pb = path.size() >= 3 && path.compare(path.size() - 3, 3, ".pb") == 0;
  auto e = pb ? parse_pabulib(text) : read_native(text);
  if (e.label().empty()) e = e.with_label(std::filesystem::path(path).filename().string());
  return e;
}

Election materialize(const ManifestItem& item) {
  if (item.spec) return generate(*item.spec).with_label(item.label);
  return load_election(item.path).with_label(item.label);
}

}  // namespace dap
