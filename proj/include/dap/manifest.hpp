#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "dap/election.hpp"
#include "dap/experiments.hpp"
#include "dap/generators.hpp"

namespace dap {

// A run manifest is a JSON object:
//
//   {
//     "seed": 7,                                  required
//     "command": "map",                           optional: table | map | index | resample
//     "samples": 10,                              optional, default 10
//     "indices": ["pcc_agr", "pair_pol"],         optional, default all
//     "features": ["pcc_agr", "pcc_div", "pcc_pol"],
//     "out": "results",                           optional
//     "description": "...",                       ignored
//     "elections": [ entry, ... ]                 required, nonempty
//   }
//
// An entry is either a culture spec (see culture_spec_from_json) with an
// optional "count" and "group", or {"path": "file", "label": ..., "group": ...}
// naming a native .json or Pabulib .pb file relative to the manifest. Any
// numeric spec parameter may be given as {"uniform": [a, b]}, drawn
// independently for every copy.
//
// Validation failures throw ParseError with a JSON pointer in where().

struct ManifestEntry {
  std::string pointer;  // e.g. "/elections/3"
  nlohmann::json spec;  // empty for path entries
  std::string path;
  std::string label;
  std::string group;
  std::size_t count = 1;
};

struct Manifest {
  std::uint64_t seed = 0;
  std::string command;
  std::size_t samples = 10;
  std::vector<IndexId> indices;
  FeatureTriple features = kDefaultFeatures;
  std::optional<std::string> out;
  std::string base_dir = ".";
  std::vector<ManifestEntry> entries;
};

Manifest parse_manifest(std::string_view text, std::string base_dir = ".");
Manifest load_manifest(const std::string& path);

/// One concrete election of a manifest.
struct ManifestItem {
  std::string label;
  std::string group;
  std::optional<CultureSpec> spec;  // generator entries
  std::string path;                 // file entries (resolved against base_dir)
};

/// Expands counts and draws uniform parameters. Copy t of entry i draws from
/// derive_seed(seed, {i, t}); its generator seed is derived the same way
/// unless the entry fixes one.
std::vector<ManifestItem> expand(const Manifest& manifest);

/// Generates or loads the election. Files ending in ".pb" are read as
/// Pabulib, everything else as native JSON.
Election materialize(const ManifestItem& item);

Election load_election(const std::string& path);

}  // namespace dap
