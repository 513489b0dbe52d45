#pragma once

#include <map>
#include <string>
#include <vector>

#include "ssb/json_util.hpp"
#include "ssb/representation.hpp"

namespace ssb {

/// A group together with named subgroups and, optionally, explicit irreps.
struct GroupSpec {
  GroupPtr group;
  std::vector<UnitaryRep> irreps;                     // may be empty
  std::map<std::string, std::vector<int>> subgroups;  // label -> members

  Subgroup subgroup(const std::string& label) const;
  RepresentationData representations(std::uint64_t seed = kDefaultSeed) const;
};

/// Document layout:
///   { "name": str, "order": int,
///     "mult_table": [[int]]  or  "generators": [[int]] (permutations),
///     "subgroups": { label: [int] },
///     "irreps": [ { "label": str, "dim": int, "matrices": [matrix per element] } ] }
/// Throws GroupLoadError for invalid tables, InputError for malformed documents.
GroupSpec load_group(const json& doc);
GroupSpec load_group_file(const std::string& path);

json group_to_json(const GroupSpec& spec);

}  // namespace ssb
