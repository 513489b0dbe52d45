#pragma once

#include <string>
#include <vector>

#include "ssb/group_io.hpp"

namespace ssb {

/// Names accepted by catalog_group: "trivial", "Z<n>" (n >= 1), "S3", "S4",
/// "D4", "Q8", "A4".
GroupSpec catalog_group(const std::string& name);
std::vector<std::string> catalog_names();

struct CatalogPair {
  std::string group;
  std::string subgroup;
};

/// The proper (G, H) pairs every property test runs over.
std::vector<CatalogPair> catalog_pairs();

}  // namespace ssb
