#include "ssb/group_io.hpp"

namespace ssb {

Subgroup GroupSpec::subgroup(const std::string& label) const {
  auto it = subgroups.find(label);
  if (it == subgroups.end())
    throw InputError("group " + group->name() + " has no subgroup labelled '" + label + "'");
  return Subgroup(group, it->second, label);
}

RepresentationData GroupSpec::representations(std::uint64_t seed) const {
  return RepresentationData::compute(group, seed, irreps.empty() ? nullptr : &irreps);
}

namespace {

std::vector<std::vector<int>> int_table(const json& j, const std::string& what) {
  if (!j.is_array()) throw InputError(what + " must be an array of arrays");
  std::vector<std::vector<int>> out;
  for (const auto& row : j) {
    if (!row.is_array()) throw InputError(what + " must be an array of arrays");
    std::vector<int> r;
    for (const auto& x : row) {
      if (!x.is_number_integer()) throw InputError(what + " entries must be integers");
      r.push_back(x.get<int>());
    }
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace

GroupSpec load_group(const json& doc) {
  if (!doc.is_object()) throw InputError("group spec must be a JSON object");
  const std::string name = doc.value("name", std::string("G"));
  GroupSpec spec;
  if (doc.contains("mult_table")) {
    spec.group = FiniteGroup::from_table(name, int_table(doc["mult_table"], "mult_table"));
  } else if (doc.contains("generators")) {
    spec.group = FiniteGroup::from_permutations(name, int_table(doc["generators"], "generators"));
  } else {
    throw InputError("group spec needs 'mult_table' or 'generators'");
  }
  if (doc.contains("order")) {
    const int order = doc["order"].get<int>();
    if (order != spec.group->order())
      throw GroupLoadError("declared order " + std::to_string(order) + " but the group has " +
                           std::to_string(spec.group->order()) + " elements");
  }
  spec.subgroups["1"] = {0};
  std::vector<int> all(spec.group->order());
  for (int i = 0; i < spec.group->order(); ++i) all[i] = i;
  spec.subgroups[name] = all;
  if (doc.contains("subgroups")) {
    for (const auto& [label, members] : doc["subgroups"].items()) {
      std::vector<int> m;
      for (const auto& x : members) m.push_back(x.get<int>());
      // constructing validates closure
      spec.subgroups[label] = Subgroup(spec.group, m, label).members();
    }
  }
  if (doc.contains("irreps")) {
    for (const auto& entry : doc["irreps"]) {
      UnitaryRep rep{spec.group, {}, entry.value("label", std::string("irrep"))};
      for (const auto& m : entry.at("matrices"))
        rep.matrices.push_back(matrix_from_json(m, "irrep '" + rep.label + "'"));
      if (entry.contains("dim") && entry["dim"].get<int>() != rep.dim())
        throw InputError("irrep '" + rep.label + "' declares dim " +
                         std::to_string(entry["dim"].get<int>()) + " but has matrices of size " +
                         std::to_string(rep.dim()));
      rep.validate();
      spec.irreps.push_back(std::move(rep));
    }
  }
  return spec;
}

GroupSpec load_group_file(const std::string& path) { return load_group(read_json_file(path)); }

json group_to_json(const GroupSpec& spec) {
  json doc;
  doc["name"] = spec.group->name();
  doc["order"] = spec.group->order();
  doc["mult_table"] = spec.group->table();
  json subs = json::object();
  for (const auto& [label, members] : spec.subgroups) subs[label] = members;
  doc["subgroups"] = subs;
  if (!spec.irreps.empty()) {
    json irreps = json::array();
    for (const auto& rep : spec.irreps) {
      json mats = json::array();
      for (const auto& m : rep.matrices) mats.push_back(matrix_to_json(m));
      irreps.push_back({{"label", rep.label}, {"dim", rep.dim()}, {"matrices", mats}});
    }
    doc["irreps"] = irreps;
  }
  return doc;
}

}  // namespace ssb
