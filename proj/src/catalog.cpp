#include "hyperfol/catalog.hpp"

#include <nlohmann/json.hpp>

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace hyperfol::catalog {

namespace {

using nlohmann::json;

CatalogEntry parse_entry(const json& j) {
  CatalogEntry e;
  if (!j.is_object()) throw std::runtime_error("catalog entry is not an object");
  e.name = j.at("name").get<std::string>();
  e.root_type = j.at("root_type").get<std::string>();
  e.rank = j.at("rank").get<int>();
  const json& m = j.at("multiplicities");
  e.short_mult = m.at("short").get<int>();
  if (m.contains("long")) e.long_mult = m.at("long").get<int>();
  if (m.contains("doubled")) e.doubled_mult = m.at("doubled").get<int>();
  if (j.contains("realization"))
    e.realization = j.at("realization").get<std::string>();
  if (j.contains("killing_scale")) {
    const json& s = j.at("killing_scale");
    if (!s.is_array() || s.size() != 2)
      throw std::runtime_error("killing_scale must be a [numerator, denominator] pair");
    e.killing_scale = rat(s.at(0).get<long long>(), s.at(1).get<long long>());
  }
  return e;
}

}  // namespace

const CatalogEntry* Catalog::find(const std::string& name) const {
  for (const auto& e : entries)
    if (e.name == name) return &e;
  return nullptr;
}

Catalog parse_catalog(const std::string& json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::exception& ex) {
    throw std::runtime_error(std::string("catalog is not valid JSON: ") +
                             ex.what());
  }
  if (!doc.is_array()) throw std::runtime_error("catalog must be a JSON array");
  Catalog cat;
  for (const json& j : doc) {
    CatalogEntry e;
    try {
      e = parse_entry(j);
    } catch (const json::exception& ex) {
      throw std::runtime_error(std::string("malformed catalog entry: ") +
                               ex.what());
    }
    if (cat.find(e.name))
      throw std::runtime_error("duplicate catalog entry: " + e.name);
    // The abstract data must at least build.
    root_system_for(e);
    cat.entries.push_back(std::move(e));
  }
  return cat;
}

Catalog load_catalog() {
  const char* path = std::getenv("HYPERFOL_CATALOG");
  if (path != nullptr && *path != '\0') {
    std::ifstream in(path);
    if (!in)
      throw std::runtime_error(std::string("cannot read catalog file: ") + path);
    std::ostringstream text;
    text << in.rdbuf();
    return parse_catalog(text.str());
  }
  return parse_catalog(bundled_catalog_json());
}

rootsys::RootSystem root_system_for(const CatalogEntry& entry) {
  rootsys::MultiplicityProfile prof;
  prof.short_mult = entry.short_mult;
  prof.long_mult = entry.long_mult;
  prof.doubled_mult = entry.doubled_mult;
  Rat scale = entry.killing_scale.value_or(Rat(1));
  return rootsys::build_root_system(entry.root_type, entry.rank, prof, scale);
}

RealizationBundle build_realization(const CatalogEntry& entry) {
  if (!entry.realization)
    throw std::runtime_error("catalog entry " + entry.name +
                             " has no realization");
  const std::string& id = *entry.realization;
  matrixlie::MatrixLieAlgebra g;
  if (id == "sl2_complex") {
    g = matrixlie::build_sl2_complex();
  } else if (id == "su12") {
    g = matrixlie::build_su12();
  } else if (id.rfind("sl_real(", 0) == 0 && id.back() == ')') {
    int n = 0;
    try {
      n = std::stoi(id.substr(8, id.size() - 9));
    } catch (const std::exception&) {
      throw std::runtime_error("unknown realization id: " + id);
    }
    g = matrixlie::build_sl_real(n);
  } else {
    throw std::runtime_error("unknown realization id: " + id);
  }

  RealizationBundle bundle{std::move(g), {}};
  bundle.decomposition =
      matrixlie::restricted_root_decomposition(bundle.algebra);

  // Declared data must match the computed decomposition.
  rootsys::RootSystem declared = root_system_for(entry);
  const rootsys::RootSystem& computed = bundle.decomposition.rs;
  auto fail = [&](const std::string& what) {
    throw std::runtime_error("catalog entry " + entry.name +
                             " does not match its realization: " + what);
  };
  if (declared.type_label != computed.type_label) fail("root system type");
  if (declared.rank != computed.rank) fail("rank");
  if (declared.positives.size() != computed.positives.size() ||
      declared.mult != computed.mult)
    fail("multiplicities");
  if (entry.killing_scale && *entry.killing_scale != computed.scale)
    fail("killing scale");
  return bundle;
}

}  // namespace hyperfol::catalog
