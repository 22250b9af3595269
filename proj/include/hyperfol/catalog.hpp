// catalog.hpp -- named symmetric-space entries and their realizations.
//
// The catalog is a JSON list of entries; a bundled copy is compiled into the
// library and the HYPERFOL_CATALOG environment variable points at a
// replacement file.  Entries with a "realization" field can be instantiated
// as concrete matrix algebras, and instantiation cross-checks the computed
// root data against the declared entry.

#ifndef HYPERFOL_CATALOG_HPP
#define HYPERFOL_CATALOG_HPP

#include "hyperfol/matrixlie.hpp"
#include "hyperfol/rootsys.hpp"

#include <optional>
#include <string>
#include <vector>

namespace hyperfol::catalog {

struct CatalogEntry {
  std::string name;
  std::string root_type;
  int rank = 0;
  int short_mult = 1;
  std::optional<int> long_mult;
  std::optional<int> doubled_mult;
  std::optional<std::string> realization;  // builder id, e.g. "sl_real(4)"
  std::optional<Rat> killing_scale;        // squared length of a short root
};

struct Catalog {
  std::vector<CatalogEntry> entries;
  const CatalogEntry* find(const std::string& name) const;
};

// JSON text of the compiled-in catalog.
const std::string& bundled_catalog_json();

// Parses catalog JSON; throws std::runtime_error with a description on
// schema violations or entries that fail to build abstractly.
Catalog parse_catalog(const std::string& json_text);

// HYPERFOL_CATALOG file if the variable is set, else the bundled copy.
Catalog load_catalog();

// Abstract root system of an entry (scale from killing_scale when present).
rootsys::RootSystem root_system_for(const CatalogEntry& entry);

// Instantiates the entry's realization, recomputes its restricted root
// decomposition, and verifies that type, rank, multiplicities and scale all
// match the declared entry.  Throws std::runtime_error when the entry has no
// realization or the cross-check fails.
struct RealizationBundle {
  matrixlie::MatrixLieAlgebra algebra;
  matrixlie::RootSpaceDecomposition decomposition;
};
RealizationBundle build_realization(const CatalogEntry& entry);

}  // namespace hyperfol::catalog

#endif  // HYPERFOL_CATALOG_HPP
