#pragma once
#include <json.hpp>

#include <string>

#include "tbi/abelian.hpp"
#include "tbi/formal.hpp"
#include "tbi/lattice.hpp"
#include "tbi/spectral.hpp"

namespace tbi {

// Insertion-ordered JSON everywhere so emitted documents are byte-stable.
using ordered_json = nlohmann::ordered_json;

// Lattice schema: { "p": int, "n": int, "action": [[int, ...], ...] }.
ordered_json lattice_to_json(const ZpLattice& l);
ZpLattice lattice_from_json(const ordered_json& doc);

// File forms of the same schema; throw input_error with the path and cause.
ZpLattice load_lattice_file(const std::string& path);

// { "free_rank": int, "torsion": [int, ...] }.
ordered_json presentation_to_json(const AbelianGroupPresentation& g);

// { "free_rank": int, "leaves": [{ "kind": ..., "mult": int, "params": {...} }] }.
ordered_json formal_to_json(const FormalAbelianGroup& g);

// { "variant": ..., "total_degree": ..., "column_limit": ...,
//   "entries": { "(i,j)": presentation, ... } } with bidegrees in column order.
ordered_json page_to_json(const E2Page& page);

}  // namespace tbi
