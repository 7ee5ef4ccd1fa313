#include "tbi/json_io.hpp"

#include <fstream>
#include <sstream>

namespace tbi {
namespace {

// JSON carries 64-bit integers; anything larger is outside desk scale and
// refused rather than rounded.
long long json_int(const mpz_class& v, const char* what) {
    if (!v.fits_slong_p())
        throw input_error(std::string(what) + " exceeds the JSON integer range: " +
                          v.get_str());
    return static_cast<long long>(v.get_si());
}

mpz_class int_field(const ordered_json& doc, const char* key) {
    if (!doc.contains(key) || !doc[key].is_number_integer())
        throw input_error(std::string("lattice JSON needs an integer field \"") + key + "\"");
    return mpz_class(doc[key].get<long>());
}

}  // namespace

ordered_json lattice_to_json(const ZpLattice& l) {
    ordered_json doc;
    doc["p"] = l.p;
    doc["n"] = l.rank();
    ordered_json rows = ordered_json::array();
    for (std::size_t i = 0; i < l.action.rows(); ++i) {
        ordered_json row = ordered_json::array();
        for (std::size_t j = 0; j < l.action.cols(); ++j)
            row.push_back(json_int(l.action(i, j), "action entry"));
        rows.push_back(std::move(row));
    }
    doc["action"] = std::move(rows);
    return doc;
}

ZpLattice lattice_from_json(const ordered_json& doc) {
    if (!doc.is_object()) throw input_error("lattice JSON must be an object");
    const mpz_class p = int_field(doc, "p");
    const mpz_class n = int_field(doc, "n");
    if (p < 3 || !p.fits_ulong_p()) throw input_error("lattice JSON: p out of range");
    if (n < 0 || n > mpz_class(max_rank()))
        throw input_error("lattice JSON: n out of range (cap " + std::to_string(max_rank()) +
                          ")");
    if (!doc.contains("action") || !doc["action"].is_array())
        throw input_error("lattice JSON needs an \"action\" array of rows");
    const auto& rows = doc["action"];
    const auto dim = static_cast<std::size_t>(n.get_ui());
    if (rows.size() != dim) throw input_error("lattice JSON: action must have n rows");
    IntegerMatrix m(dim, dim);
    for (std::size_t i = 0; i < dim; ++i) {
        if (!rows[i].is_array() || rows[i].size() != dim)
            throw input_error("lattice JSON: action row " + std::to_string(i) +
                              " must have n integer entries");
        for (std::size_t j = 0; j < dim; ++j) {
            if (!rows[i][j].is_number_integer())
                throw input_error("lattice JSON: action entry (" + std::to_string(i) + ", " +
                                  std::to_string(j) + ") is not an integer");
            m(i, j) = mpz_class(rows[i][j].get<long>());
        }
    }
    return lattice_from_matrix(p.get_ui(), m);
}

ZpLattice load_lattice_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw input_error("cannot read lattice file " + path);
    ordered_json doc;
    try {
        in >> doc;
    } catch (const nlohmann::json::exception& e) {
        throw input_error("malformed JSON in " + path + ": " + e.what());
    }
    return lattice_from_json(doc);
}

ordered_json presentation_to_json(const AbelianGroupPresentation& g) {
    ordered_json doc;
    doc["free_rank"] = g.free_rank;
    ordered_json torsion = ordered_json::array();
    for (const auto& t : g.torsion) torsion.push_back(json_int(t, "invariant factor"));
    doc["torsion"] = std::move(torsion);
    return doc;
}

ordered_json formal_to_json(const FormalAbelianGroup& g) {
    ordered_json doc;
    doc["free_rank"] = json_int(g.free_rank(), "free rank");
    ordered_json leaves = ordered_json::array();
    for (const auto& [leaf, mult] : g.leaves()) {
        ordered_json entry;
        entry["kind"] = kind_name(leaf.kind);
        entry["mult"] = json_int(mult, "leaf multiplicity");
        ordered_json params = ordered_json::object();
        switch (leaf.kind) {
            case LeafKind::Z2:
                break;
            case LeafKind::Zp_k:
                params["p"] = leaf.p;
                params["k"] = leaf.n;
                break;
            case LeafKind::Zp_adic:
            case LeafKind::Zp_infty:
            case LeafKind::Z_inv_p:
            case LeafKind::H_Zp:
                params["p"] = leaf.p;
                break;
            case LeafKind::Wh_Zp:
                params["p"] = leaf.p;
                params["q"] = leaf.n;
                break;
            case LeafKind::OpaqueL:
                params["decoration"] = leaf.dec;
                params["degree"] = leaf.n;
                break;
        }
        entry["params"] = std::move(params);
        leaves.push_back(std::move(entry));
    }
    doc["leaves"] = std::move(leaves);
    return doc;
}

ordered_json page_to_json(const E2Page& page) {
    ordered_json doc;
    doc["variant"] = variant_name(page.variant);
    doc["total_degree"] = page.total_degree;
    doc["column_limit"] = page.column_limit;
    ordered_json entries = ordered_json::object();
    for (const auto& [bidegree, group] : page.entries) {
        std::ostringstream key;
        key << "(" << bidegree.first << "," << bidegree.second << ")";
        entries[key.str()] = presentation_to_json(group);
    }
    doc["entries"] = std::move(entries);
    return doc;
}

}  // namespace tbi
