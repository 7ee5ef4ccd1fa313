#include "tbi/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <charconv>
#include <fstream>
#include <ostream>
#include <sstream>

#include "tbi/cohomology.hpp"
#include "tbi/invariants.hpp"
#include "tbi/json_io.hpp"
#include "tbi/spectral.hpp"
#include "tbi/verify.hpp"

namespace tbi {
namespace {

long parse_long(const std::string& text, const char* what) {
    long v = 0;
    const char* end = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(text.data(), end, v);
    if (ec != std::errc{} || ptr != end)
        throw input_error(std::string(what) + " must be an integer, got \"" + text + "\"");
    return v;
}

unsigned long parse_ulong(const std::string& text, const char* what) {
    const long v = parse_long(text, what);
    if (v < 0) throw input_error(std::string(what) + " must be nonnegative, got \"" + text + "\"");
    return static_cast<unsigned long>(v);
}

std::string trimmed(const std::string& s) {
    const auto a = s.find_first_not_of(" \t");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t");
    return s.substr(a, b - a + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char ch : s) {
        if (ch == sep) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += ch;
        }
    }
    out.push_back(cur);
    return out;
}

struct DegreeRange {
    long lo = 0;
    long hi = 0;
};

// "a..b" or a single integer; at most 64 degrees.
DegreeRange parse_degrees(const std::string& text) {
    DegreeRange r;
    const auto pos = text.find("..");
    if (pos == std::string::npos) {
        r.lo = r.hi = parse_long(trimmed(text), "degree");
        return r;
    }
    r.lo = parse_long(trimmed(text.substr(0, pos)), "degree range start");
    r.hi = parse_long(trimmed(text.substr(pos + 2)), "degree range end");
    if (r.lo > r.hi)
        throw input_error("degree range is empty: " + std::to_string(r.lo) + ".." +
                          std::to_string(r.hi));
    if (r.hi - r.lo + 1 > 64) throw input_error("degree ranges are capped at 64 degrees");
    return r;
}

// "p=5;type=(2,1,0)" or "p=3;sum=cyclotomic+regular+trivial:2".
ZpLattice parse_spec(const std::string& text) {
    std::vector<std::string> fields;
    for (const auto& f : split(text, ';'))
        if (!trimmed(f).empty()) fields.push_back(trimmed(f));
    if (fields.size() != 2 || fields[0].rfind("p=", 0) != 0)
        throw input_error("spec must look like \"p=5;type=(a,b,c)\" or \"p=3;sum=...\", got \"" +
                          text + "\"");
    const unsigned long p = parse_ulong(fields[0].substr(2), "p");

    const std::string& body = fields[1];
    if (body.rfind("type=", 0) == 0) {
        std::string tuple = trimmed(body.substr(5));
        if (tuple.size() < 2 || tuple.front() != '(' || tuple.back() != ')')
            throw input_error("type spec must look like type=(a,b,c), got \"" + body + "\"");
        const auto parts = split(tuple.substr(1, tuple.size() - 2), ',');
        if (parts.size() != 3)
            throw input_error("type spec needs three multiplicities (a,b,c), got \"" + body +
                              "\"");
        TypeSignature t;
        t.a = parse_ulong(trimmed(parts[0]), "type multiplicity a");
        t.b = parse_ulong(trimmed(parts[1]), "type multiplicity b");
        t.c = parse_ulong(trimmed(parts[2]), "type multiplicity c");
        return canonical_lattice(p, t);
    }
    if (body.rfind("sum=", 0) == 0) {
        std::vector<ZpLattice> parts;
        for (const auto& raw : split(body.substr(4), '+')) {
            const std::string term = trimmed(raw);
            if (term.empty()) throw input_error("empty summand in \"" + body + "\"");
            std::string name = term;
            unsigned long count = 1;
            if (const auto colon = term.find(':'); colon != std::string::npos) {
                name = trimmed(term.substr(0, colon));
                count = parse_ulong(trimmed(term.substr(colon + 1)), "summand count");
                if (count == 0) throw input_error("summand count must be positive in \"" + term +
                                                  "\"");
            }
            if (name == "cyclotomic") {
                for (unsigned long i = 0; i < count; ++i) parts.push_back(lattice_cyclotomic(p));
            } else if (name == "regular") {
                for (unsigned long i = 0; i < count; ++i) parts.push_back(lattice_regular(p));
            } else if (name == "trivial") {
                parts.push_back(lattice_trivial(p, count));
            } else {
                throw input_error("unknown summand \"" + name +
                                  "\" (expected cyclotomic, regular, or trivial)");
            }
        }
        if (parts.empty()) throw input_error("sum spec needs at least one summand");
        return direct_sum(parts);
    }
    throw input_error("spec must contain type=(a,b,c) or sum=..., got \"" + body + "\"");
}

ZpLattice resolve_lattice(const std::string& spec, const std::string& file) {
    if (spec.empty() == file.empty())
        throw input_error("provide exactly one input: --spec or --file");
    return spec.empty() ? load_lattice_file(file) : parse_spec(spec);
}

std::vector<Decoration> parse_decorations(const std::string& text) {
    std::vector<Decoration> decs;
    for (const auto& raw : split(text, ',')) {
        const std::string token = trimmed(raw);
        if (token.empty()) throw input_error("empty decoration in \"" + text + "\"");
        decs.push_back(Decoration::parse(token));
    }
    return decs;
}

long long small_int(const mpz_class& v, const char* what) {
    if (!v.fits_slong_p())
        throw input_error(std::string(what) + " exceeds the reportable integer range");
    return static_cast<long long>(v.get_si());
}

std::string md_table(const std::vector<std::string>& header,
                     const std::vector<std::vector<std::string>>& rows) {
    std::ostringstream os;
    os << "|";
    for (const auto& h : header) os << " " << h << " |";
    os << "\n|";
    for (std::size_t i = 0; i < header.size(); ++i) os << " --- |";
    os << "\n";
    for (const auto& row : rows) {
        os << "|";
        for (const auto& cell : row) os << " " << cell << " |";
        os << "\n";
    }
    return os.str();
}

void emit(const std::string& text, const std::string& out_path, std::ostream& out) {
    if (out_path.empty()) {
        out << text;
        return;
    }
    std::ofstream f(out_path, std::ios::binary);
    if (!f) throw input_error("cannot open " + out_path + " for writing");
    f << text;
    f.flush();
    if (!f) throw input_error("write failed for " + out_path);
}

std::string dump(const ordered_json& doc) { return doc.dump(2) + "\n"; }

ordered_json type_json(const TypeSignature& t) { return ordered_json::array({t.a, t.b, t.c}); }

std::string lattice_context(const ZpLattice& l, const TypeSignature& t) {
    std::ostringstream os;
    os << "p=" << l.p << ", type=" << t.to_string();
    return os.str();
}

// ---- lattice ---------------------------------------------------------

struct LatticeArgs {
    std::string spec, file, out_path;
    bool json = false;
};

int cmd_lattice(const LatticeArgs& a, std::ostream& out) {
    const ZpLattice l = resolve_lattice(a.spec, a.file);
    if (a.json) {
        emit(dump(lattice_to_json(l)), a.out_path, out);
        return 0;
    }
    const TypeSignature t = detect_type(l);
    const SubgroupStructure s = subgroup_structure(l);
    std::ostringstream os;
    os << "## lattice (" << lattice_context(l, t) << ")\n\n";
    os << md_table({"field", "value"},
                   {{"p", std::to_string(l.p)},
                    {"rank", std::to_string(l.rank())},
                    {"type", t.to_string()},
                    {"maximal finite subgroup classes", s.conjugacy_classes.get_str()},
                    {"normalizer free rank", std::to_string(s.normalizer_free_rank)},
                    {"weyl free rank", std::to_string(s.weyl_free_rank)}});
    emit(os.str(), a.out_path, out);
    return 0;
}

// ---- cohomology ------------------------------------------------------

struct CohomologyArgs {
    std::string spec, file, out_path;
    std::string what = "tate";
    std::string degrees = "0..3";
    unsigned long exterior = 1;
    unsigned long ell = 3;
    bool json = false;
};

int cmd_cohomology(const CohomologyArgs& a, std::ostream& out) {
    const ZpLattice l = resolve_lattice(a.spec, a.file);
    const TypeSignature t = detect_type(l);

    ordered_json doc;
    doc["command"] = "cohomology";
    doc["what"] = a.what;
    doc["p"] = l.p;
    doc["type"] = type_json(t);

    std::ostringstream os;
    std::vector<std::vector<std::string>> rows;
    ordered_json values = ordered_json::array();

    if (a.what == "fixed") {
        const auto ranks = exterior_fixed_ranks(l);
        for (std::size_t r = 0; r < ranks.size(); ++r) {
            rows.push_back({std::to_string(r), std::to_string(ranks[r])});
            values.push_back(ordered_json{{"r", r}, {"fixed_rank", ranks[r]}});
        }
        os << "## cohomology --what fixed (" << lattice_context(l, t) << ")\n\n"
           << md_table({"r", "fixed rank of Lambda^r"}, rows);
        doc["values"] = std::move(values);
        emit(a.json ? dump(doc) : os.str(), a.out_path, out);
        return 0;
    }

    doc["exterior"] = a.exterior;
    if (a.what == "sphere") {
        const auto h = sphere_homology_exterior(l, a.exterior, a.ell);
        for (std::size_t i = 0; i < h.size(); ++i) {
            rows.push_back({std::to_string(i), h[i].to_string()});
            values.push_back(ordered_json{{"i", i}, {"group", presentation_to_json(h[i])}});
        }
        os << "## cohomology --what sphere (" << lattice_context(l, t) << ", ell=" << a.ell
           << ", coefficients Lambda^" << a.exterior << ")\n\n"
           << md_table({"i", "H_i"}, rows);
        doc["ell"] = a.ell;
        doc["values"] = std::move(values);
        emit(a.json ? dump(doc) : os.str(), a.out_path, out);
        return 0;
    }

    const DegreeRange range = parse_degrees(a.degrees);
    if (a.what != "tate" && range.lo < 0)
        throw input_error("--what " + a.what + " needs nonnegative degrees; use tate below 0");
    for (long i = range.lo; i <= range.hi; ++i) {
        AbelianGroupPresentation g;
        if (a.what == "tate")
            g = tate_exterior(l, a.exterior, i);
        else if (a.what == "cohomology")
            g = cohomology_exterior(l, a.exterior, static_cast<unsigned long>(i));
        else
            g = homology_exterior(l, a.exterior, static_cast<unsigned long>(i));
        rows.push_back({std::to_string(i), g.to_string()});
        values.push_back(ordered_json{{"i", i}, {"group", presentation_to_json(g)}});
    }
    const char* column = a.what == "tate"          ? "tate^i"
                         : a.what == "cohomology" ? "H^i"
                                                   : "H_i";
    os << "## cohomology --what " << a.what << " (" << lattice_context(l, t)
       << ", coefficients Lambda^" << a.exterior << ")\n\n"
       << md_table({"i", column}, rows);
    doc["degrees"] = ordered_json::array({range.lo, range.hi});
    doc["values"] = std::move(values);
    emit(a.json ? dump(doc) : os.str(), a.out_path, out);
    return 0;
}

// ---- invariants ------------------------------------------------------

struct InvariantsArgs {
    std::string spec, file, out_path;
    std::string what = "l-groups";
    std::string degrees = "0..3";
    std::string decoration = "s";
    unsigned long ell = 3;
    bool json = false;
};

int cmd_invariants(const InvariantsArgs& a, std::ostream& out) {
    const ZpLattice l = resolve_lattice(a.spec, a.file);
    const TypeSignature t = detect_type(l);
    const GammaDescriptor g = make_gamma(l.p, t);

    ordered_json doc;
    doc["command"] = "invariants";
    doc["what"] = a.what;
    doc["p"] = l.p;
    doc["type"] = type_json(t);

    std::ostringstream os;
    os << "## invariants --what " << a.what << " (" << lattice_context(l, t);

    if (a.what == "subgroups") {
        const SubgroupStructure s = subgroup_structure(l);
        os << ")\n\n"
           << md_table({"classes", "normalizer free rank", "weyl free rank"},
                       {{s.conjugacy_classes.get_str(), std::to_string(s.normalizer_free_rank),
                         std::to_string(s.weyl_free_rank)}});
        doc["classes"] = small_int(s.conjugacy_classes, "class count");
        doc["normalizer_free_rank"] = s.normalizer_free_rank;
        doc["weyl_free_rank"] = s.weyl_free_rank;
        emit(a.json ? dump(doc) : os.str(), a.out_path, out);
        return 0;
    }

    if (a.what == "structure-set") {
        const BundleDescriptor bundle = make_bundle(g, a.ell);
        const auto decs = parse_decorations(a.decoration);
        std::vector<std::string> header = {"kind"};
        ordered_json dec_names = ordered_json::array();
        for (const auto& d : decs) {
            header.push_back(d.to_string());
            dec_names.push_back(d.to_string());
        }
        std::vector<std::vector<std::string>> rows;
        ordered_json values = ordered_json::array();
        for (const auto kind : {StructureKind::periodic, StructureKind::geometric}) {
            const char* kind_text = kind == StructureKind::periodic ? "periodic" : "geometric";
            std::vector<std::string> row = {kind_text};
            ordered_json groups = ordered_json::object();
            for (const auto& d : decs) {
                const FormalAbelianGroup v = structure_set(bundle, d, kind);
                row.push_back(v.to_string());
                groups[d.to_string()] = formal_to_json(v);
            }
            rows.push_back(std::move(row));
            values.push_back(ordered_json{{"kind", kind_text}, {"groups", std::move(groups)}});
        }
        os << ", ell=" << a.ell << ", dim=" << g.rank() + a.ell + 1 << ")\n\n"
           << md_table(header, rows);
        doc["ell"] = a.ell;
        doc["dimension"] = g.rank() + a.ell + 1;
        doc["decorations"] = std::move(dec_names);
        doc["values"] = std::move(values);
        emit(a.json ? dump(doc) : os.str(), a.out_path, out);
        return 0;
    }

    const DegreeRange range = parse_degrees(a.degrees);
    doc["degrees"] = ordered_json::array({range.lo, range.hi});
    std::vector<std::vector<std::string>> rows;
    ordered_json values = ordered_json::array();

    const bool decorated = a.what == "l-groups" || a.what == "structure-set-bgamma";
    if (decorated) {
        const auto decs = parse_decorations(a.decoration);
        std::vector<std::string> header = {"m"};
        ordered_json dec_names = ordered_json::array();
        for (const auto& d : decs) {
            header.push_back(d.to_string());
            dec_names.push_back(d.to_string());
        }
        for (long m = range.lo; m <= range.hi; ++m) {
            std::vector<std::string> row = {std::to_string(m)};
            ordered_json groups = ordered_json::object();
            for (const auto& d : decs) {
                const FormalAbelianGroup v = a.what == "l-groups"
                                                 ? l_groups_gamma(g, d, m)
                                                 : structure_set_bgamma(g, d, m);
                row.push_back(v.to_string());
                groups[d.to_string()] = formal_to_json(v);
            }
            rows.push_back(std::move(row));
            values.push_back(ordered_json{{"m", m}, {"groups", std::move(groups)}});
        }
        os << ")\n\n" << md_table(header, rows);
        doc["decorations"] = std::move(dec_names);
        doc["values"] = std::move(values);
        emit(a.json ? dump(doc) : os.str(), a.out_path, out);
        return 0;
    }

    for (long m = range.lo; m <= range.hi; ++m) {
        FormalAbelianGroup v;
        if (a.what == "k-theory")
            v = k_theory_bgamma(g, m);
        else if (a.what == "k-homology")
            v = k_homology_bgamma(g, m);
        else
            v = whitehead_gamma(g, m);
        rows.push_back({std::to_string(m), v.to_string()});
        values.push_back(ordered_json{{"m", m}, {"group", formal_to_json(v)}});
    }
    os << ")\n\n" << md_table({"m", "group"}, rows);
    doc["values"] = std::move(values);
    emit(a.json ? dump(doc) : os.str(), a.out_path, out);
    return 0;
}

// ---- spectral --------------------------------------------------------

struct SpectralArgs {
    std::string spec, file, out_path;
    std::string variant = "k_cohomology";
    long degree = 0;
    unsigned long columns = 8;
    unsigned long ell = 3;
    long check_depth = -1;  // >= 0 switches to the consistency report
    bool json = false;
};

int cmd_spectral(const SpectralArgs& a, std::ostream& out) {
    const ZpLattice l = resolve_lattice(a.spec, a.file);
    const TypeSignature t = detect_type(l);

    if (a.check_depth >= 0) {
        const ConsistencyReport report =
            consistency_check(l, a.degree, static_cast<unsigned long>(a.check_depth));
        if (a.json) {
            ordered_json doc;
            doc["command"] = "spectral";
            doc["check"] = true;
            doc["p"] = l.p;
            doc["type"] = type_json(t);
            doc["total_degree"] = a.degree;
            doc["depth"] = a.check_depth;
            doc["passed"] = report.passed;
            doc["entries_checked"] = report.entries_checked;
            doc["pieces_checked"] = report.pieces_checked;
            doc["failures"] = report.failures;
            emit(dump(doc), a.out_path, out);
        } else {
            emit(report.to_string() + "\n", a.out_path, out);
        }
        return report.passed ? 0 : 1;
    }

    const E2Variant variant = parse_variant(a.variant);
    E2Options options;
    options.column_limit = a.columns;
    options.ell = a.ell;
    const E2Page page = e2_page(l, a.degree, variant, options);

    if (a.json) {
        emit(dump(page_to_json(page)), a.out_path, out);
        return 0;
    }
    std::vector<std::vector<std::string>> rows;
    for (unsigned long i = 0; i <= page.column_limit; ++i) {
        const long j = page.total_degree - static_cast<long>(i);
        rows.push_back({std::to_string(i), std::to_string(j),
                        page.entry(static_cast<long>(i), j).to_string()});
    }
    std::ostringstream os;
    os << "## spectral --variant " << variant_name(variant) << " (" << lattice_context(l, t)
       << ", total degree " << page.total_degree << ")\n\n"
       << md_table({"i", "j", "entry"}, rows);
    emit(os.str(), a.out_path, out);
    return 0;
}

// ---- verify ----------------------------------------------------------

struct VerifyArgs {
    std::vector<std::string> suites;
    std::vector<unsigned long> primes = {3, 5};
    unsigned long max_abc = 2;
    unsigned long depth = 6;
    unsigned long trials = 1000;
    std::uint64_t seed = 20260816;
    std::string out_path;
    bool list = false;
    bool verbose = false;
    bool json = false;
};

int cmd_verify(const VerifyArgs& a, std::ostream& out) {
    const auto& names = suite_names();
    if (a.list) {
        std::ostringstream os;
        for (const auto& n : names) os << "- " << n << "\n";
        emit(os.str(), a.out_path, out);
        return 0;
    }

    for (const auto p : a.primes)
        if (p < 3 || p % 2 == 0 || !is_prime(p))
            throw input_error("--p entries must be odd primes, got " + std::to_string(p));

    // Output order is fixed by the registry, not by the order given.
    std::vector<std::string> chosen;
    if (a.suites.empty()) {
        chosen = names;
    } else {
        for (const auto& n : names)
            if (std::find(a.suites.begin(), a.suites.end(), n) != a.suites.end())
                chosen.push_back(n);
        for (const auto& s : a.suites)
            if (std::find(names.begin(), names.end(), s) == names.end())
                throw input_error("unknown suite \"" + s + "\"; run verify --list");
    }

    VerifyOptions opt;
    opt.primes = a.primes;
    opt.max_abc = a.max_abc;
    opt.depth = a.depth;
    opt.trials = a.trials;
    opt.seed = a.seed;

    std::vector<SuiteReport> reports;
    reports.reserve(chosen.size());
    for (const auto& name : chosen) reports.push_back(run_suite(name, opt));

    bool all_passed = true;
    for (const auto& r : reports) all_passed = all_passed && r.passed();

    if (a.json) {
        ordered_json doc;
        doc["command"] = "verify";
        ordered_json primes = ordered_json::array();
        for (const auto p : a.primes) primes.push_back(p);
        doc["options"] = ordered_json{{"primes", std::move(primes)},
                                      {"max", a.max_abc},
                                      {"depth", a.depth},
                                      {"trials", a.trials},
                                      {"seed", a.seed}};
        ordered_json suites = ordered_json::array();
        for (const auto& r : reports) {
            ordered_json entry;
            entry["suite"] = r.suite;
            entry["cases"] = r.cases.size();
            entry["failures"] = r.failures();
            entry["passed"] = r.passed();
            ordered_json failing = ordered_json::array();
            for (const auto& c : r.cases)
                if (!c.passed)
                    failing.push_back(ordered_json{{"name", c.name}, {"detail", c.detail}});
            entry["failing"] = std::move(failing);
            suites.push_back(std::move(entry));
        }
        doc["suites"] = std::move(suites);
        doc["passed"] = all_passed;
        emit(dump(doc), a.out_path, out);
        return all_passed ? 0 : 1;
    }

    std::ostringstream os;
    os << "## verify (primes=";
    for (std::size_t i = 0; i < a.primes.size(); ++i)
        os << (i ? "," : "") << a.primes[i];
    os << ", max=" << a.max_abc << ", depth=" << a.depth << ", trials=" << a.trials
       << ", seed=" << a.seed << ")\n\n";
    std::vector<std::vector<std::string>> rows;
    for (const auto& r : reports)
        rows.push_back({r.suite, std::to_string(r.cases.size()), std::to_string(r.failures()),
                        r.passed() ? "pass" : "FAIL"});
    os << md_table({"suite", "cases", "failures", "result"}, rows);
    bool any_detail = false;
    for (const auto& r : reports) {
        if (a.verbose || !r.passed()) {
            if (!any_detail) os << "\n";
            any_detail = true;
            os << r.to_string(a.verbose) << "\n";
        }
    }
    os << "\n" << (all_passed ? "all suites passed" : "VERIFICATION FAILED") << "\n";
    emit(os.str(), a.out_path, out);
    return all_passed ? 0 : 1;
}

// Options whose values can start with '-' ("-inf", negative degrees); CLI11
// would read such a value as a new flag, so fold the pair into --opt=value.
std::vector<std::string> fold_dashed_values(const std::vector<std::string>& args) {
    static const std::vector<std::string> value_opts = {"--decoration", "--degrees", "--degree"};
    std::vector<std::string> folded;
    folded.reserve(args.size());
    for (std::size_t i = 0; i < args.size(); ++i) {
        const bool takes_value =
            std::find(value_opts.begin(), value_opts.end(), args[i]) != value_opts.end();
        if (takes_value && i + 1 < args.size() && args[i + 1].size() > 1 &&
            args[i + 1][0] == '-') {
            folded.push_back(args[i] + "=" + args[i + 1]);
            ++i;
        } else {
            folded.push_back(args[i]);
        }
    }
    return folded;
}

}  // namespace

int cli_run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Exact invariants of Z^n x| Z/p lattices and the torus bundles over lens "
                 "spaces they define",
                 "tbi"};
    app.require_subcommand(1);

    LatticeArgs lat;
    auto* lattice_cmd = app.add_subcommand("lattice", "Build a lattice and report its type");
    auto* lat_spec = lattice_cmd->add_option(
        "--spec", lat.spec, "inline spec: \"p=5;type=(a,b,c)\" or \"p=3;sum=cyclotomic+trivial:2\"");
    auto* lat_file = lattice_cmd->add_option("--file", lat.file, "lattice JSON file");
    lat_spec->excludes(lat_file);
    lattice_cmd->add_flag("--json", lat.json, "emit the lattice JSON schema");
    lattice_cmd->add_option("--out", lat.out_path, "write output to a file");

    CohomologyArgs coh;
    auto* coh_cmd = app.add_subcommand("cohomology", "Group and sphere (co)homology tables");
    auto* coh_spec = coh_cmd->add_option("--spec", coh.spec, "inline lattice spec");
    auto* coh_file = coh_cmd->add_option("--file", coh.file, "lattice JSON file");
    coh_spec->excludes(coh_file);
    coh_cmd->add_option("--what", coh.what, "table to compute (default tate)")
        ->check(CLI::IsMember({"tate", "cohomology", "homology", "sphere", "fixed"}));
    coh_cmd->add_option("--degrees", coh.degrees, "degree range like 0..3 (default 0..3)");
    coh_cmd->add_option("--exterior", coh.exterior,
                        "coefficients Lambda^r of the lattice (default 1)");
    coh_cmd->add_option("--ell", coh.ell, "sphere dimension for --what sphere (odd, default 3)");
    coh_cmd->add_flag("--json", coh.json, "emit JSON instead of markdown");
    coh_cmd->add_option("--out", coh.out_path, "write output to a file");

    InvariantsArgs inv;
    auto* inv_cmd = app.add_subcommand("invariants", "K-, L-, and structure-set invariants");
    auto* inv_spec = inv_cmd->add_option("--spec", inv.spec, "inline lattice spec");
    auto* inv_file = inv_cmd->add_option("--file", inv.file, "lattice JSON file");
    inv_spec->excludes(inv_file);
    inv_cmd->add_option("--what", inv.what, "invariant to compute (default l-groups)")
        ->check(CLI::IsMember({"l-groups", "k-theory", "k-homology", "structure-set",
                               "structure-set-bgamma", "whitehead", "subgroups"}));
    inv_cmd->add_option("--degrees", inv.degrees, "degree range like 0..3 (default 0..3)");
    inv_cmd->add_option("--decoration", inv.decoration,
                        "comma list of decorations: s, h, j:<int>, -inf (default s)");
    inv_cmd->add_option("--ell", inv.ell, "sphere dimension for structure sets (odd, default 3)");
    inv_cmd->add_flag("--json", inv.json, "emit JSON instead of markdown");
    inv_cmd->add_option("--out", inv.out_path, "write output to a file");

    SpectralArgs spec;
    auto* spec_cmd = app.add_subcommand("spectral", "E2 pages and their consistency checker");
    auto* spec_spec = spec_cmd->add_option("--spec", spec.spec, "inline lattice spec");
    auto* spec_file = spec_cmd->add_option("--file", spec.file, "lattice JSON file");
    spec_spec->excludes(spec_file);
    spec_cmd->add_option("--variant", spec.variant,
                         "k_cohomology | k_homology | l_homology_bgamma | l_homology_M");
    spec_cmd->add_option("--degree", spec.degree, "total degree m (default 0)");
    spec_cmd->add_option("--columns", spec.columns, "column cutoff (default 8)");
    spec_cmd->add_option("--ell", spec.ell, "sphere dimension for l_homology_M (default 3)");
    spec_cmd->add_option("--check", spec.check_depth,
                         "run the consistency checker to this column depth instead");
    spec_cmd->add_flag("--json", spec.json, "emit JSON instead of markdown");
    spec_cmd->add_option("--out", spec.out_path, "write output to a file");

    VerifyArgs ver;
    auto* ver_cmd = app.add_subcommand("verify", "Run verification suites");
    ver_cmd->add_option("--suite", ver.suites, "suites to run (repeatable; default all)")
        ->delimiter(',');
    ver_cmd->add_option("--p", ver.primes, "odd primes for lattice grids (default 3,5)")
        ->delimiter(',');
    ver_cmd->add_option("--max", ver.max_abc, "cap on each type multiplicity (default 2)");
    ver_cmd->add_option("--depth", ver.depth, "page depth for e2-consistency (default 6)");
    ver_cmd->add_option("--trials", ver.trials, "randomized linear-algebra trials (default 1000)");
    ver_cmd->add_option("--seed", ver.seed, "seed for randomized suites");
    ver_cmd->add_flag("--list", ver.list, "list suite names and exit");
    ver_cmd->add_flag("--verbose", ver.verbose, "list every case, not just failures");
    ver_cmd->add_flag("--json", ver.json, "emit JSON instead of markdown");
    ver_cmd->add_option("--out", ver.out_path, "write output to a file");

    try {
        // CLI11's vector overload consumes the arguments back to front.
        std::vector<std::string> folded = fold_dashed_values(args);
        std::reverse(folded.begin(), folded.end());
        app.parse(std::move(folded));
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }

    try {
        if (lattice_cmd->parsed()) return cmd_lattice(lat, out);
        if (coh_cmd->parsed()) return cmd_cohomology(coh, out);
        if (inv_cmd->parsed()) return cmd_invariants(inv, out);
        if (spec_cmd->parsed()) return cmd_spectral(spec, out);
        if (ver_cmd->parsed()) return cmd_verify(ver, out);
        err << "error: no command selected\n";
        return 2;
    } catch (const input_error& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const internal_error& e) {
        err << "internal error: " << e.what() << "\n";
        return 2;
    }
}

}  // namespace tbi
