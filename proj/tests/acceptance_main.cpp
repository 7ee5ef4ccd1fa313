// Acceptance gate: ten exact-equality criteria, one pass/fail line each.
// Run everything, or a single criterion with --criterion N (repeatable).
#include <chrono>
#include <cstring>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "tbi/cohomology.hpp"
#include "tbi/invariants.hpp"
#include "tbi/lattice.hpp"
#include "tbi/verify.hpp"

using namespace tbi;

namespace {

struct Outcome {
    bool passed = true;
    unsigned long checks = 0;
    std::string detail;

    void check(bool ok, const std::string& context) {
        ++checks;
        if (ok) return;
        passed = false;
        if (detail.empty()) detail = "first failure: " + context;
    }
};

Outcome from_suite(const std::string& name) {
    const SuiteReport r = run_suite(name);
    Outcome o;
    o.passed = r.passed();
    o.checks = r.cases.size();
    if (!r.passed())
        for (const auto& c : r.cases)
            if (!c.passed) {
                o.detail = "first failure: " + c.name + " — " + c.detail;
                break;
            }
    return o;
}

Outcome merge(std::initializer_list<Outcome> parts) {
    Outcome total;
    for (const auto& o : parts) {
        total.checks += o.checks;
        if (!o.passed && total.passed) {
            total.passed = false;
            total.detail = o.detail;
        }
    }
    return total;
}

// 1. Tate groups of exterior powers agree across realizations of a type.
Outcome criterion_1() { return from_suite("prop43"); }

// 2. Parity vanishing and stable dimensions for cyclotomic powers.
Outcome criterion_2() { return from_suite("prop44-dims"); }

// 3. Exterior powers of the regular lattice have vanishing Tate groups.
Outcome criterion_3() { return from_suite("lemma45-freeness"); }

// 4. Tate duality against the dual lattice.
Outcome criterion_4() { return from_suite("tate-duality"); }

// 5. The alternating-sum count equals its closed form.
Outcome criterion_5() { return from_suite("nu-identity"); }

// 6. K-theory closed form for Z x Z/p, product/suspension invariants, and
//    the page consistency checker.
Outcome criterion_6() {
    Outcome direct;
    for (unsigned long p : {3ul, 5ul}) {
        const GammaDescriptor g = make_gamma(p, {0, 0, 1});
        const FormalAbelianGroup expected =
            formal_free(1) + formal_of(leaf_zp_adic(p), p - 1);
        for (long m = -2; m <= 5; ++m) {
            std::ostringstream ctx;
            ctx << "k-theory closed form p=" << p << " m=" << m;
            direct.check(k_theory_bgamma(g, m) == expected, ctx.str());
        }
    }
    return merge({direct, from_suite("product-consistency"), from_suite("e2-consistency")});
}

// 7. L-group hand values, absence of odd-torsion leaves, and the
//    periodic-vs-geometric structure-set difference rule.
Outcome criterion_7() {
    Outcome o;
    const Decoration minf = Decoration::minus_infinity();
    const GammaDescriptor g = make_gamma(3, {1, 0, 0});
    o.check(l_groups_gamma(g, minf, 0).to_string() == "Z^4 + Z/2",
            "hand value m=0, got " + l_groups_gamma(g, minf, 0).to_string());
    o.check(l_groups_gamma(g, minf, 1).is_zero(), "hand value m=1 nonzero");
    o.check(l_groups_gamma(g, minf, 2).to_string() == "Z^4 + Z/2",
            "hand value m=2, got " + l_groups_gamma(g, minf, 2).to_string());
    o.check(l_groups_gamma(g, minf, 3).is_zero(), "hand value m=3 nonzero");

    const std::vector<Decoration> decs = {Decoration::s(), Decoration::h(), minf};
    for (unsigned long p : {3ul, 5ul})
        for (unsigned long a = 0; a <= 2; ++a)
            for (unsigned long b = 0; b <= 2; ++b)
                for (unsigned long c = 0; c <= 2; ++c)
                    for (const auto& dec : decs)
                        for (long m = 0; m <= 3; ++m) {
                            const auto out =
                                l_groups_gamma(make_gamma(p, {a, b, c}), dec, m);
                            bool clean = true;
                            for (const auto& [leaf, mult] : out.leaves())
                                clean = clean && (leaf.kind == LeafKind::Z2 ||
                                                  leaf.kind == LeafKind::H_Zp);
                            std::ostringstream ctx;
                            ctx << "odd-torsion-free p=" << p << " (" << a << "," << b << ","
                                << c << ") dec=" << dec.to_string() << " m=" << m << ": "
                                << out.to_string();
                            o.check(clean, ctx.str());
                        }

    for (unsigned long p : {3ul, 5ul})
        for (unsigned long a = 0; a <= 1; ++a)
            for (unsigned long b = 0; b <= 1; ++b)
                for (unsigned long c = 0; c <= 1; ++c)
                    for (unsigned long ell : {3ul, 5ul})
                        for (const auto& dec : decs) {
                            const GammaDescriptor gd = make_gamma(p, {a, b, c});
                            const BundleDescriptor bundle = make_bundle(gd, ell);
                            const ZpLattice l = canonical_lattice(p, gd.type);
                            const auto per =
                                structure_set(bundle, dec, StructureKind::periodic);
                            const auto geo =
                                structure_set(bundle, dec, StructureKind::geometric);
                            const auto diff =
                                geo + formal_free(fixed_rank_exterior(l, l.rank()));
                            std::ostringstream ctx;
                            ctx << "structure-set difference p=" << p << " (" << a << "," << b
                                << "," << c << ") ell=" << ell << " dec=" << dec.to_string();
                            o.check(per == diff, ctx.str());
                        }
    return o;
}

// 8. Whitehead groups vanish in negative degrees.
Outcome criterion_8() {
    Outcome o;
    for (unsigned long p : {3ul, 5ul})
        for (unsigned long a = 0; a <= 2; ++a)
            for (unsigned long b = 0; b <= 2; ++b)
                for (unsigned long c = 0; c <= 2; ++c)
                    for (long m = -3; m <= -1; ++m) {
                        std::ostringstream ctx;
                        ctx << "whitehead p=" << p << " (" << a << "," << b << "," << c
                            << ") m=" << m;
                        o.check(whitehead_gamma(make_gamma(p, {a, b, c}), m).is_zero(),
                                ctx.str());
                    }
    return o;
}

// 9. Sphere-complex homology: lens pattern for trivial coefficients,
//    agreement with group homology below the top degree, and vanishing
//    middle for free coefficients.
Outcome criterion_9() {
    Outcome o;
    const AbelianGroupPresentation z = free_abelian(1);
    for (unsigned long p : {3ul, 5ul})
        for (unsigned long ell : {3ul, 5ul}) {
            const ZpLattice triv = lattice_trivial(p, 1);
            const auto h = sphere_homology_exterior(triv, 1, ell);
            std::ostringstream base;
            base << "p=" << p << " ell=" << ell;
            o.check(h[0] == z, "lens bottom " + base.str());
            o.check(h[ell] == z, "lens top " + base.str());
            for (unsigned long i = 1; i < ell; ++i) {
                const AbelianGroupPresentation expected =
                    i % 2 == 1 ? AbelianGroupPresentation{0, {mpz_class(p)}}
                               : AbelianGroupPresentation{};
                o.check(h[i] == expected,
                        "lens middle i=" + std::to_string(i) + " " + base.str() + ": " +
                            h[i].to_string());
            }
            for (const ZpLattice& l :
                 {triv, lattice_regular(p), lattice_cyclotomic(p)}) {
                const auto hs = sphere_homology_exterior(l, 1, ell);
                for (unsigned long i = 0; i < ell; ++i)
                    o.check(hs[i] == homology_exterior(l, 1, i),
                            "group-homology agreement i=" + std::to_string(i) + " " +
                                base.str());
            }
            const auto hf = sphere_homology_exterior(lattice_regular(p), 1, ell);
            for (unsigned long i = 1; i < ell; ++i)
                o.check(hf[i].is_trivial(),
                        "free middle i=" + std::to_string(i) + " " + base.str() + ": " +
                            hf[i].to_string());
        }
    return o;
}

// 10. Randomized elimination / functoriality / cokernel property suite.
Outcome criterion_10() { return from_suite("exact-linalg"); }

const char* criterion_label(int n) {
    switch (n) {
        case 1: return "tate oracle across realizations";
        case 2: return "cyclotomic parity dimensions";
        case 3: return "regular-lattice freeness";
        case 4: return "tate duality";
        case 5: return "alternating-sum identity";
        case 6: return "k-theory cross-checks";
        case 7: return "l-theory evaluation";
        case 8: return "whitehead vanishing";
        case 9: return "equivariant sphere homology";
        case 10: return "exact-linalg properties";
    }
    return "";
}

Outcome run_criterion(int n) {
    switch (n) {
        case 1: return criterion_1();
        case 2: return criterion_2();
        case 3: return criterion_3();
        case 4: return criterion_4();
        case 5: return criterion_5();
        case 6: return criterion_6();
        case 7: return criterion_7();
        case 8: return criterion_8();
        case 9: return criterion_9();
        case 10: return criterion_10();
    }
    throw input_error("criterion number must be 1..10");
}

}  // namespace

int main(int argc, char** argv) {
    std::vector<int> selected;
    for (int i = 1; i < argc; ++i) {
        if (std::strcmp(argv[i], "--criterion") == 0 && i + 1 < argc) {
            selected.push_back(std::atoi(argv[++i]));
        } else {
            std::cerr << "usage: tbi_acceptance [--criterion N]...\n";
            return 2;
        }
    }
    if (selected.empty())
        for (int n = 1; n <= 10; ++n) selected.push_back(n);

    bool all_passed = true;
    for (const int n : selected) {
        if (n < 1 || n > 10) {
            std::cerr << "criterion number must be 1..10, got " << n << "\n";
            return 2;
        }
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = run_criterion(n);
        } catch (const std::exception& e) {
            o.passed = false;
            o.detail = std::string("exception: ") + e.what();
        }
        const double seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        std::ostringstream line;
        line << "criterion " << n << " [" << criterion_label(n) << "]: "
             << (o.passed ? "pass" : "FAIL") << " (" << o.checks << " checks, ";
        line.precision(1);
        line << std::fixed << seconds << "s)";
        if (!o.passed) line << " " << o.detail;
        std::cout << line.str() << std::endl;
        all_passed = all_passed && o.passed;
    }
    return all_passed ? 0 : 1;
}
