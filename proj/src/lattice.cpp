#include "tbi/lattice.hpp"

#include <algorithm>
#include <cstdlib>
#include <sstream>

#include "tbi/snf.hpp"

namespace tbi {

namespace {

unsigned long env_cap(const char* name, unsigned long dflt) {
    const char* s = std::getenv(name);
    if (!s || !*s) return dflt;
    char* end = nullptr;
    unsigned long v = std::strtoul(s, &end, 10);
    if (end == s || *end) throw input_error(std::string(name) + ": not a number");
    return v;
}

void validate_prime(unsigned long p) {
    if (p < 3 || p % 2 == 0 || !is_prime(p))
        throw input_error("p must be an odd prime");
    if (p > max_prime()) throw input_error("p exceeds TBI_MAX_PRIME");
}

void validate_action(unsigned long p, const IntegerMatrix& m) {
    validate_prime(p);
    if (!m.is_square()) throw input_error("action matrix must be square");
    if (m.rows() > max_rank()) throw input_error("lattice rank exceeds TBI_MAX_RANK");
    mpz_class det = determinant(m);
    if (det != 1 && det != -1) throw input_error("action matrix must be unimodular");
    if (!mat_pow(m, p).is_identity()) throw input_error("action matrix must satisfy rho^p = 1");
}

}  // namespace

unsigned long max_rank() {
    static unsigned long v = env_cap("TBI_MAX_RANK", 24);
    return v;
}

unsigned long max_prime() {
    static unsigned long v = env_cap("TBI_MAX_PRIME", 13);
    return v;
}

const std::string& ZpLattice::key() const {
    if (memo_key.empty()) {
        std::ostringstream os;
        os << "p" << p << "|" << action.key();
        const_cast<ZpLattice*>(this)->memo_key = os.str();
    }
    return memo_key;
}

ZpLattice lattice_unchecked(unsigned long p, IntegerMatrix m, std::string memo_key) {
    ZpLattice l;
    l.p = p;
    l.action = std::move(m);
    l.memo_key = std::move(memo_key);
    return l;
}

ZpLattice lattice_trivial(unsigned long p, std::size_t c) {
    validate_prime(p);
    if (c > max_rank()) throw input_error("lattice rank exceeds TBI_MAX_RANK");
    ZpLattice l;
    l.p = p;
    l.action = IntegerMatrix::identity(c);
    if (c > 1)
        for (std::size_t i = 0; i < c; ++i) l.parts.push_back(lattice_trivial(p, 1));
    return l;
}

ZpLattice lattice_cyclotomic(unsigned long p) {
    validate_prime(p);
    const std::size_t n = p - 1;
    IntegerMatrix m(n, n);
    for (std::size_t j = 0; j + 1 < n; ++j) m(j + 1, j) = 1;
    for (std::size_t i = 0; i < n; ++i) m(i, n - 1) = -1;
    ZpLattice l;
    l.p = p;
    l.action = std::move(m);
    return l;
}

ZpLattice lattice_regular(unsigned long p) {
    validate_prime(p);
    IntegerMatrix m(p, p);
    for (std::size_t j = 0; j < p; ++j) m((j + 1) % p, j) = 1;
    ZpLattice l;
    l.p = p;
    l.action = std::move(m);
    return l;
}

ZpLattice lattice_ideal_extension(unsigned long p, const ZpLattice& b,
                                  const std::vector<mpz_class>& b0) {
    validate_prime(p);
    if (b.p != p) throw input_error("ideal_extension: prime mismatch");
    if (b.rank() != p - 1 || !(detect_type(b) == TypeSignature{1, 0, 0}))
        throw input_error("ideal_extension: base must be a rank-(p-1) cyclotomic-type lattice");
    if (b0.size() != p - 1) throw input_error("ideal_extension: glue vector has wrong length");

    IntegerMatrix rhs(p - 1, 1);
    for (std::size_t i = 0; i < p - 1; ++i) rhs(i, 0) = b0[i];
    IntegerMatrix one_minus = IntegerMatrix::identity(p - 1) - b.action;
    if (solve_integer(one_minus, rhs).has_value())
        throw input_error("ideal_extension: glue vector lies in (1 - zeta) B, extension splits");

    IntegerMatrix m(p, p);
    for (std::size_t i = 0; i < p - 1; ++i)
        for (std::size_t j = 0; j < p - 1; ++j) m(i, j) = b.action(i, j);
    for (std::size_t i = 0; i < p - 1; ++i) m(i, p - 1) = b0[i];
    m(p - 1, p - 1) = 1;
    validate_action(p, m);
    ZpLattice l;
    l.p = p;
    l.action = std::move(m);
    return l;
}

ZpLattice lattice_from_matrix(unsigned long p, const IntegerMatrix& m) {
    validate_action(p, m);
    ZpLattice l;
    l.p = p;
    l.action = m;
    return l;
}

ZpLattice direct_sum(const std::vector<ZpLattice>& parts) {
    if (parts.empty()) throw input_error("direct_sum: no summands");
    const unsigned long p = parts.front().p;
    std::size_t n = 0;
    for (const auto& s : parts) {
        if (s.p != p) throw input_error("direct_sum: prime mismatch");
        n += s.rank();
    }
    if (n > max_rank()) throw input_error("lattice rank exceeds TBI_MAX_RANK");
    IntegerMatrix m(n, n);
    std::size_t off = 0;
    for (const auto& s : parts) {
        for (std::size_t i = 0; i < s.rank(); ++i)
            for (std::size_t j = 0; j < s.rank(); ++j) m(off + i, off + j) = s.action(i, j);
        off += s.rank();
    }
    ZpLattice l;
    l.p = p;
    l.action = std::move(m);
    l.parts = parts;
    return l;
}

ZpLattice dual_lattice(const ZpLattice& l) {
    ZpLattice d;
    d.p = l.p;
    d.action = inverse_unimodular(l.action).transpose();
    for (const auto& s : l.parts) d.parts.push_back(dual_lattice(s));
    return d;
}

ZpLattice tensor_lattice(const ZpLattice& a, const ZpLattice& b) {
    if (a.p != b.p) throw input_error("tensor_lattice: prime mismatch");
    return lattice_unchecked(a.p, kron_tensor(a.action, b.action), "");
}

ZpLattice exterior_power_lattice(const ZpLattice& l, std::size_t r) {
    return lattice_unchecked(l.p, exterior_power_matrix(l.action, r), "");
}

std::string TypeSignature::to_string() const {
    std::ostringstream os;
    os << "(" << a << "," << b << "," << c << ")";
    return os.str();
}

TypeSignature detect_type(const ZpLattice& l) {
    const std::size_t n = l.rank();
    const unsigned long p = l.p;
    IntegerMatrix amin1 = l.action - IntegerMatrix::identity(n);
    const std::size_t fixed = n - rank(amin1);

    // Count the cyclotomic pieces through degree-1 Tate cohomology.
    IntegerMatrix norm(n, n);
    IntegerMatrix pw = IntegerMatrix::identity(n);
    for (unsigned long i = 0; i < p; ++i) {
        norm = norm + pw;
        if (i + 1 < p) pw = pw * l.action;
    }
    AbelianGroupPresentation h1 = subquotient(norm, amin1);
    if (h1.free_rank != 0 || !h1.is_elementary(p))
        throw internal_error("detect_type: H^1 is not elementary abelian");
    const unsigned long a = static_cast<unsigned long>(h1.torsion.size());

    const long rest = static_cast<long>(n) - static_cast<long>(a * (p - 1)) -
                      static_cast<long>(fixed);
    if (rest < 0 || rest % static_cast<long>(p - 1) != 0)
        throw input_error("detect_type: lattice is unclassifiable");
    const unsigned long b = static_cast<unsigned long>(rest / static_cast<long>(p - 1));
    if (b > fixed) throw input_error("detect_type: lattice is unclassifiable");
    const unsigned long c = static_cast<unsigned long>(fixed) - b;
    if (a * (p - 1) + b * p + c != n)
        throw input_error("detect_type: lattice is unclassifiable");
    return {a, b, c};
}

ZpLattice canonical_lattice(unsigned long p, const TypeSignature& t) {
    validate_prime(p);
    std::vector<ZpLattice> parts;
    for (unsigned long i = 0; i < t.a; ++i) parts.push_back(lattice_cyclotomic(p));
    for (unsigned long i = 0; i < t.b; ++i) parts.push_back(lattice_regular(p));
    for (unsigned long i = 0; i < t.c; ++i) parts.push_back(lattice_trivial(p, 1));
    if (parts.empty()) return lattice_trivial(p, 0);
    return direct_sum(parts);
}

SubgroupStructure subgroup_structure(const ZpLattice& l) {
    TypeSignature t = detect_type(l);
    SubgroupStructure s;
    mpz_ui_pow_ui(s.conjugacy_classes.get_mpz_t(), l.p, t.a);
    s.normalizer_free_rank = t.b + t.c;
    s.weyl_free_rank = t.b + t.c;
    return s;
}

std::vector<const ZpLattice*> leaf_summands(const ZpLattice& l) {
    std::vector<const ZpLattice*> out;
    if (l.parts.empty()) {
        out.push_back(&l);
        return out;
    }
    for (const auto& s : l.parts) {
        auto sub = leaf_summands(s);
        out.insert(out.end(), sub.begin(), sub.end());
    }
    return out;
}

std::string block_key(unsigned long p, const std::vector<ZpLattice>& factors) {
    std::vector<std::string> fk;
    for (const auto& f : factors) fk.push_back(f.key());
    // Reordering the factors only conjugates the block by a permutation, so
    // isomorphism invariants cached under this key stay valid.
    std::sort(fk.begin(), fk.end());
    std::ostringstream os;
    os << "p" << p << "|ext";
    for (const auto& s : fk) os << "|" << s;
    return os.str();
}

std::vector<std::vector<ZpLattice>> exterior_block_factors(const ZpLattice& l, std::size_t r) {
    auto leaves = leaf_summands(l);
    const std::size_t k = leaves.size();  // >= 1: a part-less lattice is its own leaf
    std::vector<std::vector<ZpLattice>> blocks;

    auto emit = [&](const std::vector<std::size_t>& tup) {
        std::vector<ZpLattice> factors;
        for (std::size_t i = 0; i < k; ++i) {
            std::ostringstream fk;
            fk << leaves[i]->key() << "^" << tup[i];
            factors.push_back(lattice_unchecked(
                l.p, exterior_power_matrix(leaves[i]->action, tup[i]), fk.str()));
        }
        blocks.push_back(std::move(factors));
    };

    // Exponent tuples (r_1..r_k), 0 <= r_i <= rank_i, sum r, in lexicographic
    // order; k and r stay small, so plain recursion is fine.
    std::vector<std::size_t> cur(k, 0);
    auto rec = [&](auto&& self, std::size_t idx, std::size_t left) -> void {
        if (idx == k) {
            if (left == 0) emit(cur);
            return;
        }
        const std::size_t cap = std::min(left, leaves[idx]->rank());
        for (std::size_t v = 0; v <= cap; ++v) {
            cur[idx] = v;
            self(self, idx + 1, left - v);
        }
        cur[idx] = 0;
    };
    rec(rec, 0, r);
    return blocks;
}

std::vector<ZpLattice> exterior_blocks(const ZpLattice& l, std::size_t r) {
    std::vector<ZpLattice> blocks;
    for (auto& factors : exterior_block_factors(l, r)) {
        IntegerMatrix m = IntegerMatrix::identity(1);
        for (const auto& f : factors) m = kron_tensor(m, f.action);
        ZpLattice blk = lattice_unchecked(l.p, std::move(m), block_key(l.p, factors));
        blk.tensor_factors = std::move(factors);
        blocks.push_back(std::move(blk));
    }
    return blocks;
}

}  // namespace tbi
