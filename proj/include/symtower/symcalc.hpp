#pragma once

// Formal symbol algebra over a tower: sums of cup-product symbols, the
// canonical exterior-type normal form, zero/equality/period queries, and
// coefficient change along divisors of m.
//
// Canonical classes are stored as coefficient maps from squarefree subsets of
// the generator set {c, t_1, ..., t_n} (bitmask, bit 0 = c) to Z/m. The
// normal form is fixed by the generator order c < t_1 < ... < t_n, signs by
// sorting parity, diagonal pairs rewritten through the class of -1, and any
// monomial carrying two base-field slots killed (degree >= 2 cohomology of a
// finite field vanishes).

#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include "symtower/tower.hpp"

namespace symtower {

class SymbolSum {
public:
    using Term = std::pair<std::int64_t, std::vector<ElementClass>>;

    SymbolSum(TowerPtr tower, int degree);

    /// Single symbol with coefficient 1.
    static SymbolSum symbol(std::vector<ElementClass> entries);

    void add_term(std::int64_t coeff, std::vector<ElementClass> entries);

    const TowerPtr& tower() const { return tower_; }
    int degree() const { return degree_; }
    const std::vector<Term>& terms() const { return terms_; }
    bool empty() const { return terms_.empty(); }

    SymbolSum operator+(const SymbolSum& other) const;
    SymbolSum scaled(std::int64_t r) const;

private:
    TowerPtr tower_;
    int degree_;
    std::vector<Term> terms_;
};

class CanonicalClass {
public:
    CanonicalClass(TowerPtr tower, int degree);

    static CanonicalClass zero(TowerPtr tower, int degree);
    /// Basis monomial e_S for the generator subset S given as a bitmask.
    static CanonicalClass basis(TowerPtr tower, std::uint32_t mask);

    const TowerPtr& tower() const { return tower_; }
    int degree() const { return degree_; }
    const std::map<std::uint32_t, std::int64_t>& coefficients() const { return coeffs_; }

    std::int64_t coefficient(std::uint32_t mask) const;
    void add_monomial(std::uint32_t mask, std::int64_t coeff);

    bool is_zero() const { return coeffs_.empty(); }
    /// Number of nonzero basis monomials; an upper bound for symbol length.
    int term_count() const { return static_cast<int>(coeffs_.size()); }

    bool operator==(const CanonicalClass& other) const;

private:
    TowerPtr tower_;
    int degree_;
    std::map<std::uint32_t, std::int64_t> coeffs_;
};

/// Multilinear expansion over the generator basis followed by the rewrite to
/// normal form. Requires a full-calculus tower. Degrees above n+1 come back
/// as the zero class.
CanonicalClass normalize(const SymbolSum& sum);

CanonicalClass add(const CanonicalClass& x, const CanonicalClass& y);
CanonicalClass scale(const CanonicalClass& x, std::int64_t r);
CanonicalClass negate(const CanonicalClass& x);

/// Cup product. Overlapping monomials are resolved through the same diagonal
/// rewrite as normalize, so cup(normalize(s), normalize(s')) agrees with
/// normalizing the concatenated symbols.
CanonicalClass cup(const CanonicalClass& x, const CanonicalClass& y);

bool is_zero(const CanonicalClass& x);
bool equals(const CanonicalClass& x, const CanonicalClass& y);

/// Order of the class: m / gcd(m, gcd of all coefficients); period(0) = 1.
std::int64_t period(const CanonicalClass& x);

/// Coefficient reduction Z/m -> Z/s for s | m.
CanonicalClass coeff_reduce(const CanonicalClass& x, std::int64_t s);

/// Division by s into Z/(m/s); every coefficient must be divisible by s.
CanonicalClass coeff_lift(const CanonicalClass& x, std::int64_t s);

/// The inclusion-induced map Z/l -> Z/(l*s), multiplying coefficients by s.
CanonicalClass coeff_include(const CanonicalClass& x, std::int64_t target_m);

/// Re-serialize a canonical class as a sum of generator symbols.
SymbolSum to_symbols(const CanonicalClass& x);

/// Degree-1 canonical class of a field element.
CanonicalClass h1_class(const ElementClass& cls);

/// Restriction of a canonical class along an extension step (coefficientwise
/// multipliers on the affected generator slots).
CanonicalClass restrict_class(const CanonicalClass& x, const ExtensionStep& step);

/// Corestriction along a residue enlargement; cor(res(x)) = degree * x.
CanonicalClass corestrict_class(const CanonicalClass& x, const ExtensionStep& step);

/// dim H^k = C(n+1, k) as a free Z/m-module.
std::int64_t basis_dimension(const FieldTower& tower, int degree);

}  // namespace symtower
