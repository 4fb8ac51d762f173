#include "symtower/symcalc.hpp"

#include <bit>
#include <numeric>

#include "symtower/errors.hpp"
#include "symtower/modmath.hpp"

namespace symtower {

using modmath::floor_mod;

SymbolSum::SymbolSum(TowerPtr tower, int degree) : tower_(std::move(tower)), degree_(degree) {
    if (degree < 0) raise(ErrorKind::DegreeMismatch, "symbol degree must be nonnegative");
}

SymbolSum SymbolSum::symbol(std::vector<ElementClass> entries) {
    if (entries.empty()) raise(ErrorKind::DegreeMismatch, "a symbol needs at least one slot");
    SymbolSum sum(entries.front().tower(), static_cast<int>(entries.size()));
    sum.add_term(1, std::move(entries));
    return sum;
}

void SymbolSum::add_term(std::int64_t coeff, std::vector<ElementClass> entries) {
    if (static_cast<int>(entries.size()) != degree_)
        raise(ErrorKind::ArityMismatch, "term has " + std::to_string(entries.size()) +
                                            " slots, expected " + std::to_string(degree_));
    for (const auto& e : entries)
        if (!(*e.tower() == *tower_))
            raise(ErrorKind::TowerMismatch, "symbol entry belongs to a different tower");
    terms_.emplace_back(coeff, std::move(entries));
}

SymbolSum SymbolSum::operator+(const SymbolSum& other) const {
    if (!(*tower_ == *other.tower_)) raise(ErrorKind::TowerMismatch, "cannot add sums over different towers");
    if (degree_ != other.degree_) raise(ErrorKind::DegreeMismatch, "cannot add sums of different degrees");
    SymbolSum out = *this;
    for (const auto& [c, entries] : other.terms_) out.add_term(c, entries);
    return out;
}

SymbolSum SymbolSum::scaled(std::int64_t r) const {
    SymbolSum out(tower_, degree_);
    for (const auto& [c, entries] : terms_) out.add_term(c * r, entries);
    return out;
}

CanonicalClass::CanonicalClass(TowerPtr tower, int degree) : tower_(std::move(tower)), degree_(degree) {
    if (degree < 0) raise(ErrorKind::DegreeMismatch, "class degree must be nonnegative");
}

CanonicalClass CanonicalClass::zero(TowerPtr tower, int degree) { return CanonicalClass(std::move(tower), degree); }

CanonicalClass CanonicalClass::basis(TowerPtr tower, std::uint32_t mask) {
    CanonicalClass cls(tower, std::popcount(mask));
    cls.add_monomial(mask, 1);
    return cls;
}

std::int64_t CanonicalClass::coefficient(std::uint32_t mask) const {
    auto it = coeffs_.find(mask);
    return it == coeffs_.end() ? 0 : it->second;
}

void CanonicalClass::add_monomial(std::uint32_t mask, std::int64_t coeff) {
    if (std::popcount(mask) != degree_)
        raise(ErrorKind::DegreeMismatch, "monomial size does not match class degree");
    if (mask >> tower_->generator_count())
        raise(ErrorKind::UnknownGenerator, "monomial uses generators beyond the tower");
    std::int64_t v = floor_mod(coefficient(mask) + coeff, tower_->m);
    if (v == 0)
        coeffs_.erase(mask);
    else
        coeffs_[mask] = v;
}

bool CanonicalClass::operator==(const CanonicalClass& other) const {
    return *tower_ == *other.tower_ && degree_ == other.degree_ && coeffs_ == other.coeffs_;
}

namespace {

/// Insertion sort returning the permutation parity as +-1.
int sort_with_parity(std::vector<int>& gens) {
    int sign = 1;
    for (std::size_t i = 1; i < gens.size(); ++i)
        for (std::size_t j = i; j > 0 && gens[j] < gens[j - 1]; --j) {
            std::swap(gens[j], gens[j - 1]);
            sign = -sign;
        }
    return sign;
}

/// Reduce one generator tuple to the normal form and accumulate it.
/// Repeated pairs (g, g) are rewritten through the class of -1; monomials
/// with two base slots are dropped.
void accumulate_tuple(const FieldTower& tower, std::vector<int> gens, std::int64_t coeff,
                      std::map<std::uint32_t, std::int64_t>& acc) {
    const std::int64_t m = tower.m;
    coeff = floor_mod(coeff, m);
    if (coeff == 0) return;
    coeff = floor_mod(coeff * sort_with_parity(gens), m);

    const std::int64_t w = minus_one_exponent(tower);
    for (;;) {
        if (coeff == 0) return;
        int base_slots = 0;
        for (int g : gens) base_slots += (g == 0);
        if (base_slots >= 2) return;  // two base slots: killed

        std::size_t rep = gens.size();
        for (std::size_t i = 0; i + 1 < gens.size(); ++i)
            if (gens[i] == gens[i + 1]) {
                rep = i;
                break;
            }
        if (rep == gens.size()) break;

        // (g, g) -> (-1, g) with -1 = c^w.
        if (w % m == 0) return;
        gens[rep] = 0;
        coeff = floor_mod(coeff * w, m);
        coeff = floor_mod(coeff * sort_with_parity(gens), m);
    }

    std::uint32_t mask = 0;
    for (int g : gens) mask |= (1u << g);
    auto it = acc.find(mask);
    std::int64_t v = floor_mod((it == acc.end() ? 0 : it->second) + coeff, m);
    if (v == 0) {
        if (it != acc.end()) acc.erase(it);
    } else {
        acc[mask] = v;
    }
}

/// Expand the tuple of element classes over the generator basis by
/// multilinearity and feed every resulting generator tuple to the rewriter.
void expand_term(const FieldTower& tower, std::int64_t coeff, const std::vector<ElementClass>& entries,
                 std::map<std::uint32_t, std::int64_t>& acc) {
    const std::int64_t m = tower.m;
    // Per slot: the support of the class on the generator basis.
    std::vector<std::vector<std::pair<int, std::int64_t>>> support(entries.size());
    for (std::size_t i = 0; i < entries.size(); ++i) {
        const auto& e = entries[i];
        if (e.base_exp() != 0) support[i].emplace_back(0, e.base_exp());
        for (int s = 0; s < static_cast<int>(e.unif_exps().size()); ++s)
            if (e.unif_exp(s) != 0) support[i].emplace_back(s + 1, e.unif_exp(s));
        if (support[i].empty()) return;  // a trivial slot kills the symbol
    }

    std::vector<std::size_t> pick(entries.size(), 0);
    for (;;) {
        std::int64_t c = floor_mod(coeff, m);
        std::vector<int> gens(entries.size());
        for (std::size_t i = 0; i < entries.size(); ++i) {
            gens[i] = support[i][pick[i]].first;
            c = floor_mod(c * support[i][pick[i]].second, m);
        }
        if (c != 0) accumulate_tuple(tower, std::move(gens), c, acc);

        std::size_t slot = 0;
        while (slot < pick.size()) {
            if (++pick[slot] < support[slot].size()) break;
            pick[slot] = 0;
            ++slot;
        }
        if (slot == pick.size()) break;
    }
}

}  // namespace

CanonicalClass normalize(const SymbolSum& sum) {
    const auto& tower = *sum.tower();
    if (!tower.full_calculus)
        raise(ErrorKind::PreconditionViolation,
              "normal form requires a full-calculus tower (m | q-1)");
    std::map<std::uint32_t, std::int64_t> acc;
    for (const auto& [coeff, entries] : sum.terms()) expand_term(tower, coeff, entries, acc);
    CanonicalClass out(sum.tower(), sum.degree());
    for (const auto& [mask, coeff] : acc) out.add_monomial(mask, coeff);
    return out;
}

CanonicalClass add(const CanonicalClass& x, const CanonicalClass& y) {
    if (!(*x.tower() == *y.tower())) raise(ErrorKind::TowerMismatch, "cannot add classes over different towers");
    if (x.degree() != y.degree()) raise(ErrorKind::DegreeMismatch, "cannot add classes of different degrees");
    CanonicalClass out = x;
    for (const auto& [mask, coeff] : y.coefficients()) out.add_monomial(mask, coeff);
    return out;
}

CanonicalClass scale(const CanonicalClass& x, std::int64_t r) {
    CanonicalClass out(x.tower(), x.degree());
    for (const auto& [mask, coeff] : x.coefficients()) out.add_monomial(mask, coeff * floor_mod(r, x.tower()->m));
    return out;
}

CanonicalClass negate(const CanonicalClass& x) { return scale(x, x.tower()->m - 1); }

CanonicalClass cup(const CanonicalClass& x, const CanonicalClass& y) {
    if (!(*x.tower() == *y.tower())) raise(ErrorKind::TowerMismatch, "cannot cup classes over different towers");
    const auto& tower = *x.tower();
    if (!tower.full_calculus)
        raise(ErrorKind::PreconditionViolation, "cup product requires a full-calculus tower");
    std::map<std::uint32_t, std::int64_t> acc;
    for (const auto& [mx, cx] : x.coefficients()) {
        for (const auto& [my, cy] : y.coefficients()) {
            std::vector<int> gens;
            for (int g = 0; g < tower.generator_count(); ++g)
                if (mx & (1u << g)) gens.push_back(g);
            for (int g = 0; g < tower.generator_count(); ++g)
                if (my & (1u << g)) gens.push_back(g);
            accumulate_tuple(tower, std::move(gens), floor_mod(cx * cy, tower.m), acc);
        }
    }
    CanonicalClass out(x.tower(), x.degree() + y.degree());
    for (const auto& [mask, coeff] : acc) out.add_monomial(mask, coeff);
    return out;
}

bool is_zero(const CanonicalClass& x) { return x.is_zero(); }

bool equals(const CanonicalClass& x, const CanonicalClass& y) {
    return x == y;
}

std::int64_t period(const CanonicalClass& x) {
    const std::int64_t m = x.tower()->m;
    std::int64_t g = 0;
    for (const auto& [mask, coeff] : x.coefficients()) {
        (void)mask;
        g = std::gcd(g, coeff);
    }
    return m / std::gcd(m, g);
}

CanonicalClass coeff_reduce(const CanonicalClass& x, std::int64_t s) {
    if (s < 2 || x.tower()->m % s != 0)
        raise(ErrorKind::ModulusMismatch, "reduction modulus must be a divisor >= 2 of m");
    CanonicalClass out(sibling_modulus(x.tower(), s), x.degree());
    for (const auto& [mask, coeff] : x.coefficients()) out.add_monomial(mask, coeff);
    return out;
}

CanonicalClass coeff_lift(const CanonicalClass& x, std::int64_t s) {
    const std::int64_t m = x.tower()->m;
    if (s < 2 || m % s != 0 || m == s)
        raise(ErrorKind::ModulusMismatch, "lift divisor must be a proper divisor >= 2 of m");
    CanonicalClass out(sibling_modulus(x.tower(), m / s), x.degree());
    for (const auto& [mask, coeff] : x.coefficients()) {
        if (coeff % s != 0)
            raise(ErrorKind::NotLiftable, "coefficient " + std::to_string(coeff) + " is not divisible by " +
                                              std::to_string(s));
        out.add_monomial(mask, coeff / s);
    }
    return out;
}

CanonicalClass coeff_include(const CanonicalClass& x, std::int64_t target_m) {
    const std::int64_t ell = x.tower()->m;
    if (target_m % ell != 0)
        raise(ErrorKind::ModulusMismatch, "inclusion target must be a multiple of the source modulus");
    const std::int64_t s = target_m / ell;
    CanonicalClass out(sibling_modulus(x.tower(), target_m), x.degree());
    for (const auto& [mask, coeff] : x.coefficients()) out.add_monomial(mask, coeff * s);
    return out;
}

SymbolSum to_symbols(const CanonicalClass& x) {
    SymbolSum sum(x.tower(), x.degree());
    for (const auto& [mask, coeff] : x.coefficients()) {
        std::vector<ElementClass> entries;
        for (int g = 0; g < x.tower()->generator_count(); ++g)
            if (mask & (1u << g)) entries.push_back(ElementClass::generator(x.tower(), g));
        sum.add_term(coeff, std::move(entries));
    }
    return sum;
}

CanonicalClass h1_class(const ElementClass& cls) {
    CanonicalClass out(cls.tower(), 1);
    if (cls.base_exp() != 0) out.add_monomial(1u, cls.base_exp());
    for (int s = 0; s < static_cast<int>(cls.unif_exps().size()); ++s)
        if (cls.unif_exp(s) != 0) out.add_monomial(1u << (s + 1), cls.unif_exp(s));
    return out;
}

CanonicalClass restrict_class(const CanonicalClass& x, const ExtensionStep& step) {
    if (!(*x.tower() == *step.source()))
        raise(ErrorKind::TowerMismatch, "class does not live over the step's source tower");
    CanonicalClass out(step.target(), x.degree());
    for (const auto& [mask, coeff] : x.coefficients()) {
        std::int64_t c = coeff;
        if (mask & 1u) c *= step.base_multiplier();
        for (int s = 0; s < x.tower()->depth(); ++s)
            if (mask & (1u << (s + 1))) c *= step.slot_multiplier(s);
        out.add_monomial(mask, c);
    }
    return out;
}

CanonicalClass corestrict_class(const CanonicalClass& x, const ExtensionStep& step) {
    if (step.kind() == StepKind::RamifiedKummer)
        raise(ErrorKind::NotDescendable, "corestriction is defined along residue enlargements only");
    if (!(*x.tower() == *step.target()))
        raise(ErrorKind::NotDescendable, "class does not live over the step's target tower");
    CanonicalClass out(step.source(), x.degree());
    for (const auto& [mask, coeff] : x.coefficients()) {
        // Monomials with the base slot corestrict with multiplier 1 (projection
        // formula with N(c_target) = c_source); the rest pick up the degree.
        std::int64_t c = (mask & 1u) ? coeff : coeff * step.degree();
        out.add_monomial(mask, c);
    }
    return out;
}

std::int64_t basis_dimension(const FieldTower& tower, int degree) {
    const int n = tower.generator_count();
    if (degree < 0 || degree > n) return 0;
    std::int64_t num = 1, den = 1;
    for (int i = 0; i < degree; ++i) {
        num *= (n - i);
        den *= (i + 1);
    }
    return num / den;
}

}  // namespace symtower
