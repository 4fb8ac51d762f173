#include "symtower/splitting.hpp"

#include <algorithm>

#include "symtower/errors.hpp"
#include "symtower/modmath.hpp"

namespace symtower {

using modmath::floor_mod;
using modmath::inv_mod;
using modmath::multiplicative_order;

namespace {

void require_top_degree(const CanonicalClass& x) {
    if (x.degree() != x.tower()->cohomological_dimension())
        raise(ErrorKind::NotTopDegree, "expected a class of top degree " +
                                           std::to_string(x.tower()->cohomological_dimension()) +
                                           ", got degree " + std::to_string(x.degree()));
}

void require_full(const TowerPtr& tower) {
    if (!tower->full_calculus)
        raise(ErrorKind::PreconditionViolation, "splitting requires a full-calculus tower (m | q-1)");
    if (tower->depth() < 1)
        raise(ErrorKind::PreconditionViolation, "splitting adjoins roots of the outermost uniformizer");
}

SplittingCertificate trivial_certificate(const CanonicalClass& x) {
    return SplittingCertificate{x, {}, {}, 1, x.is_zero()};
}

void append_step(SplittingCertificate& cert, CanonicalClass& current, const ExtensionStep& step) {
    current = restrict_class(current, step);
    cert.chain.push_back(step);
    cert.restrictions.push_back(current);
    cert.total_degree *= step.degree();
}

SplittingCertificate split_recursive(const CanonicalClass& x, PeelOrder order) {
    const TowerPtr tower = x.tower();
    const std::int64_t m = tower->m;
    const int last_slot = tower->depth() - 1;

    SplittingCertificate cert = trivial_certificate(x);
    if (x.is_zero()) {
        cert.verified = true;
        return cert;
    }

    if (modmath::is_prime(m)) {
        CanonicalClass current = x;
        append_step(cert, current, ExtensionStep::ramified_kummer(tower, last_slot, m));
        cert.verified = current.is_zero();
        return cert;
    }

    auto factors = modmath::factorize(m);
    const std::int64_t ell =
        order == PeelOrder::AscendingPrimes ? factors.front().first : factors.back().first;
    const std::int64_t s = m / ell;

    // Split the image of x modulo s, then transport that chain back to x.
    SplittingCertificate reduced_cert = split_recursive(coeff_reduce(x, s), order);
    CanonicalClass current = x;
    for (const auto& step : reduced_cert.chain) {
        // Same extension move, re-expressed over the modulus-m tower.
        append_step(cert, current,
                    ExtensionStep::ramified_kummer(tower, step.uniformizer_slot(), step.degree()));
    }

    // What survives is divisible by s and lifts to the complementary modulus.
    CanonicalClass lifted = s == 1 ? current : coeff_lift(current, s);
    if (!lifted.is_zero())
        append_step(cert, current, ExtensionStep::ramified_kummer(tower, last_slot, ell));

    cert.verified = current.is_zero();
    return cert;
}

}  // namespace

bool verify_certificate(const SplittingCertificate& cert) {
    CanonicalClass current = cert.input;
    std::int64_t degree = 1;
    if (cert.restrictions.size() != cert.chain.size()) return false;
    for (std::size_t i = 0; i < cert.chain.size(); ++i) {
        current = restrict_class(current, cert.chain[i]);
        if (!(current == cert.restrictions[i])) return false;
        degree *= cert.chain[i].degree();
    }
    return degree == cert.total_degree && current.is_zero();
}

SplittingCertificate split_top(const CanonicalClass& x) {
    require_full(x.tower());
    require_top_degree(x);
    return split_recursive(x, PeelOrder::AscendingPrimes);
}

SplittingCertificate split_composite(const CanonicalClass& x, PeelOrder order) {
    require_full(x.tower());
    require_top_degree(x);
    return split_recursive(x, order);
}

IndexReport index_bounds(const CanonicalClass& x) {
    SplittingCertificate cert = split_top(x);
    const std::int64_t p = period(x);
    const bool equal = cert.verified && cert.total_degree == p;
    return IndexReport{p, cert.total_degree, equal, std::move(cert)};
}

CommonSlotCertificate common_slot_local(const std::vector<CanonicalClass>& classes) {
    if (classes.empty())
        raise(ErrorKind::PreconditionViolation, "common slot needs a nonempty family");
    const TowerPtr tower = classes.front().tower();
    require_full(tower);
    for (const auto& cls : classes) {
        if (!(*cls.tower() == *tower))
            raise(ErrorKind::TowerMismatch, "family members live over different towers");
        if (cls.degree() != tower->cohomological_dimension())
            raise(ErrorKind::MixedDegrees, "family members must all have top degree");
    }

    CommonSlotCertificate cert;
    cert.inputs = classes;
    const bool all_zero = std::all_of(classes.begin(), classes.end(),
                                      [](const CanonicalClass& c) { return c.is_zero(); });
    if (all_zero) {
        cert.all_split = true;
        return cert;
    }

    auto step = ExtensionStep::ramified_kummer(tower, tower->depth() - 1, tower->m);
    cert.chain.push_back(step);
    cert.total_degree = tower->m;
    cert.all_split = std::all_of(classes.begin(), classes.end(), [&step](const CanonicalClass& c) {
        return restrict_class(c, step).is_zero();
    });
    return cert;
}

DescentReport cyclotomic_descent(const TowerPtr& small_tower, const SplittingCertificate& enlarged_certificate) {
    const std::int64_t ell = small_tower->m;
    const std::int64_t q = small_tower->q;
    if (!modmath::is_prime(ell))
        raise(ErrorKind::PreconditionViolation, "descent handles prime moduli only");
    if ((q - 1) % ell == 0)
        raise(ErrorKind::PreconditionViolation,
              "mu_" + std::to_string(ell) + " already lies in the base field; no descent needed");
    if (small_tower->depth() < 1)
        raise(ErrorKind::PreconditionViolation, "descent splits along the outermost uniformizer");

    const std::int64_t d = multiplicative_order(q, ell);
    if (std::gcd(d, ell) != 1)
        raise(ErrorKind::GcdFailure, "enlargement degree shares a factor with the modulus");

    auto enlarge = ExtensionStep::residue_enlarge(small_tower, d);
    if (!(*enlarged_certificate.input.tower() == *enlarge.target()))
        raise(ErrorKind::TowerMismatch,
              "certificate must live over the mu_" + std::to_string(ell) + " enlargement of the small tower");
    const bool certificate_verified = verify_certificate(enlarged_certificate);

    // The faithful part of the small class group without mu_ell is generated
    // by the uniformizers; recompute cor(res(.)) = (.)^d there.
    bool contract_ok = true;
    for (int slot = 0; slot < small_tower->depth(); ++slot) {
        ElementClass t = ElementClass::generator(small_tower, slot + 1);
        ElementClass round_trip = corestrict_base(apply_extension(t, enlarge), enlarge);
        if (!(round_trip == t.pow(d))) contract_ok = false;
    }

    return DescentReport{q,
                         ell,
                         d,
                         inv_mod(d, ell),
                         true,
                         certificate_verified,
                         contract_ok,
                         small_tower,
                         enlarge.target(),
                         ell,
                         enlarged_certificate};
}

DescentReport descend_class(const TowerPtr& small_tower, const SymbolSum& sum) {
    const std::int64_t ell = small_tower->m;
    if (!modmath::is_prime(ell))
        raise(ErrorKind::PreconditionViolation, "descent handles prime moduli only");
    if ((small_tower->q - 1) % ell == 0)
        raise(ErrorKind::PreconditionViolation, "mu_ell already lies in the base field; use split directly");
    if (sum.degree() != small_tower->cohomological_dimension())
        raise(ErrorKind::NotTopDegree, "descent expects a top-degree class");

    const std::int64_t d = multiplicative_order(small_tower->q, ell);
    auto enlarge = ExtensionStep::residue_enlarge(small_tower, d);

    SymbolSum restricted(enlarge.target(), sum.degree());
    for (const auto& [coeff, entries] : sum.terms()) {
        std::vector<ElementClass> mapped;
        mapped.reserve(entries.size());
        for (const auto& e : entries) mapped.push_back(apply_extension(e, enlarge));
        restricted.add_term(coeff, std::move(mapped));
    }

    SplittingCertificate cert = split_top(normalize(restricted));
    return cyclotomic_descent(small_tower, cert);
}

}  // namespace symtower
