#include "symtower/numoracle.hpp"

#include <algorithm>
#include <cstdlib>

#include "symtower/errors.hpp"
#include "symtower/modmath.hpp"

namespace symtower::oracle {

using modmath::floor_mod;

namespace {

/// a = unit * p^{v mod 2} with the even part of the valuation stripped.
void strip_square_valuation(std::int64_t& a, std::int64_t p) {
    while (a % (p * p) == 0) a /= p * p;
}

std::int64_t unit_part(std::int64_t a, std::int64_t p) {
    while (a % p == 0) a /= p;
    return a;
}

int valuation_mod2(std::int64_t a, std::int64_t p) {
    int v = 0;
    while (a % p == 0) {
        a /= p;
        v ^= 1;
    }
    return v;
}

bool has_primitive_solution(std::int64_t a, std::int64_t b, std::int64_t mod, std::int64_t p) {
    const std::int64_t A = floor_mod(a, mod), B = floor_mod(b, mod);
    for (std::int64_t x = 0; x < mod; ++x)
        for (std::int64_t y = 0; y < mod; ++y)
            for (std::int64_t z = 0; z < mod; ++z) {
                if (x % p == 0 && y % p == 0 && z % p == 0) continue;
                if (floor_mod(z * z - A * x * x - B * y * y, mod) == 0) return true;
            }
    return false;
}

bool is_square_mod(std::int64_t v, std::int64_t p) {
    v = floor_mod(v, p);
    for (std::int64_t s = 0; s < p; ++s)
        if (s * s % p == v) return true;
    return false;
}

}  // namespace

int hilbert_symbol(std::int64_t a, std::int64_t b, const Place& place) {
    if (a == 0 || b == 0) raise(ErrorKind::ZeroInput, "Hilbert symbol needs nonzero entries");
    if (place.is_real) return (a < 0 && b < 0) ? -1 : 1;

    const std::int64_t p = place.prime;
    if (!modmath::is_prime(p)) raise(ErrorKind::PreconditionViolation, "place must be a prime or 'inf'");

    strip_square_valuation(a, p);
    strip_square_valuation(b, p);
    int va = valuation_mod2(a, p), vb = valuation_mod2(b, p);
    if (va == 1 && vb == 1) {
        // (pu, pv) = (pu, -uv): the second slot becomes a unit.
        std::int64_t ua = unit_part(a, p), ub = unit_part(b, p);
        b = -ua * ub;
        vb = 0;
    }
    if (va == 0 && vb == 1) {
        std::swap(a, b);
        std::swap(va, vb);
    }

    if (p == 2) {
        // Primitive solutions mod 8 lift: any primitive zero mod 8 has a
        // coordinate whose gradient has valuation 1, and 3 > 2*1.
        return has_primitive_solution(a, b, 8, 2) ? 1 : -1;
    }
    if (va == 0) {
        // Unit conic over F_p; a primitive point always exists and lifts.
        return has_primitive_solution(a, b, p, p) ? 1 : -1;
    }
    // (pu, v): solvable exactly when v is a square mod p.
    return is_square_mod(unit_part(b, p), p) ? 1 : -1;
}

std::int64_t tame_symbol(std::int64_t val_a, std::int64_t unit_exp_a, std::int64_t val_b,
                         std::int64_t unit_exp_b, std::int64_t q, std::int64_t m) {
    if ((q - 1) % m != 0) raise(ErrorKind::ModulusMismatch, "tame formula needs m | q-1");
    const std::int64_t minus_one = (q % 2 == 0) ? 0 : (q - 1) / 2;
    return floor_mod(val_a * val_b * minus_one + val_b * unit_exp_a - val_a * unit_exp_b, m);
}

std::vector<Place> PlaceSet::places() const {
    std::vector<Place> out;
    for (std::int64_t p : primes) out.push_back(Place::at(p));
    if (real) out.push_back(Place::real());
    return out;
}

std::int64_t squarefree_part(std::int64_t n) {
    if (n == 0) return 0;
    std::int64_t sign = n < 0 ? -1 : 1;
    std::int64_t out = 1;
    for (const auto& [p, mult] : modmath::factorize(std::llabs(n)))
        if (mult % 2 == 1) out *= p;
    return sign * out;
}

PlaceSet quaternion_ramification(const QuaternionInput& input) {
    if (input.a == 0 || input.b == 0) raise(ErrorKind::ZeroInput, "quaternion entries must be nonzero");
    const std::int64_t a = squarefree_part(input.a), b = squarefree_part(input.b);

    std::set<std::int64_t> candidates{2};
    for (const auto& [p, mult] : modmath::factorize(std::llabs(a * b))) {
        (void)mult;
        candidates.insert(p);
    }

    PlaceSet out;
    for (std::int64_t p : candidates)
        if (hilbert_symbol(a, b, Place::at(p)) == -1) out.primes.insert(p);
    if (hilbert_symbol(a, b, Place::real()) == -1) out.real = true;

    if (out.size() % 2 != 0)
        raise(ErrorKind::ReciprocityViolation, "ramification set has odd cardinality; oracle bug");
    return out;
}

bool is_local_nonsquare(std::int64_t d, const Place& place) {
    if (d == 0) raise(ErrorKind::ZeroInput, "nonsquare test needs a nonzero integer");
    if (place.is_real) return d < 0;
    const std::int64_t p = place.prime;
    if (valuation_mod2(d, p) == 1) return true;
    const std::int64_t u = unit_part(d, p);
    if (p == 2) return floor_mod(u, 8) != 1;
    return !is_square_mod(u, p);
}

CommonSlotResult tate_common_slot(const std::vector<QuaternionInput>& algebras) {
    if (algebras.empty())
        raise(ErrorKind::PreconditionViolation, "common slot needs a nonempty family of algebras");

    CommonSlotResult result;
    PlaceSet all;
    for (const auto& alg : algebras) {
        PlaceSet ram = quaternion_ramification(alg);
        all.primes.insert(ram.primes.begin(), ram.primes.end());
        all.real = all.real || ram.real;
        result.ramification.emplace_back(alg, std::move(ram));
    }

    if (all.size() == 0) {
        result.d = 1;
        result.verified = true;
        return result;
    }

    std::int64_t bound = 8;
    for (std::int64_t p : all.primes)
        if (p != 2) bound *= p;

    auto admissible = [&all](std::int64_t d) {
        if (squarefree_part(d) != d) return false;
        if (all.real && d >= 0) return false;
        for (std::int64_t p : all.primes)
            if (!is_local_nonsquare(d, Place::at(p))) return false;
        if (all.real && !is_local_nonsquare(d, Place::real())) return false;
        return true;
    };

    std::int64_t found = 0;
    for (std::int64_t mag = 1; mag <= bound && found == 0; ++mag) {
        if (admissible(-mag))
            found = -mag;
        else if (admissible(mag))
            found = mag;
    }
    if (found == 0)
        raise(ErrorKind::PreconditionViolation, "no common slot below the CRT bound; solver bug");
    result.d = found;

    result.verified = true;
    for (const auto& [alg, ram] : result.ramification) {
        (void)alg;
        for (const Place& place : ram.places()) {
            bool ok = is_local_nonsquare(found, place);
            result.verification.push_back(SlotVerification{place, ok});
            result.verified = result.verified && ok;
        }
    }
    return result;
}

}  // namespace symtower::oracle
