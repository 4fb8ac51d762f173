#pragma once

// Independent ground truth over Q: brute-force local Hilbert symbols, the
// direct tame-symbol formula, quaternion ramification sets, and the common
// quadratic splitting field for a family of quaternion algebras. Nothing in
// here touches the tower model; agreement between the two sides is a test.

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

namespace symtower::oracle {

struct Place {
    bool is_real = false;
    std::int64_t prime = 0;  // meaningful when !is_real

    static Place real() { return Place{true, 0}; }
    static Place at(std::int64_t p) { return Place{false, p}; }

    bool operator<(const Place& other) const {
        if (is_real != other.is_real) return is_real < other.is_real;
        return prime < other.prime;
    }
    bool operator==(const Place& other) const { return is_real == other.is_real && prime == other.prime; }

    std::string name() const { return is_real ? "inf" : std::to_string(prime); }
};

/// Hilbert symbol (a, b) at a place, +-1. Decided by exhaustive residue
/// search: primitive solutions of z^2 = a x^2 + b y^2 modulo p (odd p, after
/// moving valuations into {0,1}) or modulo 8 (p = 2), with the real place
/// read off the signs. No closed-form shortcut.
int hilbert_symbol(std::int64_t a, std::int64_t b, const Place& place);

/// Residue of the symbol (u_a * t^{val_a}, u_b * t^{val_b}) at t over
/// F_q((t)), evaluated by the direct formula (-1)^{val_a val_b} u_a^{val_b}
/// u_b^{-val_a}: returns the exponent of the distinguished generator, mod m.
/// Requires m | q - 1.
std::int64_t tame_symbol(std::int64_t val_a, std::int64_t unit_exp_a, std::int64_t val_b,
                         std::int64_t unit_exp_b, std::int64_t q, std::int64_t m);

struct QuaternionInput {
    std::int64_t a = 0;
    std::int64_t b = 0;
};

struct PlaceSet {
    std::set<std::int64_t> primes;
    bool real = false;

    std::size_t size() const { return primes.size() + (real ? 1 : 0); }
    std::vector<Place> places() const;
};

/// Strip square factors, keep the sign.
std::int64_t squarefree_part(std::int64_t n);

/// Places where the quaternion algebra (a, b) is a division algebra; the
/// cardinality is checked to be even and ReciprocityViolation flags a bug.
PlaceSet quaternion_ramification(const QuaternionInput& input);

/// d is a nonsquare in the completion at the place.
bool is_local_nonsquare(std::int64_t d, const Place& place);

struct SlotVerification {
    Place place;
    bool nonsquare = false;
};

struct CommonSlotResult {
    std::int64_t d = 1;  // squarefree; Q(sqrt(d)) splits every input algebra
    std::vector<std::pair<QuaternionInput, PlaceSet>> ramification;
    std::vector<SlotVerification> verification;
    bool verified = false;
};

/// Smallest-|d| squarefree integer (ties toward negative) that is a local
/// nonsquare at every ramified place of every algebra, hence a common
/// quadratic splitting field; d = 1 when nothing ramifies. Termination is
/// guaranteed by the CRT solution (nonresidues mod each odd prime, 5 mod 8,
/// negative sign) below the product of the local moduli.
CommonSlotResult tate_common_slot(const std::vector<QuaternionInput>& algebras);

}  // namespace symtower::oracle
