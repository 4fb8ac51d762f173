#include <doctest.h>

#include <random>

#include "symtower/modmath.hpp"
#include "symtower/numoracle.hpp"

using namespace symtower;
using namespace symtower::oracle;

TEST_CASE("hilbert symbol: fixed values") {
    CHECK(hilbert_symbol(-1, -1, Place::real()) == -1);
    CHECK(hilbert_symbol(-1, 3, Place::real()) == 1);
    CHECK(hilbert_symbol(7, 7, Place::at(7)) == -1);
    CHECK(hilbert_symbol(-1, -1, Place::at(2)) == -1);
    CHECK(hilbert_symbol(3, 3, Place::at(2)) == -1);
    CHECK(hilbert_symbol(5, 3, Place::at(2)) == 1);
    CHECK(hilbert_symbol(2, 7, Place::at(2)) == 1);   // 7 = -1 mod 8
    CHECK(hilbert_symbol(2, 5, Place::at(2)) == -1);  // 5 mod 8
    CHECK(hilbert_symbol(2, 3, Place::at(3)) == -1);  // 2 is a nonresidue mod 3
    CHECK(hilbert_symbol(5, 2, Place::at(5)) == -1);  // 2 is a nonresidue mod 5

    for (std::int64_t b : {1, 2, 3, 5, -7, 11})
        for (std::int64_t p : {3, 5, 7, 13}) CHECK(hilbert_symbol(1, b, Place::at(p)) == 1);

    CHECK_THROWS_AS(hilbert_symbol(0, 3, Place::at(5)), CalcError);
    CHECK_THROWS_AS(hilbert_symbol(3, 5, Place::at(6)), CalcError);
}

TEST_CASE("hilbert symbol: unit-unit at odd primes is trivial") {
    for (std::int64_t p : {3, 5, 7, 11, 13})
        for (std::int64_t a = 1; a < p; ++a)
            for (std::int64_t b = 1; b < p; ++b) CHECK(hilbert_symbol(a, b, Place::at(p)) == 1);
}

TEST_CASE("hilbert symbol: ramified slot reads off quadratic residues") {
    for (std::int64_t p : {3, 5, 7, 13}) {
        for (std::int64_t u = 1; u < p; ++u) {
            bool residue = modmath::pow_mod(u, (p - 1) / 2, p) == 1;
            CHECK(hilbert_symbol(p, u, Place::at(p)) == (residue ? 1 : -1));
        }
    }
}

TEST_CASE("hilbert symbol is bilinear") {
    std::mt19937_64 rng(59);
    std::uniform_int_distribution<std::int64_t> dist(-50, 50);
    std::vector<Place> places = {Place::at(2), Place::at(3), Place::at(5), Place::at(7), Place::real()};
    int done = 0;
    while (done < 200) {
        std::int64_t a1 = dist(rng), a2 = dist(rng), b = dist(rng);
        if (a1 == 0 || a2 == 0 || b == 0) continue;
        const auto& place = places[static_cast<std::size_t>(done) % places.size()];
        CHECK(hilbert_symbol(a1 * a2, b, place) == hilbert_symbol(a1, b, place) * hilbert_symbol(a2, b, place));
        ++done;
    }
}

namespace {

// Test-only closed-form evaluation (Legendre symbols and the mod-8
// characters), kept out of the oracle module on purpose: agreement between
// the two is itself the check.
int closed_form_hilbert(std::int64_t a, std::int64_t b, const Place& place) {
    if (place.is_real) return (a < 0 && b < 0) ? -1 : 1;
    const std::int64_t p = place.prime;
    std::int64_t alpha = 0, beta = 0;
    while (a % p == 0) {
        a /= p;
        ++alpha;
    }
    while (b % p == 0) {
        b /= p;
        ++beta;
    }
    auto legendre = [p](std::int64_t u) {
        return modmath::pow_mod(u, (p - 1) / 2, p) == 1 ? 1 : -1;
    };
    if (p != 2) {
        int sign = 1;
        if ((alpha * beta) % 2 == 1 && ((p - 1) / 2) % 2 == 1) sign = -sign;
        if (beta % 2 == 1 && legendre(modmath::floor_mod(a, p)) == -1) sign = -sign;
        if (alpha % 2 == 1 && legendre(modmath::floor_mod(b, p)) == -1) sign = -sign;
        return sign;
    }
    auto eps = [](std::int64_t u) { return modmath::floor_mod((u - 1) / 2, 2); };
    auto omega = [](std::int64_t u) { return modmath::floor_mod((u * u - 1) / 8, 2); };
    std::int64_t exponent = eps(a) * eps(b) + alpha * omega(b) + beta * omega(a);
    return exponent % 2 == 0 ? 1 : -1;
}

}  // namespace

TEST_CASE("brute force agrees with the closed form everywhere in range") {
    std::vector<Place> places = {Place::at(2), Place::real()};
    for (std::int64_t p = 3; p <= 60; ++p)
        if (modmath::is_prime(p)) places.push_back(Place::at(p));
    for (std::int64_t a = -60; a <= 60; ++a)
        for (std::int64_t b = -60; b <= 60; ++b) {
            if (a == 0 || b == 0) continue;
            // scan the places where the symbol can be nontrivial, plus 2 and inf
            for (const auto& place : places) {
                if (!place.is_real && place.prime != 2 && (a % place.prime) && (b % place.prime)) continue;
                CHECK(hilbert_symbol(a, b, place) == closed_form_hilbert(a, b, place));
            }
        }
}

TEST_CASE("hilbert reciprocity over a sample range") {
    for (std::int64_t a = -12; a <= 12; ++a)
        for (std::int64_t b = -12; b <= 12; ++b) {
            if (a == 0 || b == 0) continue;
            int product = hilbert_symbol(a, b, Place::real()) * hilbert_symbol(a, b, Place::at(2));
            for (const auto& [p, mult] : modmath::factorize(std::llabs(a * b))) {
                (void)mult;
                if (p != 2) product *= hilbert_symbol(a, b, Place::at(p));
            }
            CHECK(product == 1);
        }
}

TEST_CASE("tame symbol formula") {
    // (t, t): the residue is -1, exponent (q-1)/2
    CHECK(tame_symbol(1, 0, 1, 0, 7, 2) == 1);
    CHECK(tame_symbol(1, 0, 1, 0, 7, 6) == 3);
    // units have trivial residue
    CHECK(tame_symbol(0, 3, 0, 5, 7, 6) == 0);
    // (c*t, t) over q = 7, m = 2: (-1) * c, exponent 3 + 1 = 0 mod 2
    CHECK(tame_symbol(1, 1, 1, 0, 7, 2) == 0);
    CHECK_THROWS_AS(tame_symbol(1, 0, 1, 0, 7, 4), CalcError);  // 4 does not divide 6
}

TEST_CASE("squarefree part") {
    CHECK(squarefree_part(12) == 3);
    CHECK(squarefree_part(-18) == -2);
    CHECK(squarefree_part(49) == 1);
    CHECK(squarefree_part(1) == 1);
    CHECK(squarefree_part(-1) == -1);
    CHECK(squarefree_part(30) == 30);
}

TEST_CASE("quaternion ramification sets") {
    auto r1 = quaternion_ramification({-1, -1});
    CHECK(r1.real);
    CHECK(r1.primes == std::set<std::int64_t>{2});

    auto r2 = quaternion_ramification({1, 5});
    CHECK_FALSE(r2.real);
    CHECK(r2.primes.empty());

    auto r3 = quaternion_ramification({-1, -3});
    CHECK(r3.real);
    CHECK(r3.primes == std::set<std::int64_t>{3});

    // even cardinality on random inputs
    std::mt19937_64 rng(61);
    std::uniform_int_distribution<std::int64_t> dist(-50, 50);
    int done = 0;
    while (done < 100) {
        std::int64_t a = dist(rng), b = dist(rng);
        if (a == 0 || b == 0) continue;
        CHECK(quaternion_ramification({a, b}).size() % 2 == 0);
        ++done;
    }

    CHECK_THROWS_AS(quaternion_ramification({0, 3}), CalcError);
}

TEST_CASE("local nonsquare tests") {
    CHECK(is_local_nonsquare(-1, Place::real()));
    CHECK_FALSE(is_local_nonsquare(4, Place::real()));
    CHECK(is_local_nonsquare(-1, Place::at(2)));  // -1 = 7 mod 8
    CHECK_FALSE(is_local_nonsquare(17, Place::at(2)));
    CHECK(is_local_nonsquare(2, Place::at(2)));
    CHECK(is_local_nonsquare(2, Place::at(3)));
    CHECK_FALSE(is_local_nonsquare(4, Place::at(3)));
    CHECK(is_local_nonsquare(3, Place::at(3)));
}

TEST_CASE("common slot over the rationals: fixed families") {
    auto r1 = tate_common_slot({{-1, -1}});
    CHECK(r1.d == -1);
    CHECK(r1.verified);

    auto r2 = tate_common_slot({{1, 5}});
    CHECK(r2.d == 1);
    CHECK(r2.verified);

    auto r3 = tate_common_slot({{-1, -1}, {-1, -3}});
    CHECK(r3.d == -1);
    CHECK(r3.verified);

    CHECK_THROWS_AS(tate_common_slot({}), CalcError);
}

TEST_CASE("common slot: random families re-verify") {
    std::mt19937_64 rng(67);
    std::uniform_int_distribution<std::int64_t> dist(-50, 50);
    std::uniform_int_distribution<int> size_dist(1, 5);
    for (int trial = 0; trial < 40; ++trial) {
        std::vector<QuaternionInput> algebras;
        int size = size_dist(rng);
        while (static_cast<int>(algebras.size()) < size) {
            std::int64_t a = dist(rng), b = dist(rng);
            if (a == 0 || b == 0) continue;
            algebras.push_back({a, b});
        }
        auto result = tate_common_slot(algebras);
        CHECK(result.verified);
        CHECK(squarefree_part(result.d) == result.d);
        // independent re-verification, place by place
        for (const auto& alg : algebras)
            for (const auto& place : quaternion_ramification(alg).places())
                CHECK(is_local_nonsquare(result.d, place));
    }
}
