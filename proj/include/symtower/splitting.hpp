#pragma once

// Splitting fields for top-degree classes: Kummer chains on the outermost
// uniformizer, the composite-modulus induction, period/index reports, the
// local common slot, and the cyclotomic restriction-corestriction descent.

#include <cstdint>
#include <vector>

#include "symtower/symcalc.hpp"

namespace symtower {

struct SplittingCertificate {
    CanonicalClass input;
    std::vector<ExtensionStep> chain;
    /// Canonical form of the restricted class after each step; the last entry
    /// (or the input, for an empty chain) must be zero.
    std::vector<CanonicalClass> restrictions;
    std::int64_t total_degree = 1;
    bool verified = false;
};

/// Replay the chain from the input and check the recorded restrictions and
/// the final vanishing.
bool verify_certificate(const SplittingCertificate& cert);

enum class PeelOrder { AscendingPrimes, DescendingPrimes };

/// Split a top-degree class by adjoining roots of the outermost uniformizer.
/// Prime m needs a single step; composite m runs the coefficient-sequence
/// induction of split_composite. The constructed degree equals the period.
SplittingCertificate split_top(const CanonicalClass& x);

/// Composite-modulus splitting: reduce coefficients mod s, split that
/// recursively, lift what remains of the restriction to the complementary
/// modulus, and finish with one more prime step. The peel order picks which
/// prime factor is peeled off first.
SplittingCertificate split_composite(const CanonicalClass& x, PeelOrder order = PeelOrder::AscendingPrimes);

struct IndexReport {
    std::int64_t period = 1;
    std::int64_t constructed_degree = 1;
    bool equal = false;
    SplittingCertificate certificate;
};

/// Period lower bound plus the constructed splitting degree as the certified
/// upper bound; the equality flag records that the two meet.
IndexReport index_bounds(const CanonicalClass& x);

struct CommonSlotCertificate {
    std::vector<ExtensionStep> chain;  // empty when every class already vanishes
    std::int64_t total_degree = 1;
    std::vector<CanonicalClass> inputs;
    bool all_split = false;
};

/// One degree-m Kummer root of the outermost uniformizer splits every class
/// of a top-degree family at once; the degree does not depend on the family.
CommonSlotCertificate common_slot_local(const std::vector<CanonicalClass>& classes);

struct DescentReport {
    std::int64_t q = 0;
    std::int64_t ell = 0;
    std::int64_t d = 0;          // multiplicative order of q mod ell
    std::int64_t d_inverse = 0;  // inverse of d mod ell
    bool gcd_ok = false;
    bool certificate_verified = false;
    /// cor(res(.)) = (.)^d recomputed on the uniformizer part of the small
    /// tower's class group (the part that is faithful without mu_ell).
    bool uniformizer_contract_ok = false;
    TowerPtr small_tower;
    TowerPtr enlarged_tower;
    std::int64_t splitting_degree = 0;  // the concluded bound: ell
    SplittingCertificate certificate;
};

/// Verified inference: a certificate over the mu_ell-enlarged tower plus the
/// corestriction contract and gcd(d, ell) = 1 force the class to vanish over
/// the degree-ell root extension of the small tower itself.
DescentReport cyclotomic_descent(const TowerPtr& small_tower, const SplittingCertificate& enlarged_certificate);

/// Convenience pipeline: restrict a symbol sum given over the small tower to
/// the mu_ell enlargement, split it there, then run the descent.
DescentReport descend_class(const TowerPtr& small_tower, const SymbolSum& sum);

}  // namespace symtower
