#pragma once

// Residue maps at the outermost uniformizer, the one- and two-uniformizer
// decompositions, the trace-emitting symbol rewrite, and the nodal-point
// common-slot identity.

#include <string>
#include <vector>

#include "symtower/symcalc.hpp"

namespace symtower {

/// Tame residue at the outermost uniformizer: monomials containing t_n map to
/// the monomial with t_n stripped (sign +1, t_n is last in the generator
/// order), monomials without t_n map to zero. Result lives over the residue
/// tower. Asking for an inner uniformizer raises InnerUniformizer.
CanonicalClass residue_map(const CanonicalClass& x, int at_slot = -1);

/// Exchange the roles of the two outermost uniformizers on a canonical class:
/// coefficients permute and monomials containing both pick up a sign -1.
CanonicalClass transpose_last_uniformizers(const CanonicalClass& x);

struct Decomposition {
    CanonicalClass unramified;       // no t_n content, degree k
    CanonicalClass ramified_factor;  // no t_n content, degree k-1

    /// unramified + ramified_factor ^ t_n, the class decomposed.
    CanonicalClass recombine() const;
};

Decomposition decompose(const CanonicalClass& x);

struct RewriteStep {
    std::string rule;  // "split" | "swap" | "multilinear" | "diagonal"
    std::string before;
    std::string after;
};

struct RewriteResult {
    SymbolSum unit_part;        // slots are units, degree k
    SymbolSum ramified_factor;  // unit slots of degree k-1, to be cupped with t_n
    std::vector<RewriteStep> trace;
};

/// Replays the slot-splitting / swapping / diagonal rewriting that turns a
/// sum of monomial symbols into (units-only) + (units-only, t_n), emitting a
/// machine-readable trace. Each trace step is an equality of cohomology
/// classes. The merge of two t_n-power slots contributes ((-1)^{j1*j2}, t_n);
/// the exponent j1*j2 is forced by canonical-form comparison.
RewriteResult decompose_symbol_rewrite(const SymbolSum& sum);

struct BilocalDecomposition {
    CanonicalClass unit_part;     // no t_1, t_2 content, degree k
    CanonicalClass pi_factor;     // degree k-1, recombines against t_1
    CanonicalClass delta_factor;  // degree k-1, against t_2
    CanonicalClass nodal_factor;  // degree k-2, against t_1 ^ t_2

    CanonicalClass recombine() const;
};

/// Group the canonical monomials of a depth-2 symbol sum by their content in
/// the two uniformizers.
BilocalDecomposition bilocal_decompose(const SymbolSum& sum);

struct CommonSlotIdentity {
    bool holds = false;
    ElementClass slot;               // g = u * t_1 * t_2
    CanonicalClass lhs;              // nodal ^ t_1 ^ t_2
    CanonicalClass main_term;        // nodal ^ (-t_1) ^ g
    CanonicalClass correction_term;  // nodal ^ u ^ (-t_1)
    bool correction_killed = false;
};

/// Verifies nodal ^ t_1 ^ t_2 = nodal ^ (-t_1) ^ g + nodal ^ u ^ (-t_1) with
/// g = u * t_1 * t_2, and reports whether the correction term died under the
/// two-base-slot kill rule. Requires a depth-2 tower, a base-only nodal class,
/// and a unit u from the base class group. A degree-0 nodal class is admitted
/// only for odd m: with m even the leftover (-1, t_2)-term survives unless
/// every nodal monomial carries the base slot.
CommonSlotIdentity case2a_reduce(const CanonicalClass& nodal, const ElementClass& unit);

}  // namespace symtower
