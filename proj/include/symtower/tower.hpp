#pragma once

// Iterated Laurent-series towers K = F_q((t_1))...((t_n)) and the groups
// K^x/(K^x)^m they carry. The base field enters only through the cyclic group
// F_q^x = Z/(q-1) with a distinguished generator c; elements are tracked as
// monomial classes c^a * t_1^{e_1} * ... * t_n^{e_n} with exponents mod m.

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "symtower/errors.hpp"

namespace symtower {

/// Convention for the distinguished generator c of the base unit group;
/// reported in every serialized output.
inline constexpr std::string_view kGeneratorConvention = "smallest primitive root";

struct FieldTower {
    std::int64_t q = 0;       // base field size, a prime power
    std::int64_t char_p = 0;  // the prime dividing q
    std::int64_t m = 0;       // coefficient modulus, >= 2
    std::vector<std::string> uniformizers;
    bool full_calculus = false;  // m | q - 1, i.e. mu_m lies in the base field

    int depth() const { return static_cast<int>(uniformizers.size()); }
    std::int64_t base_group_order() const { return q - 1; }
    int cohomological_dimension() const { return depth() + 1; }

    /// Generators in the fixed order c < t_1 < ... < t_n; index 0 is c.
    int generator_count() const { return depth() + 1; }
    std::string generator_name(int index) const;
    std::optional<int> generator_index(std::string_view name) const;

    bool operator==(const FieldTower& other) const {
        return q == other.q && m == other.m && uniformizers == other.uniformizers;
    }
};

using TowerPtr = std::shared_ptr<const FieldTower>;

TowerPtr build_tower(std::int64_t q, std::int64_t m, std::vector<std::string> uniformizer_names);

/// Same field, coefficients taken mod new_m instead (new_m >= 2, coprime to char).
TowerPtr sibling_modulus(const TowerPtr& tower, std::int64_t new_m);

/// Tower with the outermost uniformizer removed (the residue field of K at t_n).
TowerPtr residue_tower(const TowerPtr& tower);

/// Exponent of the class of -1 on the generator c: (q-1)/2 mod m for odd q,
/// 0 for even q. Vanishes automatically whenever m is odd and m | q-1.
std::int64_t minus_one_exponent(const FieldTower& tower);

class ElementClass {
public:
    ElementClass(TowerPtr tower, std::int64_t base_exp, std::vector<std::int64_t> unif_exps);

    static ElementClass one(TowerPtr tower);
    /// The class of a single generator: index 0 is c, index i >= 1 is t_i.
    static ElementClass generator(TowerPtr tower, int index);

    const TowerPtr& tower() const { return tower_; }
    std::int64_t base_exp() const { return base_exp_; }
    const std::vector<std::int64_t>& unif_exps() const { return unif_exps_; }
    std::int64_t unif_exp(int slot) const { return unif_exps_[static_cast<std::size_t>(slot)]; }

    bool is_one() const;
    /// True when every uniformizer exponent vanishes (a unit of the valuation ring).
    bool is_unit() const;

    ElementClass mul(const ElementClass& other) const;
    ElementClass inv() const;
    ElementClass pow(std::int64_t n) const;

    bool operator==(const ElementClass& other) const;

private:
    TowerPtr tower_;
    std::int64_t base_exp_;
    std::vector<std::int64_t> unif_exps_;
};

ElementClass element_class(TowerPtr tower, std::int64_t base_exp, std::vector<std::int64_t> unif_exps);
ElementClass minus_one_class(TowerPtr tower);

enum class StepKind { RamifiedKummer, UnramifiedKummer, ResidueEnlarge };

const char* to_string(StepKind kind);

/// One field-extension move together with the exponent map it induces on
/// classes. Steps are constructed through the factory functions below.
class ExtensionStep {
public:
    static ExtensionStep ramified_kummer(TowerPtr source, int uniformizer_slot, std::int64_t degree);
    static ExtensionStep unramified_kummer(TowerPtr source, const ElementClass& unit, std::int64_t degree);
    static ExtensionStep residue_enlarge(TowerPtr source, std::int64_t degree);

    StepKind kind() const { return kind_; }
    std::int64_t degree() const { return degree_; }
    int uniformizer_slot() const { return slot_; }
    const std::optional<ElementClass>& unit() const { return unit_; }
    const TowerPtr& source() const { return source_; }
    const TowerPtr& target() const { return target_; }
    const std::string& class_map() const { return class_map_; }

    /// Multiplier applied to base exponents by restriction along this step.
    std::int64_t base_multiplier() const;
    /// Multiplier applied to the exponent of uniformizer `slot`.
    std::int64_t slot_multiplier(int slot) const;

private:
    ExtensionStep() = default;

    StepKind kind_ = StepKind::RamifiedKummer;
    std::int64_t degree_ = 1;
    int slot_ = -1;
    std::optional<ElementClass> unit_;
    TowerPtr source_;
    TowerPtr target_;
    std::string class_map_;
};

/// Restriction of a class along an extension step.
ElementClass apply_extension(const ElementClass& cls, const ExtensionStep& step);

/// Corestriction (norm) of a class along a ResidueEnlarge step, back to the
/// source tower: base exponent is kept (the norm of the target generator is
/// the source generator), uniformizer exponents are multiplied by the degree.
/// Satisfies cor(res(x)) = x^degree.
ElementClass corestrict_base(const ElementClass& cls, const ExtensionStep& step);

}  // namespace symtower
