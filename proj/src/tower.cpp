#include "symtower/tower.hpp"

#include <algorithm>
#include <set>

#include "symtower/errors.hpp"
#include "symtower/modmath.hpp"

namespace symtower {

using modmath::floor_mod;
using modmath::geometric_sum_mod;

std::string FieldTower::generator_name(int index) const {
    if (index == 0) return "c";
    return uniformizers[static_cast<std::size_t>(index - 1)];
}

std::optional<int> FieldTower::generator_index(std::string_view name) const {
    if (name == "c") return 0;
    for (int i = 0; i < depth(); ++i)
        if (uniformizers[static_cast<std::size_t>(i)] == name) return i + 1;
    return std::nullopt;
}

TowerPtr build_tower(std::int64_t q, std::int64_t m, std::vector<std::string> uniformizer_names) {
    auto pp = modmath::prime_power(q);
    if (!pp) raise(ErrorKind::InvalidBase, "q = " + std::to_string(q) + " is not a prime power");
    if (m < 2) raise(ErrorKind::InvalidBase, "modulus m must be at least 2");
    if (m % pp->first == 0)
        raise(ErrorKind::NonCoprimeModulus,
              "m = " + std::to_string(m) + " shares the characteristic " + std::to_string(pp->first));
    if (uniformizer_names.size() > 16)
        raise(ErrorKind::InvalidBase, "tower depth limited to 16");
    std::set<std::string> seen;
    for (const auto& name : uniformizer_names) {
        if (name.empty() || name == "c")
            raise(ErrorKind::InvalidBase, "uniformizer name '" + name + "' is reserved or empty");
        if (!seen.insert(name).second)
            raise(ErrorKind::InvalidBase, "duplicate uniformizer name '" + name + "'");
    }

    auto tower = std::make_shared<FieldTower>();
    tower->q = q;
    tower->char_p = pp->first;
    tower->m = m;
    tower->uniformizers = std::move(uniformizer_names);
    tower->full_calculus = ((q - 1) % m == 0);
    return tower;
}

TowerPtr sibling_modulus(const TowerPtr& tower, std::int64_t new_m) {
    return build_tower(tower->q, new_m, tower->uniformizers);
}

TowerPtr residue_tower(const TowerPtr& tower) {
    if (tower->depth() == 0)
        raise(ErrorKind::InnerUniformizer, "tower has no uniformizers");
    auto names = tower->uniformizers;
    names.pop_back();
    return build_tower(tower->q, tower->m, std::move(names));
}

std::int64_t minus_one_exponent(const FieldTower& tower) {
    if (tower.q % 2 == 0) return 0;  // -1 = 1 in characteristic 2
    return floor_mod((tower.q - 1) / 2, tower.m);
}

ElementClass::ElementClass(TowerPtr tower, std::int64_t base_exp, std::vector<std::int64_t> unif_exps)
    : tower_(std::move(tower)), base_exp_(0), unif_exps_(std::move(unif_exps)) {
    if (static_cast<int>(unif_exps_.size()) != tower_->depth())
        raise(ErrorKind::ArityMismatch,
              "expected " + std::to_string(tower_->depth()) + " uniformizer exponents, got " +
                  std::to_string(unif_exps_.size()));
    const std::int64_t m = tower_->m;
    base_exp_ = floor_mod(base_exp, m);
    for (auto& e : unif_exps_) e = floor_mod(e, m);
}

ElementClass ElementClass::one(TowerPtr tower) {
    std::vector<std::int64_t> zeros(static_cast<std::size_t>(tower->depth()), 0);
    return ElementClass(std::move(tower), 0, std::move(zeros));
}

ElementClass ElementClass::generator(TowerPtr tower, int index) {
    if (index < 0 || index >= tower->generator_count())
        raise(ErrorKind::UnknownGenerator, "generator index " + std::to_string(index) + " out of range");
    std::vector<std::int64_t> exps(static_cast<std::size_t>(tower->depth()), 0);
    std::int64_t base = 0;
    if (index == 0)
        base = 1;
    else
        exps[static_cast<std::size_t>(index - 1)] = 1;
    return ElementClass(std::move(tower), base, std::move(exps));
}

bool ElementClass::is_one() const {
    if (base_exp_ != 0) return false;
    return std::all_of(unif_exps_.begin(), unif_exps_.end(), [](std::int64_t e) { return e == 0; });
}

bool ElementClass::is_unit() const {
    return std::all_of(unif_exps_.begin(), unif_exps_.end(), [](std::int64_t e) { return e == 0; });
}

ElementClass ElementClass::mul(const ElementClass& other) const {
    if (!(*tower_ == *other.tower_))
        raise(ErrorKind::TowerMismatch, "cannot multiply classes over different towers");
    std::vector<std::int64_t> exps(unif_exps_.size());
    for (std::size_t i = 0; i < exps.size(); ++i) exps[i] = unif_exps_[i] + other.unif_exps_[i];
    return ElementClass(tower_, base_exp_ + other.base_exp_, std::move(exps));
}

ElementClass ElementClass::inv() const { return pow(-1); }

ElementClass ElementClass::pow(std::int64_t n) const {
    const std::int64_t m = tower_->m;
    std::int64_t k = floor_mod(n, m);
    std::vector<std::int64_t> exps(unif_exps_.size());
    for (std::size_t i = 0; i < exps.size(); ++i) exps[i] = floor_mod(unif_exps_[i] * k, m);
    return ElementClass(tower_, floor_mod(base_exp_ * k, m), std::move(exps));
}

bool ElementClass::operator==(const ElementClass& other) const {
    return *tower_ == *other.tower_ && base_exp_ == other.base_exp_ && unif_exps_ == other.unif_exps_;
}

ElementClass element_class(TowerPtr tower, std::int64_t base_exp, std::vector<std::int64_t> unif_exps) {
    return ElementClass(std::move(tower), base_exp, std::move(unif_exps));
}

ElementClass minus_one_class(TowerPtr tower) {
    if (!tower->full_calculus)
        raise(ErrorKind::PreconditionViolation, "-1 has a well-defined class only on full-calculus towers");
    std::int64_t w = minus_one_exponent(*tower);
    std::vector<std::int64_t> zeros(static_cast<std::size_t>(tower->depth()), 0);
    return ElementClass(std::move(tower), w, std::move(zeros));
}

const char* to_string(StepKind kind) {
    switch (kind) {
        case StepKind::RamifiedKummer: return "ramified_kummer";
        case StepKind::UnramifiedKummer: return "unramified_kummer";
        case StepKind::ResidueEnlarge: return "residue_enlarge";
    }
    return "unknown";
}

namespace {

TowerPtr enlarged_tower(const TowerPtr& source, std::int64_t degree) {
    __int128 big = 1;
    for (std::int64_t i = 0; i < degree; ++i) {
        big *= source->q;
        if (big > (static_cast<__int128>(1) << 62))
            raise(ErrorKind::InvalidBase, "residue enlargement overflows the base field size");
    }
    return build_tower(static_cast<std::int64_t>(big), source->m, source->uniformizers);
}

}  // namespace

ExtensionStep ExtensionStep::ramified_kummer(TowerPtr source, int uniformizer_slot, std::int64_t degree) {
    if (degree <= 1 || source->m % degree != 0)
        raise(ErrorKind::PreconditionViolation,
              "Kummer root degree must exceed 1 and divide m = " + std::to_string(source->m));
    if (uniformizer_slot < 0 || uniformizer_slot >= source->depth())
        raise(ErrorKind::UnknownGenerator, "uniformizer slot out of range");
    ExtensionStep step;
    step.kind_ = StepKind::RamifiedKummer;
    step.degree_ = degree;
    step.slot_ = uniformizer_slot;
    step.target_ = source;  // same structure (q, m, names); t_i is replaced by its d-th root
    const std::string name = source->uniformizers[static_cast<std::size_t>(uniformizer_slot)];
    step.class_map_ = name + " exponent x" + std::to_string(degree) + " (adjoin degree-" +
                      std::to_string(degree) + " root of " + name + ")";
    step.source_ = std::move(source);
    return step;
}

ExtensionStep ExtensionStep::unramified_kummer(TowerPtr source, const ElementClass& unit, std::int64_t degree) {
    if (degree <= 1 || source->m % degree != 0)
        raise(ErrorKind::PreconditionViolation,
              "Kummer root degree must exceed 1 and divide m = " + std::to_string(source->m));
    if (!source->full_calculus)
        raise(ErrorKind::PreconditionViolation, "unramified Kummer step requires a full-calculus tower");
    if (!(*unit.tower() == *source))
        raise(ErrorKind::TowerMismatch, "unit belongs to a different tower");
    if (!unit.is_unit())
        raise(ErrorKind::PreconditionViolation, "unramified Kummer step requires a unit class");
    ExtensionStep step;
    step.kind_ = StepKind::UnramifiedKummer;
    step.degree_ = degree;
    step.unit_ = unit;
    step.target_ = enlarged_tower(source, degree);
    const std::int64_t mult = geometric_sum_mod(source->q, degree, source->m);
    // Certified side effect: the unit image has exponent (base_exp * mult),
    // which is divisible by degree because mult = degree mod m on full towers.
    step.class_map_ = "base exponent x" + std::to_string(mult) + "; unit image exponent " +
                      std::to_string(floor_mod(unit.base_exp() * mult, source->m)) +
                      " is divisible by " + std::to_string(degree);
    step.source_ = std::move(source);
    return step;
}

ExtensionStep ExtensionStep::residue_enlarge(TowerPtr source, std::int64_t degree) {
    if (degree < 2) raise(ErrorKind::PreconditionViolation, "residue enlargement degree must be at least 2");
    ExtensionStep step;
    step.kind_ = StepKind::ResidueEnlarge;
    step.degree_ = degree;
    step.target_ = enlarged_tower(source, degree);
    const std::int64_t mult = geometric_sum_mod(source->q, degree, source->m);
    step.class_map_ = "base exponent x" + std::to_string(mult) +
                      " (source generator = target generator ^ (q^d-1)/(q-1))";
    step.source_ = std::move(source);
    return step;
}

std::int64_t ExtensionStep::base_multiplier() const {
    if (kind_ == StepKind::RamifiedKummer) return 1;
    return geometric_sum_mod(source_->q, degree_, source_->m);
}

std::int64_t ExtensionStep::slot_multiplier(int slot) const {
    if (kind_ == StepKind::RamifiedKummer && slot == slot_) return degree_;
    return 1;
}

ElementClass apply_extension(const ElementClass& cls, const ExtensionStep& step) {
    if (!(*cls.tower() == *step.source()))
        raise(ErrorKind::TowerMismatch, "class does not live over the step's source tower");
    const std::int64_t m = step.source()->m;
    std::vector<std::int64_t> exps(cls.unif_exps());
    for (int i = 0; i < static_cast<int>(exps.size()); ++i)
        exps[static_cast<std::size_t>(i)] =
            floor_mod(exps[static_cast<std::size_t>(i)] * step.slot_multiplier(i), m);
    std::int64_t base = floor_mod(cls.base_exp() * step.base_multiplier(), m);
    return ElementClass(step.target(), base, std::move(exps));
}

ElementClass corestrict_base(const ElementClass& cls, const ExtensionStep& step) {
    if (step.kind() == StepKind::RamifiedKummer)
        raise(ErrorKind::NotDescendable, "corestriction is defined along residue enlargements only");
    if (!(*cls.tower() == *step.target()))
        raise(ErrorKind::NotDescendable, "class does not live over the step's target tower");
    const std::int64_t m = step.source()->m;
    std::vector<std::int64_t> exps(cls.unif_exps());
    for (auto& e : exps) e = floor_mod(e * step.degree(), m);
    return ElementClass(step.source(), cls.base_exp(), std::move(exps));
}

}  // namespace symtower
