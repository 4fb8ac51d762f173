#include "symtower/residue.hpp"

#include <deque>

#include "symtower/errors.hpp"
#include "symtower/modmath.hpp"
#include "symtower/parse.hpp"

namespace symtower {

using modmath::floor_mod;

CanonicalClass residue_map(const CanonicalClass& x, int at_slot) {
    const auto& tower = *x.tower();
    const int last = tower.depth() - 1;
    if (last < 0) raise(ErrorKind::InnerUniformizer, "tower has no uniformizers");
    if (at_slot == -1) at_slot = last;
    if (at_slot != last)
        raise(ErrorKind::InnerUniformizer,
              "residues are taken at the outermost uniformizer '" + tower.uniformizers.back() +
                  "' only; reorder first");
    if (x.degree() < 1) raise(ErrorKind::DegreeMismatch, "residue needs a class of degree >= 1");

    CanonicalClass out(residue_tower(x.tower()), x.degree() - 1);
    const std::uint32_t bit = 1u << (last + 1);
    for (const auto& [mask, coeff] : x.coefficients())
        if (mask & bit) out.add_monomial(mask & ~bit, coeff);
    return out;
}

CanonicalClass transpose_last_uniformizers(const CanonicalClass& x) {
    const auto& tower = *x.tower();
    if (tower.depth() < 2)
        raise(ErrorKind::InnerUniformizer, "need two uniformizers to transpose");
    const std::uint32_t hi = 1u << tower.depth();
    const std::uint32_t lo = hi >> 1;
    CanonicalClass out(x.tower(), x.degree());
    for (const auto& [mask, coeff] : x.coefficients()) {
        const bool has_lo = mask & lo, has_hi = mask & hi;
        std::uint32_t swapped = mask & ~(lo | hi);
        if (has_lo) swapped |= hi;
        if (has_hi) swapped |= lo;
        out.add_monomial(swapped, (has_lo && has_hi) ? -coeff : coeff);
    }
    return out;
}

CanonicalClass Decomposition::recombine() const {
    const int last = unramified.tower()->depth() - 1;
    auto t_n = CanonicalClass::basis(unramified.tower(), 1u << (last + 1));
    return add(unramified, cup(ramified_factor, t_n));
}

Decomposition decompose(const CanonicalClass& x) {
    const auto& tower = *x.tower();
    if (tower.depth() < 1) raise(ErrorKind::InnerUniformizer, "tower has no uniformizers");
    if (x.degree() < 1) raise(ErrorKind::DegreeMismatch, "decomposition needs a class of degree >= 1");
    CanonicalClass residue = residue_map(x);
    // Re-embed the residue over the original tower; same monomials, sign +1
    // because t_n is last in the generator order.
    CanonicalClass ramified_factor(x.tower(), residue.degree());
    for (const auto& [mask, coeff] : residue.coefficients()) ramified_factor.add_monomial(mask, coeff);
    auto t_n = CanonicalClass::basis(x.tower(), 1u << tower.depth());
    CanonicalClass unramified = add(x, negate(cup(ramified_factor, t_n)));
    return Decomposition{std::move(unramified), std::move(ramified_factor)};
}

namespace {

struct WorkTerm {
    std::int64_t coeff;
    std::vector<ElementClass> slots;
};

class RewriteEngine {
public:
    RewriteEngine(const SymbolSum& input)
        : tower_(input.tower()), m_(tower_->m), last_(tower_->depth() - 1), degree_(input.degree()) {
        if (last_ < 0) raise(ErrorKind::InnerUniformizer, "tower has no uniformizers");
        for (const auto& [coeff, entries] : input.terms())
            if (floor_mod(coeff, m_) != 0) pending_.push_back({floor_mod(coeff, m_), entries});
    }

    RewriteResult run() {
        while (!pending_.empty()) {
            WorkTerm term = std::move(pending_.front());
            pending_.pop_front();
            settle(std::move(term));
        }
        RewriteResult out{SymbolSum(tower_, degree_), SymbolSum(tower_, degree_ - 1), std::move(trace_)};
        for (auto& term : finished_units_) out.unit_part.add_term(term.coeff, std::move(term.slots));
        for (auto& term : finished_ramified_) {
            term.slots.pop_back();  // strip the final t_n slot
            out.ramified_factor.add_term(term.coeff, std::move(term.slots));
        }
        return out;
    }

private:
    std::int64_t pi_exp(const ElementClass& e) const { return e.unif_exp(last_); }

    ElementClass unit_of(const ElementClass& e) const {
        auto exps = e.unif_exps();
        exps[static_cast<std::size_t>(last_)] = 0;
        return ElementClass(tower_, e.base_exp(), std::move(exps));
    }

    ElementClass pi_power(std::int64_t j) const {
        std::vector<std::int64_t> exps(static_cast<std::size_t>(tower_->depth()), 0);
        exps[static_cast<std::size_t>(last_)] = j;
        return ElementClass(tower_, 0, std::move(exps));
    }

    bool is_pure_pi(const ElementClass& e) const { return pi_exp(e) != 0 && unit_of(e).is_one(); }

    std::string show(const WorkTerm& term) const {
        SymbolSum s(tower_, degree_);
        s.add_term(term.coeff, term.slots);
        return serialize(s);
    }

    void emit(const char* rule, const std::string& before, const std::vector<const WorkTerm*>& after) {
        std::string text;
        bool leading = true;
        for (const WorkTerm* t : after) {
            SymbolSum s(tower_, degree_);
            s.add_term(t->coeff, t->slots);
            std::string piece = serialize(s);
            if (!leading) text += " + ";
            text += piece;
            leading = false;
        }
        if (text.empty()) text = "0";
        trace_.push_back(RewriteStep{rule, before, text});
    }

    void settle(WorkTerm term) {
        const std::size_t k = term.slots.size();
        for (;;) {
            if (floor_mod(term.coeff, m_) == 0) return;

            // Split a slot carrying both a unit and a t_n power.
            for (std::size_t i = 0; i < k; ++i) {
                const auto& slot = term.slots[i];
                if (pi_exp(slot) != 0 && !unit_of(slot).is_one()) {
                    WorkTerm unit_term = term;
                    unit_term.slots[i] = unit_of(slot);
                    WorkTerm pi_term = term;
                    pi_term.slots[i] = pi_power(pi_exp(slot));
                    emit("split", show(term), {&unit_term, &pi_term});
                    pending_.push_back(std::move(pi_term));
                    term = std::move(unit_term);
                    goto next_round;
                }
            }

            // Commute pure t_n powers past units to the right, with a sign.
            for (std::size_t i = 0; i + 1 < k; ++i) {
                if (is_pure_pi(term.slots[i]) && !is_pure_pi(term.slots[i + 1])) {
                    std::string before = show(term);
                    std::swap(term.slots[i], term.slots[i + 1]);
                    term.coeff = floor_mod(-term.coeff, m_);
                    emit("swap", before, {&term});
                    goto next_round;
                }
            }

            {
                std::size_t block = 0;
                for (std::size_t i = k; i-- > 0 && is_pure_pi(term.slots[i]);) ++block;

                if (block == 0) {
                    finished_units_.push_back(std::move(term));
                    return;
                }

                const std::size_t p = k - block;

                // Normalize the exponent of the slot at p to 1.
                if (pi_exp(term.slots[p]) != 1) {
                    std::string before = show(term);
                    std::int64_t j = pi_exp(term.slots[p]);
                    term.coeff = floor_mod(term.coeff * j, m_);
                    term.slots[p] = pi_power(1);
                    if (floor_mod(term.coeff, m_) == 0) {
                        emit("multilinear", before, {});
                        return;
                    }
                    emit("multilinear", before, {&term});
                    goto next_round;
                }

                if (block == 1) {
                    finished_ramified_.push_back(std::move(term));
                    return;
                }

                if (pi_exp(term.slots[p + 1]) != 1) {
                    std::string before = show(term);
                    std::int64_t j = pi_exp(term.slots[p + 1]);
                    term.coeff = floor_mod(term.coeff * j, m_);
                    term.slots[p + 1] = pi_power(1);
                    if (floor_mod(term.coeff, m_) == 0) {
                        emit("multilinear", before, {});
                        return;
                    }
                    emit("multilinear", before, {&term});
                    goto next_round;
                }

                // (t_n, t_n) -> (-1, t_n).
                std::string before = show(term);
                const std::int64_t w = minus_one_exponent(*tower_);
                if (floor_mod(w, m_) == 0) {
                    emit("diagonal", before, {});
                    return;
                }
                term.slots[p] = minus_one_class(tower_);
                emit("diagonal", before, {&term});
            }
        next_round:;
        }
    }

    TowerPtr tower_;
    std::int64_t m_;
    int last_;
    int degree_;
    std::deque<WorkTerm> pending_;
    std::vector<WorkTerm> finished_units_;
    std::vector<WorkTerm> finished_ramified_;
    std::vector<RewriteStep> trace_;
};

}  // namespace

RewriteResult decompose_symbol_rewrite(const SymbolSum& sum) {
    if (!sum.tower()->full_calculus)
        raise(ErrorKind::PreconditionViolation, "symbol rewriting requires a full-calculus tower");
    if (sum.degree() < 1) raise(ErrorKind::DegreeMismatch, "rewriting needs at least one slot");
    return RewriteEngine(sum).run();
}

CanonicalClass BilocalDecomposition::recombine() const {
    auto pi = CanonicalClass::basis(unit_part.tower(), 1u << 1);
    auto delta = CanonicalClass::basis(unit_part.tower(), 1u << 2);
    CanonicalClass out = add(unit_part, cup(pi_factor, pi));
    out = add(out, cup(delta_factor, delta));
    return add(out, cup(cup(nodal_factor, pi), delta));
}

BilocalDecomposition bilocal_decompose(const SymbolSum& sum) {
    const auto& tower = *sum.tower();
    if (tower.depth() != 2)
        raise(ErrorKind::PreconditionViolation, "bilocal decomposition expects a depth-2 tower");
    CanonicalClass whole = normalize(sum);
    const std::uint32_t pi_bit = 1u << 1, delta_bit = 1u << 2;
    const int k = whole.degree();
    BilocalDecomposition out{
        CanonicalClass(sum.tower(), k),
        CanonicalClass(sum.tower(), k - 1 >= 0 ? k - 1 : 0),
        CanonicalClass(sum.tower(), k - 1 >= 0 ? k - 1 : 0),
        CanonicalClass(sum.tower(), k - 2 >= 0 ? k - 2 : 0),
    };
    for (const auto& [mask, coeff] : whole.coefficients()) {
        const bool has_pi = mask & pi_bit, has_delta = mask & delta_bit;
        const std::uint32_t stripped = mask & ~(pi_bit | delta_bit);
        if (has_pi && has_delta)
            out.nodal_factor.add_monomial(stripped, coeff);
        else if (has_pi)
            out.pi_factor.add_monomial(stripped, coeff);
        else if (has_delta)
            out.delta_factor.add_monomial(stripped, coeff);
        else
            out.unit_part.add_monomial(mask, coeff);
    }
    return out;
}

CommonSlotIdentity case2a_reduce(const CanonicalClass& nodal, const ElementClass& unit) {
    const TowerPtr tower = nodal.tower();
    if (tower->depth() != 2)
        raise(ErrorKind::PreconditionViolation, "the nodal identity lives over a depth-2 tower");
    if (!tower->full_calculus)
        raise(ErrorKind::PreconditionViolation, "the nodal identity requires a full-calculus tower");
    if (!(*unit.tower() == *tower)) raise(ErrorKind::TowerMismatch, "unit belongs to a different tower");
    if (!unit.is_unit())
        raise(ErrorKind::PreconditionViolation, "the slot element is built from a unit");
    for (const auto& [mask, coeff] : nodal.coefficients()) {
        (void)coeff;
        if (mask & ~1u)
            raise(ErrorKind::PreconditionViolation, "nodal class must be free of uniformizer content");
    }
    // For even m a degree-0 nodal class leaves a surviving (-1, t_2) term:
    // the base slot is needed for the kill rule to absorb it.
    if (nodal.degree() == 0 && minus_one_exponent(*tower) % tower->m != 0 && !nodal.is_zero())
        raise(ErrorKind::PreconditionViolation,
              "a scalar nodal class satisfies the identity only when -1 is an m-th power");

    const ElementClass pi = ElementClass::generator(tower, 1);
    const ElementClass delta = ElementClass::generator(tower, 2);
    const ElementClass minus_pi = minus_one_class(tower).mul(pi);
    const ElementClass g = unit.mul(pi).mul(delta);

    CanonicalClass lhs = cup(cup(nodal, h1_class(pi)), h1_class(delta));
    CanonicalClass main_term = cup(cup(nodal, h1_class(minus_pi)), h1_class(g));
    CanonicalClass correction = cup(cup(nodal, h1_class(unit)), h1_class(minus_pi));

    CommonSlotIdentity report{
        equals(lhs, add(main_term, correction)), g, lhs, main_term, correction, correction.is_zero()};
    if (!report.holds)
        raise(ErrorKind::IdentityFailure, "nodal common-slot identity failed; this is a bug");
    return report;
}

}  // namespace symtower
