#include "symtower/serialize.hpp"

#include "symtower/errors.hpp"
#include "symtower/parse.hpp"

namespace symtower {

namespace {

std::string monomial_key(const FieldTower& tower, std::uint32_t mask) {
    if (mask == 0) return "1";
    std::string key;
    for (int g = 0; g < tower.generator_count(); ++g) {
        if (mask & (1u << g)) {
            if (!key.empty()) key += ",";
            key += tower.generator_name(g);
        }
    }
    return key;
}

}  // namespace

Json tower_json(const FieldTower& tower) {
    return Json{{"q", tower.q}, {"m", tower.m}, {"uniformizers", tower.uniformizers}};
}

TowerPtr tower_from_json(const Json& j) {
    if (!j.contains("q") || !j.contains("m") || !j.contains("uniformizers"))
        raise(ErrorKind::InvalidBase, "tower declaration needs q, m and uniformizers");
    return build_tower(j["q"].get<std::int64_t>(), j["m"].get<std::int64_t>(),
                       j["uniformizers"].get<std::vector<std::string>>());
}

Json element_json(const ElementClass& cls) {
    return Json{{"element", serialize(cls)},
                {"base_exp", cls.base_exp()},
                {"unif_exps", cls.unif_exps()}};
}

Json canonical_json(const CanonicalClass& cls) {
    Json coeffs = Json::object();
    for (const auto& [mask, coeff] : cls.coefficients())
        coeffs[monomial_key(*cls.tower(), mask)] = coeff;
    return Json{{"degree", cls.degree()},
                {"coeffs", std::move(coeffs)},
                {"generator_convention", std::string(kGeneratorConvention)}};
}

Json symbol_sum_json(const SymbolSum& sum) {
    return Json{{"degree", sum.degree()}, {"expr", serialize(sum)}};
}

Json step_json(const ExtensionStep& step) {
    Json j{{"kind", to_string(step.kind())}, {"degree", step.degree()}};
    if (step.kind() == StepKind::RamifiedKummer)
        j["uniformizer"] = step.source()->uniformizers[static_cast<std::size_t>(step.uniformizer_slot())];
    if (step.unit()) j["unit"] = serialize(*step.unit());
    j["map"] = step.class_map();
    return j;
}

Json certificate_json(const SplittingCertificate& cert) {
    Json chain = Json::array();
    for (const auto& step : cert.chain) chain.push_back(step_json(step));
    Json restrictions = Json::array();
    for (const auto& cls : cert.restrictions) restrictions.push_back(canonical_json(cls));
    return Json{{"input", canonical_json(cert.input)},
                {"chain", std::move(chain)},
                {"degree", cert.total_degree},
                {"period", period(cert.input)},
                {"verified", cert.verified},
                {"restrictions", std::move(restrictions)}};
}

Json index_report_json(const IndexReport& report) {
    return Json{{"period", report.period},
                {"degree", report.constructed_degree},
                {"equal", report.equal},
                {"certificate", certificate_json(report.certificate)}};
}

Json decomposition_json(const Decomposition& dec) {
    return Json{{"unramified", canonical_json(dec.unramified)},
                {"ramified_factor", canonical_json(dec.ramified_factor)}};
}

Json rewrite_json(const RewriteResult& result) {
    Json trace = Json::array();
    for (const auto& step : result.trace)
        trace.push_back(Json{{"rule", step.rule}, {"before", step.before}, {"after", step.after}});
    return Json{{"unit_part", symbol_sum_json(result.unit_part)},
                {"ramified_factor", symbol_sum_json(result.ramified_factor)},
                {"trace", std::move(trace)}};
}

Json bilocal_json(const BilocalDecomposition& dec) {
    return Json{{"unit_part", canonical_json(dec.unit_part)},
                {"pi_factor", canonical_json(dec.pi_factor)},
                {"delta_factor", canonical_json(dec.delta_factor)},
                {"nodal_factor", canonical_json(dec.nodal_factor)}};
}

Json case2a_json(const CommonSlotIdentity& identity) {
    return Json{{"holds", identity.holds},
                {"slot", serialize(identity.slot)},
                {"lhs", canonical_json(identity.lhs)},
                {"main_term", canonical_json(identity.main_term)},
                {"correction_term", canonical_json(identity.correction_term)},
                {"correction_killed", identity.correction_killed}};
}

Json common_slot_json(const CommonSlotCertificate& cert) {
    Json chain = Json::array();
    for (const auto& step : cert.chain) chain.push_back(step_json(step));
    Json inputs = Json::array();
    for (const auto& cls : cert.inputs) inputs.push_back(canonical_json(cls));
    return Json{{"chain", std::move(chain)},
                {"degree", cert.total_degree},
                {"all_split", cert.all_split},
                {"inputs", std::move(inputs)}};
}

Json descent_json(const DescentReport& report) {
    return Json{{"q", report.q},
                {"ell", report.ell},
                {"d", report.d},
                {"d_inverse", report.d_inverse},
                {"gcd_ok", report.gcd_ok},
                {"certificate_verified", report.certificate_verified},
                {"uniformizer_contract_ok", report.uniformizer_contract_ok},
                {"splitting_degree", report.splitting_degree},
                {"enlarged_tower", tower_json(*report.enlarged_tower)},
                {"certificate", certificate_json(report.certificate)}};
}

Json hilbert_json(std::int64_t a, std::int64_t b, const oracle::Place& place, int symbol) {
    return Json{{"a", a}, {"b", b}, {"place", place.name()}, {"symbol", symbol}};
}

Json tate_json(const oracle::CommonSlotResult& result) {
    Json ram = Json::object();
    for (const auto& [alg, places] : result.ramification) {
        Json list = Json::array();
        for (const auto& place : places.places()) list.push_back(place.name());
        ram["(" + std::to_string(alg.a) + "," + std::to_string(alg.b) + ")"] = std::move(list);
    }
    Json verification = Json::array();
    for (const auto& entry : result.verification)
        verification.push_back(Json{{"place", entry.place.name()}, {"nonsquare", entry.nonsquare}});
    return Json{{"d", result.d},
                {"ramification", std::move(ram)},
                {"verification", std::move(verification)},
                {"verified", result.verified}};
}

}  // namespace symtower
