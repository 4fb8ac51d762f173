#pragma once

// JSON views of the public types, used by the CLI and the session file.
// Key order is fixed (ordered_json) so identical inputs serialize
// byte-identically.

#include <json.hpp>

#include "symtower/numoracle.hpp"
#include "symtower/residue.hpp"
#include "symtower/splitting.hpp"

namespace symtower {

using Json = nlohmann::ordered_json;

Json tower_json(const FieldTower& tower);
TowerPtr tower_from_json(const Json& j);

Json element_json(const ElementClass& cls);
Json canonical_json(const CanonicalClass& cls);
Json symbol_sum_json(const SymbolSum& sum);
Json step_json(const ExtensionStep& step);
Json certificate_json(const SplittingCertificate& cert);
Json index_report_json(const IndexReport& report);
Json decomposition_json(const Decomposition& dec);
Json rewrite_json(const RewriteResult& result);
Json bilocal_json(const BilocalDecomposition& dec);
Json case2a_json(const CommonSlotIdentity& identity);
Json common_slot_json(const CommonSlotCertificate& cert);
Json descent_json(const DescentReport& report);

Json hilbert_json(std::int64_t a, std::int64_t b, const oracle::Place& place, int symbol);
Json tate_json(const oracle::CommonSlotResult& result);

}  // namespace symtower
