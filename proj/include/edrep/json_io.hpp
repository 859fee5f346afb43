// Stable JSON forms for every artifact the CLI reads or writes. Keys are
// emitted sorted and rationals as canonical "num/den" strings, so identical
// inputs give byte-identical output.
#pragma once

#include <json.hpp>
#include <memory>

#include "edrep/eddim.hpp"
#include "edrep/modular.hpp"

namespace edrep {

using Json = nlohmann::json;

Json group_to_json(const FiniteGroup& g);
FiniteGroup group_from_json(const Json& j, long cap = kDefaultGroupCap);

Json cyclo_to_json(const CycloNum& x);
CycloNum cyclo_from_json(const Json& j);

Json field_to_json(const BaseField& f);
BaseField field_from_json(const Json& j);

Json character_to_json(const Character& chi);

// A character owns a heap copy of its group after parsing.
struct LoadedCharacter {
  std::shared_ptr<FiniteGroup> group;
  Character chi;
};
LoadedCharacter character_from_json(const Json& j, long cap = kDefaultGroupCap);

Json table_to_json(const CharacterTable& t);
std::string table_to_text(const CharacterTable& t);

Json schur_result_to_json(const SchurIndexResult& r);
Json independence_to_json(const IndependenceCertificate& c);
Json ed_report_to_json(const EdReport& r);

Json modular_rep_to_json(const ModularRep& rep);
ModularRep modular_rep_from_json(const Json& j);
Json point_set_to_json(const PointSet1& ps);
Json modular_lower_bound_to_json(const ModularLowerBound& b);

}  // namespace edrep
