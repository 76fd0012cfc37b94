#pragma once
// JSON (de)serialization for the CLI-facing descriptors. Rationals travel
// as exact "p/q" strings (plain integers and decimal literals are accepted
// on input).

#include <json.hpp>

#include "cfdim/cantor.hpp"
#include "cfdim/psi.hpp"

namespace cfdim {

nlohmann::json psi_to_json(const PsiSpec& spec);
PsiSpec psi_from_json(const nlohmann::json& j);

nlohmann::json schedule_to_json(const CantorSchedule& s);
CantorSchedule schedule_from_json(const nlohmann::json& j);

nlohmann::json general_schedule_to_json(const GeneralSchedule& s);
GeneralSchedule general_schedule_from_json(const nlohmann::json& j);

// Rational from a JSON string/integer value.
Rat rat_from_json(const nlohmann::json& j);

}  // namespace cfdim
