#pragma once

#include "wcl/field.hpp"
#include "wcl/report.hpp"

namespace wcl {

/// Canonical JSON: terms in basis order, index keys in ascending coordinate
/// order, rationals as "p" or "p/q". parse(serialize(x)) == x bit-exactly.
Json chaos_to_json(const ChaosElement& f);
ChaosElement chaos_from_json(const Json& j);

Json field_to_json(const PredictableField& z);
PredictableField field_from_json(const Json& j);

Json nilpotency_to_json(const NilpotencyReport& rep);

}  // namespace wcl
