#pragma once

#include <nlohmann/json.hpp>

#include "frobstab/forms.hpp"
#include "frobstab/profile.hpp"
#include "frobstab/truncated.hpp"

namespace frobstab {

// All reports are assembled as ordered_json so field order, and therefore
// the serialized bytes, never depend on hashing.
using Json = nlohmann::ordered_json;

// Rationals serialize as "num/den" strings, never floats; integers wider
// than 53 bits serialize as decimal strings. Parsers accept JSON integers
// where a string is documented and wrap every malformed input in InputError.
Json to_json(const Rational& x);
Rational rational_from_json(const nlohmann::json& j);
BigInt bigint_from_json(const nlohmann::json& j);

Json to_json(const SlopeProfile& profile);
SlopeProfile profile_from_json(const nlohmann::json& j);

Json to_json(const HNPolygon& polygon);

Json to_json(const TruncatedDecomposition& decomposition);

Json to_json(const VarietyContext& ctx);
VarietyContext ctx_from_json(const nlohmann::json& j);

Json to_json(const SheafStats& stats);
SheafStats stats_from_json(const nlohmann::json& j);

Json to_json(const FormsTable& table);

Json to_json(const ZiVerdict& verdict);

std::vector<Rational> rational_list_from_json(const nlohmann::json& j);
Json to_json(const std::vector<Rational>& xs);

// Reads and parses a JSON file; both I/O and syntax errors become InputError.
nlohmann::json load_json_file(const std::string& path);

} // namespace frobstab
