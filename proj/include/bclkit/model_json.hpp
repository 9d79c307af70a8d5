#pragma once

#include "bclkit/model.hpp"

#include "json.hpp"

namespace bclkit
{

// {"worlds":[...], "access":[["w0","w1"]], "valuation":{"w0":["p"]},
//  "relating":{"w0":[["p","q"]]}, "carrier":["p -> q"]}
// "carrier" is optional on input; on output it lists the whole carrier.
// Throws ModelError (malformed document) or ParseError (bad formula text).
RelatingModel model_from_json( const nlohmann::json& doc );
nlohmann::json model_to_json( const RelatingModel& model );

} // namespace bclkit
