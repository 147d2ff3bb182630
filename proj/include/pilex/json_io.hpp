#ifndef PILEX_JSON_IO_HPP
#define PILEX_JSON_IO_HPP

#include <json.hpp>

#include "pilex/decompose.hpp"
#include "pilex/principles.hpp"
#include "pilex/prob_fns.hpp"

// External document formats. Rationals travel as strings "num/den" (or
// "num"), so every value round-trips exactly; nothing is ever rendered in
// floating point.

namespace pilex {

using Json = nlohmann::ordered_json;

Json rat_to_json(const Rat& value);
Rat rat_from_json(const Json& j);

Json to_json(const PSpectrum& spectrum);

Json to_json(const SimplexVector& x);              // {"x": [...]}
SimplexVector simplex_from_json(const Json& j);

Json to_json(const DiscreteMeasure& m);            // {"points": [...], "weights": [...]}
DiscreteMeasure measure_from_json(const Json& j);

Json to_json(const PTParams& params);              // {"p": [...], "tau": [...], "tau0": {...}}
PTParams pt_params_from_json(const Json& j);

// Tagged function documents: {"wx": {...}} | {"vpt": {...}} |
// {"vptn": {..., "n": N}} | {"zx": {...}} | {"mix": [{"w": .., "fn": ..}]}
// | {"signed": [{"c": .., "fn": ..}]}.
Json to_json(const ProbFn& fn);
ProbFn prob_fn_from_json(const Json& j);

// Reads a parameter file for the CLI: either a tagged document or bare
// parameters interpreted per `kind` ("wx", "vpt", "vptn", "zx", "mixture").
ProbFn prob_fn_from_params(const std::string& kind, const Json& j);

Json to_json(const PrincipleReport& report);

Json to_json(const DecompositionResult& result);         // tau table, lambda, w1, w2
Json certificate_to_json(const DecompositionResult& result);

}  // namespace pilex

#endif
