#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "nonloc/behavior.hpp"
#include "nonloc/classify.hpp"
#include "nonloc/games.hpp"

namespace nonloc {

/// Insertion-ordered JSON so identical inputs serialize byte-identically.
using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

/// Doubles are rounded to 12 significant digits before serialization,
/// keeping emitted JSON byte-stable across runs.
double round_sig12(double x);

/// Wraps nlohmann parsing, rethrowing as ParseError with position info.
Json parse_json_text(const std::string& text);
Json load_json_file(const std::string& path);

// Rationals serialize as {"num": n, "den": d}; components that do not fit
// in 64 bits are emitted as decimal strings. Parsing accepts either form.
Json rational_to_json(const Rational& r);
Rational rational_from_json(const Json& j, const std::string& where);

Json scenario_to_json(const Scenario& s);
Scenario scenario_from_json(const Json& j);

/// Behavior tables serialize as one row per setting pair (x-major), each
/// row listing p(a,b) with b fastest. Entries may be numbers or exact
/// {num, den} objects.
Json behavior_to_json(const Behavior& b);
Json exact_table_to_json(const Scenario& s, const std::vector<Rational>& table);

struct ParsedBehavior {
    Behavior behavior;
    /// Present iff every table entry was given as an exact rational.
    std::optional<std::vector<Rational>> exact;
};
ParsedBehavior behavior_from_json(const Json& j);

Json expression_to_json(const BellExpression& e);
struct ParsedExpression {
    BellExpression expression;
    /// False when some coefficient arrived as a float and was rationalized.
    bool exact = true;
};
ParsedExpression expression_from_json(const Json& j);

Json support_to_json(const SupportTable& s);
Json verdict_to_json(const NoGoVerdict& v);
Json strategy_to_json(const DeterministicStrategy& d);
Json simulation_to_json(const SimulationResult& r);

/// Games serialize as label lists plus the accepted (xa,xb,ya,yb) tuples.
Json game_to_json(const Game& g);
Game game_from_json(const Json& j);

// States and measurements serialize with complex entries as [re, im]
// pairs; operators are row-major.
Json state_to_json(const StateVector& s);
StateVector state_from_json(const Json& j);
Json measurement_to_json(const ProjectiveMeasurement& m);
ProjectiveMeasurement measurement_from_json(const Json& j);

}  // namespace nonloc
