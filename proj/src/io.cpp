#include "nonloc/io.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "nonloc/membership.hpp"

namespace nonloc {

namespace {

const Json& field(const Json& j, const char* name) {
    if (!j.is_object()) throw ParseError(std::string("expected an object holding '") + name + "'");
    auto it = j.find(name);
    if (it == j.end()) throw ParseError(std::string("missing field '") + name + "'");
    return *it;
}

int int_field(const Json& j, const char* name) {
    const Json& f = field(j, name);
    if (!f.is_number_integer()) throw ParseError(std::string("field '") + name + "' must be an integer");
    return f.get<int>();
}

BigInt bigint_from_json(const Json& j, const std::string& where) {
    if (j.is_number_integer()) return BigInt(j.get<long long>());
    if (j.is_string()) {
        try {
            return BigInt(j.get<std::string>());
        } catch (const std::exception&) {
            throw ParseError(where + ": malformed integer string");
        }
    }
    throw ParseError(where + ": expected an integer or integer string");
}

Json bigint_to_json(const BigInt& v) {
    static const BigInt lo = std::numeric_limits<long long>::min();
    static const BigInt hi = std::numeric_limits<long long>::max();
    if (v >= lo && v <= hi) return Json(v.convert_to<long long>());
    return Json(v.str());
}

void check_schema_version(const Json& j) {
    int v = int_field(j, "schema_version");
    if (v != kSchemaVersion) {
        std::ostringstream os;
        os << "unsupported schema_version " << v << " (expected " << kSchemaVersion << ")";
        throw ParseError(os.str());
    }
}

// Entries arrive as rows of numbers and/or {num,den} objects. Returns the
// float table and, when every entry was exact, the rational one too.
ParsedBehavior parse_table(const Scenario& s, const Json& rows, const char* what) {
    if (!rows.is_array() || rows.size() != s.pair_count()) {
        std::ostringstream os;
        os << "field '" << what << "' must be an array of " << s.pair_count()
           << " setting-pair rows";
        throw ParseError(os.str());
    }
    ParsedBehavior out;
    out.behavior.scenario = s;
    out.behavior.table.assign(s.table_size(), 0.0);
    std::vector<Rational> exact(s.table_size());
    bool all_exact = true;
    const std::size_t per_pair = std::size_t(s.outputs_a) * s.outputs_b;
    for (std::size_t r = 0; r < rows.size(); ++r) {
        const Json& row = rows[r];
        if (!row.is_array() || row.size() != per_pair) {
            std::ostringstream os;
            os << what << " row " << r << " must hold " << per_pair << " outcome entries";
            throw ParseError(os.str());
        }
        for (std::size_t c = 0; c < per_pair; ++c) {
            const Json& cell = row[c];
            std::ostringstream where;
            where << what << " row " << r << " entry " << c;
            if (cell.is_object()) {
                Rational v = rational_from_json(cell, where.str());
                exact[r * per_pair + c] = v;
                out.behavior.table[r * per_pair + c] = v.convert_to<double>();
            } else if (cell.is_number()) {
                all_exact = false;
                out.behavior.table[r * per_pair + c] = cell.get<double>();
            } else {
                throw ParseError(where.str() + ": expected a number or {num, den}");
            }
        }
    }
    if (all_exact) out.exact = std::move(exact);
    return out;
}

}  // namespace

double round_sig12(double x) {
    if (x == 0.0) return 0.0; // normalizes -0
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return std::strtod(buf, nullptr);
}

Json parse_json_text(const std::string& text) {
    try {
        return Json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(e.what());
    }
}

Json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_json_text(buf.str());
}

Json rational_to_json(const Rational& r) {
    Json j = Json::object();
    j["num"] = bigint_to_json(numerator(r));
    j["den"] = bigint_to_json(denominator(r));
    return j;
}

Rational rational_from_json(const Json& j, const std::string& where) {
    if (!j.is_object()) throw ParseError(where + ": expected a {num, den} object");
    auto num_it = j.find("num");
    auto den_it = j.find("den");
    if (num_it == j.end() || den_it == j.end())
        throw ParseError(where + ": rational needs 'num' and 'den'");
    BigInt num = bigint_from_json(*num_it, where);
    BigInt den = bigint_from_json(*den_it, where);
    if (den == 0) throw ParseError(where + ": rational denominator is zero");
    return Rational(num, den);
}

Json scenario_to_json(const Scenario& s) {
    Json j = Json::object();
    j["inputs_a"] = s.inputs_a;
    j["inputs_b"] = s.inputs_b;
    j["outputs_a"] = s.outputs_a;
    j["outputs_b"] = s.outputs_b;
    return j;
}

Scenario scenario_from_json(const Json& j) {
    Scenario s;
    s.inputs_a = int_field(j, "inputs_a");
    s.inputs_b = int_field(j, "inputs_b");
    s.outputs_a = int_field(j, "outputs_a");
    s.outputs_b = int_field(j, "outputs_b");
    if (s.inputs_a < 1 || s.inputs_b < 1 || s.outputs_a < 1 || s.outputs_b < 1)
        throw ParseError("scenario counts must all be >= 1");
    return s;
}

namespace {

Json table_rows(const Scenario& s, const std::function<Json(std::size_t)>& cell) {
    Json rows = Json::array();
    const std::size_t per_pair = std::size_t(s.outputs_a) * s.outputs_b;
    for (std::size_t r = 0; r < s.pair_count(); ++r) {
        Json row = Json::array();
        for (std::size_t c = 0; c < per_pair; ++c) row.push_back(cell(r * per_pair + c));
        rows.push_back(std::move(row));
    }
    return rows;
}

}  // namespace

Json behavior_to_json(const Behavior& b) {
    Json j = Json::object();
    j["schema_version"] = kSchemaVersion;
    j["scenario"] = scenario_to_json(b.scenario);
    j["table"] = table_rows(b.scenario,
                            [&](std::size_t i) { return Json(round_sig12(b.table[i])); });
    return j;
}

Json exact_table_to_json(const Scenario& s, const std::vector<Rational>& table) {
    Json j = Json::object();
    j["schema_version"] = kSchemaVersion;
    j["scenario"] = scenario_to_json(s);
    j["table"] = table_rows(s, [&](std::size_t i) { return rational_to_json(table[i]); });
    return j;
}

ParsedBehavior behavior_from_json(const Json& j) {
    check_schema_version(j);
    Scenario s = scenario_from_json(field(j, "scenario"));
    ParsedBehavior out = parse_table(s, field(j, "table"), "table");
    try {
        out.behavior.validate();
    } catch (const CapExceededError&) {
        throw;
    } catch (const ValidationError& e) {
        throw ValidationError(std::string("behavior table: ") + e.what());
    }
    return out;
}

Json expression_to_json(const BellExpression& e) {
    Json j = Json::object();
    j["schema_version"] = kSchemaVersion;
    j["scenario"] = scenario_to_json(e.scenario);
    j["coeffs"] = table_rows(e.scenario,
                             [&](std::size_t i) { return rational_to_json(e.coeffs[i]); });
    if (!e.description.empty()) j["description"] = e.description;
    return j;
}

ParsedExpression expression_from_json(const Json& j) {
    check_schema_version(j);
    ParsedExpression out;
    out.expression.scenario = scenario_from_json(field(j, "scenario"));
    const Scenario& s = out.expression.scenario;
    const Json& rows = field(j, "coeffs");
    if (!rows.is_array() || rows.size() != s.pair_count())
        throw ParseError("field 'coeffs' must hold one row per setting pair");
    out.expression.coeffs.assign(s.table_size(), Rational(0));
    const std::size_t per_pair = std::size_t(s.outputs_a) * s.outputs_b;
    for (std::size_t r = 0; r < rows.size(); ++r) {
        const Json& row = rows[r];
        if (!row.is_array() || row.size() != per_pair) {
            std::ostringstream os;
            os << "coeffs row " << r << " must hold " << per_pair << " entries";
            throw ParseError(os.str());
        }
        for (std::size_t c = 0; c < per_pair; ++c) {
            const Json& cell = row[c];
            std::ostringstream where;
            where << "coeffs row " << r << " entry " << c;
            if (cell.is_object()) {
                out.expression.coeffs[r * per_pair + c] = rational_from_json(cell, where.str());
            } else if (cell.is_number()) {
                out.exact = false;
                out.expression.coeffs[r * per_pair + c] =
                    rationalize(cell.get<double>(), kEpsExactZero);
            } else {
                throw ParseError(where.str() + ": expected a number or {num, den}");
            }
        }
    }
    if (auto it = j.find("description"); it != j.end() && it->is_string())
        out.expression.description = it->get<std::string>();
    out.expression.validate();
    return out;
}

Json support_to_json(const SupportTable& s) {
    Json j = Json::object();
    j["schema_version"] = kSchemaVersion;
    j["scenario"] = scenario_to_json(s.scenario);
    j["possible"] =
        table_rows(s.scenario, [&](std::size_t i) { return Json(s.possible[i] != 0); });
    return j;
}

Json verdict_to_json(const NoGoVerdict& v) {
    Json j = Json::object();
    j["violates_locality"] = v.violates_locality;
    j["btwi"] = v.btwi;
    j["pt"] = v.pt;
    j["witness"] = v.witness;
    if (v.uncovered) {
        Json p = Json::object();
        p["x"] = (*v.uncovered)[0];
        p["y"] = (*v.uncovered)[1];
        p["a"] = (*v.uncovered)[2];
        p["b"] = (*v.uncovered)[3];
        j["uncovered_support_point"] = std::move(p);
    }
    return j;
}

Json strategy_to_json(const DeterministicStrategy& d) {
    Json j = Json::object();
    j["map_a"] = d.map_a;
    j["map_b"] = d.map_b;
    return j;
}

Json simulation_to_json(const SimulationResult& r) {
    Json j = Json::object();
    j["schema_version"] = kSchemaVersion;
    j["scenario"] = scenario_to_json(r.scenario);
    j["rounds"] = r.rounds;
    j["seed"] = r.seed;
    j["counts"] = table_rows(r.scenario, [&](std::size_t i) { return Json(r.counts[i]); });
    j["empirical"] =
        table_rows(r.scenario, [&](std::size_t i) { return Json(round_sig12(r.empirical[i])); });
    return j;
}

Json game_to_json(const Game& g) {
    Json j = Json::object();
    j["schema_version"] = kSchemaVersion;
    j["name"] = g.name;
    j["inputs_a"] = g.inputs_a;
    j["inputs_b"] = g.inputs_b;
    j["outputs_a"] = g.outputs_a;
    j["outputs_b"] = g.outputs_b;
    Json accepted = Json::array();
    for (std::size_t xa = 0; xa < g.inputs_a.size(); ++xa)
        for (std::size_t xb = 0; xb < g.inputs_b.size(); ++xb)
            for (std::size_t ya = 0; ya < g.outputs_a.size(); ++ya)
                for (std::size_t yb = 0; yb < g.outputs_b.size(); ++yb)
                    if (g.relation(static_cast<int>(xa), static_cast<int>(xb),
                                   static_cast<int>(ya), static_cast<int>(yb)))
                        accepted.push_back(Json::array({xa, xb, ya, yb}));
    j["accepted"] = std::move(accepted);
    return j;
}

namespace {

Json complex_to_json(Complex z) {
    return Json::array({round_sig12(z.real()), round_sig12(z.imag())});
}

Complex complex_from_json(const Json& j, const std::string& where) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
        throw ParseError(where + ": expected a [re, im] pair");
    return {j[0].get<double>(), j[1].get<double>()};
}

}  // namespace

Json state_to_json(const StateVector& s) {
    Json j = Json::object();
    j["schema_version"] = kSchemaVersion;
    j["dims"] = s.dims;
    Json amps = Json::array();
    for (Complex z : s.amplitudes) amps.push_back(complex_to_json(z));
    j["amplitudes"] = std::move(amps);
    return j;
}

StateVector state_from_json(const Json& j) {
    check_schema_version(j);
    StateVector s;
    const Json& dims = field(j, "dims");
    if (!dims.is_array() || dims.empty()) throw ParseError("field 'dims' must be a nonempty array");
    for (const Json& d : dims) {
        if (!d.is_number_integer()) throw ParseError("field 'dims' must hold integers");
        s.dims.push_back(d.get<int>());
    }
    const Json& amps = field(j, "amplitudes");
    if (!amps.is_array()) throw ParseError("field 'amplitudes' must be an array");
    for (std::size_t i = 0; i < amps.size(); ++i) {
        std::ostringstream where;
        where << "amplitude " << i;
        s.amplitudes.push_back(complex_from_json(amps[i], where.str()));
    }
    s.validate();
    return s;
}

Json measurement_to_json(const ProjectiveMeasurement& m) {
    Json j = Json::object();
    j["schema_version"] = kSchemaVersion;
    j["dim"] = m.dim;
    j["labels"] = m.labels;
    Json projectors = Json::array();
    for (const Operator& p : m.projectors) {
        Json entries = Json::array();
        for (Complex z : p.entries) entries.push_back(complex_to_json(z));
        projectors.push_back(std::move(entries));
    }
    j["projectors"] = std::move(projectors);
    return j;
}

ProjectiveMeasurement measurement_from_json(const Json& j) {
    check_schema_version(j);
    ProjectiveMeasurement m;
    m.dim = int_field(j, "dim");
    const Json& labels = field(j, "labels");
    if (!labels.is_array()) throw ParseError("field 'labels' must be an array");
    for (const Json& l : labels) {
        if (!l.is_number_integer()) throw ParseError("field 'labels' must hold integers");
        m.labels.push_back(l.get<int>());
    }
    const Json& projectors = field(j, "projectors");
    if (!projectors.is_array()) throw ParseError("field 'projectors' must be an array");
    for (std::size_t k = 0; k < projectors.size(); ++k) {
        const Json& entries = projectors[k];
        if (!entries.is_array() || entries.size() != static_cast<std::size_t>(m.dim) * m.dim) {
            std::ostringstream os;
            os << "projector " << k << " must hold " << m.dim * m.dim << " row-major entries";
            throw ParseError(os.str());
        }
        Operator p;
        p.dim = m.dim;
        for (std::size_t i = 0; i < entries.size(); ++i) {
            std::ostringstream where;
            where << "projector " << k << " entry " << i;
            p.entries.push_back(complex_from_json(entries[i], where.str()));
        }
        m.projectors.push_back(std::move(p));
    }
    m.validate();
    return m;
}

Game game_from_json(const Json& j) {
    check_schema_version(j);
    auto labels = [&](const char* name) {
        const Json& f = field(j, name);
        if (!f.is_array() || f.empty())
            throw ParseError(std::string("field '") + name + "' must be a nonempty array");
        std::vector<std::string> out;
        for (const Json& l : f) {
            if (!l.is_string())
                throw ParseError(std::string("field '") + name + "' must hold strings");
            out.push_back(l.get<std::string>());
        }
        return out;
    };
    Game g;
    if (auto it = j.find("name"); it != j.end() && it->is_string()) g.name = it->get<std::string>();
    g.inputs_a = labels("inputs_a");
    g.inputs_b = labels("inputs_b");
    g.outputs_a = labels("outputs_a");
    g.outputs_b = labels("outputs_b");
    g.accepts.assign(g.scenario().table_size(), 0);
    const Json& accepted = field(j, "accepted");
    if (!accepted.is_array()) throw ParseError("field 'accepted' must be an array of tuples");
    for (std::size_t i = 0; i < accepted.size(); ++i) {
        const Json& t = accepted[i];
        if (!t.is_array() || t.size() != 4) {
            std::ostringstream os;
            os << "accepted tuple " << i << " must be [xa, xb, ya, yb]";
            throw ParseError(os.str());
        }
        int xa = t[0].get<int>(), xb = t[1].get<int>(), ya = t[2].get<int>(), yb = t[3].get<int>();
        if (xa < 0 || xa >= static_cast<int>(g.inputs_a.size()) || xb < 0 ||
            xb >= static_cast<int>(g.inputs_b.size()) || ya < 0 ||
            ya >= static_cast<int>(g.outputs_a.size()) || yb < 0 ||
            yb >= static_cast<int>(g.outputs_b.size())) {
            std::ostringstream os;
            os << "accepted tuple " << i << " is out of range";
            throw ParseError(os.str());
        }
        g.accepts[((std::size_t(xa) * g.inputs_b.size() + xb) * g.outputs_a.size() + ya) *
                      g.outputs_b.size() + yb] = 1;
    }
    g.validate();
    return g;
}

}  // namespace nonloc
