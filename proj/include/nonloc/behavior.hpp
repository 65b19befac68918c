#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "nonloc/common.hpp"
#include "nonloc/quantum.hpp"

namespace nonloc {

/// Bipartite measurement scenario: how many settings each party can choose
/// and how many outcomes each setting has.
struct Scenario {
    int inputs_a = 0;
    int inputs_b = 0;
    int outputs_a = 0;
    int outputs_b = 0;

    bool operator==(const Scenario&) const = default;

    std::size_t pair_count() const { return std::size_t(inputs_a) * inputs_b; }
    std::size_t table_size() const { return pair_count() * outputs_a * outputs_b; }
    /// outputs_a^inputs_a * outputs_b^inputs_b, saturating at 2^64-1.
    std::uint64_t strategy_count() const;
    std::size_t index(int x, int y, int a, int b) const;

    /// Counts >= 1 and the deterministic-strategy space within the
    /// enumeration cap.
    void validate(std::uint64_t cap = enum_cap()) const;
};

/// Conditional joint outcome distribution p(a,b|x,y), row-major (x,y,a,b).
struct Behavior {
    Scenario scenario;
    std::vector<double> table;

    double at(int x, int y, int a, int b) const { return table[scenario.index(x, y, a, b)]; }
    double& at(int x, int y, int a, int b) { return table[scenario.index(x, y, a, b)]; }

    /// Entries in [0,1] and every setting pair normalized, within kEpsProb.
    void validate() const;
};

/// One local classical assignment: an output for every input, per party.
/// These are the vertices of the local polytope; every LHV model is a
/// convex mixture of them.
struct DeterministicStrategy {
    std::vector<int> map_a; // x -> a
    std::vector<int> map_b; // y -> b

    bool operator==(const DeterministicStrategy&) const = default;
};

/// Linear functional on behaviors with exact rational coefficients,
/// indexed like a Behavior table.
struct BellExpression {
    Scenario scenario;
    std::vector<Rational> coeffs;
    std::string description;

    const Rational& at(int x, int y, int a, int b) const {
        return coeffs[scenario.index(x, y, a, b)];
    }
    void validate() const;
};

/// Possibilistic reduction of a behavior: which outcomes carry any
/// probability at all. This is the object the inequality-free arguments
/// quantify over.
struct SupportTable {
    Scenario scenario;
    std::vector<char> possible;

    bool at(int x, int y, int a, int b) const {
        return possible[scenario.index(x, y, a, b)] != 0;
    }
};

/// Born-rule behavior of a shared state under per-setting measurements.
/// Measurement labels index outcomes; outcome counts default to the
/// largest label seen but can be widened (a game may admit outputs the
/// quantum strategy never produces).
Behavior behavior_from_quantum(const StateVector& state,
                               const std::vector<ProjectiveMeasurement>& meas_a,
                               const std::vector<ProjectiveMeasurement>& meas_b,
                               int outputs_a = 0, int outputs_b = 0);

/// E(x,y) = p(00)+p(11)-p(01)-p(10), reading outcome index 0 as +1 and
/// index 1 as -1. Binary scenarios only.
double correlator(const Behavior& b, int x, int y);

/// The CHSH functional <A1B1> + <A1B2> + <A2B1> - <A2B2> written on
/// probabilities: c(x,y,a,b) = s(x,y) * sign(a) * sign(b).
BellExpression chsh_expression();

double evaluate_expression(const BellExpression& e, const Behavior& b);

/// Visits all outputs_a^inputs_a * outputs_b^inputs_b deterministic
/// strategies exactly once, in lexicographic order on (map_a, map_b).
void for_each_deterministic(const Scenario& s,
                            const std::function<void(const DeterministicStrategy&)>& fn);

std::vector<DeterministicStrategy> enumerate_deterministic(const Scenario& s);

/// The 0/1 behavior a deterministic strategy produces.
Behavior strategy_behavior(const Scenario& s, const DeterministicStrategy& d);

struct LhvBound {
    Rational bound;
    DeterministicStrategy maximizer; // lexicographically first one
};

/// Exact classical bound: max of the expression over all deterministic
/// strategies, which by convexity is the max over all LHV models.
LhvBound lhv_bound(const BellExpression& e);

/// Exact value of the expression on one deterministic strategy.
Rational strategy_value(const BellExpression& e, const DeterministicStrategy& d);

/// possible(x,y,a,b) = p(a,b|x,y) > eps_support. Rejects eps so large that
/// some setting pair loses all its outcomes.
SupportTable support_of(const Behavior& b, double eps_support = kEpsSupport);

struct SimulationResult {
    Scenario scenario;
    std::uint64_t rounds = 0;
    std::uint64_t seed = 0;
    std::vector<std::uint64_t> counts;      // per (x,y,a,b)
    std::vector<std::uint64_t> pair_totals; // per (x,y)
    std::vector<double> empirical;          // counts / pair total, 0 if unsampled

    double frequency(int x, int y, int a, int b) const {
        return empirical[scenario.index(x, y, a, b)];
    }
};

/// Samples `rounds` runs: a setting pair from input_dist (uniform when
/// empty), then an outcome from p(.|x,y). Fully deterministic in the seed;
/// identical seeds give bit-identical counts on any platform.
SimulationResult simulate_rounds(const Behavior& b, std::uint64_t rounds, std::uint64_t seed,
                                 const std::vector<double>& input_dist = {});

}  // namespace nonloc
