#include "nonloc/behavior.hpp"

#include <cmath>
#include <limits>
#include <random>
#include <sstream>

namespace nonloc {

namespace {

std::uint64_t sat_pow(std::uint64_t base, int exp) {
    std::uint64_t r = 1;
    for (int i = 0; i < exp; ++i) {
        if (base != 0 && r > std::numeric_limits<std::uint64_t>::max() / base)
            return std::numeric_limits<std::uint64_t>::max();
        r *= base;
    }
    return r;
}

std::uint64_t sat_mul(std::uint64_t a, std::uint64_t b) {
    if (a != 0 && b > std::numeric_limits<std::uint64_t>::max() / a)
        return std::numeric_limits<std::uint64_t>::max();
    return a * b;
}

// Uniform double in [0,1) from the top 53 bits; keeps the sampler
// bit-identical across platforms.
double uniform01(std::mt19937_64& gen) { return (gen() >> 11) * 0x1.0p-53; }

}  // namespace

std::uint64_t Scenario::strategy_count() const {
    return sat_mul(sat_pow(static_cast<std::uint64_t>(outputs_a), inputs_a),
                   sat_pow(static_cast<std::uint64_t>(outputs_b), inputs_b));
}

std::size_t Scenario::index(int x, int y, int a, int b) const {
    return ((static_cast<std::size_t>(x) * inputs_b + y) * outputs_a + a) * outputs_b + b;
}

void Scenario::validate(std::uint64_t cap) const {
    if (inputs_a < 1 || inputs_b < 1 || outputs_a < 1 || outputs_b < 1)
        throw ValidationError("scenario counts must all be >= 1");
    std::uint64_t n = strategy_count();
    if (n > cap) {
        std::ostringstream os;
        os << "deterministic-strategy space of size " << n << " exceeds the cap of " << cap;
        throw CapExceededError(os.str());
    }
}

void Behavior::validate() const {
    scenario.validate();
    if (table.size() != scenario.table_size())
        throw ValidationError("behavior table size does not match its scenario");
    for (int x = 0; x < scenario.inputs_a; ++x)
        for (int y = 0; y < scenario.inputs_b; ++y) {
            double sum = 0.0;
            for (int a = 0; a < scenario.outputs_a; ++a)
                for (int b = 0; b < scenario.outputs_b; ++b) {
                    double p = at(x, y, a, b);
                    if (!std::isfinite(p) || p < -kEpsProb || p > 1.0 + kEpsProb) {
                        std::ostringstream os;
                        os << "entry p(" << a << "," << b << "|" << x << "," << y
                           << ") = " << p << " outside [0, 1]";
                        throw ValidationError(os.str());
                    }
                    sum += p;
                }
            if (std::abs(sum - 1.0) > kEpsProb) {
                std::ostringstream os;
                os << "setting pair (" << x << "," << y << ") sums to " << sum
                   << ", not 1";
                throw ValidationError(os.str());
            }
        }
}

void BellExpression::validate() const {
    scenario.validate();
    if (coeffs.size() != scenario.table_size())
        throw ValidationError("coefficient table size does not match its scenario");
}

Behavior behavior_from_quantum(const StateVector& state,
                               const std::vector<ProjectiveMeasurement>& meas_a,
                               const std::vector<ProjectiveMeasurement>& meas_b,
                               int outputs_a, int outputs_b) {
    state.validate();
    if (state.dims.size() != 2)
        throw ValidationError("behaviors are bipartite; state must have exactly two parties");
    if (meas_a.empty() || meas_b.empty())
        throw ValidationError("each party needs at least one measurement");
    for (const auto& m : meas_a) {
        m.validate();
        if (m.dim != state.dims[0]) throw ValidationError("Alice measurement dimension mismatch");
        outputs_a = std::max(outputs_a, m.max_label());
    }
    for (const auto& m : meas_b) {
        m.validate();
        if (m.dim != state.dims[1]) throw ValidationError("Bob measurement dimension mismatch");
        outputs_b = std::max(outputs_b, m.max_label());
    }

    Behavior beh;
    beh.scenario = {static_cast<int>(meas_a.size()), static_cast<int>(meas_b.size()),
                    outputs_a, outputs_b};
    beh.scenario.validate();
    beh.table.assign(beh.scenario.table_size(), 0.0);
    for (int x = 0; x < beh.scenario.inputs_a; ++x)
        for (int y = 0; y < beh.scenario.inputs_b; ++y)
            for (std::size_t i = 0; i < meas_a[x].projectors.size(); ++i)
                for (std::size_t j = 0; j < meas_b[y].projectors.size(); ++j) {
                    int a = meas_a[x].labels[i];
                    int b = meas_b[y].labels[j];
                    beh.at(x, y, a, b) +=
                        outcome_probability(state, {meas_a[x], meas_b[y]}, {a, b});
                }
    beh.validate();
    return beh;
}

double correlator(const Behavior& b, int x, int y) {
    if (b.scenario.outputs_a != 2 || b.scenario.outputs_b != 2)
        throw ValidationError("correlators need two +/-1 outcomes per side");
    if (x < 0 || x >= b.scenario.inputs_a || y < 0 || y >= b.scenario.inputs_b)
        throw ValidationError("setting index out of range");
    return b.at(x, y, 0, 0) + b.at(x, y, 1, 1) - b.at(x, y, 0, 1) - b.at(x, y, 1, 0);
}

BellExpression chsh_expression() {
    BellExpression e;
    e.scenario = {2, 2, 2, 2};
    e.description = "CHSH: E(0,0) + E(0,1) + E(1,0) - E(1,1)";
    e.coeffs.assign(e.scenario.table_size(), Rational(0));
    for (int x = 0; x < 2; ++x)
        for (int y = 0; y < 2; ++y) {
            int s = (x == 1 && y == 1) ? -1 : 1;
            for (int a = 0; a < 2; ++a)
                for (int b = 0; b < 2; ++b) {
                    int sign = ((a == 1) != (b == 1)) ? -1 : 1;
                    e.coeffs[e.scenario.index(x, y, a, b)] = Rational(s * sign);
                }
        }
    return e;
}

double evaluate_expression(const BellExpression& e, const Behavior& b) {
    e.validate();
    b.validate();
    if (!(e.scenario == b.scenario))
        throw ValidationError("expression and behavior scenarios differ");
    double v = 0.0;
    for (std::size_t i = 0; i < e.coeffs.size(); ++i)
        v += e.coeffs[i].convert_to<double>() * b.table[i];
    return v;
}

void for_each_deterministic(const Scenario& s,
                            const std::function<void(const DeterministicStrategy&)>& fn) {
    s.validate();
    DeterministicStrategy d;
    d.map_a.assign(s.inputs_a, 0);
    d.map_b.assign(s.inputs_b, 0);
    // Mixed-radix counter over the digits (map_a, map_b), last digit
    // fastest: lexicographic order on the concatenated tuple.
    const int na = s.inputs_a;
    const int nb = s.inputs_b;
    while (true) {
        fn(d);
        int i = na + nb - 1;
        for (; i >= 0; --i) {
            int& digit = (i < na) ? d.map_a[i] : d.map_b[i - na];
            int radix = (i < na) ? s.outputs_a : s.outputs_b;
            if (++digit < radix) break;
            digit = 0;
        }
        if (i < 0) return;
    }
}

std::vector<DeterministicStrategy> enumerate_deterministic(const Scenario& s) {
    s.validate();
    std::vector<DeterministicStrategy> out;
    out.reserve(s.strategy_count());
    for_each_deterministic(s, [&](const DeterministicStrategy& d) { out.push_back(d); });
    return out;
}

Behavior strategy_behavior(const Scenario& s, const DeterministicStrategy& d) {
    s.validate();
    if (d.map_a.size() != static_cast<std::size_t>(s.inputs_a) ||
        d.map_b.size() != static_cast<std::size_t>(s.inputs_b))
        throw ValidationError("strategy shape does not match the scenario");
    for (int a : d.map_a)
        if (a < 0 || a >= s.outputs_a) throw ValidationError("strategy output out of range");
    for (int b : d.map_b)
        if (b < 0 || b >= s.outputs_b) throw ValidationError("strategy output out of range");
    Behavior beh;
    beh.scenario = s;
    beh.table.assign(s.table_size(), 0.0);
    for (int x = 0; x < s.inputs_a; ++x)
        for (int y = 0; y < s.inputs_b; ++y) beh.at(x, y, d.map_a[x], d.map_b[y]) = 1.0;
    return beh;
}

Rational strategy_value(const BellExpression& e, const DeterministicStrategy& d) {
    Rational v(0);
    for (int x = 0; x < e.scenario.inputs_a; ++x)
        for (int y = 0; y < e.scenario.inputs_b; ++y) v += e.at(x, y, d.map_a[x], d.map_b[y]);
    return v;
}

namespace {

// Integerized copy of a coefficient table over one common denominator.
// Lets the bound search run on int64 sums; falls back to rationals when
// anything would not fit.
struct ScaledCoeffs {
    bool ok = false;
    std::vector<long long> num; // coeff * denom
    BigInt denom;
};

ScaledCoeffs scale_coeffs(const BellExpression& e) {
    ScaledCoeffs sc;
    sc.denom = 1;
    for (const Rational& c : e.coeffs) sc.denom = lcm(sc.denom, denominator(c));
    BigInt limit = std::numeric_limits<long long>::max();
    BigInt worst = 0;
    sc.num.reserve(e.coeffs.size());
    for (const Rational& c : e.coeffs) {
        BigInt n = numerator(c) * (sc.denom / denominator(c));
        if (abs(n) * BigInt(e.scenario.pair_count()) >= limit) return sc;
        sc.num.push_back(n.convert_to<long long>());
        worst = max(worst, abs(n));
    }
    sc.ok = true;
    return sc;
}

}  // namespace

LhvBound lhv_bound(const BellExpression& e) {
    e.validate();
    LhvBound best;
    bool have = false;

    ScaledCoeffs sc = scale_coeffs(e);
    if (sc.ok) {
        long long best_num = 0;
        for_each_deterministic(e.scenario, [&](const DeterministicStrategy& d) {
            long long v = 0;
            for (int x = 0; x < e.scenario.inputs_a; ++x)
                for (int y = 0; y < e.scenario.inputs_b; ++y)
                    v += sc.num[e.scenario.index(x, y, d.map_a[x], d.map_b[y])];
            if (!have || v > best_num) {
                have = true;
                best_num = v;
                best.maximizer = d;
            }
        });
        best.bound = Rational(BigInt(best_num), sc.denom);
    } else {
        for_each_deterministic(e.scenario, [&](const DeterministicStrategy& d) {
            Rational v = strategy_value(e, d);
            if (!have || v > best.bound) {
                have = true;
                best.bound = v;
                best.maximizer = d;
            }
        });
    }
    return best;
}

SupportTable support_of(const Behavior& b, double eps_support) {
    b.validate();
    if (!(eps_support > 0)) throw ValidationError("eps_support must be positive");
    SupportTable s;
    s.scenario = b.scenario;
    s.possible.assign(b.table.size(), 0);
    for (std::size_t i = 0; i < b.table.size(); ++i) s.possible[i] = b.table[i] > eps_support;
    for (int x = 0; x < s.scenario.inputs_a; ++x)
        for (int y = 0; y < s.scenario.inputs_b; ++y) {
            bool any = false;
            for (int a = 0; a < s.scenario.outputs_a && !any; ++a)
                for (int b2 = 0; b2 < s.scenario.outputs_b && !any; ++b2)
                    any = s.at(x, y, a, b2);
            if (!any) {
                std::ostringstream os;
                os << "eps_support = " << eps_support << " leaves setting pair (" << x << ","
                   << y << ") with no possible outcome";
                throw ValidationError(os.str());
            }
        }
    return s;
}

SimulationResult simulate_rounds(const Behavior& b, std::uint64_t rounds, std::uint64_t seed,
                                 const std::vector<double>& input_dist) {
    b.validate();
    if (rounds < 1) throw ValidationError("simulation needs at least one round");
    const Scenario& s = b.scenario;

    std::vector<double> dist = input_dist;
    if (dist.empty()) dist.assign(s.pair_count(), 1.0 / static_cast<double>(s.pair_count()));
    if (dist.size() != s.pair_count())
        throw ValidationError("input distribution needs one weight per setting pair");
    double dsum = 0.0;
    for (double w : dist) {
        if (!(w >= 0.0)) throw ValidationError("input distribution weights must be >= 0");
        dsum += w;
    }
    if (std::abs(dsum - 1.0) > kEpsProb)
        throw ValidationError("input distribution must sum to 1");

    SimulationResult r;
    r.scenario = s;
    r.rounds = rounds;
    r.seed = seed;
    r.counts.assign(s.table_size(), 0);
    r.pair_totals.assign(s.pair_count(), 0);

    std::mt19937_64 gen(seed);
    const std::size_t per_pair = std::size_t(s.outputs_a) * s.outputs_b;
    for (std::uint64_t t = 0; t < rounds; ++t) {
        double u = uniform01(gen);
        std::size_t pair = s.pair_count() - 1;
        double acc = 0.0;
        for (std::size_t i = 0; i < s.pair_count(); ++i) {
            acc += dist[i];
            if (u < acc) { pair = i; break; }
        }
        double v = uniform01(gen);
        std::size_t cell = per_pair - 1;
        acc = 0.0;
        for (std::size_t j = 0; j < per_pair; ++j) {
            acc += b.table[pair * per_pair + j];
            if (v < acc) { cell = j; break; }
        }
        ++r.counts[pair * per_pair + cell];
        ++r.pair_totals[pair];
    }

    r.empirical.assign(s.table_size(), 0.0);
    for (std::size_t i = 0; i < s.pair_count(); ++i)
        if (r.pair_totals[i] > 0)
            for (std::size_t j = 0; j < per_pair; ++j)
                r.empirical[i * per_pair + j] =
                    static_cast<double>(r.counts[i * per_pair + j]) /
                    static_cast<double>(r.pair_totals[i]);
    return r;
}

}  // namespace nonloc
