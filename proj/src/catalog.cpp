#include "nonloc/catalog.hpp"

#include <cmath>

namespace nonloc {

namespace {
const double kInvSqrt2 = 1.0 / std::sqrt(2.0);
const double kInvSqrt3 = 1.0 / std::sqrt(3.0);
}  // namespace

StateVector singlet() {
    StateVector s;
    s.dims = {2, 2};
    s.amplitudes = {0.0, kInvSqrt2, -kInvSqrt2, 0.0};
    return s;
}

StateVector hardy_state() {
    StateVector s;
    s.dims = {2, 2};
    s.amplitudes = {0.0, kInvSqrt3, kInvSqrt3, kInvSqrt3};
    return s;
}

std::vector<ProjectiveMeasurement> chsh_settings_a() {
    return {bloch_measurement(0, 0, 1), bloch_measurement(1, 0, 0)};
}

std::vector<ProjectiveMeasurement> chsh_settings_b() {
    return {bloch_measurement(-kInvSqrt2, 0, -kInvSqrt2),
            bloch_measurement(kInvSqrt2, 0, -kInvSqrt2)};
}

std::vector<Operator> chsh_observables_a() {
    return {bloch_observable(0, 0, 1), bloch_observable(1, 0, 0)};
}

std::vector<Operator> chsh_observables_b() {
    return {bloch_observable(-kInvSqrt2, 0, -kInvSqrt2),
            bloch_observable(kInvSqrt2, 0, -kInvSqrt2)};
}

Behavior chsh_quantum_behavior() {
    return behavior_from_quantum(singlet(), chsh_settings_a(), chsh_settings_b());
}

std::vector<ProjectiveMeasurement> hardy_settings() {
    return {bloch_measurement(0, 0, 1), bloch_measurement(1, 0, 0)};
}

Behavior hardy_behavior() {
    return behavior_from_quantum(hardy_state(), hardy_settings(), hardy_settings());
}

std::vector<Rational> hardy_exact_table() {
    Scenario s{2, 2, 2, 2};
    std::vector<Rational> t(s.table_size(), Rational(0));
    auto set = [&](int x, int y, int a, int b, Rational v) { t[s.index(x, y, a, b)] = v; };
    // (z,z): ++ forbidden, the rest uniform.
    set(0, 0, 0, 1, Rational(1, 3));
    set(0, 0, 1, 0, Rational(1, 3));
    set(0, 0, 1, 1, Rational(1, 3));
    // (z,x) and (x,z): -- forbidden.
    set(0, 1, 0, 0, Rational(1, 6));
    set(0, 1, 0, 1, Rational(1, 6));
    set(0, 1, 1, 0, Rational(2, 3));
    set(1, 0, 0, 0, Rational(1, 6));
    set(1, 0, 0, 1, Rational(2, 3));
    set(1, 0, 1, 0, Rational(1, 6));
    // (x,x): -- occurs with probability 1/12.
    set(1, 1, 0, 0, Rational(3, 4));
    set(1, 1, 0, 1, Rational(1, 12));
    set(1, 1, 1, 0, Rational(1, 12));
    set(1, 1, 1, 1, Rational(1, 12));
    return t;
}

}  // namespace nonloc
