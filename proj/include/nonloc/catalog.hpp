#pragma once

#include <vector>

#include "nonloc/behavior.hpp"
#include "nonloc/quantum.hpp"

namespace nonloc {

/// The singlet (|+-> - |-+>)/sqrt(2).
StateVector singlet();

/// (|--> + |-+> + |+->)/sqrt(3), the state behind the Hardy argument.
StateVector hardy_state();

/// Measurement settings attaining |CHSH| = 2*sqrt(2) on the singlet:
/// Alice z and x, Bob -(z+x)/sqrt(2) and (x-z)/sqrt(2). Setting index
/// matches the CHSH expression's inputs.
std::vector<ProjectiveMeasurement> chsh_settings_a();
std::vector<ProjectiveMeasurement> chsh_settings_b();

/// The same four settings as +/-1 observables, for expectation values.
std::vector<Operator> chsh_observables_a();
std::vector<Operator> chsh_observables_b();

/// Behavior of the singlet under the CHSH settings.
Behavior chsh_quantum_behavior();

/// Hardy settings per party: setting 0 measures z, setting 1 measures x.
std::vector<ProjectiveMeasurement> hardy_settings();

/// Born-rule Hardy behavior (floating point).
Behavior hardy_behavior();

/// The same table exactly: entries are rational for this state and these
/// settings. Cross-checked against the kernel in tests.
std::vector<Rational> hardy_exact_table();

}  // namespace nonloc
