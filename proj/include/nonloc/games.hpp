#pragma once

#include <functional>
#include <string>
#include <vector>

#include "nonloc/behavior.hpp"
#include "nonloc/common.hpp"
#include "nonloc/quantum.hpp"

namespace nonloc {

/// Bipartite game: finite input and output label sets plus a winning
/// relation, tabulated over (x_a, x_b, y_a, y_b).
struct Game {
    std::string name;
    std::vector<std::string> inputs_a, inputs_b;
    std::vector<std::string> outputs_a, outputs_b;
    std::vector<char> accepts; // row-major (x_a, x_b, y_a, y_b)

    bool relation(int xa, int xb, int ya, int yb) const {
        return accepts[((static_cast<std::size_t>(xa) * inputs_b.size() + xb) *
                            outputs_a.size() + ya) * outputs_b.size() + yb] != 0;
    }
    Scenario scenario() const;
    void validate() const;
};

/// Entanglement-assisted strategy: one measurement per input, outcomes
/// labeled by game output indices.
struct QuantumStrategy {
    StateVector shared_state;
    std::vector<ProjectiveMeasurement> meas_a;
    std::vector<ProjectiveMeasurement> meas_b;
};

Game game_from_relation(std::string name, std::vector<std::string> inputs_a,
                        std::vector<std::string> inputs_b, std::vector<std::string> outputs_a,
                        std::vector<std::string> outputs_b,
                        const std::function<bool(int, int, int, int)>& rel);

/// Uniform distribution over the game's input pairs.
std::vector<Rational> uniform_input_dist(const Game& g);

struct ClassicalValue {
    Rational value;                // max winning probability without communication
    DeterministicStrategy best;   // lexicographically first maximizer
};

/// Exact optimum over deterministic strategies; shared randomness cannot
/// beat it, so this is the LHV value of the game.
ClassicalValue classical_value(const Game& g, const std::vector<Rational>& input_dist = {});

/// Behavior the strategy induces over the game's full output sets.
Behavior game_behavior(const Game& g, const QuantumStrategy& qs);

double quantum_win_probability(const Game& g, const QuantumStrategy& qs,
                               const std::vector<Rational>& input_dist = {});

/// True iff on every input pair the probability of answering outside the
/// relation stays below eps.
bool is_winning_strategy(const Game& g, const QuantumStrategy& qs, double eps = kEpsProb);

/// Bell expression with c(x,y,a,b) = input_dist(x,y) on accepted tuples and
/// 0 elsewhere; its exact LHV bound equals the game's classical value, and
/// a winning quantum strategy attains the algebraic maximum 1.
BellExpression game_to_bell_expression(const Game& g,
                                       const std::vector<Rational>& input_dist = {});

/// The Magic Square game: each party receives a trit, answers three bits;
/// Alice's bits must have even sum, Bob's odd sum, and they must agree at
/// the (x_b, x_a) intersection. Outputs are all eight bit strings; parity
/// is enforced by the relation.
Game magic_square();

/// CHSH as a game: single-bit answers must satisfy a xor b = x and y.
Game chsh_game();

/// Two shared maximally entangled qubit pairs plus the nine two-qubit
/// observables arranged so rows multiply to +I and columns to -I. The
/// construction is certified by is_winning_strategy at run time rather
/// than assumed correct.
QuantumStrategy magic_square_quantum();

struct ParityTableCensus {
    int both = 0;      // rows even and columns odd
    int rows_even = 0;
    int cols_odd = 0;
};

/// Exhaustive scan of all 512 binary 3x3 tables for the parity conditions
/// a shared classical table would need.
ParityTableCensus parity_table_search();

}  // namespace nonloc
