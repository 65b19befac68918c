#include "nonloc/games.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace nonloc {

Scenario Game::scenario() const {
    return {static_cast<int>(inputs_a.size()), static_cast<int>(inputs_b.size()),
            static_cast<int>(outputs_a.size()), static_cast<int>(outputs_b.size())};
}

void Game::validate() const {
    if (inputs_a.empty() || inputs_b.empty() || outputs_a.empty() || outputs_b.empty())
        throw ValidationError("game label sets must be nonempty");
    scenario().validate();
    if (accepts.size() != scenario().table_size())
        throw ValidationError("game relation must be tabulated over the full input/output product");
}

Game game_from_relation(std::string name, std::vector<std::string> inputs_a,
                        std::vector<std::string> inputs_b, std::vector<std::string> outputs_a,
                        std::vector<std::string> outputs_b,
                        const std::function<bool(int, int, int, int)>& rel) {
    Game g;
    g.name = std::move(name);
    g.inputs_a = std::move(inputs_a);
    g.inputs_b = std::move(inputs_b);
    g.outputs_a = std::move(outputs_a);
    g.outputs_b = std::move(outputs_b);
    g.accepts.assign(g.scenario().table_size(), 0);
    std::size_t i = 0;
    for (std::size_t xa = 0; xa < g.inputs_a.size(); ++xa)
        for (std::size_t xb = 0; xb < g.inputs_b.size(); ++xb)
            for (std::size_t ya = 0; ya < g.outputs_a.size(); ++ya)
                for (std::size_t yb = 0; yb < g.outputs_b.size(); ++yb)
                    g.accepts[i++] = rel(static_cast<int>(xa), static_cast<int>(xb),
                                         static_cast<int>(ya), static_cast<int>(yb));
    g.validate();
    return g;
}

std::vector<Rational> uniform_input_dist(const Game& g) {
    std::size_t pairs = g.inputs_a.size() * g.inputs_b.size();
    return std::vector<Rational>(pairs, Rational(1, static_cast<long>(pairs)));
}

namespace {

std::vector<Rational> checked_dist(const Game& g, const std::vector<Rational>& input_dist) {
    std::vector<Rational> dist = input_dist.empty() ? uniform_input_dist(g) : input_dist;
    if (dist.size() != g.inputs_a.size() * g.inputs_b.size())
        throw ValidationError("input distribution needs one weight per input pair");
    Rational sum(0);
    for (const Rational& w : dist) {
        if (w < 0) throw ValidationError("input distribution weights must be >= 0");
        sum += w;
    }
    if (sum != 1) throw ValidationError("input distribution must sum to exactly 1");
    return dist;
}

}  // namespace

ClassicalValue classical_value(const Game& g, const std::vector<Rational>& input_dist) {
    g.validate();
    std::vector<Rational> dist = checked_dist(g, input_dist);
    const Scenario sc = g.scenario();
    const std::size_t nb = g.inputs_b.size();

    // Integer win weights over the common denominator of the input
    // distribution, so each strategy costs only int64 additions.
    BigInt denom(1);
    for (const Rational& w : dist) denom = lcm(denom, denominator(w));
    std::vector<long long> weight(dist.size());
    bool fits = denom <= BigInt(std::numeric_limits<long long>::max() / (dist.size() + 1));
    if (fits)
        for (std::size_t i = 0; i < dist.size(); ++i)
            weight[i] = (numerator(dist[i]) * (denom / denominator(dist[i]))).convert_to<long long>();

    ClassicalValue out;
    bool have = false;
    if (fits) {
        long long best = 0;
        for_each_deterministic(sc, [&](const DeterministicStrategy& d) {
            long long v = 0;
            for (std::size_t xa = 0; xa < g.inputs_a.size(); ++xa)
                for (std::size_t xb = 0; xb < nb; ++xb)
                    if (g.relation(static_cast<int>(xa), static_cast<int>(xb),
                                   d.map_a[xa], d.map_b[xb]))
                        v += weight[xa * nb + xb];
            if (!have || v > best) {
                have = true;
                best = v;
                out.best = d;
            }
        });
        out.value = Rational(BigInt(best), denom);
    } else {
        for_each_deterministic(sc, [&](const DeterministicStrategy& d) {
            Rational v(0);
            for (std::size_t xa = 0; xa < g.inputs_a.size(); ++xa)
                for (std::size_t xb = 0; xb < nb; ++xb)
                    if (g.relation(static_cast<int>(xa), static_cast<int>(xb),
                                   d.map_a[xa], d.map_b[xb]))
                        v += dist[xa * nb + xb];
            if (!have || v > out.value) {
                have = true;
                out.value = v;
                out.best = d;
            }
        });
    }
    return out;
}

Behavior game_behavior(const Game& g, const QuantumStrategy& qs) {
    g.validate();
    if (qs.meas_a.size() != g.inputs_a.size() || qs.meas_b.size() != g.inputs_b.size())
        throw ValidationError("strategy needs one measurement per game input");
    for (const auto& m : qs.meas_a)
        if (m.max_label() > static_cast<int>(g.outputs_a.size()))
            throw ValidationError("Alice measurement labels outside the game's output set");
    for (const auto& m : qs.meas_b)
        if (m.max_label() > static_cast<int>(g.outputs_b.size()))
            throw ValidationError("Bob measurement labels outside the game's output set");
    return behavior_from_quantum(qs.shared_state, qs.meas_a, qs.meas_b,
                                 static_cast<int>(g.outputs_a.size()),
                                 static_cast<int>(g.outputs_b.size()));
}

double quantum_win_probability(const Game& g, const QuantumStrategy& qs,
                               const std::vector<Rational>& input_dist) {
    std::vector<Rational> dist = checked_dist(g, input_dist);
    Behavior beh = game_behavior(g, qs);
    const std::size_t nb = g.inputs_b.size();
    double win = 0.0;
    for (std::size_t xa = 0; xa < g.inputs_a.size(); ++xa)
        for (std::size_t xb = 0; xb < nb; ++xb) {
            double mass = 0.0;
            for (std::size_t ya = 0; ya < g.outputs_a.size(); ++ya)
                for (std::size_t yb = 0; yb < g.outputs_b.size(); ++yb)
                    if (g.relation(static_cast<int>(xa), static_cast<int>(xb),
                                   static_cast<int>(ya), static_cast<int>(yb)))
                        mass += beh.at(static_cast<int>(xa), static_cast<int>(xb),
                                       static_cast<int>(ya), static_cast<int>(yb));
            win += dist[xa * nb + xb].convert_to<double>() * mass;
        }
    return win;
}

bool is_winning_strategy(const Game& g, const QuantumStrategy& qs, double eps) {
    Behavior beh = game_behavior(g, qs);
    for (std::size_t xa = 0; xa < g.inputs_a.size(); ++xa)
        for (std::size_t xb = 0; xb < g.inputs_b.size(); ++xb) {
            double losing = 0.0;
            for (std::size_t ya = 0; ya < g.outputs_a.size(); ++ya)
                for (std::size_t yb = 0; yb < g.outputs_b.size(); ++yb)
                    if (!g.relation(static_cast<int>(xa), static_cast<int>(xb),
                                    static_cast<int>(ya), static_cast<int>(yb)))
                        losing += beh.at(static_cast<int>(xa), static_cast<int>(xb),
                                         static_cast<int>(ya), static_cast<int>(yb));
            if (losing >= eps) return false;
        }
    return true;
}

BellExpression game_to_bell_expression(const Game& g, const std::vector<Rational>& input_dist) {
    g.validate();
    std::vector<Rational> dist = checked_dist(g, input_dist);
    BellExpression e;
    e.scenario = g.scenario();
    e.description = "win functional of game '" + g.name + "'";
    e.coeffs.assign(e.scenario.table_size(), Rational(0));
    const std::size_t nb = g.inputs_b.size();
    for (int xa = 0; xa < e.scenario.inputs_a; ++xa)
        for (int xb = 0; xb < e.scenario.inputs_b; ++xb)
            for (int ya = 0; ya < e.scenario.outputs_a; ++ya)
                for (int yb = 0; yb < e.scenario.outputs_b; ++yb)
                    if (g.relation(xa, xb, ya, yb))
                        e.coeffs[e.scenario.index(xa, xb, ya, yb)] = dist[xa * nb + xb];
    return e;
}

namespace {

// Three-bit outputs: bit k of label i is (i >> (2 - k)) & 1, so the label
// string reads y1 y2 y3 left to right.
int bit_of(int idx, int pos) { return (idx >> (2 - pos)) & 1; }

std::vector<std::string> three_bit_labels() {
    std::vector<std::string> l;
    for (int i = 0; i < 8; ++i) {
        std::string s;
        for (int k = 0; k < 3; ++k) s += static_cast<char>('0' + bit_of(i, k));
        l.push_back(s);
    }
    return l;
}

}  // namespace

Game magic_square() {
    auto labels = three_bit_labels();
    return game_from_relation(
        "magic-square", {"0", "1", "2"}, {"0", "1", "2"}, labels, labels,
        [](int xa, int xb, int ya, int yb) {
            int row_sum = bit_of(ya, 0) + bit_of(ya, 1) + bit_of(ya, 2);
            int col_sum = bit_of(yb, 0) + bit_of(yb, 1) + bit_of(yb, 2);
            return row_sum % 2 == 0 && col_sum % 2 == 1 && bit_of(ya, xb) == bit_of(yb, xa);
        });
}

Game chsh_game() {
    return game_from_relation("chsh-game", {"0", "1"}, {"0", "1"}, {"0", "1"}, {"0", "1"},
                              [](int x, int y, int a, int b) { return (a ^ b) == (x & y); });
}

QuantumStrategy magic_square_quantum() {
    const Operator I2 = identity_op(2);
    const Operator X = pauli_x(), Y = pauli_y(), Z = pauli_z();

    // Two-qubit observable grid: rows multiply to +I, columns to -I, and
    // every entry is invariant under transposition, so measuring the same
    // observable on both halves of |Phi> = sum_i |ii>/2 gives equal
    // outcomes with certainty.
    Operator grid[3][3] = {
        {tensor_op(I2, Z), tensor_op(Z, I2), tensor_op(Z, Z)},
        {tensor_op(X, I2), tensor_op(I2, X), tensor_op(X, X)},
        {op_scale(-1.0, tensor_op(X, Z)), op_scale(-1.0, tensor_op(Z, X)), tensor_op(Y, Y)},
    };

    const Operator I4 = identity_op(4);
    auto eigen_projector = [&](const Operator& o, int sign) {
        return op_scale(0.5, sign > 0 ? op_add(I4, o) : op_sub(I4, o));
    };
    auto label_of = [](int b1, int b2, int b3) { return b1 * 4 + b2 * 2 + b3; };
    auto bit = [](int sign) { return sign > 0 ? 0 : 1; };

    QuantumStrategy qs;
    qs.shared_state.dims = {4, 4};
    qs.shared_state.amplitudes.assign(16, Complex(0, 0));
    for (int i = 0; i < 4; ++i) qs.shared_state.amplitudes[i * 4 + i] = 0.5;

    for (int r = 0; r < 3; ++r) {
        // Alice measures row r jointly; the third eigenvalue is the
        // product of the first two, giving her the even-parity answer.
        ProjectiveMeasurement m;
        m.dim = 4;
        for (int e1 : {1, -1})
            for (int e2 : {1, -1}) {
                m.projectors.push_back(
                    op_mul(eigen_projector(grid[r][0], e1), eigen_projector(grid[r][1], e2)));
                m.labels.push_back(label_of(bit(e1), bit(e2), bit(e1 * e2)));
            }
        m.validate();
        qs.meas_a.push_back(std::move(m));
    }
    for (int c = 0; c < 3; ++c) {
        // Bob measures column c; the third eigenvalue is minus the product
        // of the first two, giving the odd-parity answer.
        ProjectiveMeasurement m;
        m.dim = 4;
        for (int f1 : {1, -1})
            for (int f2 : {1, -1}) {
                m.projectors.push_back(
                    op_mul(eigen_projector(grid[0][c], f1), eigen_projector(grid[1][c], f2)));
                m.labels.push_back(label_of(bit(f1), bit(f2), bit(-f1 * f2)));
            }
        m.validate();
        qs.meas_b.push_back(std::move(m));
    }
    return qs;
}

ParityTableCensus parity_table_search() {
    ParityTableCensus census;
    for (int t = 0; t < 512; ++t) {
        auto cell = [&](int r, int c) { return (t >> (r * 3 + c)) & 1; };
        bool rows_even = true, cols_odd = true;
        for (int r = 0; r < 3; ++r)
            if ((cell(r, 0) + cell(r, 1) + cell(r, 2)) % 2 != 0) rows_even = false;
        for (int c = 0; c < 3; ++c)
            if ((cell(0, c) + cell(1, c) + cell(2, c)) % 2 != 1) cols_odd = false;
        census.rows_even += rows_even;
        census.cols_odd += cols_odd;
        census.both += rows_even && cols_odd;
    }
    return census;
}

}  // namespace nonloc
