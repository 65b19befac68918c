#include "nonloc/membership.hpp"

#include <cmath>
#include <sstream>

namespace nonloc {

Rational rationalize(double x, double tol) {
    if (!std::isfinite(x)) throw ValidationError("cannot rationalize a non-finite value");
    if (!(tol > 0)) throw ValidationError("rationalization tolerance must be positive");
    bool neg = x < 0;
    double v = neg ? -x : x;
    if (v <= tol) return Rational(0);

    // Continued-fraction convergents p/q of v; stop at the first one
    // within tol.
    BigInt p0 = 1, q0 = 0;       // h_{-1}/k_{-1}
    double r = v;
    BigInt a0 = BigInt(std::floor(r));
    BigInt p1 = a0, q1 = 1;      // h_0/k_0
    for (int it = 0; it < 64; ++it) {
        double approx = p1.convert_to<double>() / q1.convert_to<double>();
        if (std::abs(approx - v) <= tol) break;
        double frac = r - std::floor(r);
        if (frac < 1e-18) break;
        r = 1.0 / frac;
        BigInt a = BigInt(std::floor(r));
        BigInt p2 = a * p1 + p0;
        BigInt q2 = a * q1 + q0;
        p0 = p1; q0 = q1; p1 = p2; q1 = q2;
    }
    Rational out(p1, q1);
    return neg ? -out : out;
}

std::vector<Rational> rationalize_behavior(const Behavior& b, double tol) {
    b.validate();
    std::vector<Rational> table(b.table.size());
    for (std::size_t i = 0; i < b.table.size(); ++i) {
        Rational r = rationalize(b.table[i], tol);
        if (r < 0) r = 0; // validated entries below -tol never get here
        table[i] = r;
    }
    const Scenario& s = b.scenario;
    const std::size_t per_pair = std::size_t(s.outputs_a) * s.outputs_b;
    for (std::size_t pair = 0; pair < s.pair_count(); ++pair) {
        Rational sum(0);
        for (std::size_t j = 0; j < per_pair; ++j) sum += table[pair * per_pair + j];
        if (sum == 0) throw ValidationError("rationalized setting pair has zero mass");
        if (sum != 1)
            for (std::size_t j = 0; j < per_pair; ++j) table[pair * per_pair + j] /= sum;
    }
    return table;
}

namespace {

// Exact L1-projection LP, phase-1 style with Bland's rule.
//
// Minimizes ||A w - b||_1 over w >= 0 by splitting each residual into a
// nonnegative surplus/deficit pair (columns [original | plus | minus],
// plus_i starting basic since b >= 0). The optimum is zero exactly when
// A w = b is feasible; otherwise it is the L1 distance from b to the cone
// section, and the dual values form a separating certificate.
struct L1Feasibility {
    std::size_t m, n;                       // rows, original columns
    std::vector<std::vector<Rational>> tab; // m rows of n + 2m entries
    std::vector<Rational> rhs;
    std::vector<Rational> red;              // reduced-cost row
    Rational objective;                     // current L1 residual
    std::vector<std::size_t> basis;

    L1Feasibility(std::vector<std::vector<Rational>> a, std::vector<Rational> b)
        : m(a.size()), n(a.empty() ? 0 : a[0].size()), tab(std::move(a)), rhs(std::move(b)) {
        for (std::size_t i = 0; i < m; ++i) {
            tab[i].resize(n + 2 * m, Rational(0));
            tab[i][n + i] = 1;
            tab[i][n + m + i] = -1;
        }
        basis.resize(m);
        red.assign(n + 2 * m, Rational(0));
        objective = 0;
        for (std::size_t i = 0; i < m; ++i) {
            basis[i] = n + i;
            objective += rhs[i];
            red[n + m + i] = 2; // deficit column against the initial duals
            for (std::size_t j = 0; j < n; ++j) red[j] -= tab[i][j];
        }
    }

    void pivot(std::size_t prow, std::size_t pcol) {
        Rational inv = Rational(1) / tab[prow][pcol];
        for (auto& e : tab[prow]) e *= inv;
        rhs[prow] *= inv;
        for (std::size_t i = 0; i < m; ++i) {
            if (i == prow || tab[i][pcol] == 0) continue;
            Rational f = tab[i][pcol];
            for (std::size_t j = 0; j < n + 2 * m; ++j) tab[i][j] -= f * tab[prow][j];
            rhs[i] -= f * rhs[prow];
        }
        if (red[pcol] != 0) {
            Rational f = red[pcol];
            for (std::size_t j = 0; j < n + 2 * m; ++j) red[j] -= f * tab[prow][j];
            objective += f * rhs[prow];
        }
        basis[prow] = pcol;
    }

    void solve() {
        // Bland: lowest-index entering column, lowest basic index among
        // tied leaving rows. Terminates without cycling.
        const std::size_t pivot_guard = 50 * (n + 2 * m) * (m + 1);
        for (std::size_t step = 0; step <= pivot_guard; ++step) {
            std::size_t pcol = n + 2 * m;
            for (std::size_t j = 0; j < n + 2 * m; ++j)
                if (red[j] < 0) { pcol = j; break; }
            if (pcol == n + 2 * m) return; // optimal

            std::size_t prow = m;
            Rational best;
            for (std::size_t i = 0; i < m; ++i) {
                if (tab[i][pcol] <= 0) continue;
                Rational ratio = rhs[i] / tab[i][pcol];
                if (prow == m || ratio < best ||
                    (ratio == best && basis[i] < basis[prow])) {
                    prow = i;
                    best = ratio;
                }
            }
            if (prow == m)
                throw ValidationError("L1 projection unbounded; inconsistent tableau");
            pivot(prow, pcol);
        }
        throw ValidationError("simplex exceeded its pivot guard");
    }
};

LocalMembership solve_membership(const Scenario& s, const std::vector<Rational>& table,
                                 const MembershipOptions& opts, const Rational& threshold) {
    s.validate();
    if (table.size() != s.table_size())
        throw ValidationError("rational table size does not match the scenario");
    for (const Rational& p : table)
        if (p < 0 || p > 1) throw ValidationError("rational table entry outside [0, 1]");
    const std::size_t per_pair = std::size_t(s.outputs_a) * s.outputs_b;
    for (std::size_t pair = 0; pair < s.pair_count(); ++pair) {
        Rational sum(0);
        for (std::size_t j = 0; j < per_pair; ++j) sum += table[pair * per_pair + j];
        if (sum != 1)
            throw ValidationError("membership needs exactly normalized setting pairs");
    }

    const std::uint64_t nstrat = s.strategy_count();
    const std::size_t rows = s.table_size() + 1; // equalities + weight sum
    long double cells =
        static_cast<long double>(rows) * (static_cast<long double>(nstrat) + 2.0L * rows);
    if (nstrat > enum_cap() || cells > static_cast<long double>(opts.max_tableau_cells)) {
        std::ostringstream os;
        os << "membership tableau of " << nstrat << " strategy columns x " << rows
           << " rows exceeds the configured limit";
        throw CapExceededError(os.str());
    }

    // One column per deterministic strategy: its 0/1 behavior plus a 1 in
    // the weight-sum row.
    std::vector<std::vector<Rational>> a(rows, std::vector<Rational>(nstrat, Rational(0)));
    std::size_t col = 0;
    for_each_deterministic(s, [&](const DeterministicStrategy& d) {
        for (int x = 0; x < s.inputs_a; ++x)
            for (int y = 0; y < s.inputs_b; ++y)
                a[s.index(x, y, d.map_a[x], d.map_b[y])][col] = 1;
        a[rows - 1][col] = 1;
        ++col;
    });
    std::vector<Rational> rhs(table.begin(), table.end());
    rhs.push_back(Rational(1));

    L1Feasibility lp(std::move(a), std::move(rhs));
    lp.solve();

    LocalMembership out;
    out.gap = lp.objective;
    out.feasible = lp.objective <= threshold;
    if (out.feasible) {
        out.weights.assign(nstrat, Rational(0));
        Rational wsum(0);
        for (std::size_t i = 0; i < lp.m; ++i)
            if (lp.basis[i] < lp.n) wsum += out.weights[lp.basis[i]] = lp.rhs[i];
        // A nonzero (sub-threshold) gap can leave the weights summing to
        // 1 - O(gap); rescale so they are a convex combination.
        if (wsum != 1 && wsum > 0)
            for (auto& w : out.weights) w /= wsum;
    } else {
        // Separating functional from the optimal duals, y_i = 1 - red[plus_i]:
        // y . strategy_column <= 0 for all strategies, y . b = gap > 0, and
        // every |y_i| <= 1.
        out.certificate.resize(rows);
        for (std::size_t i = 0; i < rows; ++i)
            out.certificate[i] = Rational(1) - lp.red[lp.n + i];
    }
    return out;
}

}  // namespace

std::vector<Rational> mixture_table(const Scenario& s, const std::vector<Rational>& weights) {
    std::vector<Rational> table(s.table_size(), Rational(0));
    std::size_t k = 0;
    for_each_deterministic(s, [&](const DeterministicStrategy& d) {
        const Rational& w = weights[k++];
        if (w == 0) return;
        for (int x = 0; x < s.inputs_a; ++x)
            for (int y = 0; y < s.inputs_b; ++y)
                table[s.index(x, y, d.map_a[x], d.map_b[y])] += w;
    });
    return table;
}

LocalMembership local_membership_exact(const Scenario& s, const std::vector<Rational>& table,
                                       const MembershipOptions& opts) {
    LocalMembership out = solve_membership(s, table, opts, Rational(0));
    out.exact_input = true;
    return out;
}

LocalMembership local_membership(const Behavior& b, const MembershipOptions& opts) {
    std::vector<Rational> table = rationalize_behavior(b, opts.rationalize_tol);
    // Rationalizing perturbs each row entry by up to ~2x the tolerance, so
    // the acceptance band must cover that on top of the caller's slack.
    Rational threshold =
        std::max(rationalize(opts.feasibility_tol, 1e-15),
                 Rational(8 * (b.scenario.table_size() + 1)) *
                     rationalize(opts.rationalize_tol, 1e-18));
    LocalMembership out = solve_membership(b.scenario, table, opts, threshold);
    out.exact_input = false;
    return out;
}

}  // namespace nonloc
