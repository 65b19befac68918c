// Acceptance suite: every release-gating property of the library, one
// criterion per block, each printed as a single [PASS]/[FAIL] line with
// its measured runtime. Exits nonzero if anything fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "nonloc/catalog.hpp"
#include "nonloc/classify.hpp"
#include "nonloc/games.hpp"
#include "nonloc/membership.hpp"

using namespace nonloc;
using Clock = std::chrono::steady_clock;

namespace {

int g_failures = 0;

double ms_since(Clock::time_point start) {
    return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

void report(int id, const std::string& name, bool pass, const std::string& detail) {
    std::printf("[%s] criterion %2d: %s  (%s)\n", pass ? "PASS" : "FAIL", id, name.c_str(),
                detail.c_str());
    if (!pass) ++g_failures;
}

std::string ms_text(double elapsed, double limit) {
    std::ostringstream os;
    os.precision(3);
    os << elapsed << " ms, limit " << limit << " ms";
    return os.str();
}

StateVector random_state(std::mt19937_64& gen) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    StateVector s;
    s.dims = {2, 2};
    double norm2 = 0.0;
    for (int i = 0; i < 4; ++i) {
        Complex z(u(gen), u(gen));
        s.amplitudes.push_back(z);
        norm2 += std::norm(z);
    }
    for (auto& z : s.amplitudes) z /= std::sqrt(norm2);
    return s;
}

ProjectiveMeasurement random_bloch(std::mt19937_64& gen) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    while (true) {
        double x = u(gen), y = u(gen), z = u(gen);
        double n = std::sqrt(x * x + y * y + z * z);
        if (n > 0.1) return bloch_measurement(x / n, y / n, z / n);
    }
}

Behavior random_mixture(std::mt19937_64& gen, const Scenario& s, int support_size) {
    std::uniform_int_distribution<std::uint64_t> pick(0, s.strategy_count() - 1);
    std::uniform_int_distribution<int> wt(1, 100);
    auto all = enumerate_deterministic(s);
    std::vector<double> weights(all.size(), 0.0);
    int total = 0;
    std::vector<std::pair<std::size_t, int>> raw;
    for (int i = 0; i < support_size; ++i) {
        raw.emplace_back(pick(gen), wt(gen));
        total += raw.back().second;
    }
    Behavior b;
    b.scenario = s;
    b.table.assign(s.table_size(), 0.0);
    for (auto [k, w] : raw) {
        Behavior sb = strategy_behavior(s, all[k]);
        for (std::size_t j = 0; j < b.table.size(); ++j)
            b.table[j] += sb.table[j] * (static_cast<double>(w) / total);
    }
    return b;
}

void criterion_1() {
    BellExpression chsh = chsh_expression();
    auto t0 = Clock::now();
    LhvBound r = lhv_bound(chsh);
    double ms = ms_since(t0);
    std::uint64_t count = chsh.scenario.strategy_count();
    bool pass = r.bound == Rational(2) && count == 16 && ms < 1.0;
    std::ostringstream os;
    os << "bound = " << r.bound << " over " << count << " strategies, " << ms_text(ms, 1);
    report(1, "CHSH classical bound is exactly 2", pass, os.str());
}

void criterion_2() {
    auto t0 = Clock::now();
    Behavior quantum = chsh_quantum_behavior();
    double value = evaluate_expression(chsh_expression(), quantum);
    double ms = ms_since(t0);
    double target = 2.0 * std::sqrt(2.0);
    bool pass = std::abs(std::abs(value) - target) <= 1e-9 && ms < 10.0;
    std::ostringstream os;
    os.precision(15);
    os << "|value| = " << std::abs(value) << " vs 2*sqrt(2) = " << target << ", "
       << ms_text(ms, 10);
    report(2, "CHSH quantum value reaches 2*sqrt(2) within 1e-9", pass, os.str());
}

void criterion_3() {
    Behavior h = hardy_behavior();
    double p1 = h.at(1, 1, 1, 1);
    double z1 = h.at(1, 0, 1, 1);
    double z2 = h.at(0, 1, 1, 1);
    double z3 = h.at(0, 0, 0, 0);
    bool pass = std::abs(p1 - 1.0 / 12) <= 1e-12 && std::abs(z1) <= 1e-12 &&
                std::abs(z2) <= 1e-12 && std::abs(z3) <= 1e-12;
    std::ostringstream os;
    os.precision(15);
    os << "p(-,-|x,x) = " << p1 << ", zeros = {" << z1 << ", " << z2 << ", " << z3 << "}";
    report(3, "Hardy probabilities: 1/12 and three exact zeros at 1e-12", pass, os.str());
}

void criterion_4() {
    auto t0 = Clock::now();
    NoGoVerdict v = classify(hardy_behavior());
    LocalMembership exact = local_membership_exact({2, 2, 2, 2}, hardy_exact_table());
    double ms = ms_since(t0);
    bool pass = v.violates_locality && v.btwi && !v.pt && !exact.feasible && ms < 1000.0;
    std::ostringstream os;
    os << "verdict = (" << v.violates_locality << "," << v.btwi << "," << v.pt
       << "), exact membership gap = " << exact.gap << ", " << ms_text(ms, 1000);
    report(4, "Hardy classifies as (locality-violating, BTWI, not PT)", pass, os.str());
}

void criterion_5() {
    auto t0 = Clock::now();
    ParityTableCensus census = parity_table_search();
    double ms = ms_since(t0);
    bool pass = census.both == 0 && ms < 1.0;
    std::ostringstream os;
    os << "valid tables = " << census.both << " of 512, " << ms_text(ms, 1);
    report(5, "no 3x3 table has even rows and odd columns", pass, os.str());
}

void criterion_6() {
    auto t0 = Clock::now();
    Game g = magic_square();
    ClassicalValue cv = classical_value(g);
    QuantumStrategy qs = magic_square_quantum();
    Behavior beh = game_behavior(g, qs);

    bool all_pairs_win = true;
    for (int xa = 0; xa < 3 && all_pairs_win; ++xa)
        for (int xb = 0; xb < 3 && all_pairs_win; ++xb) {
            double win = 0.0;
            for (int ya = 0; ya < 8; ++ya)
                for (int yb = 0; yb < 8; ++yb)
                    if (g.relation(xa, xb, ya, yb)) win += beh.at(xa, xb, ya, yb);
            all_pairs_win = std::abs(win - 1.0) <= 1e-9;
        }
    bool pt = is_pseudotelepathic(support_of(beh)).holds;
    double ms = ms_since(t0);
    bool pass = cv.value == Rational(8, 9) && all_pairs_win && pt && ms < 5000.0;
    std::ostringstream os;
    os << "classical = " << cv.value << ", all 9 pairs win within 1e-9 = " << all_pairs_win
       << ", PT = " << pt << ", " << ms_text(ms, 5000);
    report(6, "Magic Square: classical 8/9, quantum 1, pseudo-telepathic", pass, os.str());
}

void criterion_7() {
    auto t0 = Clock::now();
    std::mt19937_64 gen(424242);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const Scenario s{2, 2, 2, 2};
    int hierarchy_violations = 0;
    int feasible_btwi = 0;
    int total = 0;
    for (int trial = 0; trial < 1000; ++trial) {
        Behavior b;
        if (trial % 10 < 4) {
            b = random_mixture(gen, s, 1 + trial % 6);
        } else if (trial % 10 < 7) {
            b = behavior_from_quantum(random_state(gen), {random_bloch(gen), random_bloch(gen)},
                                      {random_bloch(gen), random_bloch(gen)});
        } else {
            b = behavior_from_quantum(random_state(gen), {random_bloch(gen), random_bloch(gen)},
                                      {random_bloch(gen), random_bloch(gen)});
            double v = 0.3 + 0.69 * u(gen);
            for (auto& p : b.table) p = v * p + (1.0 - v) * 0.25;
        }
        NoGoVerdict verdict = classify(b);
        if ((verdict.pt && !verdict.btwi) || (verdict.btwi && !verdict.violates_locality))
            ++hierarchy_violations;
        LocalMembership lm = local_membership(b);
        bool btwi = is_btwi(support_of(b)).holds;
        if (lm.feasible && btwi) ++feasible_btwi;
        ++total;
    }
    double ms = ms_since(t0);
    bool pass = total >= 1000 && hierarchy_violations == 0 && feasible_btwi == 0 && ms < 60000.0;
    std::ostringstream os;
    os << total << " behaviors, hierarchy violations = " << hierarchy_violations
       << ", feasible-and-BTWI = " << feasible_btwi << ", " << ms_text(ms, 60000);
    report(7, "PT => BTWI => nonlocal holds across 1000 generated behaviors", pass, os.str());
}

void criterion_8() {
    auto t0 = Clock::now();
    std::mt19937_64 gen(515151);
    const Scenario s{2, 2, 2, 2};
    int failures = 0;
    double worst_tv = 0.0;
    for (int trial = 0; trial < 200; ++trial) {
        Behavior b = random_mixture(gen, s, 2 + trial % 7);
        LocalMembership lm = local_membership(b);
        if (!lm.feasible) {
            ++failures;
            continue;
        }
        std::vector<Rational> rebuilt = mixture_table(s, lm.weights);
        double tv = 0.0;
        for (std::size_t i = 0; i < b.table.size(); ++i)
            tv = std::max(tv, std::abs(b.table[i] - rebuilt[i].convert_to<double>()));
        worst_tv = std::max(worst_tv, tv);
        if (tv > 1e-9) ++failures;
    }
    double ms = ms_since(t0);
    bool pass = failures == 0;
    std::ostringstream os;
    os.precision(3);
    os << "200 mixtures, failures = " << failures << ", worst deviation = " << worst_tv << ", "
       << ms_text(ms, 60000);
    report(8, "strategy mixtures are feasible and reconstruct within 1e-9", pass, os.str());
}

void criterion_9() {
    auto t0 = Clock::now();
    std::mt19937_64 gen(616161);
    std::uniform_int_distribution<int> coin(0, 1);
    int mismatches = 0;
    int games = 0;

    auto check = [&](const Game& g) {
        if (lhv_bound(game_to_bell_expression(g)).bound != classical_value(g).value)
            ++mismatches;
        ++games;
    };
    check(magic_square());
    check(chsh_game());
    for (int trial = 0; trial < 20; ++trial) {
        int na = 1 + coin(gen), nb = 1 + coin(gen);
        int oa = 1 + coin(gen), ob = 1 + coin(gen);
        std::vector<char> rel(std::size_t(na) * nb * oa * ob);
        for (auto& r : rel) r = static_cast<char>(coin(gen));
        std::vector<std::string> la, lb, oa_l, ob_l;
        for (int i = 0; i < na; ++i) la.push_back(std::to_string(i));
        for (int i = 0; i < nb; ++i) lb.push_back(std::to_string(i));
        for (int i = 0; i < oa; ++i) oa_l.push_back(std::to_string(i));
        for (int i = 0; i < ob; ++i) ob_l.push_back(std::to_string(i));
        check(game_from_relation("random", la, lb, oa_l, ob_l,
                                 [&](int xa, int xb, int ya, int yb) {
                                     return rel[((std::size_t(xa) * nb + xb) * oa + ya) * ob +
                                                yb] != 0;
                                 }));
    }
    double ms = ms_since(t0);
    bool pass = mismatches == 0 && games == 22;
    std::ostringstream os;
    os << games << " games, exact mismatches = " << mismatches << ", " << ms_text(ms, 60000);
    report(9, "classical game value equals the LHV bound of its expression", pass, os.str());
}

void criterion_10() {
    auto t0 = Clock::now();
    Behavior quantum = chsh_quantum_behavior();
    SimulationResult sim = simulate_rounds(quantum, 100000, 31337);
    double chsh = 0.0, var = 0.0;
    for (int x = 0; x < 2; ++x)
        for (int y = 0; y < 2; ++y) {
            double corr = 0.0;
            for (int a = 0; a < 2; ++a)
                for (int b = 0; b < 2; ++b)
                    corr += ((a == b) ? 1.0 : -1.0) * sim.frequency(x, y, a, b);
            chsh += ((x == 1 && y == 1) ? -1.0 : 1.0) * corr;
            var += (1.0 - corr * corr) /
                   static_cast<double>(sim.pair_totals[std::size_t(x) * 2 + y]);
        }
    double se = std::sqrt(var);
    double ms = ms_since(t0);
    double target = 2.0 * std::sqrt(2.0);
    bool pass = std::abs(chsh - target) <= 3.0 * se && chsh > 2.0 && ms < 5000.0;
    std::ostringstream os;
    os.precision(6);
    os << "empirical = " << chsh << " +/- " << se << " (3 SE band around " << target << "), "
       << ms_text(ms, 5000);
    report(10, "10^5 sampled rounds land within 3 SE of 2*sqrt(2), above 2", pass, os.str());
}

}  // namespace

int main() {
    criterion_1();
    criterion_2();
    criterion_3();
    criterion_4();
    criterion_5();
    criterion_6();
    criterion_7();
    criterion_8();
    criterion_9();
    criterion_10();
    if (g_failures > 0) {
        std::printf("%d criterion(s) failed\n", g_failures);
        return 1;
    }
    std::printf("all 10 criteria passed\n");
    return 0;
}
