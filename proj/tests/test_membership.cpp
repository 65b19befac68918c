#include <doctest.h>

#include <cmath>
#include <random>

#include "nonloc/catalog.hpp"
#include "nonloc/membership.hpp"

using namespace nonloc;

namespace {

// Known mixture of deterministic strategies; the oracle for round trips.
Behavior mixture_behavior(const Scenario& s, const std::vector<std::size_t>& picks,
                          const std::vector<double>& weights) {
    Behavior b;
    b.scenario = s;
    b.table.assign(s.table_size(), 0.0);
    auto all = enumerate_deterministic(s);
    for (std::size_t i = 0; i < picks.size(); ++i) {
        Behavior sb = strategy_behavior(s, all[picks[i]]);
        for (std::size_t j = 0; j < b.table.size(); ++j) b.table[j] += weights[i] * sb.table[j];
    }
    return b;
}

double tv(const std::vector<double>& p, const std::vector<Rational>& q) {
    double d = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i)
        d = std::max(d, std::abs(p[i] - q[i].convert_to<double>()));
    return d;
}

}  // namespace

TEST_CASE("rationalize recovers small fractions and clamps noise") {
    CHECK(rationalize(1.0 / 3.0) == Rational(1, 3));
    CHECK(rationalize(1.0 / 12.0) == Rational(1, 12));
    CHECK(rationalize(0.25) == Rational(1, 4));
    CHECK(rationalize(0.0) == Rational(0));
    CHECK(rationalize(3e-15) == Rational(0));
    CHECK(rationalize(-2.0 / 3.0) == Rational(-2, 3));
    CHECK(rationalize(1.0) == Rational(1));
}

TEST_CASE("rationalize_behavior returns exactly normalized rows") {
    Behavior b = chsh_quantum_behavior(); // irrational entries
    std::vector<Rational> t = rationalize_behavior(b);
    const std::size_t per_pair = 4;
    for (std::size_t pair = 0; pair < 4; ++pair) {
        Rational sum(0);
        for (std::size_t j = 0; j < per_pair; ++j) sum += t[pair * per_pair + j];
        CHECK(sum == Rational(1));
    }
    CHECK(tv(b.table, t) < 1e-10);
}

TEST_CASE("a deterministic behavior is feasible with weight one on itself") {
    Scenario s{2, 2, 2, 2};
    auto all = enumerate_deterministic(s);
    for (std::size_t k : {std::size_t(0), std::size_t(7), std::size_t(15)}) {
        LocalMembership lm = local_membership(strategy_behavior(s, all[k]));
        REQUIRE(lm.feasible);
        CHECK(lm.weights[k] == Rational(1));
        for (std::size_t i = 0; i < lm.weights.size(); ++i)
            if (i != k) CHECK(lm.weights[i] == Rational(0));
    }
}

TEST_CASE("random strategy mixtures round-trip through the solver") {
    std::mt19937_64 gen(7201);
    Scenario s{2, 2, 2, 2};
    std::uniform_int_distribution<std::size_t> pick(0, 15);
    std::uniform_int_distribution<int> wt(1, 100);
    for (int trial = 0; trial < 40; ++trial) {
        std::vector<std::size_t> picks;
        std::vector<int> raw;
        int total = 0;
        for (int i = 0; i < 5; ++i) {
            picks.push_back(pick(gen));
            raw.push_back(wt(gen));
            total += raw.back();
        }
        std::vector<double> weights;
        for (int w : raw) weights.push_back(static_cast<double>(w) / total);
        Behavior b = mixture_behavior(s, picks, weights);

        LocalMembership lm = local_membership(b);
        REQUIRE(lm.feasible);
        std::vector<Rational> rebuilt = mixture_table(s, lm.weights);
        CHECK(tv(b.table, rebuilt) < 1e-9);

        Rational wsum(0);
        for (const Rational& w : lm.weights) {
            CHECK(w >= 0);
            wsum += w;
        }
        CHECK(wsum == Rational(1));
    }
}

TEST_CASE("the Hardy behavior lies outside the local polytope") {
    LocalMembership numeric = local_membership(hardy_behavior());
    CHECK(!numeric.feasible);
    CHECK(!numeric.exact_input);
    CHECK(numeric.gap > 0);

    LocalMembership exact = local_membership_exact({2, 2, 2, 2}, hardy_exact_table());
    CHECK(!exact.feasible);
    CHECK(exact.exact_input);
    CHECK(exact.gap > 0);
}

TEST_CASE("the quantum CHSH behavior lies outside the local polytope") {
    LocalMembership lm = local_membership(chsh_quantum_behavior());
    CHECK(!lm.feasible);
}

TEST_CASE("infeasibility comes with a valid separating certificate") {
    Scenario s{2, 2, 2, 2};
    std::vector<Rational> table = hardy_exact_table();
    LocalMembership lm = local_membership_exact(s, table);
    REQUIRE(!lm.feasible);
    REQUIRE(lm.certificate.size() == s.table_size() + 1);

    // y . column <= 0 for every strategy column, y . rhs = gap > 0.
    for_each_deterministic(s, [&](const DeterministicStrategy& d) {
        Rational dot(0);
        for (int x = 0; x < s.inputs_a; ++x)
            for (int y = 0; y < s.inputs_b; ++y)
                dot += lm.certificate[s.index(x, y, d.map_a[x], d.map_b[y])];
        dot += lm.certificate.back();
        CHECK(dot <= 0);
    });
    Rational value(0);
    for (std::size_t i = 0; i < table.size(); ++i) value += lm.certificate[i] * table[i];
    value += lm.certificate.back();
    CHECK(value == lm.gap);
    CHECK(value > 0);
}

TEST_CASE("behaviors judged feasible satisfy the CHSH inequality") {
    std::mt19937_64 gen(7202);
    Scenario s{2, 2, 2, 2};
    BellExpression chsh = chsh_expression();
    std::uniform_real_distribution<double> u(0.0, 1.0);
    int feasible_seen = 0;
    for (int trial = 0; trial < 60; ++trial) {
        std::vector<double> w(16);
        double total = 0.0;
        for (auto& x : w) total += x = u(gen);
        for (auto& x : w) x /= total;
        std::vector<std::size_t> picks(16);
        for (std::size_t i = 0; i < 16; ++i) picks[i] = i;
        Behavior b = mixture_behavior(s, picks, w);
        LocalMembership lm = local_membership(b);
        if (lm.feasible) {
            ++feasible_seen;
            CHECK(std::abs(evaluate_expression(chsh, b)) <= 2.0 + 1e-9);
        }
    }
    CHECK(feasible_seen == 60);
}

TEST_CASE("exact membership validates its input table") {
    Scenario s{2, 2, 2, 2};
    std::vector<Rational> bad(s.table_size(), Rational(1, 4));
    bad[0] = Rational(1, 2); // breaks exact normalization
    CHECK_THROWS_AS(local_membership_exact(s, bad), ValidationError);

    std::vector<Rational> neg(s.table_size(), Rational(1, 4));
    neg[0] = Rational(-1, 4);
    CHECK_THROWS_AS(local_membership_exact(s, neg), ValidationError);

    CHECK_THROWS_AS(local_membership_exact(s, std::vector<Rational>(3, Rational(0))),
                    ValidationError);
}

TEST_CASE("the membership tableau has its own size guard") {
    Scenario s{3, 3, 8, 8}; // 262144 strategies x 577 rows
    std::vector<Rational> t(s.table_size(), Rational(1, 64));
    CHECK_THROWS_AS(local_membership_exact(s, t), CapExceededError);
}

TEST_CASE("white noise is an even mixture of all strategies") {
    Scenario s{2, 2, 2, 2};
    Behavior b;
    b.scenario = s;
    b.table.assign(s.table_size(), 0.25);
    LocalMembership lm = local_membership(b);
    REQUIRE(lm.feasible);
    std::vector<Rational> rebuilt = mixture_table(s, lm.weights);
    for (std::size_t i = 0; i < rebuilt.size(); ++i) CHECK(rebuilt[i] == Rational(1, 4));
}
