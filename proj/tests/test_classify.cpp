#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "nonloc/catalog.hpp"
#include "nonloc/classify.hpp"

using namespace nonloc;

namespace {

SupportTable full_support(const Scenario& s) {
    SupportTable t;
    t.scenario = s;
    t.possible.assign(s.table_size(), 1);
    return t;
}

Behavior mixture(const Scenario& s, const std::vector<double>& weights) {
    Behavior b;
    b.scenario = s;
    b.table.assign(s.table_size(), 0.0);
    std::size_t k = 0;
    for_each_deterministic(s, [&](const DeterministicStrategy& d) {
        double w = weights[k++];
        for (int x = 0; x < s.inputs_a; ++x)
            for (int y = 0; y < s.inputs_b; ++y) b.at(x, y, d.map_a[x], d.map_b[y]) += w;
    });
    return b;
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

}  // namespace

TEST_CASE("Hardy's support admits respecting strategies but not full coverage") {
    SupportTable support = support_of(hardy_behavior());
    StrategyFilterResult f = support_respecting_strategies(support);

    // Hand enumeration of the 16 strategies against the three forbidden
    // points leaves exactly these five (map_a; map_b).
    std::vector<DeterministicStrategy> expected = {
        {{0, 0}, {1, 0}}, {{0, 0}, {1, 1}}, {{1, 0}, {0, 0}},
        {{1, 0}, {1, 0}}, {{1, 1}, {0, 0}},
    };
    auto key = [](const DeterministicStrategy& d) { return std::make_pair(d.map_a, d.map_b); };
    std::vector<std::pair<std::vector<int>, std::vector<int>>> got, want;
    for (const auto& d : f.respecting) got.push_back(key(d));
    for (const auto& d : expected) want.push_back(key(d));
    std::sort(got.begin(), got.end());
    std::sort(want.begin(), want.end());
    CHECK(got == want);

    // Alice always +, Bob always -: the strategy the argument names.
    CHECK(std::count(f.respecting.begin(), f.respecting.end(),
                     DeterministicStrategy{{0, 0}, {1, 1}}) == 1);

    // Coverage marks support points only.
    for (int x = 0; x < 2; ++x)
        for (int y = 0; y < 2; ++y)
            for (int a = 0; a < 2; ++a)
                for (int b = 0; b < 2; ++b)
                    if (f.coverage[support.scenario.index(x, y, a, b)])
                        CHECK(support.at(x, y, a, b));
}

TEST_CASE("full support keeps every strategy and covers everything") {
    SupportTable t = full_support({2, 2, 2, 2});
    StrategyFilterResult f = support_respecting_strategies(t);
    CHECK(f.respecting.size() == 16);
    CHECK(std::count(f.coverage.begin(), f.coverage.end(), 0) == 0);
    CHECK(!is_btwi(t).holds);
    CHECK(!is_pseudotelepathic(t).holds);
}

TEST_CASE("Hardy is inequality-free but not pseudo-telepathic") {
    SupportTable support = support_of(hardy_behavior());

    SupportVerdict pt = is_pseudotelepathic(support);
    CHECK(!pt.holds);

    SupportVerdict btwi = is_btwi(support);
    CHECK(btwi.holds);
    REQUIRE(btwi.point.has_value());
    CHECK(*btwi.point == std::array<int, 4>{1, 1, 1, 1}); // (x,x,-,-)
}

TEST_CASE("a deterministic behavior's support is never pseudo-telepathic") {
    Behavior det = strategy_behavior({2, 2, 2, 2}, {{1, 0}, {0, 1}});
    CHECK(!is_pseudotelepathic(support_of(det)).holds);
}

TEST_CASE("classify on the canonical behaviors") {
    NoGoVerdict hardy = classify(hardy_behavior());
    CHECK(hardy.violates_locality);
    CHECK(hardy.btwi);
    CHECK(!hardy.pt);
    REQUIRE(hardy.uncovered.has_value());
    CHECK(*hardy.uncovered == std::array<int, 4>{1, 1, 1, 1});

    StateVector pp;
    pp.dims = {2, 2};
    pp.amplitudes = {1, 0, 0, 0};
    Behavior product = behavior_from_quantum(
        pp, {bloch_measurement(0, 0, 1), bloch_measurement(1, 0, 0)},
        {bloch_measurement(0, 0, 1), bloch_measurement(1, 0, 0)});
    NoGoVerdict local = classify(product);
    CHECK(!local.violates_locality);
    CHECK(!local.btwi);
    CHECK(!local.pt);
}

TEST_CASE("hardy_chain on the canonical behavior cites the four values") {
    HardyChain c = hardy_chain(hardy_behavior());
    CHECK(c.status == HardyChain::Status::contradiction);
    CHECK(c.values[0] == doctest::Approx(1.0 / 12).epsilon(1e-12));
    CHECK(c.values[1] == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(c.values[2] == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(c.values[3] == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(c.steps.size() == 4);
}

TEST_CASE("hardy_chain reports a broken chain instead of a contradiction") {
    // Lift p(+,+|z,z) while keeping the other three key entries: move mass
    // within the (z,z) pair only.
    Behavior b = hardy_behavior();
    b.at(0, 0, 0, 0) = 0.10;
    b.at(0, 0, 0, 1) -= 0.10;
    b.validate();
    HardyChain c = hardy_chain(b);
    CHECK(c.status == HardyChain::Status::no_contradiction);

    // Noise on the mixed pairs breaks the zeros the argument leans on.
    Behavior noisy = hardy_behavior();
    noisy.at(1, 0, 1, 1) = 0.05;
    noisy.at(1, 0, 0, 0) -= 0.05;
    noisy.validate();
    CHECK(hardy_chain(noisy).status == HardyChain::Status::no_contradiction);
}

TEST_CASE("hardy_chain reports a vacuous premise") {
    Behavior det = strategy_behavior({2, 2, 2, 2}, {{0, 0}, {0, 0}});
    HardyChain c = hardy_chain(det);
    CHECK(c.status == HardyChain::Status::vacuous);

    CHECK_THROWS_AS(hardy_chain(strategy_behavior({2, 2, 3, 3}, {{0, 0}, {0, 0}})),
                    ValidationError);
}

TEST_CASE("verdicts never break the hierarchy on generated behaviors") {
    std::mt19937_64 gen(7301);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    Scenario s{2, 2, 2, 2};
    int checked = 0;
    for (int trial = 0; trial < 60; ++trial) {
        Behavior b;
        switch (trial % 3) {
            case 0: { // strategy mixture
                std::vector<double> w(16);
                double total = 0.0;
                for (auto& x : w) total += x = u(gen) < 0.6 ? 0.0 : u(gen);
                if (total == 0.0) w[0] = total = 1.0;
                for (auto& x : w) x /= total;
                b = mixture(s, w);
                break;
            }
            case 1: { // quantum
                b = behavior_from_quantum(random_state(gen),
                                          {random_bloch(gen), random_bloch(gen)},
                                          {random_bloch(gen), random_bloch(gen)});
                break;
            }
            default: { // perturbed quantum: mixed with white noise
                Behavior q = behavior_from_quantum(random_state(gen),
                                                   {random_bloch(gen), random_bloch(gen)},
                                                   {random_bloch(gen), random_bloch(gen)});
                double v = 0.5 + 0.5 * u(gen);
                b = q;
                for (auto& p : b.table) p = v * p + (1.0 - v) * 0.25;
                break;
            }
        }
        NoGoVerdict verdict = classify(b);
        if (verdict.pt) CHECK(verdict.btwi);
        if (verdict.btwi) CHECK(verdict.violates_locality);
        ++checked;
    }
    CHECK(checked == 60);
}

TEST_CASE("pseudo-telepathy is monotone under support coarsening") {
    std::mt19937_64 gen(7302);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    Scenario s{2, 2, 2, 2};
    for (int trial = 0; trial < 100; ++trial) {
        SupportTable t;
        t.scenario = s;
        t.possible.assign(s.table_size(), 0);
        for (int x = 0; x < 2; ++x)
            for (int y = 0; y < 2; ++y) {
                bool any = false;
                for (int a = 0; a < 2; ++a)
                    for (int b = 0; b < 2; ++b) {
                        bool on = u(gen) < 0.4;
                        t.possible[s.index(x, y, a, b)] = on;
                        any |= on;
                    }
                if (!any) t.possible[s.index(x, y, 0, 0)] = 1;
            }
        bool pt_before = is_pseudotelepathic(t).holds;

        SupportTable wider = t;
        for (auto& p : wider.possible)
            if (!p && u(gen) < 0.3) p = 1;
        bool pt_after = is_pseudotelepathic(wider).holds;
        if (!pt_before) CHECK(!pt_after);
    }
}

TEST_CASE("make_verdict needs membership evidence unless btwi already holds") {
    SupportVerdict no;
    no.holds = false;
    CHECK_THROWS_AS(make_verdict(no, no, nullptr), ValidationError);
}
