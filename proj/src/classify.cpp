#include "nonloc/classify.hpp"

#include <sstream>

namespace nonloc {

namespace {

std::string strategy_text(const DeterministicStrategy& d) {
    std::ostringstream os;
    os << "A:(";
    for (std::size_t i = 0; i < d.map_a.size(); ++i) os << (i ? "," : "") << d.map_a[i];
    os << ") B:(";
    for (std::size_t i = 0; i < d.map_b.size(); ++i) os << (i ? "," : "") << d.map_b[i];
    os << ")";
    return os.str();
}

bool respects(const SupportTable& s, const DeterministicStrategy& d) {
    for (int x = 0; x < s.scenario.inputs_a; ++x)
        for (int y = 0; y < s.scenario.inputs_b; ++y)
            if (!s.at(x, y, d.map_a[x], d.map_b[y])) return false;
    return true;
}

}  // namespace

StrategyFilterResult support_respecting_strategies(const SupportTable& s) {
    s.scenario.validate();
    if (s.possible.size() != s.scenario.table_size())
        throw ValidationError("support table size does not match its scenario");
    StrategyFilterResult out;
    out.coverage.assign(s.possible.size(), 0);
    for_each_deterministic(s.scenario, [&](const DeterministicStrategy& d) {
        if (!respects(s, d)) return;
        out.respecting.push_back(d);
        for (int x = 0; x < s.scenario.inputs_a; ++x)
            for (int y = 0; y < s.scenario.inputs_b; ++y)
                out.coverage[s.scenario.index(x, y, d.map_a[x], d.map_b[y])] = 1;
    });
    return out;
}

SupportVerdict is_pseudotelepathic(const SupportTable& s) {
    StrategyFilterResult f = support_respecting_strategies(s);
    SupportVerdict v;
    v.holds = f.respecting.empty();
    std::ostringstream os;
    if (v.holds)
        os << "none of the " << s.scenario.strategy_count()
           << " deterministic strategies stays inside the support";
    else
        os << "support-respecting strategy exists, e.g. " << strategy_text(f.respecting.front());
    v.witness = os.str();
    return v;
}

SupportVerdict is_btwi(const SupportTable& s) {
    StrategyFilterResult f = support_respecting_strategies(s);
    SupportVerdict v;
    if (f.respecting.empty()) {
        v.holds = true;
        std::ostringstream os;
        os << "no deterministic strategy stays inside the support ("
           << s.scenario.strategy_count() << " checked)";
        v.witness = os.str();
        return v;
    }
    for (int x = 0; x < s.scenario.inputs_a; ++x)
        for (int y = 0; y < s.scenario.inputs_b; ++y)
            for (int a = 0; a < s.scenario.outputs_a; ++a)
                for (int b = 0; b < s.scenario.outputs_b; ++b)
                    if (s.at(x, y, a, b) && !f.coverage[s.scenario.index(x, y, a, b)]) {
                        v.holds = true;
                        v.point = {{x, y, a, b}};
                        std::ostringstream os;
                        os << "support point (x=" << x << ",y=" << y << ",a=" << a
                           << ",b=" << b << ") is produced by no support-respecting strategy";
                        v.witness = os.str();
                        return v;
                    }
    v.holds = false;
    v.witness = "some support-respecting strategy set covers every support point";
    return v;
}

NoGoVerdict make_verdict(const SupportVerdict& pt, const SupportVerdict& btwi,
                         const LocalMembership* membership) {
    if (membership == nullptr && !btwi.holds)
        throw ValidationError("verdict needs a membership result when the support tests pass");

    NoGoVerdict v;
    v.pt = pt.holds;
    v.btwi = btwi.holds;
    v.uncovered = btwi.point;

    std::string locality_witness;
    bool infeasible;
    if (membership) {
        infeasible = !membership->feasible;
        if (infeasible) {
            std::ostringstream os;
            os << "no convex mixture of deterministic strategies reproduces the table "
                  "(phase-1 gap " << membership->gap << ")";
            locality_witness = os.str();
        } else {
            locality_witness = "an explicit LHV mixture reproduces the table";
        }
    } else {
        infeasible = true;
        locality_witness = "implied: no LHV model can even stay inside the support";
    }
    // btwi => violates_locality: a mixture reproducing the table exactly
    // would both respect and cover the support.
    v.violates_locality = infeasible || v.btwi;

    if (v.pt)
        v.witness = "pseudo-telepathic: " + pt.witness;
    else if (v.btwi)
        v.witness = "inequality-free: " + btwi.witness;
    else
        v.witness = locality_witness;
    return v;
}

NoGoVerdict classify(const Behavior& b, double eps_support) {
    SupportTable support = support_of(b, eps_support);
    SupportVerdict pt = is_pseudotelepathic(support);
    SupportVerdict btwi = is_btwi(support);
    try {
        LocalMembership lm = local_membership(b);
        return make_verdict(pt, btwi, &lm);
    } catch (const CapExceededError&) {
        if (!btwi.holds) throw;
        return make_verdict(pt, btwi, nullptr);
    }
}

HardyChain hardy_chain(const Behavior& b, double eps) {
    b.validate();
    const Scenario& s = b.scenario;
    if (s.inputs_a != 2 || s.inputs_b != 2 || s.outputs_a != 2 || s.outputs_b != 2)
        throw ValidationError("the Hardy chain is defined for 2-setting/2-outcome behaviors");

    HardyChain c;
    // Setting 0 = z, 1 = x; outcome 0 = +, 1 = -.
    c.values = {b.at(1, 1, 1, 1), b.at(1, 0, 1, 1), b.at(0, 1, 1, 1), b.at(0, 0, 0, 0)};
    const auto [p_xx_mm, p_xz_mm, p_zx_mm, p_zz_pp] = c.values;

    auto prob = [](double p) {
        std::ostringstream os;
        os.precision(12);
        os << p;
        return os.str();
    };

    if (p_xx_mm <= eps) {
        c.status = HardyChain::Status::vacuous;
        c.steps.push_back("premise vacuous: p(-,-|x,x) = " + prob(p_xx_mm) +
                          " carries no probability, so no LHV instance must produce (-,-) "
                          "on (x,x)");
        return c;
    }
    c.steps.push_back("1. p(-,-|x,x) = " + prob(p_xx_mm) +
                      " > 0, so some LHV instances answer (-,-) when both parties measure x;"
                      " fix one such instance");
    if (p_xz_mm > eps || p_zx_mm > eps) {
        c.status = HardyChain::Status::no_contradiction;
        c.steps.push_back("no contradiction: p(-,-|x,z) = " + prob(p_xz_mm) +
                          " and p(-,-|z,x) = " + prob(p_zx_mm) +
                          " are not both zero, so the instance's z outputs are unconstrained");
        return c;
    }
    c.steps.push_back("2. p(-,-|x,z) = " + prob(p_xz_mm) + " and p(-,-|z,x) = " +
                      prob(p_zx_mm) + " vanish, so on that instance each party's z "
                      "measurement must answer +");
    if (p_zz_pp > eps) {
        c.status = HardyChain::Status::no_contradiction;
        c.steps.push_back("no contradiction: p(+,+|z,z) = " + prob(p_zz_pp) +
                          " is itself nonzero, so the forced (+,+) answer on (z,z) is allowed");
        return c;
    }
    c.steps.push_back("3. the instance therefore answers (+,+) when both parties measure z");
    c.steps.push_back("4. contradiction: p(+,+|z,z) = " + prob(p_zz_pp) +
                      ", the (+,+) outcome on (z,z) is forbidden");
    c.status = HardyChain::Status::contradiction;
    return c;
}

}  // namespace nonloc
