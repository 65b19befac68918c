#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "nonloc/behavior.hpp"
#include "nonloc/membership.hpp"

namespace nonloc {

/// Deterministic strategies that never step on a forbidden outcome, and
/// which support points those strategies can collectively produce.
struct StrategyFilterResult {
    std::vector<DeterministicStrategy> respecting;
    std::vector<char> coverage; // per (x,y,a,b); true only at support points
};

struct SupportVerdict {
    bool holds = false;
    std::string witness;
    /// Uncovered support point (x,y,a,b), when that is the evidence.
    std::optional<std::array<int, 4>> point;
};

/// Joint verdict under the three no-go notions. The hierarchy
/// pt => btwi => violates_locality always holds in a returned verdict.
struct NoGoVerdict {
    bool violates_locality = false;
    bool btwi = false;
    bool pt = false;
    std::string witness;
    std::optional<std::array<int, 4>> uncovered;
};

/// Filters all deterministic strategies against the support: kept iff the
/// strategy's output is possible at every setting pair.
StrategyFilterResult support_respecting_strategies(const SupportTable& s);

/// Pseudo-telepathy test: no deterministic strategy stays inside the
/// support (so no LHV model can even avoid the forbidden outcomes).
SupportVerdict is_pseudotelepathic(const SupportTable& s);

/// Inequality-free test: every LHV model either leaves the support or
/// misses some quantum-possible outcome. Witness is the lexicographically
/// first uncovered support point, when one exists.
SupportVerdict is_btwi(const SupportTable& s);

/// Runs all three decision procedures on a behavior. Locality violation
/// comes from exact polytope membership; when the membership tableau is
/// over its cap and the possibilistic tests already decide the question,
/// the implied verdict is used instead.
NoGoVerdict classify(const Behavior& b, double eps_support = kEpsSupport);

/// Joins the two support tests with a membership result into one verdict.
/// `membership` may be null only when the possibilistic failure already
/// implies the locality violation (btwi holds).
NoGoVerdict make_verdict(const SupportVerdict& pt, const SupportVerdict& btwi,
                         const LocalMembership* membership);

/// The four-step contradiction argument for Hardy-type 2x2 behaviors,
/// with the setting convention 0 = z, 1 = x and outcome 0 = +, 1 = -.
struct HardyChain {
    enum class Status { contradiction, no_contradiction, vacuous };
    Status status = Status::vacuous;
    /// p(--|xx), p(--|xz), p(--|zx), p(++|zz)
    std::array<double, 4> values{};
    std::vector<std::string> steps;
};

HardyChain hardy_chain(const Behavior& b, double eps = kEpsSupport);

}  // namespace nonloc
