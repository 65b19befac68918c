#pragma once

#include <vector>

#include "nonloc/behavior.hpp"
#include "nonloc/common.hpp"

namespace nonloc {

/// Best rational approximation of x within tol, by continued fractions.
/// Recovers small-denominator rationals that survive a round trip through
/// double exactly.
Rational rationalize(double x, double tol = kEpsExactZero);

/// Behavior table as exact rationals: entries rationalized at `tol`, tiny
/// negatives clamped to zero, then each setting pair renormalized exactly
/// so the equality system stays consistent.
std::vector<Rational> rationalize_behavior(const Behavior& b, double tol = kEpsExactZero);

struct LocalMembership {
    bool feasible = false;
    /// Verdict basis: true when computed from a caller-supplied exact
    /// table (decided at gap == 0), false when the behavior was
    /// rationalized first ("numerical", decided within a tolerance).
    bool exact_input = false;
    /// Convex weights over deterministic strategies in enumeration order;
    /// empty when infeasible.
    std::vector<Rational> weights;
    /// Exact L1 distance from the table to the local polytope.
    Rational gap;
    /// When infeasible, a separating functional y over the rows
    /// (table entries (x,y,a,b) row-major, then the weight-sum row):
    /// y . strategy <= 0 for every deterministic strategy while
    /// y . behavior = gap > 0. A Bell inequality violated by the input.
    std::vector<Rational> certificate;
};

struct MembershipOptions {
    double rationalize_tol = kEpsExactZero;
    /// Acceptance band for the numerical verdict; widened internally to
    /// cover the rationalization perturbation of large tables.
    double feasibility_tol = kEpsLp;
    /// Guard on tableau size (rows x columns); the dense exact simplex is
    /// meant for desk-scale scenarios.
    std::size_t max_tableau_cells = std::size_t(1) << 25;
};

/// Decides whether the table is a convex combination of deterministic-
/// strategy behaviors, by exact phase-1 simplex over the strategy weights.
LocalMembership local_membership_exact(const Scenario& s, const std::vector<Rational>& table,
                                       const MembershipOptions& opts = {});

/// Same decision for a floating-point behavior: rationalize, renormalize,
/// then solve exactly. The verdict is "numerical" in the sense that it
/// applies to the rationalized table.
LocalMembership local_membership(const Behavior& b, const MembershipOptions& opts = {});

/// Table reproduced by the weights, for round-trip checks.
std::vector<Rational> mixture_table(const Scenario& s, const std::vector<Rational>& weights);

}  // namespace nonloc
