// Copyright (c) imdpmin contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "imdp/geometry.hpp"
#include "imdp/model.hpp"
#include "imdp/partition.hpp"
#include "imdp/semantics.hpp"

namespace imdp {

/// Six top states s, sbar, t, tbar, u, ubar over two absorbing targets l (label `left`) and r
/// (label `right`). t/tbar share their hull but not their minimal polytopes, u/ubar the converse,
/// s/sbar neither.
Imdp genExample1();

/// Single sensor i (1-based) as a two-state component: `ok<i>` and `fail<i>`. Action send_<i>
/// fails with probability in p and succeeds with the complementary interval from either state.
Imdp genSensor(unsigned index, Interval const& p);

/// Closed product of n sensors. States are status strings `s0101` (1 = failed, sensor 1 first),
/// labelled `f<k>` with k the failure count; the initial state has no failures.
/// Throws InvalidIntervalError unless p is well formed with p.hi < 1, and for n == 0.
Imdp genWSN(unsigned sensors, Interval const& p);

struct CsmaConfig {
    unsigned nodes = 2;
    unsigned maxCollisions = 1;
    Interval send = Interval(makeRational(8, 10), makeRational(9, 10));
    Interval collide = Interval(makeRational(1, 10), makeRational(2, 10));
};

/// Simplified slotted CSMA/CD. Nodes contend for a shared bus; a node that starts sending while
/// another one transmits causes a collision, which sends every contending node into a shared
/// back-off whose length is drawn uniformly from 4^c slots (c the highest collision count). A node
/// aborts after more than maxCollisions collisions. Sending and collision detection are uncertain.
/// Throws InvalidIntervalError for malformed intervals, nodes < 2, or maxCollisions outside 1..6.
Imdp genCSMA(CsmaConfig const& config);

struct RandomModelConfig {
    unsigned maxStates = 5;
    unsigned maxActions = 3;
    unsigned maxFanout = 3;
    /// Denominator of the centre distributions and widening steps.
    unsigned denominator = 10;
};

/// Small random valid model over the propositions {a, b}. Some states copy an earlier state's
/// rows and add a widened or narrowed variant of one of them, so that both kinds of bisimulation
/// have something to merge.
Imdp randomImdp(std::mt19937_64& rng, RandomModelConfig const& config = {});

/// A random reachability query (safe, goal) whose sets are unions of label classes.
struct ReachQuery {
    StateSet safe;
    StateSet goal;
    unsigned horizon = 0;
};

ReachQuery randomQuery(std::mt19937_64& rng, Imdp const& model, unsigned maxHorizon);

struct GridOracleConfig {
    unsigned denominator = 8;
    /// Largest number of corner combinations examined per mixing vector.
    std::size_t combinationCap = 1U << 16;
};

/// Searches mixing vectors with entries k/denominator over the other distinct polytopes of s for
/// one whose every corner combination lands in H(s,a,P). A witness means H(s,a,P) is not strictly
/// minimal. Throws OracleBoundError above the combination cap and DisabledActionError.
bool gridContainmentOracle(Imdp const& model, StateId s, ActionId a, Partition const& partition, GridOracleConfig const& config = {});

struct ReductionReport {
    std::size_t originalStates = 0;
    std::size_t originalTransitions = 0;
    std::size_t quotientStates = 0;
    std::size_t quotientTransitions = 0;
    Rational stateReductionFactor;
    Rational transitionReductionFactor;
};

ReductionReport reductionReport(Imdp const& original, Imdp const& quotientModel);

/// `key=value` lines.
std::string formatReportLines(ReductionReport const& report);

struct ReportRow {
    std::string label;
    ReductionReport report;
};

/// Aligned table with original/minimised counts and percentage factors.
std::string formatReportTable(std::vector<ReportRow> const& rows);

}  // namespace imdp
