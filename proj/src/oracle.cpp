// Copyright (c) imdpmin contributors.
// SPDX-License-Identifier: Apache-2.0
//
// Brute-force bisimulation check. Shares only the model, partition and LP types with the
// refinement engine; polytopes are handled through dense tightened bounds instead of vertex
// lists.
#include <algorithm>
#include <cstdlib>
#include <functional>
#include <numeric>
#include <set>

#include "imdp/bisim.hpp"
#include "imdp/errors.hpp"
#include "imdp/lp.hpp"

namespace imdp {

std::size_t oracleBound() {
    if (char const* env = std::getenv("IMDP_ORACLE_BOUND")) {
        char* end = nullptr;
        unsigned long const value = std::strtoul(env, &end, 10);
        if (end != env && *end == '\0') {
            return value;
        }
    }
    return 8;
}

namespace {

using Dense = std::vector<Rational>;

/// Dense lifted bounds with the redundant parts cut away, so equal sets get equal bounds.
struct TightBox {
    Dense lo;
    Dense hi;

    friend bool operator==(TightBox const&, TightBox const&) = default;
    friend bool operator<(TightBox const& a, TightBox const& b) {
        if (a.lo != b.lo) {
            return a.lo < b.lo;
        }
        return a.hi < b.hi;
    }
};

TightBox liftedBox(Choice const& choice, Partition const& partition) {
    std::size_t const n = partition.blockCount();
    TightBox box{Dense(n), Dense(n)};
    for (auto const& succ : choice.successors) {
        BlockId const b = partition.blockOf(succ.target);
        box.lo[b] += succ.probability.lo;
        box.hi[b] += succ.probability.hi;
    }
    Rational sumLo = 0;
    Rational sumHi = 0;
    for (std::size_t c = 0; c < n; ++c) {
        box.lo[c] = std::min(box.lo[c], Rational(1));
        box.hi[c] = std::min(box.hi[c], Rational(1));
        sumLo += box.lo[c];
        sumHi += box.hi[c];
    }
    TightBox tight = box;
    for (std::size_t c = 0; c < n; ++c) {
        tight.lo[c] = std::max(box.lo[c], Rational(1 - (sumHi - box.hi[c])));
        tight.hi[c] = std::min(box.hi[c], Rational(1 - (sumLo - box.lo[c])));
    }
    return tight;
}

/// Extreme points via greedy filling: start from the lower bounds and hand out the remaining
/// mass in every possible order of the blocks.
std::vector<Dense> greedyCorners(TightBox const& box) {
    std::vector<std::size_t> support;
    Rational rest = 1;
    for (std::size_t c = 0; c < box.lo.size(); ++c) {
        rest -= box.lo[c];
        if (box.hi[c] > box.lo[c]) {
            support.push_back(c);
        }
    }
    std::set<Dense> corners;
    do {
        Dense x = box.lo;
        Rational left = rest;
        for (std::size_t c : support) {
            Rational const add = std::min(left, Rational(box.hi[c] - box.lo[c]));
            x[c] += add;
            left -= add;
        }
        corners.insert(std::move(x));
    } while (std::next_permutation(support.begin(), support.end()));
    return {corners.begin(), corners.end()};
}

/// x in conv(union of boxes), via the disaggregated (lifted) formulation: x = sum_i y_i with
/// y_i in lambda_i * box_i and sum lambda_i = 1.
bool inHullOfBoxes(Dense const& x, std::vector<TightBox> const& boxes) {
    std::size_t const n = x.size();
    std::size_t const m = boxes.size();
    std::size_t const width = m * (n + 1);
    auto yIndex = [&](std::size_t i, std::size_t c) { return i * (n + 1) + c; };
    auto lambdaIndex = [&](std::size_t i) { return i * (n + 1) + n; };
    LinearProgram lp(width);
    Dense row(width);
    for (std::size_t i = 0; i < m; ++i) {
        row[lambdaIndex(i)] = 1;
    }
    lp.addConstraint(row, Relation::Equal, 1);
    for (std::size_t c = 0; c < n; ++c) {
        Dense sum(width);
        for (std::size_t i = 0; i < m; ++i) {
            sum[yIndex(i, c)] = 1;
        }
        lp.addConstraint(sum, Relation::Equal, x[c]);
    }
    for (std::size_t i = 0; i < m; ++i) {
        Dense mass(width);
        for (std::size_t c = 0; c < n; ++c) {
            mass[yIndex(i, c)] = 1;
            Dense lower(width);
            lower[yIndex(i, c)] = 1;
            lower[lambdaIndex(i)] = -boxes[i].lo[c];
            lp.addConstraint(lower, Relation::GreaterEqual, 0);
            Dense upper(width);
            upper[yIndex(i, c)] = 1;
            upper[lambdaIndex(i)] = -boxes[i].hi[c];
            lp.addConstraint(upper, Relation::LessEqual, 0);
        }
        mass[lambdaIndex(i)] = -1;
        lp.addConstraint(mass, Relation::Equal, 0);
    }
    return lp.feasible();
}

std::vector<TightBox> boxesOf(Imdp const& model, StateId s, Partition const& partition) {
    std::vector<TightBox> boxes;
    for (auto const& choice : model.choices(s)) {
        boxes.push_back(liftedBox(choice, partition));
    }
    return boxes;
}

std::vector<std::size_t> supportOf(std::vector<TightBox> const& boxes) {
    std::set<std::size_t> blocks;
    for (auto const& box : boxes) {
        for (std::size_t c = 0; c < box.hi.size(); ++c) {
            if (box.hi[c] > 0) {
                blocks.insert(c);
            }
        }
    }
    return {blocks.begin(), blocks.end()};
}

bool sameHull(std::vector<TightBox> const& first, std::vector<TightBox> const& second) {
    std::vector<TightBox> all = first;
    all.insert(all.end(), second.begin(), second.end());
    auto const support = supportOf(all);
    if (support.size() <= 1) {
        return true;
    }
    if (support.size() == 2) {
        // Segments: each box is an interval of the first coordinate; the hull is their span.
        std::size_t const c = support.front();
        auto span = [c](std::vector<TightBox> const& boxes) {
            Rational lo = boxes.front().lo[c];
            Rational hi = boxes.front().hi[c];
            for (auto const& b : boxes) {
                lo = std::min(lo, b.lo[c]);
                hi = std::max(hi, b.hi[c]);
            }
            return std::make_pair(lo, hi);
        };
        return span(first) == span(second);
    }
    for (auto const& box : first) {
        for (auto const& corner : greedyCorners(box)) {
            if (!inHullOfBoxes(corner, second)) {
                return false;
            }
        }
    }
    for (auto const& box : second) {
        for (auto const& corner : greedyCorners(box)) {
            if (!inHullOfBoxes(corner, first)) {
                return false;
            }
        }
    }
    return true;
}

/// sum_i rho_i box_i lies inside target, coordinate by coordinate.
bool mixtureInside(std::vector<Rational> const& rho, std::vector<TightBox> const& others, TightBox const& target) {
    for (std::size_t c = 0; c < target.lo.size(); ++c) {
        Rational low = 0;
        Rational high = 0;
        for (std::size_t i = 0; i < others.size(); ++i) {
            low += rho[i] * others[i].lo[c];
            high += rho[i] * others[i].hi[c];
        }
        if (low < target.lo[c] || high > target.hi[c]) {
            return false;
        }
    }
    return true;
}

bool gridWitness(std::vector<TightBox> const& others, TightBox const& target, long denominator) {
    std::size_t const k = others.size();
    std::vector<long> parts(k, 0);
    // Enumerate compositions of `denominator` into k non-negative parts.
    std::function<bool(std::size_t, long)> visit = [&](std::size_t i, long left) -> bool {
        if (i + 1 == k) {
            parts[i] = left;
            std::vector<Rational> rho(k);
            for (std::size_t j = 0; j < k; ++j) {
                rho[j] = Rational(parts[j], denominator);
                rho[j].canonicalize();
            }
            return mixtureInside(rho, others, target);
        }
        for (long v = 0; v <= left; ++v) {
            parts[i] = v;
            if (visit(i + 1, left - v)) {
                return true;
            }
        }
        return false;
    };
    return visit(0, denominator);
}

bool lpWitness(std::vector<TightBox> const& others, TightBox const& target) {
    std::size_t const k = others.size();
    LinearProgram lp(k);
    lp.addConstraint(Dense(k, Rational(1)), Relation::Equal, 1);
    for (std::size_t c = 0; c < target.lo.size(); ++c) {
        Dense highs(k);
        Dense lows(k);
        for (std::size_t i = 0; i < k; ++i) {
            highs[i] = others[i].hi[c];
            lows[i] = others[i].lo[c];
        }
        lp.addConstraint(highs, Relation::LessEqual, target.hi[c]);
        lp.addConstraint(lows, Relation::GreaterEqual, target.lo[c]);
    }
    return lp.feasible();
}

std::set<TightBox> minimalBoxes(std::vector<TightBox> const& boxes) {
    std::set<TightBox> const distinct(boxes.begin(), boxes.end());
    std::set<TightBox> minimal;
    for (auto const& target : distinct) {
        std::vector<TightBox> others;
        for (auto const& b : distinct) {
            if (!(b == target)) {
                others.push_back(b);
            }
        }
        if (others.empty() || (!gridWitness(others, target, 8) && !lpWitness(others, target))) {
            minimal.insert(target);
        }
    }
    return minimal;
}

bool pairOk(BisimKind kind, Imdp const& model, StateId s, StateId t, Partition const& partition) {
    auto const first = boxesOf(model, s, partition);
    auto const second = boxesOf(model, t, partition);
    if (kind == BisimKind::Cooperative) {
        return sameHull(first, second);
    }
    return minimalBoxes(first) == minimalBoxes(second);
}

bool isBisimulation(BisimKind kind, Imdp const& model, Partition const& partition) {
    for (auto const& block : partition.blocks()) {
        for (std::size_t i = 1; i < block.size(); ++i) {
            if (!pairOk(kind, model, block.front(), block[i], partition)) {
                return false;
            }
        }
    }
    return true;
}

}  // namespace

Partition bruteForceBisimulation(Imdp const& model, BisimKind kind, std::size_t bound) {
    std::size_t const n = model.stateCount();
    if (n > bound) {
        throw OracleBoundError("brute-force oracle limited to " + std::to_string(bound) + " states, model has " + std::to_string(n));
    }
    std::vector<std::vector<PropId>> labelOf(n);
    for (StateId s = 0; s < n; ++s) {
        labelOf[s] = model.labels(s);
    }

    // Restricted growth strings enumerate every set partition exactly once; states may only
    // share a block with earlier states carrying the same labels.
    std::vector<std::uint32_t> assignment(n, 0);
    std::vector<Partition> best;
    std::size_t bestCount = n + 1;
    std::function<void(std::size_t, std::uint32_t)> visit = [&](std::size_t s, std::uint32_t used) {
        if (used > bestCount) {
            return;
        }
        if (s == n) {
            Partition p = Partition::fromAssignment(assignment);
            if (!isBisimulation(kind, model, p)) {
                return;
            }
            if (used < bestCount) {
                bestCount = used;
                best.clear();
            }
            best.push_back(std::move(p));
            return;
        }
        for (std::uint32_t b = 0; b <= used && b < n; ++b) {
            if (b < used) {
                StateId first = 0;
                while (assignment[first] != b) {
                    ++first;
                }
                if (labelOf[first] != labelOf[s]) {
                    continue;
                }
            }
            assignment[s] = b;
            visit(s + 1, b == used ? used + 1 : used);
        }
    };
    if (n == 0) {
        return Partition::fromAssignment({});
    }
    visit(0, 0);
    if (best.empty()) {
        throw InvariantError("no partition passed the bisimulation check");
    }
    std::sort(best.begin(), best.end(), [](Partition const& a, Partition const& b) { return a.blocks() < b.blocks(); });
    best.erase(std::unique(best.begin(), best.end()), best.end());
    if (best.size() > 1) {
        throw InvariantError("several incomparable coarsest bisimulations found");
    }
    return best.front();
}

}  // namespace imdp
