// Copyright (c) imdpmin contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <filesystem>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "imdp/bisim.hpp"
#include "imdp/errors.hpp"
#include "imdp/format.hpp"
#include "imdp/geometry.hpp"
#include "imdp/lp.hpp"
#include "imdp/model.hpp"
#include "imdp/semantics.hpp"
#include "imdp/workbench.hpp"

namespace imdp::test {

inline std::filesystem::path fixturePath(std::string const& name) {
    return std::filesystem::path(IMDPMIN_FIXTURE_DIR) / name;
}

inline Rational r(long num, long den = 1) {
    return makeRational(num, den);
}

inline Interval iv(long loNum, long loDen, long hiNum, long hiDen) {
    return Interval(r(loNum, loDen), r(hiNum, hiDen));
}

inline StateId idOf(Imdp const& model, std::string const& name) {
    auto s = model.findState(name);
    if (!s) {
        throw InvariantError("no state named " + name);
    }
    return *s;
}

inline ActionId actionOf(Imdp const& model, std::string const& name) {
    auto a = model.findAction(name);
    if (!a) {
        throw InvariantError("no action named " + name);
    }
    return *a;
}

inline StateSet setOf(Imdp const& model, std::vector<std::string> const& names) {
    StateSet set(model.stateCount(), false);
    for (auto const& n : names) {
        set[idOf(model, n)] = true;
    }
    return set;
}

/// Sub-model on the named states; every successor of a kept state must be kept as well.
inline Imdp restrictTo(Imdp const& model, std::vector<std::string> const& names) {
    ImdpBuilder b;
    for (auto const& n : names) {
        b.addState(n);
    }
    for (auto const& n : names) {
        StateId const s = idOf(model, n);
        for (PropId p : model.labels(s)) {
            b.addLabel(n, model.propName(p));
        }
        for (auto const& choice : model.choices(s)) {
            std::vector<std::pair<std::string, Interval>> successors;
            for (auto const& succ : choice.successors) {
                successors.emplace_back(model.stateName(succ.target), succ.probability);
            }
            b.addChoice(n, model.actionName(choice.action), std::move(successors));
        }
    }
    return b.build();
}

/// Names of the states in the same block as `name`.
inline std::vector<std::string> blockNames(Imdp const& model, Partition const& p, std::string const& name) {
    std::vector<std::string> out;
    for (StateId s : p.block(p.blockOf(idOf(model, name)))) {
        out.push_back(model.stateName(s));
    }
    return out;
}

/// Vertices of the state-level polytope of a row, enumerated independently of the library: all
/// targets but one sit at an endpoint and the remaining target takes the residual.
inline std::vector<std::vector<Rational>> rowVertices(Choice const& choice) {
    std::size_t const n = choice.successors.size();
    std::vector<std::vector<Rational>> out;
    for (std::size_t slack = 0; slack < n; ++slack) {
        for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
            std::vector<Rational> x(n);
            Rational sum = 0;
            for (std::size_t k = 0; k < n; ++k) {
                if (k == slack) {
                    continue;
                }
                Interval const& i = choice.successors[k].probability;
                x[k] = (mask >> k) & 1 ? i.hi : i.lo;
                sum += x[k];
            }
            x[slack] = 1 - sum;
            if (choice.successors[slack].probability.contains(x[slack])) {
                out.push_back(x);
            }
        }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

inline Rational rowOptimumByVertices(Choice const& choice, ValueVector const& values, bool maximize) {
    std::optional<Rational> best;
    for (auto const& x : rowVertices(choice)) {
        Rational v = 0;
        for (std::size_t k = 0; k < x.size(); ++k) {
            v += x[k] * values[choice.successors[k].target];
        }
        if (!best || (maximize ? v > *best : v < *best)) {
            best = v;
        }
    }
    return *best;
}

inline Rational rowOptimumByLp(Choice const& choice, ValueVector const& values, bool maximize) {
    std::size_t const n = choice.successors.size();
    LinearProgram lp(n);
    std::vector<Rational> ones(n, Rational(1));
    lp.addConstraint(ones, Relation::Equal, 1);
    std::vector<Rational> objective(n);
    for (std::size_t k = 0; k < n; ++k) {
        std::vector<Rational> unit(n, Rational(0));
        unit[k] = 1;
        lp.addConstraint(unit, Relation::GreaterEqual, choice.successors[k].probability.lo);
        lp.addConstraint(unit, Relation::LessEqual, choice.successors[k].probability.hi);
        objective[k] = values[choice.successors[k].target];
    }
    auto solution = maximize ? lp.maximize(objective) : lp.minimize(objective);
    if (solution.status != LinearProgram::Status::Optimal) {
        throw InvariantError("row LP not optimal");
    }
    return solution.objective;
}

/// Bounded reachability on a model whose intervals are all points, by plain MDP value iteration.
inline ValueVector classicalBoundedUntil(Imdp const& model, StateSet const& safe, StateSet const& goal, unsigned horizon, bool maximize) {
    std::size_t const n = model.stateCount();
    ValueVector v(n);
    for (std::size_t s = 0; s < n; ++s) {
        v[s] = goal[s] ? 1 : 0;
    }
    for (unsigned step = 0; step < horizon; ++step) {
        ValueVector next(n);
        for (StateId s = 0; s < n; ++s) {
            if (goal[s]) {
                next[s] = 1;
                continue;
            }
            if (!safe[s]) {
                next[s] = 0;
                continue;
            }
            std::optional<Rational> best;
            for (auto const& choice : model.choices(s)) {
                Rational sum = 0;
                for (auto const& succ : choice.successors) {
                    sum += succ.probability.lo * v[succ.target];
                }
                if (!best || (maximize ? sum > *best : sum < *best)) {
                    best = sum;
                }
            }
            next[s] = *best;
        }
        v = std::move(next);
    }
    return v;
}

/// Random model with point intervals only: every row is a distribution with denominator `den`.
inline Imdp randomPointModel(std::mt19937_64& rng, unsigned maxStates, unsigned maxActions, unsigned den = 10) {
    auto uniform = [&rng](unsigned lo, unsigned hi) { return std::uniform_int_distribution<unsigned>(lo, hi)(rng); };
    unsigned const n = uniform(1, maxStates);
    ImdpBuilder b;
    auto name = [](unsigned i) { return "p" + std::to_string(i); };
    for (unsigned s = 0; s < n; ++s) {
        b.addState(name(s));
        if (uniform(0, 1) == 0) {
            b.addLabel(name(s), "a");
        }
        if (uniform(0, 2) == 0) {
            b.addLabel(name(s), "b");
        }
    }
    for (unsigned s = 0; s < n; ++s) {
        unsigned const actions = uniform(1, maxActions);
        for (unsigned a = 0; a < actions; ++a) {
            std::vector<unsigned> mass(n, 0);
            for (unsigned k = 0; k < den; ++k) {
                ++mass[uniform(0, n - 1)];
            }
            std::vector<std::pair<std::string, Interval>> successors;
            for (unsigned t = 0; t < n; ++t) {
                if (mass[t] > 0) {
                    successors.emplace_back(name(t), Interval::point(r(mass[t], den)));
                }
            }
            b.addChoice(name(s), "act" + std::to_string(a), std::move(successors));
        }
    }
    return b.build();
}

/// Random non-empty interval polytope over `dimension` blocks with `support` of them bounded away
/// from [0,0].
inline ClassPolytope randomPolytope(std::mt19937_64& rng, std::size_t dimension, std::size_t support, unsigned den = 10) {
    auto uniform = [&rng](unsigned lo, unsigned hi) { return std::uniform_int_distribution<unsigned>(lo, hi)(rng); };
    std::vector<BlockId> blocks(dimension);
    for (std::size_t i = 0; i < dimension; ++i) {
        blocks[i] = static_cast<BlockId>(i);
    }
    std::shuffle(blocks.begin(), blocks.end(), rng);
    blocks.resize(support);
    while (true) {
        std::vector<ClassPolytope::Bound> bounds;
        Rational loSum = 0;
        Rational hiSum = 0;
        for (BlockId c : blocks) {
            unsigned a = uniform(0, den);
            unsigned b = uniform(0, den);
            if (a > b) {
                std::swap(a, b);
            }
            if (b == 0) {
                b = 1;
            }
            bounds.emplace_back(c, Interval(r(a, den), r(b, den)));
            loSum += r(a, den);
            hiSum += r(b, den);
        }
        if (loSum <= 1 && hiSum >= 1) {
            return ClassPolytope(dimension, std::move(bounds));
        }
    }
}

/// The image of a state set in a quotient whose state names are those of representatives.
inline StateSet liftToQuotient(Imdp const& model, Imdp const& quotientModel, StateSet const& set) {
    StateSet out(quotientModel.stateCount());
    for (StateId q = 0; q < quotientModel.stateCount(); ++q) {
        out[q] = set[idOf(model, quotientModel.stateName(q))];
    }
    return out;
}

inline std::vector<QuantifierMode> modesPreservedBy(BisimKind kind) {
    if (kind == BisimKind::Cooperative) {
        return {QuantifierMode::MinMin, QuantifierMode::MaxMax};
    }
    return {QuantifierMode::MaxiMin, QuantifierMode::MiniMax};
}

/// Empty when every pair of states sharing a block has identical values for every query and every
/// mode preserved by `kind`; otherwise a description of the first mismatch.
inline std::string preservationMismatch(Imdp const& model, Partition const& partition, BisimKind kind, std::vector<ReachQuery> const& queries) {
    for (std::size_t qi = 0; qi < queries.size(); ++qi) {
        auto const& q = queries[qi];
        for (auto mode : modesPreservedBy(kind)) {
            ValueVector const v = extremalBoundedUntil(model, q.safe, q.goal, q.horizon, mode);
            for (auto const& block : partition.blocks()) {
                for (StateId s : block) {
                    if (v[s] != v[block.front()]) {
                        return "query " + std::to_string(qi) + " mode " + std::string(modeName(mode)) + ": " + model.stateName(block.front()) + "=" +
                               formatFraction(v[block.front()]) + " vs " + model.stateName(s) + "=" + formatFraction(v[s]);
                    }
                }
            }
        }
    }
    return {};
}

/// Empty when quotient values equal member values for every query and every mode preserved by
/// `kind`; otherwise a description of the first mismatch.
inline std::string quotientMismatch(Imdp const& model, Partition const& partition, BisimKind kind, std::vector<ReachQuery> const& queries) {
    Imdp const q = quotient(model, partition);
    for (std::size_t qi = 0; qi < queries.size(); ++qi) {
        auto const& query = queries[qi];
        StateSet const safe = liftToQuotient(model, q, query.safe);
        StateSet const goal = liftToQuotient(model, q, query.goal);
        for (auto mode : modesPreservedBy(kind)) {
            ValueVector const v = extremalBoundedUntil(model, query.safe, query.goal, query.horizon, mode);
            ValueVector const w = extremalBoundedUntil(q, safe, goal, query.horizon, mode);
            for (StateId s = 0; s < model.stateCount(); ++s) {
                StateId const block = idOf(q, model.stateName(partition.block(partition.blockOf(s)).front()));
                if (v[s] != w[block]) {
                    return "query " + std::to_string(qi) + " mode " + std::string(modeName(mode)) + ": state " + model.stateName(s) + "=" + formatFraction(v[s]) +
                           " vs block " + q.stateName(block) + "=" + formatFraction(w[block]);
                }
            }
        }
    }
    return {};
}

}  // namespace imdp::test
