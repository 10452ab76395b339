// Copyright (c) imdpmin contributors.
// SPDX-License-Identifier: Apache-2.0
#include "imdp/semantics.hpp"

#include <algorithm>

#include "imdp/errors.hpp"

namespace imdp {

std::string_view modeName(QuantifierMode mode) {
    switch (mode) {
        case QuantifierMode::MinMin:
            return "minmin";
        case QuantifierMode::MaxMax:
            return "maxmax";
        case QuantifierMode::MaxiMin:
            return "maximin";
        case QuantifierMode::MiniMax:
            return "minimax";
    }
    return "?";
}

std::optional<QuantifierMode> parseMode(std::string_view name) {
    for (auto mode : {QuantifierMode::MinMin, QuantifierMode::MaxMax, QuantifierMode::MaxiMin, QuantifierMode::MiniMax}) {
        if (modeName(mode) == name) {
            return mode;
        }
    }
    return std::nullopt;
}

Rational optimizeRow(Choice const& choice, ValueVector const& values, bool maximize) {
    std::vector<Successor const*> order;
    order.reserve(choice.successors.size());
    Rational result = 0;
    Rational rest = 1;
    for (auto const& succ : choice.successors) {
        order.push_back(&succ);
        result += succ.probability.lo * values[succ.target];
        rest -= succ.probability.lo;
    }
    std::stable_sort(order.begin(), order.end(), [&](Successor const* a, Successor const* b) {
        return maximize ? values[a->target] > values[b->target] : values[a->target] < values[b->target];
    });
    for (Successor const* succ : order) {
        if (rest <= 0) {
            break;
        }
        Rational const add = std::min(rest, Rational(succ->probability.hi - succ->probability.lo));
        result += add * values[succ->target];
        rest -= add;
    }
    return result;
}

namespace {

bool schedulerMaximizes(QuantifierMode mode) {
    return mode == QuantifierMode::MaxMax || mode == QuantifierMode::MaxiMin;
}

bool natureMaximizes(QuantifierMode mode) {
    return mode == QuantifierMode::MaxMax || mode == QuantifierMode::MiniMax;
}

Rational bestAction(Imdp const& model, StateId s, ValueVector const& values, QuantifierMode mode) {
    bool const maxAction = schedulerMaximizes(mode);
    bool const maxNature = natureMaximizes(mode);
    std::optional<Rational> best;
    for (auto const& choice : model.choices(s)) {
        Rational v = optimizeRow(choice, values, maxNature);
        if (!best || (maxAction ? v > *best : v < *best)) {
            best = std::move(v);
        }
    }
    if (!best) {
        throw ModelError("state '" + model.stateName(s) + "' has no enabled action");
    }
    return *best;
}

ValueVector indicator(StateSet const& set) {
    ValueVector v(set.size());
    for (std::size_t s = 0; s < set.size(); ++s) {
        v[s] = set[s] ? 1 : 0;
    }
    return v;
}

void checkSize(Imdp const& model, StateSet const& set) {
    if (set.size() != model.stateCount()) {
        throw InvariantError("state set does not match the model size");
    }
}

}  // namespace

ValueVector extremalBoundedUntil(Imdp const& model, StateSet const& safe, StateSet const& goal, unsigned horizon, QuantifierMode mode) {
    checkSize(model, safe);
    checkSize(model, goal);
    ValueVector current = indicator(goal);
    for (unsigned step = 0; step < horizon; ++step) {
        ValueVector next(model.stateCount());
        for (StateId s = 0; s < model.stateCount(); ++s) {
            if (goal[s]) {
                next[s] = 1;
            } else if (!safe[s]) {
                next[s] = 0;
            } else {
                next[s] = bestAction(model, s, current, mode);
            }
        }
        current = std::move(next);
    }
    return current;
}

ValueVector extremalNext(Imdp const& model, StateSet const& target, QuantifierMode mode) {
    checkSize(model, target);
    ValueVector const start = indicator(target);
    ValueVector result(model.stateCount());
    for (StateId s = 0; s < model.stateCount(); ++s) {
        result[s] = bestAction(model, s, start, mode);
    }
    return result;
}

QuantifierMode comparedMode(QuantifierMode mode, Comparison comparison) {
    bool const lower = comparison == Comparison::GreaterEqual || comparison == Comparison::Greater;
    if (lower) {
        return mode;
    }
    switch (mode) {
        case QuantifierMode::MinMin:
            return QuantifierMode::MaxMax;
        case QuantifierMode::MaxMax:
            return QuantifierMode::MinMin;
        case QuantifierMode::MaxiMin:
            return QuantifierMode::MiniMax;
        case QuantifierMode::MiniMax:
            return QuantifierMode::MaxiMin;
    }
    return mode;
}

ValueVector pathValues(Imdp const& model, PathFormula const& path, QuantifierMode mode) {
    switch (path.kind) {
        case PathFormula::Kind::Next:
            return extremalNext(model, checkStateFormula(model, *path.right), mode);
        case PathFormula::Kind::BoundedUntil:
            return extremalBoundedUntil(model, checkStateFormula(model, *path.left), checkStateFormula(model, *path.right), path.horizon, mode);
        case PathFormula::Kind::Until:
            break;
    }
    throw UnboundedUntilError("unbounded until is not supported; give a step bound with U<=k");
}

StateSet checkStateFormula(Imdp const& model, StateFormula const& formula) {
    std::size_t const n = model.stateCount();
    switch (formula.kind) {
        case StateFormula::Kind::True:
            return StateSet(n, true);
        case StateFormula::Kind::Atom: {
            StateSet result(n, false);
            if (auto prop = model.findProp(formula.atom)) {
                for (StateId s = 0; s < n; ++s) {
                    result[s] = model.hasLabel(s, *prop);
                }
            }
            return result;
        }
        case StateFormula::Kind::Not: {
            StateSet result = checkStateFormula(model, *formula.left);
            result.flip();
            return result;
        }
        case StateFormula::Kind::And: {
            StateSet result = checkStateFormula(model, *formula.left);
            StateSet const other = checkStateFormula(model, *formula.right);
            for (std::size_t s = 0; s < n; ++s) {
                result[s] = result[s] && other[s];
            }
            return result;
        }
        case StateFormula::Kind::Probability: {
            ValueVector const values = pathValues(model, *formula.path, comparedMode(formula.mode, formula.comparison));
            StateSet result(n, false);
            for (std::size_t s = 0; s < n; ++s) {
                Rational const& v = values[s];
                Rational const& p = formula.threshold;
                switch (formula.comparison) {
                    case Comparison::Less:
                        result[s] = v < p;
                        break;
                    case Comparison::LessEqual:
                        result[s] = v <= p;
                        break;
                    case Comparison::Greater:
                        result[s] = v > p;
                        break;
                    case Comparison::GreaterEqual:
                        result[s] = v >= p;
                        break;
                }
            }
            return result;
        }
    }
    throw InvariantError("unknown formula kind");
}

}  // namespace imdp
