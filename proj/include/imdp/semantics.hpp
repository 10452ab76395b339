// Copyright (c) imdpmin contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "imdp/model.hpp"

namespace imdp {

/// How scheduler (action choice) and nature (distribution choice) resolve each step.
enum class QuantifierMode {
    MinMin,   ///< both minimise
    MaxMax,   ///< both maximise
    MaxiMin,  ///< scheduler maximises, nature minimises
    MiniMax,  ///< scheduler minimises, nature maximises
};

std::string_view modeName(QuantifierMode mode);
std::optional<QuantifierMode> parseMode(std::string_view name);

using ValueVector = std::vector<Rational>;
/// Characteristic vector over states.
using StateSet = std::vector<bool>;

/// max (or min) of sum_t x(t) * values(t) over the distributions x allowed by the interval row.
/// The row must be feasible.
Rational optimizeRow(Choice const& choice, ValueVector const& values, bool maximize);

/// Step-bounded reachability of `goal` while staying in `safe`, extremised per mode: goal states
/// are fixed at 1, states outside safe and goal at 0, and all other states take the
/// scheduler-optimal action against the nature-optimal distribution for the previous values.
ValueVector extremalBoundedUntil(Imdp const& model, StateSet const& safe, StateSet const& goal, unsigned horizon, QuantifierMode mode);

/// One step of the same recurrence from the indicator of `target`, applied to every state.
ValueVector extremalNext(Imdp const& model, StateSet const& target, QuantifierMode mode);

enum class Comparison { Less, LessEqual, Greater, GreaterEqual };

struct StateFormula;

struct PathFormula {
    enum class Kind { Next, BoundedUntil, Until };

    Kind kind;
    /// Unset for Next.
    std::shared_ptr<StateFormula const> left;
    std::shared_ptr<StateFormula const> right;
    unsigned horizon = 1;
};

struct StateFormula {
    enum class Kind { True, Atom, Not, And, Probability };

    Kind kind;
    std::string atom;
    std::shared_ptr<StateFormula const> left;
    std::shared_ptr<StateFormula const> right;
    Comparison comparison = Comparison::GreaterEqual;
    Rational threshold;
    QuantifierMode mode = QuantifierMode::MinMin;
    std::shared_ptr<PathFormula const> path;

    static std::shared_ptr<StateFormula const> makeTrue();
    static std::shared_ptr<StateFormula const> makeAtom(std::string name);
    static std::shared_ptr<StateFormula const> makeNot(std::shared_ptr<StateFormula const> inner);
    static std::shared_ptr<StateFormula const> makeAnd(std::shared_ptr<StateFormula const> a, std::shared_ptr<StateFormula const> b);
    static std::shared_ptr<StateFormula const> makeProbability(Comparison cmp, Rational threshold, QuantifierMode mode, std::shared_ptr<PathFormula const> path);
};

using FormulaPtr = std::shared_ptr<StateFormula const>;

/// Parses e.g. `P>=0.7 [ "a" U<=4 "b" ] mode=maximin`. Operators: `!`, `&`, `|` (loosest), parentheses, `true`,
/// quoted atoms, `P<op><p> [ path ]` with an optional `mode=` suffix (default minmin); paths are
/// `X φ`, `φ U<=k φ`, `F<=k φ` (short for `true U<=k φ`) or `φ U φ` (the last is accepted by the
/// parser and rejected on evaluation).
/// Throws FormulaParseError.
FormulaPtr parseFormula(std::string_view text);

std::string formatFormula(StateFormula const& formula);

/// The extremum a threshold node is decided by: the node's own mode for lower bounds (>=, >) and
/// its dual for upper bounds (<=, <).
QuantifierMode comparedMode(QuantifierMode mode, Comparison comparison);

/// Extremal values of a path formula. Throws UnboundedUntilError.
ValueVector pathValues(Imdp const& model, PathFormula const& path, QuantifierMode mode);

/// States satisfying the formula. Atoms not declared in the model hold nowhere. Throws
/// UnboundedUntilError.
StateSet checkStateFormula(Imdp const& model, StateFormula const& formula);

}  // namespace imdp
