// Copyright (c) imdpmin contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "imdp/rational.hpp"

namespace imdp {

using StateId = std::uint32_t;
using ActionId = std::uint32_t;
using PropId = std::uint32_t;

/// Closed interval of probabilities. Well-formed intervals satisfy 0 <= lo <= hi <= 1; the type
/// itself can hold malformed values so that validate() is able to report them.
struct Interval {
    Rational lo;
    Rational hi;

    Interval() = default;
    Interval(Rational lower, Rational upper) : lo(std::move(lower)), hi(std::move(upper)) {}

    static Interval point(Rational const& p) { return Interval(p, p); }

    bool isWellFormed() const { return 0 <= lo && lo <= hi && hi <= 1; }
    bool isPoint() const { return lo == hi; }
    bool isZero() const { return lo == 0 && hi == 0; }
    bool contains(Rational const& x) const { return lo <= x && x <= hi; }

    friend bool operator==(Interval const& a, Interval const& b) { return a.lo == b.lo && a.hi == b.hi; }
    friend bool operator<(Interval const& a, Interval const& b) {
        if (a.lo != b.lo) {
            return a.lo < b.lo;
        }
        return a.hi < b.hi;
    }
};

/// `[lo,hi]`, endpoints in decimal where exact.
std::string formatInterval(Interval const& interval);

struct Successor {
    StateId target;
    Interval probability;

    friend bool operator==(Successor const&, Successor const&) = default;
};

/// The interval row I(s,a,.) of one enabled action. Successors are sorted by target and never
/// carry the interval [0,0]; absent targets mean [0,0].
struct Choice {
    ActionId action;
    std::vector<Successor> successors;

    friend bool operator==(Choice const&, Choice const&) = default;
};

/// Interval Markov decision process. States, actions and propositions are kept in lexicographic
/// order of their names, so two models built from the same content compare equal. Instances are
/// immutable; build them with ImdpBuilder.
class Imdp {
   public:
    std::size_t stateCount() const { return stateNames_.size(); }
    std::size_t actionCount() const { return actionNames_.size(); }
    std::size_t propCount() const { return propNames_.size(); }

    std::string const& stateName(StateId s) const { return stateNames_[s]; }
    std::string const& actionName(ActionId a) const { return actionNames_[a]; }
    std::string const& propName(PropId p) const { return propNames_[p]; }

    std::vector<std::string> const& stateNames() const { return stateNames_; }
    std::vector<std::string> const& actionNames() const { return actionNames_; }
    std::vector<std::string> const& propNames() const { return propNames_; }

    std::optional<StateId> findState(std::string_view name) const;
    std::optional<ActionId> findAction(std::string_view name) const;
    std::optional<PropId> findProp(std::string_view name) const;

    /// Sorted proposition ids holding in s.
    std::vector<PropId> const& labels(StateId s) const { return labels_[s]; }
    bool hasLabel(StateId s, PropId p) const;

    /// Enabled actions of s, sorted by action id.
    std::vector<Choice> const& choices(StateId s) const { return choices_[s]; }
    Choice const* findChoice(StateId s, ActionId a) const;

    std::optional<StateId> initialState() const { return initial_; }

    friend bool operator==(Imdp const&, Imdp const&) = default;

   private:
    friend class ImdpBuilder;

    std::vector<std::string> stateNames_;
    std::vector<std::string> actionNames_;
    std::vector<std::string> propNames_;
    std::vector<std::vector<PropId>> labels_;
    std::vector<std::vector<Choice>> choices_;
    std::optional<StateId> initial_;
};

/// Name-based assembly of an Imdp. Structural errors (unknown or duplicate names, duplicate
/// (s,a) rows or (s,a,s') triples) raise ModelError from the offending call or from build().
class ImdpBuilder {
   public:
    ImdpBuilder& addState(std::string const& name);
    ImdpBuilder& setInitial(std::string const& name);
    ImdpBuilder& addLabel(std::string const& state, std::string const& prop);
    ImdpBuilder& addChoice(std::string const& state, std::string const& action, std::vector<std::pair<std::string, Interval>> successors);

    bool hasState(std::string const& name) const;
    bool hasChoice(std::string const& state, std::string const& action) const;

    Imdp build() const;

   private:
    struct PendingChoice {
        std::string state;
        std::string action;
        std::vector<std::pair<std::string, Interval>> successors;
    };

    std::vector<std::string> states_;
    std::set<std::string> stateIndex_;
    std::set<std::pair<std::string, std::string>> choiceIndex_;
    std::optional<std::string> initial_;
    std::vector<std::pair<std::string, std::string>> labels_;
    std::vector<PendingChoice> choices_;
};

struct Violation {
    enum class Kind { MalformedInterval, Infeasible, NoStates, NoEnabledAction };
    Kind kind;
    std::string message;
};

struct ValidationReport {
    std::vector<Violation> violations;

    bool valid() const { return violations.empty(); }
};

/// Lists every malformed interval, every enabled (s,a) whose row cannot sum to one, and
/// states without enabled actions. An empty report means every downstream operation is defined.
ValidationReport validate(Imdp const& model);

std::string formatReport(ValidationReport const& report);

struct ModelMetrics {
    std::size_t stateCount = 0;
    /// Number of enabled (s,a) pairs.
    std::size_t transitionCount = 0;
    /// f: largest number of successors with an interval other than [0,0].
    std::size_t maxFanout = 0;
    /// b: largest number of distinct rows I(s,a,.) within one state.
    std::size_t maxDistinctActions = 0;
};

ModelMetrics metrics(Imdp const& model);

}  // namespace imdp
