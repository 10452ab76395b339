// Copyright (c) imdpmin contributors.
// SPDX-License-Identifier: Apache-2.0
#include "imdp/model.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "imdp/errors.hpp"

namespace imdp {

std::string formatInterval(Interval const& interval) {
    return "[" + formatRational(interval.lo) + "," + formatRational(interval.hi) + "]";
}

namespace {

template<typename Id>
std::optional<Id> findSorted(std::vector<std::string> const& names, std::string_view name) {
    auto it = std::lower_bound(names.begin(), names.end(), name, [](std::string const& a, std::string_view b) { return a < b; });
    if (it == names.end() || *it != name) {
        return std::nullopt;
    }
    return static_cast<Id>(it - names.begin());
}

}  // namespace

std::optional<StateId> Imdp::findState(std::string_view name) const {
    return findSorted<StateId>(stateNames_, name);
}

std::optional<ActionId> Imdp::findAction(std::string_view name) const {
    return findSorted<ActionId>(actionNames_, name);
}

std::optional<PropId> Imdp::findProp(std::string_view name) const {
    return findSorted<PropId>(propNames_, name);
}

bool Imdp::hasLabel(StateId s, PropId p) const {
    return std::binary_search(labels_[s].begin(), labels_[s].end(), p);
}

Choice const* Imdp::findChoice(StateId s, ActionId a) const {
    auto const& row = choices_[s];
    auto it = std::lower_bound(row.begin(), row.end(), a, [](Choice const& c, ActionId id) { return c.action < id; });
    if (it == row.end() || it->action != a) {
        return nullptr;
    }
    return &*it;
}

ImdpBuilder& ImdpBuilder::addState(std::string const& name) {
    if (hasState(name)) {
        throw ModelError("duplicate state '" + name + "'");
    }
    states_.push_back(name);
    stateIndex_.insert(name);
    return *this;
}

ImdpBuilder& ImdpBuilder::setInitial(std::string const& name) {
    initial_ = name;
    return *this;
}

ImdpBuilder& ImdpBuilder::addLabel(std::string const& state, std::string const& prop) {
    labels_.emplace_back(state, prop);
    return *this;
}

ImdpBuilder& ImdpBuilder::addChoice(std::string const& state, std::string const& action, std::vector<std::pair<std::string, Interval>> successors) {
    if (hasChoice(state, action)) {
        throw ModelError("duplicate transition line for state '" + state + "' and action '" + action + "'");
    }
    choiceIndex_.emplace(state, action);
    choices_.push_back(PendingChoice{state, action, std::move(successors)});
    return *this;
}

bool ImdpBuilder::hasState(std::string const& name) const {
    return stateIndex_.count(name) > 0;
}

bool ImdpBuilder::hasChoice(std::string const& state, std::string const& action) const {
    return choiceIndex_.count({state, action}) > 0;
}

Imdp ImdpBuilder::build() const {
    Imdp m;
    m.stateNames_ = states_;
    std::sort(m.stateNames_.begin(), m.stateNames_.end());

    std::set<std::string> actions;
    for (auto const& c : choices_) {
        actions.insert(c.action);
    }
    m.actionNames_.assign(actions.begin(), actions.end());

    std::set<std::string> props;
    for (auto const& [state, prop] : labels_) {
        props.insert(prop);
    }
    m.propNames_.assign(props.begin(), props.end());

    auto stateId = [&](std::string const& name) {
        auto id = m.findState(name);
        if (!id) {
            throw ModelError("unknown state '" + name + "'");
        }
        return *id;
    };

    m.labels_.assign(m.stateNames_.size(), {});
    for (auto const& [state, prop] : labels_) {
        m.labels_[stateId(state)].push_back(*m.findProp(prop));
    }
    for (auto& l : m.labels_) {
        std::sort(l.begin(), l.end());
        l.erase(std::unique(l.begin(), l.end()), l.end());
    }

    m.choices_.assign(m.stateNames_.size(), {});
    for (auto const& pending : choices_) {
        Choice choice{*m.findAction(pending.action), {}};
        for (auto const& [target, interval] : pending.successors) {
            StateId t = stateId(target);
            if (std::any_of(choice.successors.begin(), choice.successors.end(), [t](Successor const& x) { return x.target == t; })) {
                throw ModelError("duplicate target '" + target + "' for state '" + pending.state + "' and action '" + pending.action + "'");
            }
            choice.successors.push_back(Successor{t, interval});
        }
        std::erase_if(choice.successors, [](Successor const& x) { return x.probability.isZero(); });
        std::sort(choice.successors.begin(), choice.successors.end(), [](Successor const& a, Successor const& b) { return a.target < b.target; });
        m.choices_[stateId(pending.state)].push_back(std::move(choice));
    }
    for (auto& row : m.choices_) {
        std::sort(row.begin(), row.end(), [](Choice const& a, Choice const& b) { return a.action < b.action; });
    }

    if (initial_) {
        m.initial_ = stateId(*initial_);
    }
    return m;
}

ValidationReport validate(Imdp const& model) {
    ValidationReport report;
    if (model.stateCount() == 0) {
        report.violations.push_back({Violation::Kind::NoStates, "model has no states"});
        return report;
    }
    for (StateId s = 0; s < model.stateCount(); ++s) {
        auto const& choices = model.choices(s);
        if (choices.empty()) {
            report.violations.push_back({Violation::Kind::NoEnabledAction, "state '" + model.stateName(s) + "' has no enabled action"});
        }
        for (auto const& choice : choices) {
            std::string where = "state '" + model.stateName(s) + "', action '" + model.actionName(choice.action) + "'";
            Rational sumLo = 0;
            Rational sumHi = 0;
            bool wellFormed = true;
            for (auto const& succ : choice.successors) {
                if (!succ.probability.isWellFormed()) {
                    wellFormed = false;
                    report.violations.push_back({Violation::Kind::MalformedInterval,
                                                 where + ", target '" + model.stateName(succ.target) + "': malformed interval " + formatInterval(succ.probability)});
                }
                sumLo += succ.probability.lo;
                sumHi += succ.probability.hi;
            }
            if (!wellFormed) {
                continue;
            }
            if (sumLo > 1) {
                report.violations.push_back({Violation::Kind::Infeasible, where + ": infeasible, sum of lower bounds " + formatRational(sumLo) + " > 1"});
            } else if (sumHi < 1) {
                report.violations.push_back({Violation::Kind::Infeasible, where + ": infeasible, sum of upper bounds " + formatRational(sumHi) + " < 1"});
            }
        }
    }
    return report;
}

std::string formatReport(ValidationReport const& report) {
    std::ostringstream out;
    if (report.valid()) {
        out << "valid\n";
        return out.str();
    }
    for (auto const& v : report.violations) {
        out << "error: " << v.message << "\n";
    }
    out << report.violations.size() << " violation(s)\n";
    return out.str();
}

ModelMetrics metrics(Imdp const& model) {
    ModelMetrics result;
    result.stateCount = model.stateCount();
    for (StateId s = 0; s < model.stateCount(); ++s) {
        auto const& choices = model.choices(s);
        result.transitionCount += choices.size();
        std::vector<std::vector<Successor> const*> rows;
        for (auto const& choice : choices) {
            result.maxFanout = std::max(result.maxFanout, choice.successors.size());
            if (std::none_of(rows.begin(), rows.end(), [&](auto const* r) { return *r == choice.successors; })) {
                rows.push_back(&choice.successors);
            }
        }
        result.maxDistinctActions = std::max(result.maxDistinctActions, rows.size());
    }
    return result;
}

}  // namespace imdp
