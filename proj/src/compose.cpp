// Copyright (c) imdpmin contributors.
// SPDX-License-Identifier: Apache-2.0
#include "imdp/compose.hpp"

#include <deque>
#include <map>

#include "imdp/errors.hpp"

namespace imdp {

namespace {

bool enabledSomewhere(Imdp const& m, std::optional<ActionId> action) {
    if (!action) {
        return false;
    }
    for (StateId s = 0; s < m.stateCount(); ++s) {
        if (m.findChoice(s, *action)) {
            return true;
        }
    }
    return false;
}

void requirePointSync(Imdp const& m, int component, ActionId action) {
    for (StateId s = 0; s < m.stateCount(); ++s) {
        Choice const* choice = m.findChoice(s, action);
        if (!choice) {
            continue;
        }
        for (auto const& succ : choice->successors) {
            if (!succ.probability.isPoint()) {
                throw SyncUncertaintyError("synchronised action '" + m.actionName(action) + "' carries the uncertain interval " +
                                           formatInterval(succ.probability) + " in component " + std::to_string(component) + ", state '" +
                                           m.stateName(s) + "'");
            }
        }
    }
}

}  // namespace

Imdp compose(Imdp const& first, Imdp const& second, std::set<std::string> const& sync) {
    for (auto const& name : sync) {
        auto a1 = first.findAction(name);
        auto a2 = second.findAction(name);
        if (enabledSomewhere(first, a1) && enabledSomewhere(second, a2)) {
            requirePointSync(first, 1, *a1);
            requirePointSync(second, 2, *a2);
        }
    }
    if (!first.initialState() || !second.initialState()) {
        throw ModelError("composition needs an initial state in both components");
    }

    using Pair = std::pair<StateId, StateId>;
    std::map<Pair, std::string> names;
    std::deque<Pair> queue;
    auto nameOf = [&](Pair const& p) -> std::string const& {
        auto it = names.find(p);
        if (it == names.end()) {
            it = names.emplace(p, first.stateName(p.first) + kProductSeparator + second.stateName(p.second)).first;
            queue.push_back(p);
        }
        return it->second;
    };

    ImdpBuilder builder;
    Pair init{*first.initialState(), *second.initialState()};
    builder.setInitial(nameOf(init));

    while (!queue.empty()) {
        Pair current = queue.front();
        queue.pop_front();
        auto const [s1, s2] = current;
        std::string const name = names.at(current);
        builder.addState(name);
        for (PropId p : first.labels(s1)) {
            builder.addLabel(name, first.propName(p));
        }
        for (PropId p : second.labels(s2)) {
            builder.addLabel(name, second.propName(p));
        }

        bool anyEnabled = false;
        for (auto const& c1 : first.choices(s1)) {
            std::string const& action = first.actionName(c1.action);
            std::vector<std::pair<std::string, Interval>> successors;
            if (sync.count(action)) {
                auto a2 = second.findAction(action);
                Choice const* c2 = a2 ? second.findChoice(s2, *a2) : nullptr;
                if (!c2) {
                    continue;
                }
                for (auto const& x : c1.successors) {
                    for (auto const& y : c2->successors) {
                        Rational p = x.probability.lo * y.probability.lo;
                        if (p != 0) {
                            successors.emplace_back(nameOf({x.target, y.target}), Interval::point(p));
                        }
                    }
                }
            } else {
                if (auto a2 = second.findAction(action); a2 && second.findChoice(s2, *a2)) {
                    throw ModelError("action '" + action + "' is enabled in both components at '" + name + "' but is not synchronised");
                }
                for (auto const& x : c1.successors) {
                    successors.emplace_back(nameOf({x.target, s2}), x.probability);
                }
            }
            builder.addChoice(name, action, std::move(successors));
            anyEnabled = true;
        }
        for (auto const& c2 : second.choices(s2)) {
            std::string const& action = second.actionName(c2.action);
            if (sync.count(action)) {
                continue;
            }
            std::vector<std::pair<std::string, Interval>> successors;
            for (auto const& y : c2.successors) {
                successors.emplace_back(nameOf({s1, y.target}), y.probability);
            }
            builder.addChoice(name, action, std::move(successors));
            anyEnabled = true;
        }
        if (!anyEnabled) {
            throw ModelError("product state '" + name + "' has no enabled action");
        }
    }
    return builder.build();
}

}  // namespace imdp
