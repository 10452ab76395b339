// Copyright (c) imdpmin contributors.
// SPDX-License-Identifier: Apache-2.0
#include "imdp/bisim.hpp"

#include <algorithm>
#include <map>
#include <thread>

#include "imdp/errors.hpp"
#include "imdp/geometry.hpp"

namespace imdp {

std::string_view kindName(BisimKind kind) {
    return kind == BisimKind::Cooperative ? "coop" : "comp";
}

std::optional<BisimKind> parseKind(std::string_view name) {
    if (name == "coop" || name == "cooperative") {
        return BisimKind::Cooperative;
    }
    if (name == "comp" || name == "competitive") {
        return BisimKind::Competitive;
    }
    return std::nullopt;
}

Partition initialPartition(Imdp const& model) {
    std::map<std::vector<PropId>, std::uint32_t> classes;
    std::vector<std::uint32_t> assignment(model.stateCount());
    for (StateId s = 0; s < model.stateCount(); ++s) {
        auto it = classes.try_emplace(model.labels(s), static_cast<std::uint32_t>(classes.size())).first;
        assignment[s] = it->second;
    }
    return Partition::fromAssignment(assignment);
}

bool violateCoop(Imdp const& model, StateId s, StateId t, Partition const& partition) {
    if (s == t) {
        return false;
    }
    return !hullEqual(classPolytopes(model, s, partition), classPolytopes(model, t, partition));
}

bool violateComp(Imdp const& model, StateId s, StateId t, Partition const& partition) {
    if (s == t) {
        return false;
    }
    auto const first = strictlyMinimalSet(model, s, partition);
    auto const second = strictlyMinimalSet(model, t, partition);
    return !std::equal(first.begin(), first.end(), second.begin(), second.end(), [](ClassPolytope const& a, ClassPolytope const& b) { return a.sameSet(b); });
}

bool violate(BisimKind kind, Imdp const& model, StateId s, StateId t, Partition const& partition) {
    return kind == BisimKind::Cooperative ? violateCoop(model, s, t, partition) : violateComp(model, s, t, partition);
}

namespace {

/// Canonical behaviour of one state under a partition: the sorted extreme points of its hull
/// (cooperative) or the sorted vertex lists of its strictly minimal polytopes (competitive).
/// Blocks are named by their least state so that a signature stays valid as long as none of the
/// blocks it mentions is split.
using Signature = std::vector<std::vector<ClassDistribution>>;

ClassDistribution renameBlocks(ClassDistribution const& x, Partition const& partition) {
    std::vector<ClassDistribution::Entry> entries;
    entries.reserve(x.entries().size());
    for (auto const& [block, w] : x.entries()) {
        entries.emplace_back(partition.block(block).front(), w);
    }
    return ClassDistribution(std::move(entries));
}

std::vector<ClassDistribution> renameAll(std::vector<ClassDistribution> const& points, Partition const& partition) {
    std::vector<ClassDistribution> renamed;
    renamed.reserve(points.size());
    for (auto const& p : points) {
        renamed.push_back(renameBlocks(p, partition));
    }
    std::sort(renamed.begin(), renamed.end());
    return renamed;
}

Signature signature(BisimKind kind, Imdp const& model, StateId s, Partition const& partition) {
    Signature sig;
    if (kind == BisimKind::Cooperative) {
        sig.push_back(renameAll(hullVertices(classPolytopes(model, s, partition)), partition));
    } else {
        for (auto const& p : strictlyMinimalSet(model, s, partition)) {
            sig.push_back(renameAll(p.vertices(), partition));
        }
        std::sort(sig.begin(), sig.end());
    }
    return sig;
}

class Refiner {
   public:
    Refiner(Imdp const& model, BisimKind kind, BisimOptions const& options)
        : model_(model), kind_(kind), options_(options), partition_(initialPartition(model)), signatures_(model.stateCount()), predecessors_(model.stateCount()) {
        for (StateId s = 0; s < model.stateCount(); ++s) {
            for (auto const& choice : model.choices(s)) {
                for (auto const& succ : choice.successors) {
                    auto& preds = predecessors_[succ.target];
                    if (preds.empty() || preds.back() != s) {
                        preds.push_back(s);
                    }
                }
            }
        }
        for (auto& preds : predecessors_) {
            std::sort(preds.begin(), preds.end());
            preds.erase(std::unique(preds.begin(), preds.end()), preds.end());
        }
    }

    BisimResult run() {
        std::vector<StateId> order = options_.order;
        if (order.empty()) {
            order.resize(model_.stateCount());
            for (StateId s = 0; s < order.size(); ++s) {
                order[s] = s;
            }
        } else {
            std::vector<bool> seen(model_.stateCount(), false);
            bool permutation = order.size() == model_.stateCount();
            for (StateId s : order) {
                permutation = permutation && s < seen.size() && !seen[s];
                if (permutation) {
                    seen[s] = true;
                }
            }
            if (!permutation) {
                throw InvariantError("state order is not a permutation of the states");
            }
        }

        BisimResult result;
        if (options_.keepHistory) {
            result.history.push_back(partition_);
        }
        bool changed = true;
        while (changed) {
            changed = false;
            ++result.sweeps;
            for (StateId s : order) {
                std::vector<StateId> const members = partition_.block(partition_.blockOf(s));
                if (members.size() == 1) {
                    continue;
                }
                ensureSignatures(members);
                std::vector<StateId> violators;
                for (StateId t : members) {
                    if (*signatures_[t] != *signatures_[s]) {
                        violators.push_back(t);
                    }
                }
                if (violators.empty()) {
                    continue;
                }
                partition_ = partition_.split(violators);
                ++result.splits;
                changed = true;
                for (StateId t : members) {
                    for (StateId pred : predecessors_[t]) {
                        signatures_[pred].reset();
                    }
                }
            }
            if (options_.keepHistory) {
                result.history.push_back(partition_);
            }
        }
        result.partition = partition_;
        return result;
    }

   private:
    void ensureSignatures(std::vector<StateId> const& states) {
        std::vector<StateId> missing;
        for (StateId s : states) {
            if (!signatures_[s]) {
                missing.push_back(s);
            }
        }
        unsigned const workers = std::min<std::size_t>(std::max(1U, options_.jobs), missing.size());
        if (workers <= 1) {
            for (StateId s : missing) {
                signatures_[s] = signature(kind_, model_, s, partition_);
            }
            return;
        }
        std::vector<std::thread> threads;
        std::vector<std::exception_ptr> errors(workers);
        for (unsigned w = 0; w < workers; ++w) {
            threads.emplace_back([&, w] {
                try {
                    for (std::size_t i = w; i < missing.size(); i += workers) {
                        signatures_[missing[i]] = signature(kind_, model_, missing[i], partition_);
                    }
                } catch (...) {
                    errors[w] = std::current_exception();
                }
            });
        }
        for (auto& thread : threads) {
            thread.join();
        }
        for (auto const& error : errors) {
            if (error) {
                std::rethrow_exception(error);
            }
        }
    }

    Imdp const& model_;
    BisimKind kind_;
    BisimOptions const& options_;
    Partition partition_;
    std::vector<std::optional<Signature>> signatures_;
    std::vector<std::vector<StateId>> predecessors_;
};

}  // namespace

BisimResult refine(Imdp const& model, BisimKind kind, BisimOptions const& options) {
    return Refiner(model, kind, options).run();
}

Imdp quotient(Imdp const& model, Partition const& partition) {
    if (partition.stateCount() != model.stateCount()) {
        throw InvariantError("partition and model disagree on the number of states");
    }
    ImdpBuilder builder;
    for (auto const& block : partition.blocks()) {
        StateId const rep = block.front();
        for (StateId s : block) {
            if (model.labels(s) != model.labels(rep)) {
                throw NotLabelUniformError("block of '" + model.stateName(rep) + "' mixes labels with '" + model.stateName(s) + "'");
            }
        }
        builder.addState(model.stateName(rep));
        for (PropId p : model.labels(rep)) {
            builder.addLabel(model.stateName(rep), model.propName(p));
        }
    }
    for (auto const& block : partition.blocks()) {
        StateId const rep = block.front();
        for (auto const& choice : model.choices(rep)) {
            ClassPolytope const polytope = classPolytope(model, rep, choice.action, partition);
            std::vector<std::pair<std::string, Interval>> successors;
            for (auto const& [target, bound] : polytope.bounds()) {
                successors.emplace_back(model.stateName(partition.block(target).front()), bound);
            }
            builder.addChoice(model.stateName(rep), model.actionName(choice.action), std::move(successors));
        }
    }
    if (auto initial = model.initialState()) {
        builder.setInitial(model.stateName(partition.block(partition.blockOf(*initial)).front()));
    }
    return builder.build();
}

}  // namespace imdp
