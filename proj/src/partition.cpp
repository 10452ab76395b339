// Copyright (c) imdpmin contributors.
// SPDX-License-Identifier: Apache-2.0
#include "imdp/partition.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "imdp/errors.hpp"

namespace imdp {

Partition Partition::fromAssignment(std::vector<std::uint32_t> const& assignment) {
    std::map<std::uint32_t, std::vector<StateId>> grouped;
    for (StateId s = 0; s < assignment.size(); ++s) {
        grouped[assignment[s]].push_back(s);
    }
    std::vector<std::vector<StateId>> blocks;
    for (auto& [key, members] : grouped) {
        blocks.push_back(std::move(members));
    }
    return fromBlocks(assignment.size(), std::move(blocks));
}

Partition Partition::fromBlocks(std::size_t stateCount, std::vector<std::vector<StateId>> blocks) {
    Partition p;
    p.blockOf_.assign(stateCount, static_cast<BlockId>(-1));
    p.blocks_ = std::move(blocks);
    std::erase_if(p.blocks_, [](auto const& b) { return b.empty(); });
    for (BlockId b = 0; b < p.blocks_.size(); ++b) {
        for (StateId s : p.blocks_[b]) {
            if (s >= stateCount || p.blockOf_[s] != static_cast<BlockId>(-1)) {
                throw InvariantError("blocks are not disjoint or reference unknown states");
            }
            p.blockOf_[s] = b;
        }
    }
    if (std::any_of(p.blockOf_.begin(), p.blockOf_.end(), [](BlockId b) { return b == static_cast<BlockId>(-1); })) {
        throw InvariantError("blocks do not cover every state");
    }
    p.canonicalize();
    return p;
}

Partition Partition::discrete(std::size_t stateCount) {
    std::vector<std::vector<StateId>> blocks;
    for (StateId s = 0; s < stateCount; ++s) {
        blocks.push_back({s});
    }
    return fromBlocks(stateCount, std::move(blocks));
}

Partition Partition::single(std::size_t stateCount) {
    std::vector<StateId> all(stateCount);
    for (StateId s = 0; s < stateCount; ++s) {
        all[s] = s;
    }
    return fromBlocks(stateCount, {all});
}

void Partition::canonicalize() {
    for (auto& b : blocks_) {
        std::sort(b.begin(), b.end());
    }
    std::sort(blocks_.begin(), blocks_.end(), [](auto const& a, auto const& b) { return a.front() < b.front(); });
    for (BlockId b = 0; b < blocks_.size(); ++b) {
        for (StateId s : blocks_[b]) {
            blockOf_[s] = b;
        }
    }
}

bool Partition::refines(Partition const& coarser) const {
    if (coarser.stateCount() != stateCount()) {
        return false;
    }
    for (auto const& b : blocks_) {
        for (StateId s : b) {
            if (coarser.blockOf(s) != coarser.blockOf(b.front())) {
                return false;
            }
        }
    }
    return true;
}

Partition Partition::split(std::vector<StateId> const& part) const {
    if (part.empty()) {
        throw InvariantError("cannot split off an empty set");
    }
    BlockId source = blockOf_[part.front()];
    std::vector<StateId> sorted = part;
    std::sort(sorted.begin(), sorted.end());
    for (StateId s : sorted) {
        if (blockOf_[s] != source) {
            throw InvariantError("split set spans several blocks");
        }
    }
    if (sorted.size() == blocks_[source].size()) {
        throw InvariantError("split set equals the whole block");
    }
    auto blocks = blocks_;
    std::vector<StateId> rest;
    std::set_difference(blocks[source].begin(), blocks[source].end(), sorted.begin(), sorted.end(), std::back_inserter(rest));
    blocks[source] = std::move(rest);
    blocks.push_back(std::move(sorted));
    return fromBlocks(stateCount(), std::move(blocks));
}

std::string formatPartition(Imdp const& model, Partition const& partition) {
    std::ostringstream out;
    for (BlockId b = 0; b < partition.blockCount(); ++b) {
        out << 'B' << b << ':';
        for (StateId s : partition.block(b)) {
            out << ' ' << model.stateName(s);
        }
        out << '\n';
    }
    return out.str();
}

}  // namespace imdp
