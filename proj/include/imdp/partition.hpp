// Copyright (c) imdpmin contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <vector>

#include "imdp/model.hpp"

namespace imdp {

using BlockId = std::uint32_t;

/// Equivalence relation on states stored as disjoint blocks. Canonical form: states sorted inside
/// each block and blocks ordered by their least state, so equal relations compare equal.
class Partition {
   public:
    Partition() = default;

    /// Builds from a block assignment; block numbering in the input is arbitrary.
    static Partition fromAssignment(std::vector<std::uint32_t> const& assignment);
    static Partition fromBlocks(std::size_t stateCount, std::vector<std::vector<StateId>> blocks);
    static Partition discrete(std::size_t stateCount);
    static Partition single(std::size_t stateCount);

    std::size_t stateCount() const { return blockOf_.size(); }
    std::size_t blockCount() const { return blocks_.size(); }

    BlockId blockOf(StateId s) const { return blockOf_[s]; }
    std::vector<StateId> const& block(BlockId b) const { return blocks_[b]; }
    std::vector<std::vector<StateId>> const& blocks() const { return blocks_; }

    bool sameBlock(StateId s, StateId t) const { return blockOf_[s] == blockOf_[t]; }

    /// True when every block of this partition lies inside a block of `coarser`.
    bool refines(Partition const& coarser) const;

    /// Moves `part` (a proper non-empty subset of a single block) into a block of its own and
    /// returns the canonical result.
    Partition split(std::vector<StateId> const& part) const;

    friend bool operator==(Partition const&, Partition const&) = default;

   private:
    void canonicalize();

    std::vector<BlockId> blockOf_;
    std::vector<std::vector<StateId>> blocks_;
};

/// One line per block, `B<k>: s1 s2 ...`, using state names and canonical block order.
std::string formatPartition(Imdp const& model, Partition const& partition);

}  // namespace imdp
