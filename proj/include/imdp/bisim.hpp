// Copyright (c) imdpmin contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "imdp/model.hpp"
#include "imdp/partition.hpp"

namespace imdp {

enum class BisimKind { Cooperative, Competitive };

/// "coop" or "comp".
std::string_view kindName(BisimKind kind);
std::optional<BisimKind> parseKind(std::string_view name);

/// Blocks are the classes of states with identical label sets.
Partition initialPartition(Imdp const& model);

/// True iff the convex hulls of the lifted action polytopes of s and t differ.
bool violateCoop(Imdp const& model, StateId s, StateId t, Partition const& partition);

/// True iff s and t have different sets of strictly minimal lifted polytopes.
bool violateComp(Imdp const& model, StateId s, StateId t, Partition const& partition);

bool violate(BisimKind kind, Imdp const& model, StateId s, StateId t, Partition const& partition);

struct BisimOptions {
    /// Order in which states are visited in each sweep; empty means ascending state id.
    std::vector<StateId> order;
    /// Worker threads used to evaluate state signatures inside a sweep.
    unsigned jobs = 1;
    /// Keep the label partition followed by the partition reached after every sweep.
    bool keepHistory = false;
};

struct BisimResult {
    Partition partition;
    std::size_t sweeps = 0;
    std::size_t splits = 0;
    std::vector<Partition> history;
};

/// Partition refinement from the label partition: each sweep visits every state s, moves the
/// states of its block that violate against s into a new block, and sweeps repeat until a full
/// sweep splits nothing.
BisimResult refine(Imdp const& model, BisimKind kind, BisimOptions const& options = {});

inline Partition bisimulation(Imdp const& model, BisimKind kind) { return refine(model, kind).partition; }

/// One state per block, named after the block's least state. The representative's enabled actions
/// carry the lifted bounds of its class polytopes. Throws NotLabelUniformError.
Imdp quotient(Imdp const& model, Partition const& partition);

/// State cap of the brute-force oracle: IMDP_ORACLE_BOUND if set, 8 otherwise.
std::size_t oracleBound();

/// Exhaustive search over every partition refining the label partition for the coarsest one
/// passing a pairwise bisimulation check computed without the refinement engine. Throws
/// OracleBoundError above `bound` states.
Partition bruteForceBisimulation(Imdp const& model, BisimKind kind, std::size_t bound);

inline Partition bruteForceBisimulation(Imdp const& model, BisimKind kind) { return bruteForceBisimulation(model, kind, oracleBound()); }

}  // namespace imdp
