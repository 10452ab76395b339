// Copyright (c) imdpmin contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <utility>
#include <vector>

#include "imdp/model.hpp"
#include "imdp/partition.hpp"

namespace imdp {

/// Sparse distribution over the blocks of a partition. Entries are sorted by block and zero
/// weights are omitted, so structural equality is equality of distributions.
class ClassDistribution {
   public:
    using Entry = std::pair<BlockId, Rational>;

    ClassDistribution() = default;
    /// Entries may be unsorted and contain zeros or repeated blocks (repeats are summed).
    explicit ClassDistribution(std::vector<Entry> entries);

    std::vector<Entry> const& entries() const { return entries_; }
    Rational weight(BlockId block) const;
    Rational total() const;
    /// Non-negative weights summing to exactly one.
    bool isDistribution() const;

    friend bool operator==(ClassDistribution const& a, ClassDistribution const& b) { return a.entries_ == b.entries_; }
    /// Lexicographic order on the dense vectors.
    friend bool operator<(ClassDistribution const& a, ClassDistribution const& b);

   private:
    std::vector<Entry> entries_;
};

std::string formatDistribution(ClassDistribution const& x);

/// The interval polytope {x : sum_C x(C) = 1, lo_C <= x(C) <= hi_C} over the blocks of a partition
/// with `dimension` blocks. Blocks whose bound is [0,0] are not stored. The vertex list is
/// computed on construction (for non-empty polytopes), sorted and deduplicated; it doubles as the
/// canonical form, so two polytopes are the same set iff their vertex lists are equal.
class ClassPolytope {
   public:
    using Bound = std::pair<BlockId, Interval>;

    ClassPolytope(std::size_t dimension, std::vector<Bound> bounds);

    std::size_t dimension() const { return dimension_; }
    std::vector<Bound> const& bounds() const { return bounds_; }
    Interval bound(BlockId block) const;

    bool isEmpty() const { return empty_; }
    bool contains(ClassDistribution const& x) const;

    /// Throws EmptyPolytopeError for empty polytopes.
    std::vector<ClassDistribution> const& vertices() const;

    /// Geometric equality (same dimension, same vertex set).
    bool sameSet(ClassPolytope const& other) const { return dimension_ == other.dimension_ && empty_ == other.empty_ && vertices_ == other.vertices_; }
    /// Total order on canonical forms, for sorting and set comparison.
    friend bool operator<(ClassPolytope const& a, ClassPolytope const& b);

    /// `block:[lo,hi]` lines.
    std::string dump() const;

   private:
    std::size_t dimension_;
    std::vector<Bound> bounds_;
    bool empty_;
    std::vector<ClassDistribution> vertices_;
};

/// Vertices of a non-empty interval polytope. Every block other than one slack block is pinned to
/// an endpoint, the slack block absorbs the residual mass, and candidates whose slack value leaves
/// its bound are discarded. With k blocks of non-zero width at most k*2^(k-1) vertices result.
std::vector<ClassDistribution> vertices(ClassPolytope const& polytope);

/// The lifted polytope H(s,a,P): bound of block C is [sum lo, min(1, sum hi)] over the targets
/// of a that lie in C. Throws DisabledActionError when a is not enabled in s.
ClassPolytope classPolytope(Imdp const& model, StateId s, ActionId a, Partition const& partition);

/// Lifted polytopes of every enabled action of s, in action order.
std::vector<ClassPolytope> classPolytopes(Imdp const& model, StateId s, Partition const& partition);

/// Family of polytopes over the same blocks standing for the convex hull of their union.
using HullFamily = std::vector<ClassPolytope>;

/// Decides by exact LP whether x is a convex combination of the vertices of the members.
/// Throws BlockMismatchError when dimensions disagree or the family is empty.
bool memberOfHull(ClassDistribution const& x, HullFamily const& family);

/// conv(union f1) == conv(union f2), by mutual vertex membership.
bool hullEqual(HullFamily const& first, HullFamily const& second);

/// Extreme points of conv(union family), sorted. Two families have the same hull iff these agree.
std::vector<ClassDistribution> hullVertices(HullFamily const& family);

/// Mixing weights for a list of constituents: non-negative, summing to one.
using WeightVector = std::vector<Rational>;

/// sum_i rho_i * corners_i. Throws InvariantError on mismatched sizes or invalid weights.
ClassDistribution combinationPoint(WeightVector const& rho, std::vector<ClassDistribution> const& corners);

/// Geometrically distinct polytopes in the order of first appearance.
std::vector<ClassPolytope> distinctPolytopes(std::vector<ClassPolytope> const& polytopes);

/// True iff no rho over `others` places the weighted sum of the others inside `target`. Decided
/// as infeasibility of an exact LP over rho: for every combination of corners (one per other
/// polytope) and every block C, lo_C <= sum_i rho_i c_i(C) <= hi_C. `others` must not contain
/// `target` itself.
bool strictlyMinimalAgainst(ClassPolytope const& target, std::vector<ClassPolytope> const& others);

/// Strict minimality of H(s,a,P) among the distinct lifted polytopes of s. A state with a single
/// distinct polytope is trivially strictly minimal. Throws DisabledActionError.
bool strictlyMinimal(Imdp const& model, StateId s, ActionId a, Partition const& partition);

/// Sorted, deduplicated strictly minimal polytopes of s.
std::vector<ClassPolytope> strictlyMinimalSet(Imdp const& model, StateId s, Partition const& partition);

}  // namespace imdp
