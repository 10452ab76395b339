// Copyright (c) imdpmin contributors.
// SPDX-License-Identifier: Apache-2.0
#include "imdp/geometry.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "imdp/errors.hpp"
#include "imdp/lp.hpp"

namespace imdp {

ClassDistribution::ClassDistribution(std::vector<Entry> entries) {
    std::sort(entries.begin(), entries.end(), [](Entry const& a, Entry const& b) { return a.first < b.first; });
    for (auto& [block, w] : entries) {
        if (!entries_.empty() && entries_.back().first == block) {
            entries_.back().second += w;
        } else {
            entries_.emplace_back(block, std::move(w));
        }
    }
    std::erase_if(entries_, [](Entry const& e) { return e.second == 0; });
}

Rational ClassDistribution::weight(BlockId block) const {
    auto it = std::lower_bound(entries_.begin(), entries_.end(), block, [](Entry const& e, BlockId b) { return e.first < b; });
    if (it == entries_.end() || it->first != block) {
        return 0;
    }
    return it->second;
}

Rational ClassDistribution::total() const {
    Rational sum = 0;
    for (auto const& e : entries_) {
        sum += e.second;
    }
    return sum;
}

bool ClassDistribution::isDistribution() const {
    return std::all_of(entries_.begin(), entries_.end(), [](Entry const& e) { return e.second >= 0; }) && total() == 1;
}

bool operator<(ClassDistribution const& a, ClassDistribution const& b) {
    // Walk both sparse vectors; the first block where the dense values differ decides.
    auto i = a.entries_.begin();
    auto j = b.entries_.begin();
    while (i != a.entries_.end() || j != b.entries_.end()) {
        if (j == b.entries_.end() || (i != a.entries_.end() && i->first < j->first)) {
            return i->second < 0;
        }
        if (i == a.entries_.end() || j->first < i->first) {
            return 0 < j->second;
        }
        if (i->second != j->second) {
            return i->second < j->second;
        }
        ++i;
        ++j;
    }
    return false;
}

std::string formatDistribution(ClassDistribution const& x) {
    std::string out = "{";
    bool first = true;
    for (auto const& [block, w] : x.entries()) {
        if (!first) {
            out += ", ";
        }
        first = false;
        out += std::to_string(block) + ":" + formatRational(w);
    }
    return out + "}";
}

ClassPolytope::ClassPolytope(std::size_t dimension, std::vector<Bound> bounds) : dimension_(dimension) {
    std::sort(bounds.begin(), bounds.end(), [](Bound const& a, Bound const& b) { return a.first < b.first; });
    Rational sumLo = 0;
    Rational sumHi = 0;
    for (auto& [block, interval] : bounds) {
        if (block >= dimension) {
            throw BlockMismatchError("bound refers to block " + std::to_string(block) + " outside dimension " + std::to_string(dimension));
        }
        if (!bounds_.empty() && bounds_.back().first == block) {
            throw InvariantError("repeated block in polytope bounds");
        }
        if (interval.isZero()) {
            continue;
        }
        sumLo += interval.lo;
        sumHi += interval.hi;
        bounds_.emplace_back(block, std::move(interval));
    }
    empty_ = sumLo > 1 || sumHi < 1;
    if (!empty_) {
        vertices_ = imdp::vertices(*this);
    }
}

Interval ClassPolytope::bound(BlockId block) const {
    auto it = std::lower_bound(bounds_.begin(), bounds_.end(), block, [](Bound const& e, BlockId b) { return e.first < b; });
    if (it == bounds_.end() || it->first != block) {
        return Interval(0, 0);
    }
    return it->second;
}

bool ClassPolytope::contains(ClassDistribution const& x) const {
    if (x.total() != 1) {
        return false;
    }
    for (auto const& [block, w] : x.entries()) {
        if (!bound(block).contains(w)) {
            return false;
        }
    }
    for (auto const& [block, interval] : bounds_) {
        if (!interval.contains(x.weight(block))) {
            return false;
        }
    }
    return true;
}

std::vector<ClassDistribution> const& ClassPolytope::vertices() const {
    if (empty_) {
        throw EmptyPolytopeError("polytope has no feasible distribution");
    }
    return vertices_;
}

bool operator<(ClassPolytope const& a, ClassPolytope const& b) {
    if (a.dimension_ != b.dimension_) {
        return a.dimension_ < b.dimension_;
    }
    if (a.empty_ != b.empty_) {
        return a.empty_;
    }
    return a.vertices_ < b.vertices_;
}

std::string ClassPolytope::dump() const {
    std::ostringstream out;
    for (auto const& [block, interval] : bounds_) {
        out << block << ':' << formatInterval(interval) << '\n';
    }
    return out.str();
}

std::vector<ClassDistribution> vertices(ClassPolytope const& polytope) {
    Rational sumLo = 0;
    Rational sumHi = 0;
    Rational fixedMass = 0;
    std::vector<ClassDistribution::Entry> fixed;
    std::vector<ClassPolytope::Bound> free;
    for (auto const& bound : polytope.bounds()) {
        sumLo += bound.second.lo;
        sumHi += bound.second.hi;
        if (bound.second.isPoint()) {
            fixed.emplace_back(bound.first, bound.second.lo);
            fixedMass += bound.second.lo;
        } else {
            free.push_back(bound);
        }
    }
    if (sumLo > 1 || sumHi < 1) {
        throw EmptyPolytopeError("polytope has no feasible distribution");
    }
    if (free.empty()) {
        return {ClassDistribution(fixed)};
    }

    std::size_t const k = free.size();
    std::set<ClassDistribution> found;
    for (std::size_t slack = 0; slack < k; ++slack) {
        std::size_t const others = k - 1;
        for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << others); ++mask) {
            std::vector<ClassDistribution::Entry> entries = fixed;
            Rational residual = 1 - fixedMass;
            std::size_t bit = 0;
            for (std::size_t i = 0; i < k; ++i) {
                if (i == slack) {
                    continue;
                }
                Rational const& value = (mask >> bit++) & 1 ? free[i].second.hi : free[i].second.lo;
                residual -= value;
                entries.emplace_back(free[i].first, value);
            }
            if (!free[slack].second.contains(residual)) {
                continue;
            }
            entries.emplace_back(free[slack].first, residual);
            found.insert(ClassDistribution(std::move(entries)));
        }
    }
    return {found.begin(), found.end()};
}

ClassPolytope classPolytope(Imdp const& model, StateId s, ActionId a, Partition const& partition) {
    Choice const* choice = model.findChoice(s, a);
    if (choice == nullptr) {
        throw DisabledActionError("action '" + model.actionName(a) + "' is not enabled in state '" + model.stateName(s) + "'");
    }
    std::map<BlockId, Interval> sums;
    for (auto const& succ : choice->successors) {
        auto& bound = sums[partition.blockOf(succ.target)];
        bound.lo += succ.probability.lo;
        bound.hi += succ.probability.hi;
    }
    std::vector<ClassPolytope::Bound> bounds;
    for (auto& [block, interval] : sums) {
        if (interval.lo > 1) {
            interval.lo = 1;
        }
        if (interval.hi > 1) {
            interval.hi = 1;
        }
        bounds.emplace_back(block, std::move(interval));
    }
    return ClassPolytope(partition.blockCount(), std::move(bounds));
}

std::vector<ClassPolytope> classPolytopes(Imdp const& model, StateId s, Partition const& partition) {
    std::vector<ClassPolytope> result;
    for (auto const& choice : model.choices(s)) {
        result.push_back(classPolytope(model, s, choice.action, partition));
    }
    return result;
}

namespace {

std::size_t familyDimension(HullFamily const& family) {
    if (family.empty()) {
        throw BlockMismatchError("hull family is empty");
    }
    std::size_t const dim = family.front().dimension();
    for (auto const& member : family) {
        if (member.dimension() != dim) {
            throw BlockMismatchError("hull family members range over different block counts");
        }
    }
    return dim;
}

std::vector<ClassDistribution> unionVertices(HullFamily const& family) {
    std::set<ClassDistribution> points;
    for (auto const& member : family) {
        auto const& vs = member.vertices();
        points.insert(vs.begin(), vs.end());
    }
    return {points.begin(), points.end()};
}

/// x in conv(points), exactly.
bool inConvexHull(ClassDistribution const& x, std::vector<ClassDistribution> const& points) {
    if (points.empty()) {
        return false;
    }
    if (std::find(points.begin(), points.end(), x) != points.end()) {
        return true;
    }
    std::set<BlockId> blocks;
    for (auto const& e : x.entries()) {
        blocks.insert(e.first);
    }
    for (auto const& p : points) {
        for (auto const& e : p.entries()) {
            blocks.insert(e.first);
        }
    }
    LinearProgram lp(points.size());
    lp.addConstraint(std::vector<Rational>(points.size(), Rational(1)), Relation::Equal, 1);
    for (BlockId block : blocks) {
        std::vector<Rational> row(points.size());
        for (std::size_t i = 0; i < points.size(); ++i) {
            row[i] = points[i].weight(block);
        }
        lp.addConstraint(std::move(row), Relation::Equal, x.weight(block));
    }
    return lp.feasible();
}

}  // namespace

bool memberOfHull(ClassDistribution const& x, HullFamily const& family) {
    std::size_t const dim = familyDimension(family);
    for (auto const& e : x.entries()) {
        if (e.first >= dim) {
            throw BlockMismatchError("point refers to block " + std::to_string(e.first) + " outside dimension " + std::to_string(dim));
        }
    }
    return inConvexHull(x, unionVertices(family));
}

bool hullEqual(HullFamily const& first, HullFamily const& second) {
    if (familyDimension(first) != familyDimension(second)) {
        throw BlockMismatchError("hull families range over different block counts");
    }
    auto const left = unionVertices(first);
    auto const right = unionVertices(second);
    if (left == right) {
        return true;
    }
    for (auto const& v : left) {
        if (!inConvexHull(v, right)) {
            return false;
        }
    }
    for (auto const& v : right) {
        if (!inConvexHull(v, left)) {
            return false;
        }
    }
    return true;
}

std::vector<ClassDistribution> hullVertices(HullFamily const& family) {
    familyDimension(family);
    auto const points = unionVertices(family);
    if (points.size() <= 2) {
        return points;
    }
    std::vector<ClassDistribution> extreme;
    for (std::size_t i = 0; i < points.size(); ++i) {
        std::vector<ClassDistribution> rest;
        rest.reserve(points.size() - 1);
        for (std::size_t j = 0; j < points.size(); ++j) {
            if (j != i) {
                rest.push_back(points[j]);
            }
        }
        if (!inConvexHull(points[i], rest)) {
            extreme.push_back(points[i]);
        }
    }
    return extreme;
}

ClassDistribution combinationPoint(WeightVector const& rho, std::vector<ClassDistribution> const& corners) {
    if (rho.size() != corners.size()) {
        throw InvariantError("weight vector and corner list differ in length");
    }
    Rational sum = 0;
    for (auto const& w : rho) {
        if (w < 0) {
            throw InvariantError("negative mixing weight");
        }
        sum += w;
    }
    if (sum != 1) {
        throw InvariantError("mixing weights do not sum to one");
    }
    std::vector<ClassDistribution::Entry> entries;
    for (std::size_t i = 0; i < rho.size(); ++i) {
        if (rho[i] == 0) {
            continue;
        }
        for (auto const& [block, w] : corners[i].entries()) {
            entries.emplace_back(block, rho[i] * w);
        }
    }
    return ClassDistribution(std::move(entries));
}

std::vector<ClassPolytope> distinctPolytopes(std::vector<ClassPolytope> const& polytopes) {
    std::vector<ClassPolytope> result;
    for (auto const& p : polytopes) {
        if (std::none_of(result.begin(), result.end(), [&](ClassPolytope const& q) { return q.sameSet(p); })) {
            result.push_back(p);
        }
    }
    return result;
}

bool strictlyMinimalAgainst(ClassPolytope const& target, std::vector<ClassPolytope> const& others) {
    if (others.empty()) {
        return true;
    }
    std::size_t const k = others.size();
    std::set<BlockId> blocks;
    for (auto const& bound : target.bounds()) {
        blocks.insert(bound.first);
    }
    for (auto const& other : others) {
        if (other.dimension() != target.dimension()) {
            throw BlockMismatchError("polytopes range over different block counts");
        }
        for (auto const& v : other.vertices()) {
            for (auto const& e : v.entries()) {
                blocks.insert(e.first);
            }
        }
    }

    LinearProgram lp(k);
    lp.addConstraint(std::vector<Rational>(k, Rational(1)), Relation::Equal, 1);
    for (BlockId block : blocks) {
        Interval const bound = target.bound(block);
        // Distinct values of this coordinate over the vertices of each remaining polytope.
        std::vector<std::vector<Rational>> values(k);
        for (std::size_t i = 0; i < k; ++i) {
            std::set<Rational> seen;
            for (auto const& v : others[i].vertices()) {
                seen.insert(v.weight(block));
            }
            values[i].assign(seen.begin(), seen.end());
        }
        std::set<std::vector<Rational>> rows;
        std::vector<std::size_t> index(k, 0);
        while (true) {
            std::vector<Rational> row(k);
            for (std::size_t i = 0; i < k; ++i) {
                row[i] = values[i][index[i]];
            }
            rows.insert(std::move(row));
            std::size_t pos = 0;
            while (pos < k && ++index[pos] == values[pos].size()) {
                index[pos++] = 0;
            }
            if (pos == k) {
                break;
            }
        }
        for (auto const& row : rows) {
            if (bound.lo > 0) {
                lp.addConstraint(row, Relation::GreaterEqual, bound.lo);
            }
            if (bound.hi < 1) {
                lp.addConstraint(row, Relation::LessEqual, bound.hi);
            }
        }
    }
    return !lp.feasible();
}

namespace {

std::vector<ClassPolytope> othersThan(ClassPolytope const& target, std::vector<ClassPolytope> const& distinct) {
    std::vector<ClassPolytope> others;
    for (auto const& p : distinct) {
        if (!p.sameSet(target)) {
            others.push_back(p);
        }
    }
    return others;
}

}  // namespace

bool strictlyMinimal(Imdp const& model, StateId s, ActionId a, Partition const& partition) {
    ClassPolytope const target = classPolytope(model, s, a, partition);
    auto const distinct = distinctPolytopes(classPolytopes(model, s, partition));
    return strictlyMinimalAgainst(target, othersThan(target, distinct));
}

std::vector<ClassPolytope> strictlyMinimalSet(Imdp const& model, StateId s, Partition const& partition) {
    auto const distinct = distinctPolytopes(classPolytopes(model, s, partition));
    std::vector<ClassPolytope> minimal;
    for (auto const& p : distinct) {
        if (strictlyMinimalAgainst(p, othersThan(p, distinct))) {
            minimal.push_back(p);
        }
    }
    std::sort(minimal.begin(), minimal.end());
    return minimal;
}

}  // namespace imdp
