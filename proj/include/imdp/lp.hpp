// Copyright (c) imdpmin contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <vector>

#include "imdp/rational.hpp"

namespace imdp {

enum class Relation { LessEqual, GreaterEqual, Equal };

/// Linear program over non-negative rational variables, solved exactly by a two-phase tableau
/// simplex with Bland's pivoting rule (terminates on degenerate problems).
class LinearProgram {
   public:
    enum class Status { Optimal, Infeasible, Unbounded };

    struct Solution {
        Status status = Status::Infeasible;
        Rational objective;
        std::vector<Rational> point;
    };

    explicit LinearProgram(std::size_t variableCount) : variableCount_(variableCount) {}

    /// coefficients.size() must equal variableCount().
    void addConstraint(std::vector<Rational> coefficients, Relation relation, Rational rhs);

    std::size_t variableCount() const { return variableCount_; }
    std::size_t constraintCount() const { return rows_.size(); }

    bool feasible() const { return findFeasiblePoint().has_value(); }
    std::optional<std::vector<Rational>> findFeasiblePoint() const;

    Solution minimize(std::vector<Rational> const& objective) const;
    Solution maximize(std::vector<Rational> const& objective) const;

   private:
    struct Row {
        std::vector<Rational> coefficients;
        Relation relation;
        Rational rhs;
    };

    std::size_t variableCount_;
    std::vector<Row> rows_;
};

}  // namespace imdp
