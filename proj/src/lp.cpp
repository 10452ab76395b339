// Copyright (c) imdpmin contributors.
// SPDX-License-Identifier: Apache-2.0
#include "imdp/lp.hpp"

#include "imdp/errors.hpp"

namespace imdp {

namespace {

/// Dense simplex tableau. The last column holds the right-hand side, the last row the reduced
/// costs together with the negated objective value.
class Tableau {
   public:
    Tableau(std::size_t rows, std::size_t columns) : cells_(rows + 1, std::vector<Rational>(columns + 1)), basis_(rows), enterable_(columns, true) {}

    std::size_t rows() const { return basis_.size(); }
    std::size_t columns() const { return enterable_.size(); }

    Rational& at(std::size_t r, std::size_t c) { return cells_[r][c]; }
    Rational& rhs(std::size_t r) { return cells_[r][columns()]; }
    std::size_t& basic(std::size_t r) { return basis_[r]; }

    void forbid(std::size_t column) { enterable_[column] = false; }

    void setObjective(std::vector<Rational> const& cost) {
        auto& obj = cells_.back();
        for (std::size_t j = 0; j <= columns(); ++j) {
            obj[j] = j < columns() ? cost[j] : Rational(0);
        }
        for (std::size_t i = 0; i < rows(); ++i) {
            Rational const& cb = cost[basis_[i]];
            if (cb == 0) {
                continue;
            }
            for (std::size_t j = 0; j <= columns(); ++j) {
                if (cells_[i][j] != 0) {
                    obj[j] -= cb * cells_[i][j];
                }
            }
        }
    }

    Rational objectiveValue() const { return -cells_.back()[columns()]; }

    void pivot(std::size_t r, std::size_t c) {
        auto& prow = cells_[r];
        Rational const p = prow[c];
        for (auto& x : prow) {
            if (x != 0) {
                x /= p;
            }
        }
        for (std::size_t i = 0; i < cells_.size(); ++i) {
            if (i == r || cells_[i][c] == 0) {
                continue;
            }
            Rational const f = cells_[i][c];
            auto& row = cells_[i];
            for (std::size_t j = 0; j <= columns(); ++j) {
                if (prow[j] != 0) {
                    row[j] -= f * prow[j];
                }
            }
        }
        basis_[r] = c;
    }

    /// Runs the primal simplex on the current objective row; false when unbounded.
    bool optimize() {
        while (true) {
            auto const& obj = cells_.back();
            std::size_t entering = columns();
            for (std::size_t j = 0; j < columns(); ++j) {
                if (enterable_[j] && obj[j] < 0) {
                    entering = j;
                    break;
                }
            }
            if (entering == columns()) {
                return true;
            }
            std::size_t leaving = rows();
            Rational best;
            for (std::size_t i = 0; i < rows(); ++i) {
                Rational const& a = cells_[i][entering];
                if (a <= 0) {
                    continue;
                }
                Rational ratio = cells_[i][columns()] / a;
                if (leaving == rows() || ratio < best || (ratio == best && basis_[i] < basis_[leaving])) {
                    leaving = i;
                    best = ratio;
                }
            }
            if (leaving == rows()) {
                return false;
            }
            pivot(leaving, entering);
        }
    }

    void dropRow(std::size_t r) {
        cells_.erase(cells_.begin() + static_cast<std::ptrdiff_t>(r));
        basis_.erase(basis_.begin() + static_cast<std::ptrdiff_t>(r));
    }

   private:
    std::vector<std::vector<Rational>> cells_;
    std::vector<std::size_t> basis_;
    std::vector<bool> enterable_;
};

}  // namespace

void LinearProgram::addConstraint(std::vector<Rational> coefficients, Relation relation, Rational rhs) {
    if (coefficients.size() != variableCount_) {
        throw InvariantError("constraint width does not match the number of variables");
    }
    rows_.push_back(Row{std::move(coefficients), relation, std::move(rhs)});
}

std::optional<std::vector<Rational>> LinearProgram::findFeasiblePoint() const {
    auto solution = minimize(std::vector<Rational>(variableCount_));
    if (solution.status != Status::Optimal) {
        return std::nullopt;
    }
    return std::move(solution.point);
}

LinearProgram::Solution LinearProgram::maximize(std::vector<Rational> const& objective) const {
    std::vector<Rational> negated(objective.size());
    for (std::size_t j = 0; j < objective.size(); ++j) {
        negated[j] = -objective[j];
    }
    auto solution = minimize(negated);
    solution.objective = -solution.objective;
    return solution;
}

LinearProgram::Solution LinearProgram::minimize(std::vector<Rational> const& objective) const {
    if (objective.size() != variableCount_) {
        throw InvariantError("objective width does not match the number of variables");
    }
    std::size_t const n = variableCount_;
    std::size_t const m = rows_.size();

    // Normalise to non-negative right-hand sides and count auxiliary columns.
    std::vector<Row> rows = rows_;
    std::size_t slackCount = 0;
    std::size_t artificialCount = 0;
    for (auto& row : rows) {
        if (row.rhs < 0) {
            for (auto& a : row.coefficients) {
                a = -a;
            }
            row.rhs = -row.rhs;
            if (row.relation == Relation::LessEqual) {
                row.relation = Relation::GreaterEqual;
            } else if (row.relation == Relation::GreaterEqual) {
                row.relation = Relation::LessEqual;
            }
        }
        if (row.relation != Relation::Equal) {
            ++slackCount;
        }
        if (row.relation != Relation::LessEqual) {
            ++artificialCount;
        }
    }

    std::size_t const artificialStart = n + slackCount;
    std::size_t const columns = artificialStart + artificialCount;
    Tableau tab(m, columns);
    std::size_t nextSlack = n;
    std::size_t nextArtificial = artificialStart;
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            tab.at(i, j) = rows[i].coefficients[j];
        }
        tab.rhs(i) = rows[i].rhs;
        switch (rows[i].relation) {
            case Relation::LessEqual:
                tab.at(i, nextSlack) = 1;
                tab.basic(i) = nextSlack++;
                break;
            case Relation::GreaterEqual:
                tab.at(i, nextSlack++) = -1;
                tab.at(i, nextArtificial) = 1;
                tab.basic(i) = nextArtificial++;
                break;
            case Relation::Equal:
                tab.at(i, nextArtificial) = 1;
                tab.basic(i) = nextArtificial++;
                break;
        }
    }

    Solution result;
    if (artificialCount > 0) {
        std::vector<Rational> phaseOne(columns);
        for (std::size_t j = artificialStart; j < columns; ++j) {
            phaseOne[j] = 1;
        }
        tab.setObjective(phaseOne);
        tab.optimize();
        if (tab.objectiveValue() > 0) {
            result.status = Status::Infeasible;
            return result;
        }
        // Drive remaining (zero-valued) artificials out of the basis; rows where that is
        // impossible are linear combinations of the others.
        for (std::size_t i = 0; i < tab.rows();) {
            if (tab.basic(i) < artificialStart) {
                ++i;
                continue;
            }
            std::size_t replacement = artificialStart;
            for (std::size_t j = 0; j < artificialStart; ++j) {
                if (tab.at(i, j) != 0) {
                    replacement = j;
                    break;
                }
            }
            if (replacement == artificialStart) {
                tab.dropRow(i);
            } else {
                tab.pivot(i, replacement);
                ++i;
            }
        }
        for (std::size_t j = artificialStart; j < columns; ++j) {
            tab.forbid(j);
        }
    }

    std::vector<Rational> phaseTwo(columns);
    for (std::size_t j = 0; j < n; ++j) {
        phaseTwo[j] = objective[j];
    }
    tab.setObjective(phaseTwo);
    if (!tab.optimize()) {
        result.status = Status::Unbounded;
        return result;
    }
    result.status = Status::Optimal;
    result.objective = tab.objectiveValue();
    result.point.assign(n, Rational(0));
    for (std::size_t i = 0; i < tab.rows(); ++i) {
        if (tab.basic(i) < n) {
            result.point[tab.basic(i)] = tab.rhs(i);
        }
    }
    return result;
}

}  // namespace imdp
