// Copyright (c) imdpmin contributors.
// SPDX-License-Identifier: Apache-2.0
#include <catch_amalgamated.hpp>

#include "support.hpp"

using namespace imdp;
using namespace imdp::test;

namespace {

Imdp uModel() {
    return restrictTo(genExample1(), {"u", "ubar", "l", "r"});
}

Imdp tModel() {
    return restrictTo(genExample1(), {"t", "tbar", "l", "r"});
}

constexpr QuantifierMode allModes[] = {QuantifierMode::MinMin, QuantifierMode::MaxMax, QuantifierMode::MaxiMin, QuantifierMode::MiniMax};

std::vector<std::string> satisfying(Imdp const& m, std::string const& formula) {
    StateSet const set = checkStateFormula(m, *parseFormula(formula));
    std::vector<std::string> out;
    for (StateId s = 0; s < m.stateCount(); ++s) {
        if (set[s]) {
            out.push_back(m.stateName(s));
        }
    }
    return out;
}

}  // namespace

TEST_CASE("mode names", "[semantics]") {
    for (auto mode : allModes) {
        CHECK(parseMode(modeName(mode)) == mode);
    }
    CHECK_FALSE(parseMode("maxmin").has_value());
}

TEST_CASE("horizon zero is the goal indicator", "[semantics]") {
    Imdp const m = uModel();
    StateSet const goal = setOf(m, {"r"});
    for (auto mode : allModes) {
        ValueVector const v = extremalBoundedUntil(m, StateSet(m.stateCount(), true), goal, 0, mode);
        for (StateId s = 0; s < m.stateCount(); ++s) {
            CHECK(v[s] == (goal[s] ? 1 : 0));
        }
    }
}

TEST_CASE("one-step reachability on the u model", "[semantics]") {
    Imdp const m = uModel();
    StateSet const all(m.stateCount(), true);
    StateSet const goal = setOf(m, {"r"});
    ValueVector const maxmax = extremalBoundedUntil(m, all, goal, 1, QuantifierMode::MaxMax);
    CHECK(maxmax[idOf(m, "u")] == 1);
    CHECK(maxmax[idOf(m, "ubar")] == r(9, 10));
    ValueVector const minmin = extremalNext(m, goal, QuantifierMode::MinMin);
    CHECK(minmin[idOf(m, "u")] == r(2, 5));
    CHECK(minmin[idOf(m, "ubar")] == r(1, 5));
    // With safe = {u} only, ubar lies outside both sets.
    ValueVector const restricted = extremalBoundedUntil(m, setOf(m, {"u"}), goal, 1, QuantifierMode::MaxMax);
    CHECK(restricted[idOf(m, "ubar")] == 0);
    CHECK(restricted[idOf(m, "u")] == 1);
}

TEST_CASE("separation on the t model", "[semantics]") {
    Imdp const m = tModel();
    StateSet const all(m.stateCount(), true);
    ValueVector const v = extremalBoundedUntil(m, all, setOf(m, {"r"}), 1, QuantifierMode::MaxiMin);
    CHECK(v[idOf(m, "t")] == r(4, 5));
    CHECK(v[idOf(m, "tbar")] == r(3, 5));
    CHECK(satisfying(m, "P>=7/10 [ true U<=1 \"right\" ] mode=maximin") == std::vector<std::string>{"r", "t"});
}

TEST_CASE("next over all or no states", "[semantics]") {
    Imdp const m = genExample1();
    for (auto mode : allModes) {
        for (Rational const& x : extremalNext(m, StateSet(m.stateCount(), true), mode)) {
            CHECK(x == 1);
        }
        for (Rational const& x : extremalNext(m, StateSet(m.stateCount(), false), mode)) {
            CHECK(x == 0);
        }
    }
    CHECK_THROWS_AS(extremalNext(m, StateSet(2, true), QuantifierMode::MinMin), InvariantError);
}

TEST_CASE("row optimisation agrees with vertices and linear programming", "[semantics]") {
    Imdp const m = genExample1();
    ValueVector values(m.stateCount());
    for (StateId s = 0; s < m.stateCount(); ++s) {
        values[s] = r(static_cast<long>(s * 3 % 7), 7);
    }
    for (StateId s = 0; s < m.stateCount(); ++s) {
        for (auto const& c : m.choices(s)) {
            for (bool maximize : {false, true}) {
                Rational const greedy = optimizeRow(c, values, maximize);
                CHECK(greedy == rowOptimumByVertices(c, values, maximize));
                CHECK(greedy == rowOptimumByLp(c, values, maximize));
            }
        }
    }
}

TEST_CASE("formula parsing and printing", "[semantics][formula]") {
    FormulaPtr const f = parseFormula("P>=0.7 [ \"a\" U<=4 \"b\" ] mode=maximin");
    REQUIRE(f->kind == StateFormula::Kind::Probability);
    CHECK(f->comparison == Comparison::GreaterEqual);
    CHECK(f->threshold == r(7, 10));
    CHECK(f->mode == QuantifierMode::MaxiMin);
    REQUIRE(f->path->kind == PathFormula::Kind::BoundedUntil);
    CHECK(f->path->horizon == 4);
    CHECK(parseFormula(formatFormula(*f))->threshold == r(7, 10));
    CHECK(formatFormula(*parseFormula(formatFormula(*f))) == formatFormula(*f));

    FormulaPtr const g = parseFormula("!(\"a\" & true) & P<1/2 [ X \"b\" ]");
    REQUIRE(g->kind == StateFormula::Kind::And);
    CHECK(g->left->kind == StateFormula::Kind::Not);
    CHECK(g->right->mode == QuantifierMode::MinMin);
    CHECK(g->right->path->kind == PathFormula::Kind::Next);
    CHECK(formatFormula(*parseFormula(formatFormula(*g))) == formatFormula(*g));

    CHECK(parseFormula("P>0 [ true U \"b\" ]")->path->kind == PathFormula::Kind::Until);
    CHECK(parseFormula("false")->kind == StateFormula::Kind::Not);

    CHECK_THROWS_AS(parseFormula("P>=2 [ X true ]"), FormulaParseError);
    CHECK_THROWS_AS(parseFormula("P>=0.5 [ X true ] mode=sometimes"), FormulaParseError);
    CHECK_THROWS_AS(parseFormula("\"a\" &"), FormulaParseError);
    CHECK_THROWS_AS(parseFormula("P>=0.5 X true"), FormulaParseError);
    CHECK_THROWS_AS(parseFormula("a"), FormulaParseError);
}

TEST_CASE("threshold nodes use the matching extremum", "[semantics][formula]") {
    CHECK(comparedMode(QuantifierMode::MinMin, Comparison::GreaterEqual) == QuantifierMode::MinMin);
    CHECK(comparedMode(QuantifierMode::MinMin, Comparison::LessEqual) == QuantifierMode::MaxMax);
    CHECK(comparedMode(QuantifierMode::MaxMax, Comparison::Greater) == QuantifierMode::MaxMax);
    CHECK(comparedMode(QuantifierMode::MaxMax, Comparison::Less) == QuantifierMode::MinMin);
    CHECK(comparedMode(QuantifierMode::MaxiMin, Comparison::GreaterEqual) == QuantifierMode::MaxiMin);
    CHECK(comparedMode(QuantifierMode::MaxiMin, Comparison::LessEqual) == QuantifierMode::MiniMax);
    CHECK(comparedMode(QuantifierMode::MiniMax, Comparison::Less) == QuantifierMode::MaxiMin);

    Imdp const m = uModel();
    // Minimum one-step probability of reaching r: u 2/5, ubar 1/5; maximum: u 1, ubar 9/10.
    CHECK(satisfying(m, "P>=2/5 [ X \"right\" ]") == std::vector<std::string>{"r", "u"});
    CHECK(satisfying(m, "P>2/5 [ X \"right\" ]") == std::vector<std::string>{"r"});
    CHECK(satisfying(m, "P<=9/10 [ X \"right\" ]") == std::vector<std::string>{"l", "ubar"});
    CHECK(satisfying(m, "P<1 [ X \"right\" ] mode=minmin") == std::vector<std::string>{"l", "ubar"});
}

TEST_CASE("state formulas", "[semantics][formula]") {
    Imdp const m = genExample1();
    std::vector<std::string> const everyone = m.stateNames();
    CHECK(satisfying(m, "P>=0 [ X true ]") == everyone);
    CHECK(satisfying(m, "\"left\"") == std::vector<std::string>{"l"});
    CHECK(satisfying(m, "!\"left\" & !\"right\"").size() == 6);
    CHECK(satisfying(m, "\"nowhere\"").empty());
    CHECK(satisfying(m, "false").empty());
    CHECK_THROWS_AS(checkStateFormula(m, *parseFormula("P>0 [ true U \"right\" ]")), UnboundedUntilError);

    auto const a = checkStateFormula(m, *parseFormula("P>=1/2 [ X \"left\" ] mode=maxmax"));
    auto const b = checkStateFormula(m, *parseFormula("P>=1/2 [ X \"right\" ] mode=maxmax"));
    auto const both = checkStateFormula(m, *parseFormula("P>=1/2 [ X \"left\" ] mode=maxmax & P>=1/2 [ X \"right\" ] mode=maxmax"));
    auto const neither = checkStateFormula(m, *parseFormula("!P>=1/2 [ X \"left\" ] mode=maxmax"));
    auto const either = checkStateFormula(m, *parseFormula("P>=1/2 [ X \"left\" ] mode=maxmax | P>=1/2 [ X \"right\" ] mode=maxmax"));
    for (StateId s = 0; s < m.stateCount(); ++s) {
        CHECK(both[s] == (a[s] && b[s]));
        CHECK(neither[s] == !a[s]);
        CHECK(either[s] == (a[s] || b[s]));
    }
    CHECK(satisfying(m, "\"left\" | \"right\"") == std::vector<std::string>{"l", "r"});
    CHECK(satisfying(m, "\"left\" | \"right\" & false") == std::vector<std::string>{"l"});
}

TEST_CASE("eventually is until from true", "[semantics][formula]") {
    Imdp const m = genExample1();
    for (std::string const mode : {"minmin", "maxmax", "maximin", "minimax"}) {
        for (unsigned k = 0; k <= 3; ++k) {
            std::string const bound = "<=" + std::to_string(k) + " \"right\" ] mode=" + mode;
            CHECK(satisfying(m, "P>=1/2 [ F" + bound) == satisfying(m, "P>=1/2 [ true U" + bound));
        }
    }
    CHECK(formatFormula(*parseFormula("P>=1/2 [ F<=2 \"right\" ]")) == formatFormula(*parseFormula("P>=1/2 [ true U<=2 \"right\" ]")));
    CHECK_THROWS_AS(parseFormula("P>=1/2 [ F<= \"right\" ]"), FormulaParseError);
    CHECK(satisfying(m, "P>=1/2 [ \"F\" U<=1 \"right\" ]") == std::vector<std::string>{"r"});
}

TEST_CASE("nested threshold formulas", "[semantics][formula]") {
    Imdp const m = genExample1();
    // States that surely move into a state with a strategy guaranteeing right with probability 4/5.
    auto const inner = satisfying(m, "P>=4/5 [ X \"right\" ] mode=maximin");
    CHECK(inner == std::vector<std::string>{"r", "t"});
    auto const outer = satisfying(m, "P>=1 [ X P>=4/5 [ X \"right\" ] mode=maximin ]");
    CHECK(outer == std::vector<std::string>{"r"});
}
