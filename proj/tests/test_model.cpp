// Copyright (c) imdpmin contributors.
// SPDX-License-Identifier: Apache-2.0
#include <catch_amalgamated.hpp>
#include <fstream>
#include <sstream>

#include "imdp/compose.hpp"
#include "imdp/partition.hpp"
#include "support.hpp"

using namespace imdp;
using namespace imdp::test;

namespace {

std::string const uFragment = R"(imdp
states: u l r
label l: left
label r: right
u a -> l [0.1,0.6], r [0,1]
u b -> r [0,1], l [0,0.6]
l loop -> l [1,1]
r loop -> r [1,1]
)";

Imdp sensor(unsigned i) {
    return genSensor(i, Interval(r(1, 10), r(2, 10)));
}

Imdp gateway(std::vector<std::string> const& actions) {
    ImdpBuilder b;
    b.addState("g").setInitial("g");
    for (auto const& a : actions) {
        b.addChoice("g", a, {{"g", Interval::point(1)}});
    }
    return b.build();
}

std::string readFile(std::filesystem::path const& path) {
    std::ifstream in(path);
    std::stringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

}  // namespace

TEST_CASE("rationals parse exactly and print canonically", "[model][rational]") {
    CHECK(*parseRational("0.3") == r(3, 10));
    CHECK(*parseRational(".5") == r(1, 2));
    CHECK(*parseRational("6/8") == r(3, 4));
    CHECK(*parseRational("1") == r(1));
    CHECK_FALSE(parseRational("1/0").has_value());
    CHECK_FALSE(parseRational("abc").has_value());
    CHECK_FALSE(parseRational("0.3.1").has_value());
    CHECK(formatRational(r(3, 10)) == "0.3");
    CHECK(formatRational(r(1, 3)) == "1/3");
    CHECK(formatFraction(r(13, 16)) == "13/16");
    CHECK(makeRational(2, 4) == r(1, 2));
}

TEST_CASE("intervals", "[model]") {
    CHECK(iv(1, 10, 3, 10).isWellFormed());
    CHECK_FALSE(iv(3, 10, 1, 10).isWellFormed());
    CHECK_FALSE(Interval(r(0), r(3, 2)).isWellFormed());
    CHECK(Interval::point(r(1, 2)).isPoint());
    CHECK(Interval(r(0), r(0)).isZero());
    CHECK(formatInterval(iv(1, 10, 2, 10)) == "[0.1,0.2]");
}

TEST_CASE("validate accepts point rows and flags infeasible ones", "[model][validate]") {
    SECTION("point distribution") {
        ImdpBuilder b;
        b.addState("s").addState("l").addState("r");
        b.addChoice("s", "a", {{"l", Interval::point(r(1, 2))}, {"r", Interval::point(r(1, 2))}});
        b.addChoice("l", "a", {{"l", Interval::point(1)}});
        b.addChoice("r", "a", {{"r", Interval::point(1)}});
        CHECK(validate(b.build()).valid());
    }
    SECTION("lower bounds exceeding one") {
        ImdpBuilder b;
        b.addState("s").addState("l").addState("r");
        b.addChoice("s", "a", {{"l", iv(6, 10, 7, 10)}, {"r", iv(6, 10, 8, 10)}});
        b.addChoice("l", "a", {{"l", Interval::point(1)}});
        b.addChoice("r", "a", {{"r", Interval::point(1)}});
        auto const report = validate(b.build());
        REQUIRE(report.violations.size() == 1);
        CHECK(report.violations[0].kind == Violation::Kind::Infeasible);
        CHECK_THAT(formatReport(report), Catch::Matchers::ContainsSubstring("1.2"));
    }
    SECTION("upper bounds below one") {
        ImdpBuilder b;
        b.addState("s");
        b.addChoice("s", "a", {{"s", iv(1, 10, 2, 10)}});
        auto const report = validate(b.build());
        REQUIRE(report.violations.size() == 1);
        CHECK(report.violations[0].kind == Violation::Kind::Infeasible);
    }
    SECTION("malformed interval and missing actions") {
        ImdpBuilder b;
        b.addState("s").addState("dead");
        b.addChoice("s", "a", {{"s", Interval(r(1), r(2))}});
        auto const report = validate(b.build());
        bool malformed = false;
        bool noAction = false;
        for (auto const& v : report.violations) {
            malformed = malformed || v.kind == Violation::Kind::MalformedInterval;
            noAction = noAction || v.kind == Violation::Kind::NoEnabledAction;
        }
        CHECK(malformed);
        CHECK(noAction);
    }
    SECTION("empty model") {
        auto const report = validate(ImdpBuilder().build());
        REQUIRE(report.violations.size() == 1);
        CHECK(report.violations[0].kind == Violation::Kind::NoStates);
    }
    SECTION("the u fragment") {
        CHECK(validate(parseImdp(uFragment)).valid());
    }
}

TEST_CASE("builder rejects structural errors", "[model][builder]") {
    ImdpBuilder b;
    b.addState("s");
    CHECK_THROWS_AS(b.addState("s"), ModelError);
    b.addChoice("s", "a", {{"s", Interval::point(1)}});
    CHECK(b.hasChoice("s", "a"));
    CHECK(b.hasState("s"));
    CHECK_FALSE(b.hasState("t"));
    CHECK_THROWS_AS(b.addChoice("s", "a", {{"s", Interval::point(1)}}), ModelError);

    ImdpBuilder unknown;
    unknown.addState("s");
    unknown.addChoice("s", "a", {{"nowhere", Interval::point(1)}});
    CHECK_THROWS_AS(unknown.build(), ModelError);

    ImdpBuilder repeated;
    repeated.addState("s");
    repeated.addChoice("s", "a", {{"s", Interval::point(r(1, 2))}, {"s", Interval::point(r(1, 2))}});
    CHECK_THROWS_AS(repeated.build(), ModelError);
}

TEST_CASE("models keep names sorted and drop [0,0] targets", "[model]") {
    ImdpBuilder b;
    b.addState("z").addState("a");
    b.addChoice("z", "go", {{"a", Interval::point(1)}, {"z", Interval(r(0), r(0))}});
    b.addChoice("a", "go", {{"a", Interval::point(1)}});
    Imdp const m = b.build();
    CHECK(m.stateName(0) == "a");
    CHECK(m.stateName(1) == "z");
    REQUIRE(m.choices(1).size() == 1);
    CHECK(m.choices(1)[0].successors.size() == 1);
    CHECK(m.findChoice(1, *m.findAction("go")) != nullptr);
    CHECK_FALSE(m.findState("missing").has_value());
}

TEST_CASE("metrics count fanout and distinct rows", "[model][metrics]") {
    Imdp const u = parseImdp(uFragment);
    ModelMetrics const mu = metrics(u);
    CHECK(mu.stateCount == 3);
    CHECK(mu.transitionCount == 4);
    CHECK(mu.maxFanout == 2);
    CHECK(mu.maxDistinctActions == 2);

    ImdpBuilder b;
    b.addState("s").addChoice("s", "loop", {{"s", Interval::point(1)}});
    ModelMetrics const single = metrics(b.build());
    CHECK(single.maxFanout == 1);
    CHECK(single.maxDistinctActions == 1);

    Imdp const wsn = genWSN(3, iv(1, 10, 2, 10));
    ModelMetrics const mw = metrics(wsn);
    CHECK(mw.stateCount == 8);
    CHECK(mw.maxDistinctActions <= 4);
    // Independent count of distinct rows per state.
    std::size_t distinct = 0;
    for (StateId s = 0; s < wsn.stateCount(); ++s) {
        std::vector<std::vector<Successor>> rows;
        for (auto const& c : wsn.choices(s)) {
            if (std::find(rows.begin(), rows.end(), c.successors) == rows.end()) {
                rows.push_back(c.successors);
            }
        }
        distinct = std::max(distinct, rows.size());
    }
    CHECK(mw.maxDistinctActions == distinct);
}

TEST_CASE("parsing the u fragment", "[model][format]") {
    Imdp const m = parseImdp(uFragment);
    CHECK(m.stateCount() == 3);
    StateId const u = idOf(m, "u");
    CHECK(m.choices(u).size() == 2);
    Choice const* a = m.findChoice(u, actionOf(m, "a"));
    REQUIRE(a != nullptr);
    CHECK(a->successors[0].target == idOf(m, "l"));
    CHECK(a->successors[0].probability == iv(1, 10, 6, 10));
    CHECK(m.hasLabel(idOf(m, "l"), *m.findProp("left")));
    CHECK(m.labels(u).empty());
}

TEST_CASE("parse errors carry line and column", "[model][format]") {
    auto errorOf = [](std::string const& text) -> ParseError {
        try {
            parseImdp(text);
        } catch (ParseError const& e) {
            return e;
        }
        FAIL("no parse error for: " << text);
        return ParseError(0, 0, "");
    };
    SECTION("empty interval") {
        ParseError const e = errorOf("imdp\nstates: s l\ns a -> l [0.7,0.3]\nl a -> l [1,1]\n");
        CHECK(e.line() == 3);
        CHECK_THAT(e.detail(), Catch::Matchers::ContainsSubstring("empty interval"));
    }
    SECTION("unknown state") {
        ParseError const e = errorOf("imdp\nstates: s\ns a -> q [1,1]\n");
        CHECK(e.line() == 3);
        CHECK(e.column() == 8);
        CHECK_THAT(e.detail(), Catch::Matchers::ContainsSubstring("unknown state 'q'"));
    }
    SECTION("malformed rational") {
        ParseError const e = errorOf("imdp\nstates: s\ns a -> s [1/x,1]\n");
        CHECK_THAT(e.detail(), Catch::Matchers::ContainsSubstring("malformed"));
    }
    SECTION("duplicate triple") {
        ParseError const e = errorOf("imdp\nstates: s\ns a -> s [0.5,0.5], s [0.5,0.5]\n");
        CHECK_THAT(e.detail(), Catch::Matchers::ContainsSubstring("duplicate target"));
    }
    SECTION("duplicate (s,a) line") {
        ParseError const e = errorOf("imdp\nstates: s\ns a -> s [1,1]\ns a -> s [1,1]\n");
        CHECK(e.line() == 4);
        CHECK_THAT(e.detail(), Catch::Matchers::ContainsSubstring("duplicate transition line"));
    }
    SECTION("missing header") {
        ParseError const e = errorOf("states: s\n");
        CHECK(e.line() == 1);
    }
    SECTION("reserved identifiers") {
        CHECK_THROWS_AS(parseImdp("imdp\nstates: label\n"), ParseError);
    }
}

TEST_CASE("comments and blank lines are ignored", "[model][format]") {
    Imdp const m = parseImdp("# leading\nimdp\n\nstates: s # trailing\ninitial: s\ns a -> s [1,1] # loop\n");
    CHECK(m.stateCount() == 1);
    CHECK(m.initialState() == StateId{0});
}

TEST_CASE("serialisation is canonical and round-trips", "[model][format]") {
    Imdp const m = genExample1();
    std::string const text = serializeImdp(m);
    CHECK(parseImdp(text) == m);
    CHECK(serializeImdp(parseImdp(text)) == text);
    CHECK(readFile(fixturePath("example1.imdp")) == text);

    std::string const shuffled = "imdp\nstates: r u l\nu b -> r [0,1], l [0,3/5]\nl loop -> l [1,1]\nr loop -> r [1,1]\nu a -> r [0,1], l [.1,.6]\nlabel r: right\nlabel l: left\n";
    CHECK(serializeImdp(parseImdp(shuffled)) == serializeImdp(parseImdp(uFragment)));
}

TEST_CASE("files round-trip through disk", "[model][format]") {
    auto const path = std::filesystem::temp_directory_path() / "imdpmin-model-roundtrip.imdp";
    Imdp const m = genWSN(2, iv(1, 10, 2, 10));
    writeImdpFile(path, m);
    CHECK(readImdpFile(path) == m);
    std::filesystem::remove(path);
    CHECK_THROWS_AS(readImdpFile(path), Error);
}

TEST_CASE("composition with a single-state gateway is neutral", "[model][compose]") {
    Imdp const s = sensor(1);
    CHECK_THROWS_AS(compose(gateway({"send_1"}), s, {"send_1"}), SyncUncertaintyError);
    CHECK_THROWS_AS(compose(gateway({"send_1"}), s, {}), ModelError);
    Imdp const product = compose(gateway({"receive_1"}), s, {});

    // Synchronise on a point-valued action instead.
    ImdpBuilder pb;
    pb.addState("x").addState("y").setInitial("x");
    pb.addChoice("x", "receive_1", {{"y", Interval::point(1)}});
    pb.addChoice("y", "receive_1", {{"x", Interval::point(r(1, 2))}, {"y", Interval::point(r(1, 2))}});
    Imdp const point = pb.build();
    Imdp const neutral = compose(gateway({"receive_1"}), point, {"receive_1"});
    REQUIRE(neutral.stateCount() == point.stateCount());
    for (StateId q = 0; q < neutral.stateCount(); ++q) {
        std::string const name = neutral.stateName(q);
        REQUIRE(name.substr(0, 2) == "g|");
        StateId const orig = idOf(point, name.substr(2));
        REQUIRE(neutral.choices(q).size() == point.choices(orig).size());
        for (std::size_t i = 0; i < neutral.choices(q).size(); ++i) {
            auto const& nc = neutral.choices(q)[i];
            auto const& oc = point.choices(orig)[i];
            REQUIRE(nc.successors.size() == oc.successors.size());
            for (std::size_t k = 0; k < nc.successors.size(); ++k) {
                CHECK(neutral.stateName(nc.successors[k].target) == "g|" + point.stateName(oc.successors[k].target));
                CHECK(nc.successors[k].probability == oc.successors[k].probability);
            }
        }
    }
    CHECK(product.stateCount() == 2);
}

TEST_CASE("two interleaved sensors give four global states", "[model][compose]") {
    Imdp const m = compose(sensor(1), sensor(2), {});
    CHECK(m.stateCount() == 4);
    CHECK(validate(m).valid());
    StateId const both = idOf(m, "ok1|ok2");
    CHECK(m.choices(both).size() == 2);
    for (auto const& c : m.choices(both)) {
        CHECK(c.successors.size() == 2);
    }
}

TEST_CASE("product labels are the union of component labels", "[model][compose]") {
    ImdpBuilder first;
    first.addState("x").setInitial("x").addLabel("x", "p").addLabel("x", "shared");
    first.addChoice("x", "a", {{"x", Interval::point(1)}});
    ImdpBuilder second;
    second.addState("y").setInitial("y").addLabel("y", "q").addLabel("y", "shared");
    second.addChoice("y", "b", {{"y", Interval::point(1)}});
    Imdp const m = compose(first.build(), second.build(), {});
    REQUIRE(m.stateCount() == 1);
    std::vector<std::string> names;
    for (PropId p : m.labels(0)) {
        names.push_back(m.propName(p));
    }
    CHECK(names == std::vector<std::string>{"p", "q", "shared"});
}

TEST_CASE("composition rejects ambiguous and dead products", "[model][compose]") {
    Imdp const s1 = sensor(1);
    CHECK_THROWS_AS(compose(s1, sensor(1), {}), ModelError);

    ImdpBuilder noInit;
    noInit.addState("x").addChoice("x", "a", {{"x", Interval::point(1)}});
    CHECK_THROWS_AS(compose(noInit.build(), s1, {}), ModelError);

    ImdpBuilder waits;
    waits.addState("x").setInitial("x").addChoice("x", "never", {{"x", Interval::point(1)}});
    CHECK_THROWS_AS(compose(waits.build(), gateway({"other"}), {"never", "other"}), ModelError);
}

TEST_CASE("composition is associative on names", "[model][compose]") {
    Imdp const a = sensor(1);
    Imdp const b = sensor(2);
    Imdp const c = sensor(3);
    Imdp const left = compose(compose(a, b, {}), c, {});
    Imdp const right = compose(a, compose(b, c, {}), {});
    CHECK(left == right);
    CHECK(left.stateCount() == 8);
}

TEST_CASE("partitions are canonical", "[model][partition]") {
    Partition const p = Partition::fromAssignment({2, 0, 2, 1});
    CHECK(p.blockCount() == 3);
    CHECK(p.block(0) == std::vector<StateId>{0, 2});
    CHECK(p == Partition::fromBlocks(4, {{3}, {1}, {2, 0}}));
    CHECK(Partition::discrete(3).refines(Partition::single(3)));
    CHECK_FALSE(Partition::single(3).refines(Partition::discrete(3)));
    Partition const split = Partition::single(4).split({1, 3});
    CHECK(split == Partition::fromAssignment({0, 1, 0, 1}));
    CHECK(split.refines(Partition::single(4)));
}
