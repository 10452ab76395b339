// Copyright (c) imdpmin contributors.
// SPDX-License-Identifier: Apache-2.0
#include "imdp/workbench.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <iomanip>
#include <map>
#include <set>
#include <sstream>

#include "imdp/errors.hpp"

namespace imdp {

namespace {

Interval iv(long lo, long hi, long den = 10) {
    return Interval(makeRational(lo, den), makeRational(hi, den));
}

Interval complement(Interval const& p) {
    return Interval(1 - p.hi, 1 - p.lo);
}

void requireProbability(Interval const& p, std::string const& what) {
    if (!p.isWellFormed()) {
        throw InvalidIntervalError(what + " interval " + formatInterval(p) + " is not a subinterval of [0,1]");
    }
}

}  // namespace

Imdp genExample1() {
    ImdpBuilder b;
    for (auto const* name : {"s", "sbar", "t", "tbar", "u", "ubar", "l", "r"}) {
        b.addState(name);
    }
    b.addLabel("l", "left");
    b.addLabel("r", "right");
    b.addChoice("l", "loop", {{"l", Interval::point(1)}});
    b.addChoice("r", "loop", {{"r", Interval::point(1)}});

    b.addChoice("s", "a", {{"l", iv(3, 7)}, {"r", iv(0, 10)}});
    b.addChoice("s", "b", {{"l", iv(0, 10)}, {"r", iv(2, 6)}});
    b.addChoice("sbar", "a", {{"l", iv(3, 7)}, {"r", iv(0, 10)}});
    b.addChoice("sbar", "c", {{"l", iv(0, 10)}, {"r", iv(7, 8)}});

    b.addChoice("t", "a", {{"l", iv(1, 3)}, {"r", iv(8, 10)}});
    b.addChoice("t", "b", {{"l", iv(2, 6)}, {"r", iv(0, 10)}});
    b.addChoice("tbar", "c", {{"l", iv(1, 10)}, {"r", iv(4, 9)}});
    b.addChoice("tbar", "d", {{"l", iv(2, 4)}, {"r", iv(0, 8)}});

    b.addChoice("u", "a", {{"l", iv(1, 6)}, {"r", iv(0, 10)}});
    b.addChoice("u", "b", {{"l", iv(0, 6)}, {"r", iv(0, 10)}});
    b.addChoice("ubar", "a", {{"l", iv(1, 6)}, {"r", iv(0, 10)}});
    b.addChoice("ubar", "c", {{"l", iv(1, 8)}, {"r", iv(0, 10)}});
    return b.build();
}

Imdp genSensor(unsigned index, Interval const& p) {
    requireProbability(p, "failure");
    std::string const i = std::to_string(index);
    std::string const ok = "ok" + i;
    std::string const fail = "fail" + i;
    ImdpBuilder b;
    b.addState(ok).addState(fail).setInitial(ok);
    b.addChoice(ok, "send_" + i, {{fail, p}, {ok, complement(p)}});
    b.addChoice(fail, "send_" + i, {{fail, p}, {ok, complement(p)}});
    return b.build();
}

Imdp genWSN(unsigned sensors, Interval const& p) {
    if (sensors == 0) {
        throw InvalidIntervalError("sensor count must be positive");
    }
    requireProbability(p, "failure");
    if (p.hi >= 1) {
        throw InvalidIntervalError("failure interval " + formatInterval(p) + " must stay below 1");
    }
    if (sensors > 20) {
        throw InvalidIntervalError("sensor count " + std::to_string(sensors) + " is too large");
    }
    Interval const success = complement(p);
    auto name = [sensors](std::uint32_t bits) {
        std::string n = "s";
        for (unsigned i = 0; i < sensors; ++i) {
            n += (bits >> i) & 1 ? '1' : '0';
        }
        return n;
    };
    ImdpBuilder b;
    std::uint32_t const count = std::uint32_t{1} << sensors;
    for (std::uint32_t bits = 0; bits < count; ++bits) {
        std::string const s = name(bits);
        b.addState(s);
        b.addLabel(s, "f" + std::to_string(std::popcount(bits)));
        for (unsigned i = 0; i < sensors; ++i) {
            std::uint32_t const failed = bits | (std::uint32_t{1} << i);
            std::uint32_t const ok = bits & ~(std::uint32_t{1} << i);
            b.addChoice(s, "send_" + std::to_string(i + 1), {{name(failed), p}, {name(ok), success}});
        }
    }
    b.setInitial(name(0));
    return b.build();
}

namespace {

/// Local situation of one CSMA node.
struct Node {
    enum Phase { Ready, Sending, Waiting, Done, Aborted };
    Phase phase = Ready;
    unsigned collisions = 0;

    friend auto operator<=>(Node const&, Node const&) = default;

    std::string name() const {
        switch (phase) {
            case Ready:
                return "r" + std::to_string(collisions);
            case Sending:
                return "t" + std::to_string(collisions);
            case Waiting:
                return "w" + std::to_string(collisions);
            case Done:
                return "ok";
            case Aborted:
                return "ab";
        }
        return "?";
    }
};

/// Bus after a collision: `jam` is -1 while no collision is being resolved, 0 right after a
/// collision (before the back-off delay is drawn) and 1 + remaining slots while jammed.
struct Global {
    std::vector<Node> nodes;
    int jam = -1;

    friend auto operator<=>(Global const&, Global const&) = default;
};

std::string globalName(Global const& g) {
    std::string n;
    for (std::size_t i = 0; i < g.nodes.size(); ++i) {
        if (i > 0) {
            n += '_';
        }
        n += g.nodes[i].name();
    }
    if (g.jam == 0) {
        n += "_col";
    } else if (g.jam > 0) {
        n += "_j" + std::to_string(g.jam - 1);
    }
    return n;
}

}  // namespace

Imdp genCSMA(CsmaConfig const& config) {
    if (config.nodes < 2) {
        throw InvalidIntervalError("CSMA needs at least two nodes");
    }
    if (config.nodes > 8) {
        throw InvalidIntervalError("CSMA supports at most eight nodes");
    }
    if (config.maxCollisions < 1) {
        throw InvalidIntervalError("CSMA needs at least one permitted collision");
    }
    if (config.maxCollisions > 6) {
        throw InvalidIntervalError("collision bound " + std::to_string(config.maxCollisions) + " is too large");
    }
    requireProbability(config.send, "send");
    requireProbability(config.collide, "collision");

    std::map<Global, std::string> names;
    std::deque<Global> queue;
    auto visit = [&](Global const& g) -> std::string const& {
        auto it = names.find(g);
        if (it == names.end()) {
            it = names.emplace(g, globalName(g)).first;
            queue.push_back(g);
        }
        return it->second;
    };

    ImdpBuilder b;
    Global start;
    start.nodes.resize(config.nodes);
    b.setInitial(visit(start));
    auto collide = [&](Node const& n) {
        if (n.collisions + 1 > config.maxCollisions) {
            return Node{Node::Aborted, 0};
        }
        return Node{Node::Waiting, n.collisions + 1};
    };

    while (!queue.empty()) {
        Global const g = queue.front();
        queue.pop_front();
        std::string const name = names.at(g);
        b.addState(name);

        unsigned done = 0;
        bool aborted = false;
        bool busy = false;
        bool waiting = false;
        unsigned window = 0;
        for (auto const& n : g.nodes) {
            done += n.phase == Node::Done;
            aborted = aborted || n.phase == Node::Aborted;
            busy = busy || n.phase == Node::Sending;
            if (n.phase == Node::Waiting) {
                waiting = true;
                window = std::max(window, n.collisions);
            }
        }
        b.addLabel(name, "delivered" + std::to_string(done));
        if (aborted) {
            b.addLabel(name, "aborted");
        }
        if (busy) {
            b.addLabel(name, "busy");
        }
        if (g.jam >= 0) {
            b.addLabel(name, "jammed");
        }

        if (g.jam == 0) {
            // Draw the shared back-off delay uniformly from the window of the highest collision count.
            std::vector<std::pair<std::string, Interval>> successors;
            if (!waiting) {
                Global next = g;
                next.jam = -1;
                successors.emplace_back(visit(next), Interval::point(1));
            } else {
                unsigned const slots = 1U << (2 * window);
                for (unsigned d = 0; d < slots; ++d) {
                    Global next = g;
                    next.jam = static_cast<int>(d) + 1;
                    successors.emplace_back(visit(next), Interval::point(makeRational(1, slots)));
                }
            }
            b.addChoice(name, "backoff", std::move(successors));
            continue;
        }
        if (g.jam > 0) {
            Global next = g;
            if (g.jam == 1) {
                next.jam = -1;
                for (auto& n : next.nodes) {
                    if (n.phase == Node::Waiting) {
                        n.phase = Node::Ready;
                    }
                }
            } else {
                --next.jam;
            }
            b.addChoice(name, "tick", {{visit(next), Interval::point(1)}});
            continue;
        }

        bool anyAction = false;
        auto sender = std::find_if(g.nodes.begin(), g.nodes.end(), [](Node const& n) { return n.phase == Node::Sending; });
        for (std::size_t i = 0; i < g.nodes.size(); ++i) {
            std::string const id = std::to_string(i + 1);
            Node const& node = g.nodes[i];
            if (node.phase == Node::Ready) {
                Global next = g;
                if (sender == g.nodes.end()) {
                    next.nodes[i].phase = Node::Sending;
                    b.addChoice(name, "send_" + id, {{visit(next), config.send}, {name, complement(config.send)}});
                } else {
                    for (auto& n : next.nodes) {
                        if (n.phase == Node::Ready || n.phase == Node::Sending) {
                            n = collide(n);
                        }
                    }
                    next.jam = 0;
                    b.addChoice(name, "send_" + id, {{visit(next), config.collide}, {name, complement(config.collide)}});
                }
                anyAction = true;
            } else if (node.phase == Node::Sending) {
                Global next = g;
                next.nodes[i] = Node{Node::Done, 0};
                b.addChoice(name, "finish_" + id, {{visit(next), Interval::point(1)}});
                anyAction = true;
            }
        }
        if (!anyAction) {
            b.addChoice(name, "idle", {{name, Interval::point(1)}});
        }
    }
    return b.build();
}

Imdp randomImdp(std::mt19937_64& rng, RandomModelConfig const& config) {
    auto uniform = [&rng](unsigned lo, unsigned hi) { return std::uniform_int_distribution<unsigned>(lo, hi)(rng); };
    unsigned const n = uniform(1, std::max(1U, config.maxStates));
    unsigned const den = std::max(1U, config.denominator);
    auto stateName = [](unsigned i) { return "q" + std::to_string(i); };

    using Row = std::vector<std::pair<unsigned, Interval>>;
    auto randomRow = [&]() {
        unsigned const fanout = uniform(1, std::min(config.maxFanout, n));
        std::vector<unsigned> targets(n);
        for (unsigned i = 0; i < n; ++i) {
            targets[i] = i;
        }
        std::shuffle(targets.begin(), targets.end(), rng);
        targets.resize(fanout);
        std::sort(targets.begin(), targets.end());
        // Centre distribution with denominator den, every target getting at least 1/den.
        std::vector<unsigned> mass(fanout, 1);
        for (unsigned extra = fanout; extra < den; ++extra) {
            ++mass[uniform(0, fanout - 1)];
        }
        Row row;
        for (unsigned k = 0; k < fanout; ++k) {
            Rational const centre = makeRational(mass[k], den);
            Rational lo = centre - makeRational(uniform(0, 2), den);
            Rational hi = centre + makeRational(uniform(0, 2), den);
            row.emplace_back(targets[k], Interval(std::max(lo, Rational(0)), std::min(hi, Rational(1))));
        }
        return row;
    };
    // Widening keeps the row's polytope as a subset of the result; narrowing towards the row's
    // centre keeps the result inside the row's polytope.
    auto widen = [&](Row row) {
        for (auto& [t, interval] : row) {
            interval.lo = std::max(Rational(interval.lo - makeRational(uniform(0, 1), den)), Rational(0));
            interval.hi = std::min(Rational(interval.hi + makeRational(uniform(0, 1), den)), Rational(1));
        }
        return row;
    };
    auto narrow = [&](Row row) {
        // Shrink every interval halfway towards a feasible point of the row.
        std::vector<std::size_t> order(row.size());
        for (std::size_t k = 0; k < order.size(); ++k) {
            order[k] = k;
        }
        std::shuffle(order.begin(), order.end(), rng);
        Rational rest = 1;
        std::vector<Rational> point(row.size());
        for (std::size_t k = 0; k < row.size(); ++k) {
            point[k] = row[k].second.lo;
            rest -= point[k];
        }
        for (std::size_t k : order) {
            Rational const add = std::min(rest, Rational(row[k].second.hi - row[k].second.lo));
            point[k] += add;
            rest -= add;
        }
        for (std::size_t k = 0; k < row.size(); ++k) {
            Interval& interval = row[k].second;
            interval = Interval((interval.lo + point[k]) / 2, (interval.hi + point[k]) / 2);
        }
        return row;
    };

    std::vector<std::vector<Row>> rows(n);
    std::vector<std::vector<std::string>> labels(n);
    for (unsigned s = 0; s < n; ++s) {
        if (s > 0 && uniform(0, 1) == 0) {
            unsigned const source = uniform(0, s - 1);
            rows[s] = rows[source];
            labels[s] = labels[source];
            if (rows[s].size() < config.maxActions && uniform(0, 1) == 0) {
                Row const& base = rows[s][uniform(0, static_cast<unsigned>(rows[s].size()) - 1)];
                rows[s].push_back(uniform(0, 1) == 0 ? widen(base) : narrow(base));
            }
            std::shuffle(rows[s].begin(), rows[s].end(), rng);
            continue;
        }
        unsigned const actions = uniform(1, std::max(1U, config.maxActions));
        for (unsigned a = 0; a < actions; ++a) {
            rows[s].push_back(randomRow());
        }
        if (uniform(0, 2) == 0) {
            labels[s].push_back("a");
        }
        if (uniform(0, 3) == 0) {
            labels[s].push_back("b");
        }
    }

    ImdpBuilder b;
    for (unsigned s = 0; s < n; ++s) {
        b.addState(stateName(s));
        for (auto const& l : labels[s]) {
            b.addLabel(stateName(s), l);
        }
    }
    b.setInitial(stateName(0));
    for (unsigned s = 0; s < n; ++s) {
        for (std::size_t a = 0; a < rows[s].size(); ++a) {
            std::vector<std::pair<std::string, Interval>> successors;
            for (auto const& [t, interval] : rows[s][a]) {
                successors.emplace_back(stateName(t), interval);
            }
            b.addChoice(stateName(s), std::string(1, static_cast<char>('a' + a)), std::move(successors));
        }
    }
    Imdp model = b.build();
    if (!validate(model).valid()) {
        throw InvariantError("random generator produced an invalid model");
    }
    return model;
}

ReachQuery randomQuery(std::mt19937_64& rng, Imdp const& model, unsigned maxHorizon) {
    std::set<std::vector<PropId>> classes;
    for (StateId s = 0; s < model.stateCount(); ++s) {
        classes.insert(model.labels(s));
    }
    auto pick = [&]() {
        std::set<std::vector<PropId>> chosen;
        for (auto const& c : classes) {
            if (std::uniform_int_distribution<int>(0, 1)(rng) == 1) {
                chosen.insert(c);
            }
        }
        StateSet set(model.stateCount());
        for (StateId s = 0; s < model.stateCount(); ++s) {
            set[s] = chosen.count(model.labels(s)) > 0;
        }
        return set;
    };
    ReachQuery q;
    q.safe = pick();
    q.goal = pick();
    q.horizon = std::uniform_int_distribution<unsigned>(0, maxHorizon)(rng);
    return q;
}

bool gridContainmentOracle(Imdp const& model, StateId s, ActionId a, Partition const& partition, GridOracleConfig const& config) {
    if (config.denominator == 0) {
        throw InvariantError("grid denominator must be positive");
    }
    ClassPolytope const target = classPolytope(model, s, a, partition);
    std::vector<ClassPolytope> others;
    for (auto const& p : distinctPolytopes(classPolytopes(model, s, partition))) {
        if (!p.sameSet(target)) {
            others.push_back(p);
        }
    }
    if (others.empty()) {
        return false;
    }
    std::size_t const k = others.size();
    std::size_t combinations = 1;
    for (auto const& p : others) {
        combinations *= p.vertices().size();
        if (combinations > config.combinationCap) {
            throw OracleBoundError("corner combinations exceed the cap of " + std::to_string(config.combinationCap));
        }
    }

    auto allInside = [&](WeightVector const& rho) {
        std::vector<std::size_t> index(k, 0);
        std::vector<ClassDistribution> corners(k);
        while (true) {
            for (std::size_t i = 0; i < k; ++i) {
                corners[i] = others[i].vertices()[index[i]];
            }
            if (!target.contains(combinationPoint(rho, corners))) {
                return false;
            }
            std::size_t pos = 0;
            while (pos < k && ++index[pos] == others[pos].vertices().size()) {
                index[pos++] = 0;
            }
            if (pos == k) {
                return true;
            }
        }
    };

    long const den = config.denominator;
    std::vector<long> parts(k, 0);
    std::function<bool(std::size_t, long)> search = [&](std::size_t i, long left) -> bool {
        if (i + 1 == k) {
            parts[i] = left;
            WeightVector rho(k);
            for (std::size_t j = 0; j < k; ++j) {
                rho[j] = makeRational(parts[j], den);
            }
            return allInside(rho);
        }
        for (long v = 0; v <= left; ++v) {
            parts[i] = v;
            if (search(i + 1, left - v)) {
                return true;
            }
        }
        return false;
    };
    return search(0, den);
}

namespace {

std::size_t transitionCount(Imdp const& m) {
    std::size_t count = 0;
    for (StateId s = 0; s < m.stateCount(); ++s) {
        count += m.choices(s).size();
    }
    return count;
}

Rational factor(std::size_t original, std::size_t reduced) {
    if (original == 0) {
        return 0;
    }
    return 1 - makeRational(static_cast<long>(reduced), static_cast<long>(original));
}

std::string percent(Rational const& r) {
    Rational scaled = r * 100;
    mpz_class rounded = (scaled.get_num() * 2 + scaled.get_den()) / (scaled.get_den() * 2);
    return rounded.get_str() + "%";
}

}  // namespace

ReductionReport reductionReport(Imdp const& original, Imdp const& quotientModel) {
    ReductionReport r;
    r.originalStates = original.stateCount();
    r.originalTransitions = transitionCount(original);
    r.quotientStates = quotientModel.stateCount();
    r.quotientTransitions = transitionCount(quotientModel);
    r.stateReductionFactor = factor(r.originalStates, r.quotientStates);
    r.transitionReductionFactor = factor(r.originalTransitions, r.quotientTransitions);
    return r;
}

std::string formatReportLines(ReductionReport const& report) {
    std::ostringstream out;
    out << "originalStates=" << report.originalStates << '\n';
    out << "originalTransitions=" << report.originalTransitions << '\n';
    out << "quotientStates=" << report.quotientStates << '\n';
    out << "quotientTransitions=" << report.quotientTransitions << '\n';
    out << "stateReductionFactor=" << formatFraction(report.stateReductionFactor) << '\n';
    out << "transitionReductionFactor=" << formatFraction(report.transitionReductionFactor) << '\n';
    return out.str();
}

std::string formatReportTable(std::vector<ReportRow> const& rows) {
    std::vector<std::vector<std::string>> cells;
    cells.push_back({"Model", "States", "Transitions", "Min. states", "Min. transitions", "State red.", "Transition red."});
    for (auto const& row : rows) {
        auto const& r = row.report;
        cells.push_back({row.label, std::to_string(r.originalStates), std::to_string(r.originalTransitions), std::to_string(r.quotientStates),
                         std::to_string(r.quotientTransitions), percent(r.stateReductionFactor), percent(r.transitionReductionFactor)});
    }
    std::vector<std::size_t> width(cells.front().size(), 0);
    for (auto const& line : cells) {
        for (std::size_t c = 0; c < line.size(); ++c) {
            width[c] = std::max(width[c], line[c].size());
        }
    }
    std::ostringstream out;
    for (std::size_t r = 0; r < cells.size(); ++r) {
        for (std::size_t c = 0; c < cells[r].size(); ++c) {
            if (c > 0) {
                out << "  ";
            }
            if (c == 0) {
                out << std::left << std::setw(static_cast<int>(width[c])) << cells[r][c];
            } else {
                out << std::right << std::setw(static_cast<int>(width[c])) << cells[r][c];
            }
        }
        out << '\n';
        if (r == 0) {
            std::size_t total = 0;
            for (auto w : width) {
                total += w;
            }
            out << std::string(total + 2 * (width.size() - 1), '-') << '\n';
        }
    }
    return out.str();
}

}  // namespace imdp
