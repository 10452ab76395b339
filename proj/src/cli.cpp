// Copyright (c) imdpmin contributors.
// SPDX-License-Identifier: Apache-2.0
#include "imdp/cli.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include "imdp/bisim.hpp"
#include "imdp/errors.hpp"
#include "imdp/format.hpp"
#include "imdp/semantics.hpp"
#include "imdp/workbench.hpp"

namespace imdp::cli {

namespace {

/// Input problem already reported to the error stream.
struct InputFailure {};

struct OracleDisagreement {};

Interval parseIntervalOption(std::string const& text, std::string const& option) {
    auto comma = text.find(',');
    if (comma == std::string::npos) {
        throw InvalidIntervalError(option + " expects LO,HI");
    }
    auto lo = parseRational(text.substr(0, comma));
    auto hi = parseRational(text.substr(comma + 1));
    if (!lo || !hi) {
        throw InvalidIntervalError(option + " has a malformed bound in '" + text + "'");
    }
    Interval result(*lo, *hi);
    if (!result.isWellFormed()) {
        throw InvalidIntervalError(option + " interval " + formatInterval(result) + " is not a subinterval of [0,1]");
    }
    return result;
}

class Session {
   public:
    Session(std::istream& in, std::ostream& out, std::ostream& err) : in_(in), out_(out), err_(err) {}

    unsigned jobs = 1;
    bool verbose = false;

    Imdp load(std::string const& file) {
        std::string text;
        std::string const display = file.empty() || file == "-" ? "<stdin>" : file;
        if (file.empty() || file == "-") {
            std::ostringstream buffer;
            buffer << in_.rdbuf();
            text = buffer.str();
        } else {
            std::ifstream stream(file, std::ios::binary);
            if (!stream) {
                err_ << display << ": cannot open file\n";
                throw InputFailure{};
            }
            std::ostringstream buffer;
            buffer << stream.rdbuf();
            text = buffer.str();
        }
        try {
            return parseImdp(text);
        } catch (ParseError const& e) {
            err_ << display << ':' << e.line() << ':' << e.column() << ": error: " << e.detail() << '\n';
            throw InputFailure{};
        } catch (ModelError const& e) {
            err_ << display << ": error: " << e.what() << '\n';
            throw InputFailure{};
        }
    }

    Imdp loadValid(std::string const& file) {
        Imdp model = load(file);
        auto report = validate(model);
        if (!report.valid()) {
            err_ << formatReport(report);
            throw InputFailure{};
        }
        return model;
    }

    void emitModel(Imdp const& model, std::string const& outFile) {
        if (outFile.empty() || outFile == "-") {
            out_ << serializeImdp(model);
        } else {
            writeImdpFile(outFile, model);
            note("wrote " + outFile);
        }
    }

    void note(std::string const& message) {
        if (verbose) {
            err_ << message << '\n';
        }
    }

    BisimResult minimize(Imdp const& model, BisimKind kind) {
        auto const start = std::chrono::steady_clock::now();
        BisimOptions options;
        options.jobs = jobs;
        BisimResult result = refine(model, kind, options);
        auto const ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start).count();
        note(std::string(kindName(kind)) + ": " + std::to_string(result.partition.blockCount()) + " blocks, " + std::to_string(result.sweeps) +
             " sweeps, " + std::to_string(result.splits) + " splits, " + std::to_string(ms) + " ms");
        return result;
    }

    std::ostream& out() { return out_; }
    std::ostream& err() { return err_; }

   private:
    std::istream& in_;
    std::ostream& out_;
    std::ostream& err_;
};

BisimKind requireKind(std::string const& name) {
    auto kind = parseKind(name);
    if (!kind) {
        throw InvalidIntervalError("unknown semantics '" + name + "'; expected coop or comp");
    }
    return *kind;
}

}  // namespace

int run(std::vector<std::string> const& args, std::istream& in, std::ostream& out, std::ostream& err) {
    Session session(in, out, err);

    CLI::App app{"Minimisation of interval Markov decision processes under cooperative and competitive bisimulation", "imdpmin"};
    app.require_subcommand(1);
    app.option_defaults()->always_capture_default();
    app.add_option("--jobs,-j", session.jobs, "Worker threads for signature evaluation")->check(CLI::PositiveNumber);
    app.add_flag("--verbose,-v", session.verbose, "Progress and timing on standard error");

    std::string file = "-";
    std::string semantics = "coop";
    std::string outFile;
    std::string formula;

    auto* validateCmd = app.add_subcommand("validate", "Check a model and list every defect");
    validateCmd->add_option("file", file, "Model file, '-' for standard input");

    auto* minimizeCmd = app.add_subcommand("minimize", "Print the bisimulation partition and reduction report");
    minimizeCmd->add_option("file", file, "Model file, '-' for standard input");
    minimizeCmd->add_option("--semantics,-s", semantics, "coop or comp")->check(CLI::IsMember({"coop", "comp"}));
    minimizeCmd->add_option("--out,-o", outFile, "Write the quotient model here");

    auto* quotientCmd = app.add_subcommand("quotient", "Print the quotient model");
    quotientCmd->add_option("file", file, "Model file, '-' for standard input");
    quotientCmd->add_option("--semantics,-s", semantics, "coop or comp")->check(CLI::IsMember({"coop", "comp"}));
    quotientCmd->add_option("--out,-o", outFile, "Output file instead of standard output");

    auto* mcCmd = app.add_subcommand("mc", "Evaluate a bounded formula in every state");
    mcCmd->add_option("file", file, "Model file, '-' for standard input");
    mcCmd->add_option("--formula,-f", formula, "Formula, e.g. 'P>=0.7 [ \"a\" U<=4 \"b\" ] mode=maximin'")->required();

    auto* reportCmd = app.add_subcommand("report", "Print the reduction table for one model");
    reportCmd->add_option("file", file, "Model file, '-' for standard input");
    reportCmd->add_option("--semantics,-s", semantics, "coop or comp")->check(CLI::IsMember({"coop", "comp"}));

    auto* oracleCmd = app.add_subcommand("oracle-check", "Compare the refinement engine with the exhaustive search");
    oracleCmd->add_option("file", file, "Model file, '-' for standard input");
    oracleCmd->add_option("--semantics,-s", semantics, "coop, comp or both")->check(CLI::IsMember({"coop", "comp", "both"}));

    auto* generateCmd = app.add_subcommand("generate", "Write a generated model");
    generateCmd->require_subcommand(1);
    generateCmd->add_option("--out,-o", outFile, "Output file instead of standard output");

    unsigned sensors = 3;
    std::string failure = "0.1,0.2";
    auto* wsnCmd = generateCmd->add_subcommand("wsn", "Wireless sensor network with uncertain message loss");
    wsnCmd->add_option("--sensors,-n", sensors, "Number of sensors")->check(CLI::Range(1, 20));
    wsnCmd->add_option("--p", failure, "Failure interval LO,HI");

    CsmaConfig csma;
    std::string send = "0.8,0.9";
    std::string collide = "0.1,0.2";
    auto* csmaCmd = generateCmd->add_subcommand("csma", "Simplified CSMA/CD bus");
    csmaCmd->add_option("--nodes,-n", csma.nodes, "Number of nodes")->check(CLI::Range(2, 8));
    csmaCmd->add_option("--collisions,-c", csma.maxCollisions, "Collisions before a node aborts")->check(CLI::Range(1, 6));
    csmaCmd->add_option("--send", send, "Send probability interval LO,HI");
    csmaCmd->add_option("--collide", collide, "Collision probability interval LO,HI");

    generateCmd->add_subcommand("example1", "The six-state example with absorbing targets l and r");

    std::uint64_t seed = 1;
    RandomModelConfig randomConfig;
    auto* randomCmd = generateCmd->add_subcommand("random", "Small random valid model");
    randomCmd->add_option("--seed", seed, "Random seed");
    randomCmd->add_option("--states", randomConfig.maxStates, "Maximum number of states")->check(CLI::Range(1, 64));

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (CLI::ParseError const& e) {
        int const code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitInputError;
    }

    try {
        if (*validateCmd) {
            Imdp const model = session.load(file);
            auto const report = validate(model);
            out << formatReport(report);
            return report.valid() ? kExitOk : kExitInputError;
        }
        if (*minimizeCmd || *quotientCmd || *reportCmd) {
            Imdp const model = session.loadValid(file);
            BisimKind const kind = requireKind(semantics);
            BisimResult const result = session.minimize(model, kind);
            Imdp const reduced = quotient(model, result.partition);
            if (*quotientCmd) {
                session.emitModel(reduced, outFile);
                return kExitOk;
            }
            ReductionReport const report = reductionReport(model, reduced);
            if (*minimizeCmd) {
                out << formatPartition(model, result.partition);
                out << formatReportLines(report);
                if (!outFile.empty()) {
                    session.emitModel(reduced, outFile);
                }
            } else {
                out << formatReportTable({{file == "-" ? "<stdin>" : file, report}});
                out << formatReportLines(report);
            }
            return kExitOk;
        }
        if (*mcCmd) {
            Imdp const model = session.loadValid(file);
            FormulaPtr parsed;
            try {
                parsed = parseFormula(formula);
            } catch (FormulaParseError const& e) {
                err << "formula: " << e.what() << '\n';
                return kExitInputError;
            }
            StateSet const sat = checkStateFormula(model, *parsed);
            std::optional<ValueVector> values;
            std::optional<QuantifierMode> compared;
            if (parsed->kind == StateFormula::Kind::Probability) {
                compared = comparedMode(parsed->mode, parsed->comparison);
                values = pathValues(model, *parsed->path, *compared);
            }
            out << "formula=" << formatFormula(*parsed) << '\n';
            if (compared) {
                out << "values=" << modeName(*compared) << '\n';
            }
            std::size_t count = 0;
            for (StateId s = 0; s < model.stateCount(); ++s) {
                count += sat[s];
                out << model.stateName(s) << ' ' << (sat[s] ? "true" : "false");
                if (values) {
                    out << ' ' << formatFraction((*values)[s]);
                }
                out << '\n';
            }
            out << "satisfied=" << count << '\n';
            return kExitOk;
        }
        if (*oracleCmd) {
            Imdp const model = session.loadValid(file);
            std::vector<BisimKind> kinds;
            if (semantics != "comp") {
                kinds.push_back(BisimKind::Cooperative);
            }
            if (semantics != "coop") {
                kinds.push_back(BisimKind::Competitive);
            }
            bool agree = true;
            for (BisimKind kind : kinds) {
                Partition const engine = session.minimize(model, kind).partition;
                Partition const oracle = bruteForceBisimulation(model, kind);
                bool const same = engine == oracle;
                agree = agree && same;
                out << kindName(kind) << '=' << (same ? "agree" : "disagree") << '\n';
                if (!same) {
                    err << "engine partition (" << kindName(kind) << "):\n" << formatPartition(model, engine);
                    err << "oracle partition (" << kindName(kind) << "):\n" << formatPartition(model, oracle);
                }
            }
            return agree ? kExitOk : kExitOracleDisagreement;
        }
        if (*generateCmd) {
            Imdp model;
            if (*wsnCmd) {
                model = genWSN(sensors, parseIntervalOption(failure, "--p"));
            } else if (*csmaCmd) {
                csma.send = parseIntervalOption(send, "--send");
                csma.collide = parseIntervalOption(collide, "--collide");
                model = genCSMA(csma);
            } else if (*randomCmd) {
                std::mt19937_64 rng(seed);
                model = randomImdp(rng, randomConfig);
            } else {
                model = genExample1();
            }
            session.emitModel(model, outFile);
            return kExitOk;
        }
    } catch (InputFailure const&) {
        return kExitInputError;
    } catch (InvariantError const& e) {
        err << "internal error: " << e.what() << '\n';
        return kExitInternalError;
    } catch (Error const& e) {
        err << "error: " << e.what() << '\n';
        return kExitInputError;
    } catch (std::exception const& e) {
        err << "internal error: " << e.what() << '\n';
        return kExitInternalError;
    }
    return kExitInputError;
}

}  // namespace imdp::cli
