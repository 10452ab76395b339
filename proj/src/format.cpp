// Copyright (c) imdpmin contributors.
// SPDX-License-Identifier: Apache-2.0
#include "imdp/format.hpp"

#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "imdp/errors.hpp"

namespace imdp {

namespace {

struct Token {
    enum class Kind { Ident, LBracket, RBracket, Comma, Colon };
    Kind kind;
    std::string text;
    std::size_t column;
};

bool isSpecial(char c) {
    return c == '[' || c == ']' || c == ',' || c == ':' || c == '#';
}

bool isSpace(char c) {
    return c == ' ' || c == '\t' || c == '\r' || c == '\v' || c == '\f';
}

std::vector<Token> tokenize(std::string_view line) {
    std::vector<Token> tokens;
    std::size_t i = 0;
    while (i < line.size()) {
        char c = line[i];
        if (isSpace(c)) {
            ++i;
            continue;
        }
        if (c == '#') {
            break;
        }
        std::size_t column = i + 1;
        switch (c) {
            case '[':
                tokens.push_back({Token::Kind::LBracket, "[", column});
                ++i;
                continue;
            case ']':
                tokens.push_back({Token::Kind::RBracket, "]", column});
                ++i;
                continue;
            case ',':
                tokens.push_back({Token::Kind::Comma, ",", column});
                ++i;
                continue;
            case ':':
                tokens.push_back({Token::Kind::Colon, ":", column});
                ++i;
                continue;
            default:
                break;
        }
        std::size_t start = i;
        while (i < line.size() && !isSpace(line[i]) && !isSpecial(line[i])) {
            ++i;
        }
        tokens.push_back({Token::Kind::Ident, std::string(line.substr(start, i - start)), column});
    }
    return tokens;
}

bool isReserved(std::string const& word) {
    return word == "imdp" || word == "states" || word == "initial" || word == "label" || word == "->";
}

struct StateRef {
    std::string name;
    std::size_t line;
    std::size_t column;
};

class LineParser {
   public:
    LineParser(std::vector<Token> tokens, std::size_t lineNo, std::size_t lineLength)
        : tokens_(std::move(tokens)), lineNo_(lineNo), endColumn_(lineLength + 1) {}

    bool atEnd() const { return pos_ >= tokens_.size(); }

    Token const& peek() const {
        if (atEnd()) {
            fail(endColumn_, "unexpected end of line");
        }
        return tokens_[pos_];
    }

    Token const& next() {
        Token const& t = peek();
        ++pos_;
        return t;
    }

    Token const& expect(Token::Kind kind, std::string const& what) {
        if (atEnd()) {
            fail(endColumn_, "expected " + what + " before end of line");
        }
        Token const& t = tokens_[pos_];
        if (t.kind != kind) {
            fail(t.column, "expected " + what + ", found '" + t.text + "'");
        }
        ++pos_;
        return t;
    }

    Token const& identifier(std::string const& what) {
        Token const& t = expect(Token::Kind::Ident, what);
        if (isReserved(t.text)) {
            fail(t.column, "reserved word '" + t.text + "' cannot be used as " + what);
        }
        return t;
    }

    void expectEnd() const {
        if (!atEnd()) {
            fail(tokens_[pos_].column, "unexpected '" + tokens_[pos_].text + "'");
        }
    }

    [[noreturn]] void fail(std::size_t column, std::string const& message) const { throw ParseError(lineNo_, column, message); }

    std::size_t line() const { return lineNo_; }

   private:
    std::vector<Token> tokens_;
    std::size_t pos_ = 0;
    std::size_t lineNo_;
    std::size_t endColumn_;
};

Rational parseEndpoint(LineParser& p) {
    Token const& t = p.expect(Token::Kind::Ident, "probability");
    auto value = parseRational(t.text);
    if (!value) {
        p.fail(t.column, "malformed rational or decimal '" + t.text + "'");
    }
    return *value;
}

}  // namespace

Imdp parseImdp(std::string_view text) {
    ImdpBuilder builder;
    std::set<std::string> declared;
    std::vector<StateRef> references;
    std::map<std::pair<std::string, std::string>, std::size_t> seenRows;
    bool sawHeader = false;

    std::size_t lineNo = 0;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t end = text.find('\n', start);
        if (end == std::string_view::npos) {
            end = text.size();
        }
        std::string_view line = text.substr(start, end - start);
        start = end + 1;
        ++lineNo;

        auto tokens = tokenize(line);
        if (tokens.empty()) {
            if (end == text.size()) {
                break;
            }
            continue;
        }
        LineParser p(std::move(tokens), lineNo, line.size());
        Token const first = p.peek();

        if (!sawHeader) {
            if (first.kind != Token::Kind::Ident || first.text != "imdp") {
                p.fail(first.column, "expected 'imdp' header");
            }
            p.next();
            p.expectEnd();
            sawHeader = true;
            continue;
        }
        if (first.kind != Token::Kind::Ident) {
            p.fail(first.column, "unexpected '" + first.text + "'");
        }

        if (first.text == "imdp") {
            p.fail(first.column, "duplicate 'imdp' header");
        } else if (first.text == "states") {
            p.next();
            p.expect(Token::Kind::Colon, "':'");
            while (!p.atEnd()) {
                Token const& t = p.identifier("state name");
                if (!declared.insert(t.text).second) {
                    p.fail(t.column, "duplicate state '" + t.text + "'");
                }
                builder.addState(t.text);
            }
        } else if (first.text == "initial") {
            p.next();
            p.expect(Token::Kind::Colon, "':'");
            Token const& t = p.identifier("state name");
            references.push_back({t.text, lineNo, t.column});
            builder.setInitial(t.text);
            p.expectEnd();
        } else if (first.text == "label") {
            p.next();
            Token const& state = p.identifier("state name");
            references.push_back({state.text, lineNo, state.column});
            p.expect(Token::Kind::Colon, "':'");
            while (!p.atEnd()) {
                Token const& prop = p.identifier("proposition");
                builder.addLabel(state.text, prop.text);
            }
        } else {
            Token const& state = p.identifier("state name");
            Token const& action = p.identifier("action name");
            Token const& arrow = p.expect(Token::Kind::Ident, "'->'");
            if (arrow.text != "->") {
                p.fail(arrow.column, "expected '->', found '" + arrow.text + "'");
            }
            references.push_back({state.text, lineNo, state.column});
            auto key = std::make_pair(state.text, action.text);
            if (auto it = seenRows.find(key); it != seenRows.end()) {
                p.fail(state.column, "duplicate transition line for state '" + state.text + "' and action '" + action.text + "' (first on line " +
                                         std::to_string(it->second) + ")");
            }
            seenRows.emplace(key, lineNo);

            std::vector<std::pair<std::string, Interval>> successors;
            std::set<std::string> targets;
            while (true) {
                Token const& target = p.identifier("target state");
                references.push_back({target.text, lineNo, target.column});
                if (!targets.insert(target.text).second) {
                    p.fail(target.column, "duplicate target '" + target.text + "' for state '" + state.text + "' and action '" + action.text + "'");
                }
                Token const& open = p.expect(Token::Kind::LBracket, "'['");
                Rational lo = parseEndpoint(p);
                p.expect(Token::Kind::Comma, "','");
                Rational hi = parseEndpoint(p);
                p.expect(Token::Kind::RBracket, "']'");
                if (lo > hi) {
                    p.fail(open.column, "empty interval [" + formatRational(lo) + "," + formatRational(hi) + "]");
                }
                successors.emplace_back(target.text, Interval(lo, hi));
                if (p.atEnd()) {
                    break;
                }
                p.expect(Token::Kind::Comma, "',' or end of line");
            }
            builder.addChoice(state.text, action.text, std::move(successors));
        }
        if (end == text.size()) {
            break;
        }
    }
    if (!sawHeader) {
        throw ParseError(lineNo == 0 ? 1 : lineNo, 1, "missing 'imdp' header");
    }
    for (auto const& ref : references) {
        if (!declared.count(ref.name)) {
            throw ParseError(ref.line, ref.column, "unknown state '" + ref.name + "'");
        }
    }
    return builder.build();
}

std::string serializeImdp(Imdp const& model) {
    std::ostringstream out;
    out << "imdp\n";
    out << "states:";
    for (auto const& name : model.stateNames()) {
        out << ' ' << name;
    }
    out << '\n';
    if (auto init = model.initialState()) {
        out << "initial: " << model.stateName(*init) << '\n';
    }
    for (StateId s = 0; s < model.stateCount(); ++s) {
        if (model.labels(s).empty()) {
            continue;
        }
        out << "label " << model.stateName(s) << ':';
        for (PropId p : model.labels(s)) {
            out << ' ' << model.propName(p);
        }
        out << '\n';
    }
    for (StateId s = 0; s < model.stateCount(); ++s) {
        for (auto const& choice : model.choices(s)) {
            out << model.stateName(s) << ' ' << model.actionName(choice.action) << " ->";
            if (choice.successors.empty()) {
                // Only reachable for invalid models whose declared row was all [0,0].
                out << ' ' << model.stateName(s) << " [0,0]\n";
                continue;
            }
            bool first = true;
            for (auto const& succ : choice.successors) {
                out << (first ? " " : ", ") << model.stateName(succ.target) << ' ' << formatInterval(succ.probability);
                first = false;
            }
            out << '\n';
        }
    }
    return out.str();
}

Imdp readImdpFile(std::filesystem::path const& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Error("cannot open '" + path.string() + "'");
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parseImdp(buffer.str());
}

void writeImdpFile(std::filesystem::path const& path, Imdp const& model) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw Error("cannot write '" + path.string() + "'");
    }
    out << serializeImdp(model);
}

}  // namespace imdp
