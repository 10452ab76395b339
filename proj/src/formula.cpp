// Copyright (c) imdpmin contributors.
// SPDX-License-Identifier: Apache-2.0
#include <cctype>

#include "imdp/errors.hpp"
#include "imdp/semantics.hpp"

namespace imdp {

std::shared_ptr<StateFormula const> StateFormula::makeTrue() {
    auto f = std::make_shared<StateFormula>();
    f->kind = Kind::True;
    return f;
}

std::shared_ptr<StateFormula const> StateFormula::makeAtom(std::string name) {
    auto f = std::make_shared<StateFormula>();
    f->kind = Kind::Atom;
    f->atom = std::move(name);
    return f;
}

std::shared_ptr<StateFormula const> StateFormula::makeNot(std::shared_ptr<StateFormula const> inner) {
    auto f = std::make_shared<StateFormula>();
    f->kind = Kind::Not;
    f->left = std::move(inner);
    return f;
}

std::shared_ptr<StateFormula const> StateFormula::makeAnd(std::shared_ptr<StateFormula const> a, std::shared_ptr<StateFormula const> b) {
    auto f = std::make_shared<StateFormula>();
    f->kind = Kind::And;
    f->left = std::move(a);
    f->right = std::move(b);
    return f;
}

std::shared_ptr<StateFormula const> StateFormula::makeProbability(Comparison cmp, Rational threshold, QuantifierMode mode, std::shared_ptr<PathFormula const> path) {
    auto f = std::make_shared<StateFormula>();
    f->kind = Kind::Probability;
    f->comparison = cmp;
    f->threshold = std::move(threshold);
    f->mode = mode;
    f->path = std::move(path);
    return f;
}

namespace {

class FormulaParser {
   public:
    explicit FormulaParser(std::string_view text) : text_(text) {}

    FormulaPtr parse() {
        FormulaPtr result = disjunction();
        skipSpace();
        if (pos_ != text_.size()) {
            fail("unexpected '" + std::string(1, text_[pos_]) + "'");
        }
        return result;
    }

   private:
    [[noreturn]] void fail(std::string const& message) const { throw FormulaParseError(pos_ + 1, message); }

    void skipSpace() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) {
            ++pos_;
        }
    }

    bool accept(std::string_view token) {
        skipSpace();
        if (text_.substr(pos_, token.size()) == token) {
            pos_ += token.size();
            return true;
        }
        return false;
    }

    void expect(std::string_view token) {
        if (!accept(token)) {
            fail("expected '" + std::string(token) + "'");
        }
    }

    /// Keyword followed by a character that cannot continue an identifier.
    bool acceptWord(std::string_view word) {
        skipSpace();
        if (text_.substr(pos_, word.size()) != word) {
            return false;
        }
        std::size_t const end = pos_ + word.size();
        if (end < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[end])) || text_[end] == '_')) {
            return false;
        }
        pos_ = end;
        return true;
    }

    /// Disjunction is kept as negated conjunction of negations.
    FormulaPtr disjunction() {
        FormulaPtr left = conjunction();
        while (accept("|")) {
            left = StateFormula::makeNot(StateFormula::makeAnd(StateFormula::makeNot(left), StateFormula::makeNot(conjunction())));
        }
        return left;
    }

    FormulaPtr conjunction() {
        FormulaPtr left = unary();
        while (accept("&")) {
            left = StateFormula::makeAnd(left, unary());
        }
        return left;
    }

    FormulaPtr unary() {
        if (accept("!")) {
            return StateFormula::makeNot(unary());
        }
        return atomic();
    }

    FormulaPtr atomic() {
        skipSpace();
        if (accept("(")) {
            FormulaPtr inner = disjunction();
            expect(")");
            return inner;
        }
        if (acceptWord("true")) {
            return StateFormula::makeTrue();
        }
        if (acceptWord("false")) {
            return StateFormula::makeNot(StateFormula::makeTrue());
        }
        if (accept("\"")) {
            std::size_t const end = text_.find('"', pos_);
            if (end == std::string_view::npos) {
                fail("unterminated atom");
            }
            std::string name(text_.substr(pos_, end - pos_));
            if (name.empty()) {
                fail("empty atom");
            }
            pos_ = end + 1;
            return StateFormula::makeAtom(std::move(name));
        }
        if (pos_ < text_.size() && text_[pos_] == 'P') {
            ++pos_;
            return probability();
        }
        if (pos_ == text_.size()) {
            fail("unexpected end of formula");
        }
        fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    }

    FormulaPtr probability() {
        Comparison cmp;
        if (accept(">=")) {
            cmp = Comparison::GreaterEqual;
        } else if (accept("<=")) {
            cmp = Comparison::LessEqual;
        } else if (accept(">")) {
            cmp = Comparison::Greater;
        } else if (accept("<")) {
            cmp = Comparison::Less;
        } else {
            fail("expected comparison after 'P'");
        }
        skipSpace();
        std::size_t const start = pos_;
        while (pos_ < text_.size() && (std::isdigit(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '.' || text_[pos_] == '/')) {
            ++pos_;
        }
        auto threshold = parseRational(text_.substr(start, pos_ - start));
        if (!threshold || *threshold > 1) {
            pos_ = start;
            fail("expected probability bound in [0,1]");
        }
        expect("[");
        auto path = pathFormula();
        expect("]");
        QuantifierMode mode = QuantifierMode::MinMin;
        if (accept("mode=")) {
            std::size_t const nameStart = pos_;
            while (pos_ < text_.size() && std::isalpha(static_cast<unsigned char>(text_[pos_]))) {
                ++pos_;
            }
            auto parsed = parseMode(text_.substr(nameStart, pos_ - nameStart));
            if (!parsed) {
                pos_ = nameStart;
                fail("unknown mode; expected minmin, maxmax, maximin or minimax");
            }
            mode = *parsed;
        }
        return StateFormula::makeProbability(cmp, std::move(*threshold), mode, std::move(path));
    }

    std::shared_ptr<PathFormula const> pathFormula() {
        auto path = std::make_shared<PathFormula>();
        if (acceptWord("X")) {
            path->kind = PathFormula::Kind::Next;
            path->right = unary();
            return path;
        }
        skipSpace();
        if (pos_ < text_.size() && text_[pos_] == 'F' && (pos_ + 1 == text_.size() || !std::isalnum(static_cast<unsigned char>(text_[pos_ + 1])))) {
            ++pos_;
            path->left = StateFormula::makeTrue();
        } else {
            path->left = unary();
            skipSpace();
            if (pos_ >= text_.size() || text_[pos_] != 'U') {
                fail("expected 'U', 'F' or 'X'");
            }
            ++pos_;
        }
        if (accept("<=")) {
            path->kind = PathFormula::Kind::BoundedUntil;
            path->horizon = stepBound();
        } else {
            path->kind = PathFormula::Kind::Until;
        }
        path->right = unary();
        return path;
    }

    unsigned stepBound() {
        skipSpace();
        std::size_t const start = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
            ++pos_;
        }
        if (start == pos_) {
            fail("expected step bound");
        }
        return static_cast<unsigned>(std::stoul(std::string(text_.substr(start, pos_ - start))));
    }

    std::string_view text_;
    std::size_t pos_ = 0;
};

std::string formatComparison(Comparison cmp) {
    switch (cmp) {
        case Comparison::Less:
            return "<";
        case Comparison::LessEqual:
            return "<=";
        case Comparison::Greater:
            return ">";
        case Comparison::GreaterEqual:
            return ">=";
    }
    return "?";
}

}  // namespace

FormulaPtr parseFormula(std::string_view text) {
    return FormulaParser(text).parse();
}

std::string formatFormula(StateFormula const& formula) {
    switch (formula.kind) {
        case StateFormula::Kind::True:
            return "true";
        case StateFormula::Kind::Atom:
            return "\"" + formula.atom + "\"";
        case StateFormula::Kind::Not:
            return "!" + formatFormula(*formula.left);
        case StateFormula::Kind::And:
            return "(" + formatFormula(*formula.left) + " & " + formatFormula(*formula.right) + ")";
        case StateFormula::Kind::Probability: {
            PathFormula const& path = *formula.path;
            std::string body;
            switch (path.kind) {
                case PathFormula::Kind::Next:
                    body = "X " + formatFormula(*path.right);
                    break;
                case PathFormula::Kind::BoundedUntil:
                    body = formatFormula(*path.left) + " U<=" + std::to_string(path.horizon) + " " + formatFormula(*path.right);
                    break;
                case PathFormula::Kind::Until:
                    body = formatFormula(*path.left) + " U " + formatFormula(*path.right);
                    break;
            }
            return "P" + formatComparison(formula.comparison) + formatRational(formula.threshold) + " [ " + body + " ] mode=" + std::string(modeName(formula.mode));
        }
    }
    return "?";
}

}  // namespace imdp
