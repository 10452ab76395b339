// Copyright (c) imdpmin contributors.
// SPDX-License-Identifier: Apache-2.0
#include "imdp/rational.hpp"

#include <cctype>

namespace imdp {

Rational makeRational(long num, long den) {
    Rational r(num, den);
    r.canonicalize();
    return r;
}

namespace {

bool allDigits(std::string_view s) {
    if (s.empty()) {
        return false;
    }
    for (char c : s) {
        if (!std::isdigit(static_cast<unsigned char>(c))) {
            return false;
        }
    }
    return true;
}

}  // namespace

std::optional<Rational> parseRational(std::string_view text) {
    if (text.empty()) {
        return std::nullopt;
    }
    if (auto slash = text.find('/'); slash != std::string_view::npos) {
        auto num = text.substr(0, slash);
        auto den = text.substr(slash + 1);
        if (!allDigits(num) || !allDigits(den)) {
            return std::nullopt;
        }
        mpz_class n(std::string(num), 10);
        mpz_class d(std::string(den), 10);
        if (d == 0) {
            return std::nullopt;
        }
        Rational r(n, d);
        r.canonicalize();
        return r;
    }
    auto dot = text.find('.');
    if (dot == std::string_view::npos) {
        if (!allDigits(text)) {
            return std::nullopt;
        }
        return Rational(mpz_class(std::string(text), 10));
    }
    auto intPart = text.substr(0, dot);
    auto fracPart = text.substr(dot + 1);
    if (intPart.empty() && fracPart.empty()) {
        return std::nullopt;
    }
    if ((!intPart.empty() && !allDigits(intPart)) || (!fracPart.empty() && !allDigits(fracPart))) {
        return std::nullopt;
    }
    std::string digits = std::string(intPart) + std::string(fracPart);
    mpz_class den;
    mpz_ui_pow_ui(den.get_mpz_t(), 10, fracPart.size());
    Rational r(mpz_class(digits, 10), den);
    r.canonicalize();
    return r;
}

std::string formatFraction(Rational const& value) {
    return value.get_str(10);
}

std::string formatRational(Rational const& value) {
    mpz_class den = value.get_den();
    unsigned twos = 0;
    unsigned fives = 0;
    while (mpz_divisible_ui_p(den.get_mpz_t(), 2)) {
        den /= 2;
        ++twos;
    }
    while (mpz_divisible_ui_p(den.get_mpz_t(), 5)) {
        den /= 5;
        ++fives;
    }
    if (den != 1) {
        return formatFraction(value);
    }
    unsigned places = std::max(twos, fives);
    mpz_class scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, places);
    mpz_class scaled = value.get_num() * scale / value.get_den();
    bool negative = scaled < 0;
    if (negative) {
        scaled = -scaled;
    }
    std::string digits = scaled.get_str(10);
    if (places > 0) {
        if (digits.size() <= places) {
            digits.insert(0, places + 1 - digits.size(), '0');
        }
        digits.insert(digits.size() - places, ".");
    }
    return negative ? "-" + digits : digits;
}

}  // namespace imdp
