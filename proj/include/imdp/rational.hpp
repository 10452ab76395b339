// Copyright (c) imdpmin contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>
#include <string_view>

namespace imdp {

/// Exact rational number. gmpxx keeps results of arithmetic canonical; values built from
/// a numerator/denominator pair must go through makeRational().
using Rational = mpq_class;

Rational makeRational(long num, long den);

/// Parses `num/den`, an integer, or a non-negative decimal literal such as `0.35` or `.5`.
/// Decimals are converted exactly (0.3 -> 3/10). Returns nullopt on malformed input.
std::optional<Rational> parseRational(std::string_view text);

/// Decimal notation when the value has a finite decimal expansion, `num/den` otherwise.
std::string formatRational(Rational const& value);

/// Always `num/den` (or `num` for integers).
std::string formatFraction(Rational const& value);

inline Rational const& zero() {
    static Rational const value(0);
    return value;
}

inline Rational const& one() {
    static Rational const value(1);
    return value;
}

}  // namespace imdp
