// Copyright (c) imdpmin contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "imdp/model.hpp"

namespace imdp {

/// Reads the line-oriented model format:
///
///     imdp
///     states: s1 s2 ...
///     initial: s1
///     label s1: p q
///     s1 a -> s1 [0.1,0.3], s2 [7/10,9/10]
///
/// `#` starts a comment. Identifiers are runs of characters other than whitespace and `[ ] , : #`;
/// `imdp`, `states`, `initial`, `label` and `->` are reserved. Throws ParseError with line/column.
Imdp parseImdp(std::string_view text);

/// Canonical text: states, labels and transitions in lexicographic order. parseImdp() inverts it.
std::string serializeImdp(Imdp const& model);

Imdp readImdpFile(std::filesystem::path const& path);
void writeImdpFile(std::filesystem::path const& path, Imdp const& model);

}  // namespace imdp
