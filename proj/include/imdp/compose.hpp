// Copyright (c) imdpmin contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <set>
#include <string>

#include "imdp/model.hpp"

namespace imdp {

/// Separator used in product state names: the pair (s1, s2) is named `s1|s2`. Nested products
/// flatten to the same name, so composition is associative on names.
inline constexpr char kProductSeparator = '|';

/// Binary CSP-style parallel composition restricted to point-valued synchronisation.
///
/// Actions outside `sync` interleave; the idle component stays put with probability one. Actions
/// in `sync` fire only when enabled in both components and yield the product distribution. Every
/// sync action enabled somewhere in both components must carry point intervals on all its targets
/// in both, otherwise SyncUncertaintyError names the offending component, state and action.
/// Both models need an initial state; the result contains the pairs reachable from the initial
/// pair. A reachable pair without any enabled action, or a non-sync action enabled on both sides
/// of a pair, raises ModelError.
Imdp compose(Imdp const& first, Imdp const& second, std::set<std::string> const& sync);

}  // namespace imdp
