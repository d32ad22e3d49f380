#pragma once

#include <string>

#include "partlat/quads.hpp"

namespace partlat {

// DOT picture of a family quad: one node per ground element with its ladder
// label (a1..ak+1, b1..bk, c, d), one edge style per generator beta / gamma /
// delta, and a rounded cluster around each nonsingleton alpha block.  Output
// is deterministic for a fixed (family, k).
std::string emit_graph(Family f, int k);
std::string emit_graph(const std::string& family_id, int k);

}  // namespace partlat
