#pragma once

#include <map>
#include <utility>

#include "khw/diagram.hpp"

namespace khw::detail {

using IJRanks = std::map<std::pair<int, int>, long>;

// Both backends expect at least one crossing and a basepoint on an edge;
// free loops are ignored here and handled by the caller.
IJRanks naive_ij(const OrientedDiagram& od, int capacity);
IJRanks scan_ij(const OrientedDiagram& od, long capacity);

}  // namespace khw::detail
