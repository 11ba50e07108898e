#pragma once

#include <vector>

#include "khw/diagram.hpp"

namespace khw::detail {

// Maps every half-edge to the opposite end of its edge; throws InputError
// unless every label occurs exactly twice.
std::vector<int> partner_table(const PlanarDiagram& d);

// Face id per corner 4c+k, the corner between slots k and k+1 of crossing
// c. Faces are traced by leaving along a slot and turning to the next slot
// counterclockwise at the far end.
std::vector<int> trace_faces(const PlanarDiagram& d, int& face_count);

}  // namespace khw::detail
