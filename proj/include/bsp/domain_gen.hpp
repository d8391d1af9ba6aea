#pragma once

#include <cstdint>

#include "bsp/domain.hpp"

namespace bsp {

// Seeded random polygonal domain for tests and benchmarks: a jittered
// star-shaped outer ring with up to `holes` small convex holes placed
// disjointly inside. `corners` counts all ring vertices together.
PolygonalDomain random_domain(std::uint64_t seed, int corners, int holes);

}  // namespace bsp
