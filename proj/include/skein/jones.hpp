#pragma once

#include "skein/diagram.hpp"
#include "skein/graded.hpp"
#include "skein/laurent.hpp"

namespace skein {

// Smooths away crossing k: resolution 0 pairs slots (0,1)(2,3), resolution 1
// pairs (0,3)(1,2). Shared by the bracket recursion; the cube construction
// does not use it.
TangleDiagram smooth_crossing(const TangleDiagram& d, int k, int resolution);

// Unnormalized Jones polynomial by Kauffman-bracket skein recursion,
// normalized so the unknot maps to q + q^-1. No chain complexes involved.
Laurent jones(const TangleDiagram& d, int crossing_cap = 14);

// Graded Euler characteristic of a bigraded dimension table.
Laurent graded_euler(const GradedDims& dims);

}  // namespace skein
