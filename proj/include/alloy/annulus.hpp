#pragma once

#include "alloy/lattice.hpp"

namespace alloy {

// Separating shell around x: B = interior boundary of the cube of radius L
// shifted to x, hat_W = sites of gamma covered by translates theta + b with
// b in B, W = hat_W thickened by its outer boundary and cut back to gamma.
// hat_lambda / lambda are the same construction over the whole cube.
struct AnnulusGeometry {
    Box B;
    Box hat_W;
    Box W;
    Box hat_lambda;
    Box lambda;
};

// Requires L >= diam(theta) + 2.
AnnulusGeometry annulus(const Box& gamma, const Site& x, int L, const Box& theta);

}  // namespace alloy
