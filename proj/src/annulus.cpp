#include "alloy/annulus.hpp"

#include <set>

#include "alloy/error.hpp"

namespace alloy {

namespace {

Box covered(const Box& gamma, const Box& centers, const Box& theta) {
    std::set<Site> s;
    for (const Site& b : centers.sites())
        for (const Site& t : theta.sites()) {
            Site k = t + b;
            if (gamma.contains(k)) s.insert(k);
        }
    return Box(gamma.dim(), std::vector<Site>(s.begin(), s.end()));
}

}  // namespace

AnnulusGeometry annulus(const Box& gamma, const Site& x, int L, const Box& theta) {
    require(!theta.empty(), "empty single-site support");
    require(L >= theta.diameter() + 2, "annulus needs L >= diam(theta) + 2");
    require(static_cast<int>(x.size()) == gamma.dim(), "center has wrong dimension");
    AnnulusGeometry a;
    Box cube = Box::cube(L, x);
    a.B = interior_boundary(cube);
    a.hat_W = covered(gamma, a.B, theta);
    a.W = set_intersection(thicken(a.hat_W), gamma);
    a.hat_lambda = covered(gamma, cube, theta);
    a.lambda = set_intersection(thicken(a.hat_lambda), gamma);
    return a;
}

}  // namespace alloy
