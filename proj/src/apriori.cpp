#include "alloy/apriori.hpp"

#include <cmath>
#include <limits>

#include "alloy/error.hpp"

namespace alloy {

namespace {

// u with positive total mass, n and c of the weight function
struct Normalised {
    SingleSitePotential u;
    double ubar, l1, c;
    int n;
};

Normalised normalise(const SingleSitePotential& u) {
    double ubar = u.sum();
    require(ubar != 0.0, "the potential must have nonzero total mass");
    require(!u.tail(), "the non-local bound needs a finite support");
    Normalised out{ubar < 0 ? u.scaled(-1.0) : u, std::abs(ubar), u.l1_norm(), 0, u.diameter_l1()};
    require(out.n >= 1, "single-site support: use the rank-one averaging bound instead");
    out.c = std::log(1 + out.ubar / (2 * out.l1)) / out.n;
    return out;
}

}  // namespace

NonlocalBound nonlocal_apriori_bound(const SingleSitePotential& u, const Density& rho, double lambda, double s) {
    require(s > 0 && s < 1, "s must lie in (0, 1)");
    require(lambda > 0, "lambda must be > 0");
    auto dl1 = rho.deriv_l1();
    require(dl1.has_value(), "the density must be absolutely continuous (finite ||rho'||_1)");
    Normalised nu = normalise(u);
    NonlocalBound b;
    b.ubar = nu.ubar;
    b.u_l1 = nu.l1;
    b.n = nu.n;
    b.c = nu.c;
    const double e = std::exp(nu.c);
    b.C = std::pow((e + 1) / (e - 1), u.dim());
    b.rho_deriv_l1 = *dl1;
    b.bound = 8 / std::pow(b.ubar, s) * std::pow(s, -s) / (1 - s) * std::pow(b.rho_deriv_l1, s) * std::pow(b.C, s) *
              std::pow(lambda, -s);
    return b;
}

WeightedPotential w_xy(const SingleSitePotential& u, const Site& x, const Site& y, const Box& window) {
    Normalised nu = normalise(u);
    require(window.contains(x) && window.contains(y), "x and y must lie in the window");
    auto alpha = [&](const Site& k) {
        return 0.5 * (std::exp(-nu.c * norm1(k - x)) + std::exp(-nu.c * norm1(k - y)));
    };
    WeightedPotential w;
    w.min_margin = std::numeric_limits<double>::infinity();
    for (const Site& k : window.sites()) {
        // W(k) = sum over theta in supp u of alpha(k - theta) u(theta)
        double acc = 0;
        for (auto& [t, v] : nu.u.values()) acc += alpha(k - t) * v;
        w.alpha[k] = alpha(k);
        w.W[k] = acc;
        w.min_margin = std::min(w.min_margin, acc - w.alpha[k] * nu.ubar / 2);
    }
    w.margin_x = w.W[x] - nu.ubar / 4;
    w.margin_y = w.W[y] - nu.ubar / 4;
    return w;
}

}  // namespace alloy
