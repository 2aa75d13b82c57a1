#include "alloy/poscomb.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "alloy/error.hpp"

namespace alloy {

MultiIndex::MultiIndex(std::vector<int> e) : entries(std::move(e)) {
    for (int v : entries) require(v >= 0, "multi-index entries must be >= 0");
}

int MultiIndex::total() const {
    int t = 0;
    for (int v : entries) t += v;
    return t;
}

bool leq(const MultiIndex& a, const MultiIndex& b) {
    require(a.dim() == b.dim(), "multi-index dimension mismatch");
    for (int j = 0; j < a.dim(); ++j)
        if (a.entries[j] > b.entries[j]) return false;
    return true;
}

bool less(const MultiIndex& a, const MultiIndex& b) { return leq(a, b) && a != b; }

std::vector<MultiIndex> indices_of_degree(int d, int n) {
    require(d >= 1 && n >= 0, "bad multi-index degree request");
    std::vector<MultiIndex> out;
    std::vector<int> cur(static_cast<std::size_t>(d), 0);
    // first entry smallest first -> lexicographic order
    auto rec = [&](auto&& self, int pos, int left) -> void {
        if (pos == d - 1) {
            cur[pos] = left;
            out.emplace_back(cur);
            return;
        }
        for (int v = 0; v <= left; ++v) {
            cur[pos] = v;
            self(self, pos + 1, left - v);
        }
    };
    rec(rec, 0, n);
    return out;
}

std::vector<MultiIndex> strictly_below(const MultiIndex& I) {
    std::vector<MultiIndex> out;
    std::vector<int> cur(I.entries.size(), 0);
    while (true) {
        if (cur != I.entries) out.emplace_back(cur);
        std::size_t j = 0;
        while (j < cur.size() && cur[j] == I.entries[j]) cur[j++] = 0;
        if (j == cur.size()) break;
        ++cur[j];
    }
    return out;
}

double falling_factorial(const Site& k, const MultiIndex& I) {
    double p = 1;
    for (int j = 0; j < I.dim(); ++j)
        for (int m = 0; m < I.entries[j]; ++m) p *= k[j] - m;
    return p;
}

double monomial(const Site& k, const MultiIndex& I) {
    double p = 1;
    for (int j = 0; j < I.dim(); ++j) p *= std::pow(double(k[j]), I.entries[j]);  // pow(0, 0) = 1
    return p;
}

double generating_derivative(const SingleSitePotential& u, const MultiIndex& I) {
    require(I.dim() == u.dim(), "multi-index dimension must match the potential");
    double acc = 0;
    // F(z) = sum_k u(-k) z^k: the coefficient of z^{-t} is u(t)
    for (auto& [t, v] : u.values()) acc += v * falling_factorial(-t, I);
    return acc;
}

namespace {

double derivative_scale(const SingleSitePotential& u, const MultiIndex& I) {
    double sum = 0, ff = 0;
    for (auto& [t, v] : u.values()) {
        sum += std::abs(v);
        ff = std::max(ff, std::abs(falling_factorial(-t, I)));
    }
    return sum * std::max(ff, 1.0);
}

// C * sum over k outside the truncation cube of e^{-alpha|k|_1} |falling(k, I)|,
// using that both factors split over coordinates.
double truncation_bound(const SingleSitePotential& u, const MultiIndex& I) {
    if (!u.tail()) return 0.0;
    const Tail& t = *u.tail();
    double all = 1, inside = 1;
    for (int j = 0; j < I.dim(); ++j) {
        double a = 0, b = 0;
        for (int k = -t.radius - 2000; k <= t.radius + 2000; ++k) {
            double ff = 1;
            for (int m = 0; m < I.entries[j]; ++m) ff *= k - m;
            double term = std::exp(-t.alpha * std::abs(k)) * std::abs(ff);
            a += term;
            if (std::abs(k) <= t.radius) b += term;
        }
        all *= a;
        inside *= b;
    }
    return t.C * std::max(all - inside, 0.0);
}

}  // namespace

LeadingDerivative find_I0(const SingleSitePotential& u, int degree_cap) {
    require(!u.values().empty(), "the potential is identically zero");
    require(degree_cap >= 0, "degree cap must be >= 0");
    for (int n = 0; n <= degree_cap; ++n) {
        for (const MultiIndex& I : indices_of_degree(u.dim(), n)) {
            double v = generating_derivative(u, I);
            double tol = 1e-9 * derivative_scale(u, I);
            if (std::abs(v) > tol) {
                LeadingDerivative lead;
                lead.I0 = I;
                lead.c_u = v;
                lead.degree_cap = degree_cap;
                lead.tolerance = tol;
                lead.truncation_error = truncation_bound(u, I);
                return lead;
            }
        }
    }
    throw std::runtime_error("inconclusive: every generating-function derivative vanishes up to the degree cap");
}

double leading_index_sum(const SingleSitePotential& u, const MultiIndex& I, const Site& x) {
    require(I.dim() == u.dim() && static_cast<int>(x.size()) == u.dim(), "dimension mismatch");
    double acc = 0;
    for (auto& [t, v] : u.values()) acc += monomial(x - t, I) * v;  // k = x - t
    return acc;
}

ExhaustionRadius compute_R_l(int d, double C, double alpha, double c_u, int I0_total, int l) {
    require(c_u != 0.0, "c_u must be nonzero");
    require(alpha > 0 && C > 0, "tail parameters must be positive");
    require(l >= 0, "l must be >= 0");
    double a = 2.0 * l + 2 / alpha * std::log(2 * std::pow(3.0, d) * C / (std::abs(c_u) * (1 - std::exp(-alpha / 2))));
    double b = 8.0 * (d + I0_total) * (d + I0_total) / (alpha * alpha);
    ExhaustionRadius r;
    r.R = std::max(a, b);
    r.box_radius = static_cast<int>(std::ceil(r.R));
    return r;
}

ExhaustionRadius exhaustion_radius(const SingleSitePotential& u, const LeadingDerivative& lead, int l) {
    if (u.tail()) return compute_R_l(u.dim(), u.tail()->C, u.tail()->alpha, lead.c_u, lead.I0.total(), l);
    int reach = 0;
    for (auto& [t, v] : u.values()) reach = std::max(reach, norm_inf(t));
    ExhaustionRadius r;
    r.box_radius = l + reach;
    r.R = r.box_radius;
    return r;
}

double covering_sum_min(const SingleSitePotential& u, int l) {
    LeadingDerivative lead = find_I0(u);
    ExhaustionRadius rad = exhaustion_radius(u, lead, l);
    Box inner = Box::cube(l, origin(u.dim()));
    double best = std::numeric_limits<double>::infinity();
    for (const Site& x : inner.sites()) {
        double acc = 0;
        for (auto& [t, v] : u.values()) {
            Site k = x - t;
            if (norm_inf(k) <= rad.box_radius) acc += monomial(k, lead.I0) * v;
        }
        best = std::min(best, 2 / lead.c_u * acc);
    }
    return best;
}

WegnerCoefficients wegner_coefficients(const SingleSitePotential& u, int l) {
    WegnerCoefficients w;
    w.lead = find_I0(u);
    w.radius = exhaustion_radius(u, w.lead, l);
    w.bound_exponent = w.lead.I0.total();
    const Box window = Box::cube(w.radius.box_radius, origin(u.dim()));
    for (const Site& k : window.sites()) {
        double v = 2 * monomial(k, w.lead.I0) / w.lead.c_u;
        w.t[k] = v;
        w.t_l1 += std::abs(v);
    }
    w.sum_l1 = std::pow(2.0 * l + 1, u.dim()) * w.t_l1;
    return w;
}

PowerExpGuard power_exp_guard(double M, double alpha, double n) {
    require(M > 0 && alpha > 0, "M and alpha must be positive");
    PowerExpGuard g;
    g.guard = n >= 8 * M * M / (alpha * alpha);
    // compare logs to avoid overflow
    g.inequality = n > 0 && M * std::log(n) < alpha * n / 2;
    return g;
}

}  // namespace alloy
