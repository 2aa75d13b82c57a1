#include "alloy/lattice.hpp"

#include <algorithm>
#include <cstdlib>
#include <set>

#include "alloy/error.hpp"

namespace alloy {

Site origin(int d) { return Site(static_cast<std::size_t>(d), 0); }

Site operator+(const Site& a, const Site& b) {
    require(a.size() == b.size(), "site dimension mismatch");
    Site r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

Site operator-(const Site& a, const Site& b) {
    require(a.size() == b.size(), "site dimension mismatch");
    Site r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}

Site operator-(const Site& a) {
    Site r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = -a[i];
    return r;
}

int norm1(const Site& x) {
    int s = 0;
    for (int c : x) s += std::abs(c);
    return s;
}

int norm_inf(const Site& x) {
    int s = 0;
    for (int c : x) s = std::max(s, std::abs(c));
    return s;
}

std::string to_string(const Site& x) {
    if (x.size() == 1) return std::to_string(x[0]);
    std::string s = "(";
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(x[i]);
    }
    return s + ")";
}

std::vector<Site> neighbours(const Site& x) {
    std::vector<Site> out;
    out.reserve(2 * x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        Site a = x, b = x;
        --a[i];
        ++b[i];
        out.push_back(std::move(a));
        out.push_back(std::move(b));
    }
    return out;
}

Box::Box(int d, std::vector<Site> sites) : d_(d), sites_(std::move(sites)) {
    require(d >= 1, "dimension must be >= 1");
    for (std::size_t i = 0; i < sites_.size(); ++i) {
        require(static_cast<int>(sites_[i].size()) == d, "site of wrong dimension in box");
        bool fresh = index_.emplace(sites_[i], static_cast<long>(i)).second;
        require(fresh, "duplicate site " + to_string(sites_[i]) + " in box");
    }
}

Box Box::cube(int L, const Site& center) {
    require(L >= 0, "cube side parameter must be >= 0");
    require(!center.empty(), "cube center must have dimension >= 1");
    const int d = static_cast<int>(center.size());
    std::vector<Site> sites;
    Site k(center.size());
    // odometer over [-L, L]^d, last coordinate fastest -> lexicographic
    std::vector<int> off(center.size(), -L);
    while (true) {
        for (std::size_t i = 0; i < k.size(); ++i) k[i] = center[i] + off[i];
        sites.push_back(k);
        int i = d - 1;
        while (i >= 0 && off[i] == L) off[i--] = -L;
        if (i < 0) break;
        ++off[i];
    }
    return Box(d, std::move(sites));
}

long Box::index_of(const Site& x) const {
    auto it = index_.find(x);
    return it == index_.end() ? -1 : it->second;
}

Box Box::sorted() const {
    std::vector<Site> s = sites_;
    std::sort(s.begin(), s.end());
    return Box(d_, std::move(s));
}

int Box::diameter() const {
    int diam = 0;
    for (int c = 0; c < d_; ++c) {
        if (sites_.empty()) break;
        int lo = sites_[0][c], hi = lo;
        for (const Site& s : sites_) {
            lo = std::min(lo, s[c]);
            hi = std::max(hi, s[c]);
        }
        diam = std::max(diam, hi - lo);
    }
    return diam;
}

namespace {

int common_dim(const Box& a, const Box& b) {
    if (a.dim() == 0) return b.dim();
    if (b.dim() == 0) return a.dim();
    require(a.dim() == b.dim(), "box dimension mismatch");
    return a.dim();
}

Box from_set(int d, const std::set<Site>& s) {
    if (d == 0) return Box();
    return Box(d, std::vector<Site>(s.begin(), s.end()));
}

}  // namespace

Box set_union(const Box& a, const Box& b) {
    std::set<Site> s(a.sites().begin(), a.sites().end());
    s.insert(b.sites().begin(), b.sites().end());
    return from_set(common_dim(a, b), s);
}

Box set_difference(const Box& a, const Box& b) {
    std::set<Site> s;
    for (const Site& x : a.sites())
        if (!b.contains(x)) s.insert(x);
    return from_set(common_dim(a, b), s);
}

Box set_intersection(const Box& a, const Box& b) {
    std::set<Site> s;
    for (const Site& x : a.sites())
        if (b.contains(x)) s.insert(x);
    return from_set(common_dim(a, b), s);
}

Box translate(const Box& a, const Site& shift) {
    std::set<Site> s;
    for (const Site& x : a.sites()) s.insert(x + shift);
    return from_set(a.dim(), s);
}

bool is_subset(const Box& a, const Box& b) {
    return std::all_of(a.sites().begin(), a.sites().end(),
                       [&](const Site& x) { return b.contains(x); });
}

Box interior_boundary(const Box& g) {
    require(!g.empty(), "boundary of an empty set");
    std::set<Site> s;
    for (const Site& x : g.sites()) {
        int inside = 0;
        for (const Site& y : neighbours(x)) inside += g.contains(y) ? 1 : 0;
        if (inside < 2 * g.dim()) s.insert(x);
    }
    return from_set(g.dim(), s);
}

Box exterior_boundary(const Box& g) {
    require(!g.empty(), "boundary of an empty set");
    std::set<Site> s;
    for (const Site& x : g.sites())
        for (const Site& y : neighbours(x))
            if (!g.contains(y)) s.insert(y);
    return from_set(g.dim(), s);
}

Box thicken(const Box& g) {
    if (g.empty()) return g;
    return set_union(g, exterior_boundary(g));
}

std::vector<Box> components(const Box& g) {
    Box sorted = g.sorted();
    std::vector<int> label(sorted.size(), -1);
    std::vector<Box> out;
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        if (label[i] >= 0) continue;
        const int c = static_cast<int>(out.size());
        std::set<Site> members;
        std::vector<std::size_t> stack{i};
        label[i] = c;
        while (!stack.empty()) {
            std::size_t j = stack.back();
            stack.pop_back();
            members.insert(sorted[j]);
            for (const Site& y : neighbours(sorted[j])) {
                long k = sorted.index_of(y);
                if (k >= 0 && label[k] < 0) {
                    label[k] = c;
                    stack.push_back(static_cast<std::size_t>(k));
                }
            }
        }
        out.push_back(from_set(g.dim(), members));
    }
    return out;
}

}  // namespace alloy
