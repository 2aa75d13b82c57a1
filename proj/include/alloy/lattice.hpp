#pragma once

#include <map>
#include <string>
#include <vector>

namespace alloy {

// A lattice point of Z^d. Ordering is the lexicographic order of std::vector.
using Site = std::vector<int>;

Site origin(int d);
Site operator+(const Site& a, const Site& b);
Site operator-(const Site& a, const Site& b);
Site operator-(const Site& a);
int norm1(const Site& x);
int norm_inf(const Site& x);
std::string to_string(const Site& x);

// The 2d nearest neighbours of x.
std::vector<Site> neighbours(const Site& x);

// Finite ordered subset of Z^d with a site <-> index map. Matrices built on a
// Box use its site order for rows and columns.
class Box {
public:
    Box() = default;
    // Keeps the given order; duplicates and mixed dimensions are rejected.
    Box(int d, std::vector<Site> sites);

    // All k with |k - center|_inf <= L, lexicographic.
    static Box cube(int L, const Site& center);

    int dim() const { return d_; }
    std::size_t size() const { return sites_.size(); }
    bool empty() const { return sites_.empty(); }
    const std::vector<Site>& sites() const { return sites_; }
    const Site& operator[](std::size_t i) const { return sites_[i]; }
    bool contains(const Site& x) const { return index_.count(x) != 0; }
    // -1 when x is not in the box.
    long index_of(const Site& x) const;

    Box sorted() const;
    // sup-norm diameter; 0 for empty sets
    int diameter() const;

    bool operator==(const Box& o) const { return d_ == o.d_ && index_ == o.index_; }

private:
    int d_ = 0;
    std::vector<Site> sites_;
    std::map<Site, long> index_;
};

// Set algebra; results are lexicographically sorted.
Box set_union(const Box& a, const Box& b);
Box set_difference(const Box& a, const Box& b);
Box set_intersection(const Box& a, const Box& b);
Box translate(const Box& a, const Site& shift);
bool is_subset(const Box& a, const Box& b);

// Sites of the box with fewer than 2d neighbours inside it.
Box interior_boundary(const Box& g);
// Sites outside the box adjacent to it.
Box exterior_boundary(const Box& g);
// g together with its exterior boundary.
Box thicken(const Box& g);

// Nearest-neighbour connected components, each sorted, ordered by first site.
std::vector<Box> components(const Box& g);

}  // namespace alloy
