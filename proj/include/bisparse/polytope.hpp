#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <string>
#include <vector>

namespace bisparse::exponents {

using Rat = boost::multiprecision::cpp_rational;
using Int = boost::multiprecision::cpp_int;
using RatVec = std::vector<Rat>;

/// a . x <= b with primitive integer coefficients after canonicalization.
struct HalfSpace {
    RatVec a;
    Rat b;

    HalfSpace canonical() const;
    bool operator==(const HalfSpace& other) const { return a == other.a && b == other.b; }
    bool operator<(const HalfSpace& other) const;
};

/// Exact-rational convex polytope in dimension 2 or 3 carrying both a
/// vertex list and an irredundant halfspace list; the two representations
/// are produced from each other and cross-checked.
class Polytope {
public:
    Polytope() = default;

    static Polytope hull(int dim, std::vector<RatVec> points);
    static Polytope from_halfspaces(int dim, std::vector<HalfSpace> halfspaces);

    Polytope intersect(const std::vector<HalfSpace>& extra) const;

    bool contains(const RatVec& x, bool strict) const;
    bool empty() const { return vertices_.empty(); }

    int dim() const { return dim_; }
    int affine_dim() const { return affine_dim_; }
    bool degenerate() const { return affine_dim_ < dim_; }
    const std::vector<RatVec>& vertices() const { return vertices_; }
    const std::vector<HalfSpace>& halfspaces() const { return halfspaces_; }

    /// Exact set equality through double conversion V -> H -> V.
    bool same_vertex_set(const std::vector<RatVec>& other) const;

    /// Verifies every vertex satisfies every halfspace and the halfspace
    /// vertex enumeration reproduces the vertex list; throws on failure.
    void cross_check() const;

    RatVec centroid() const;

private:
    int dim_ = 0;
    int affine_dim_ = -1;
    std::vector<RatVec> vertices_;
    std::vector<HalfSpace> halfspaces_;
};

Rat dot(const RatVec& a, const RatVec& b);
RatVec cross3(const RatVec& u, const RatVec& v);
bool is_zero(const RatVec& v);

/// All basic solutions of dim-subsets of the halfspace boundaries that are
/// feasible for every halfspace.
std::vector<RatVec> enumerate_vertices(int dim, const std::vector<HalfSpace>& halfspaces);

Rat parse_rational(const std::string& text);
std::string format_rational(const Rat& r);

}  // namespace bisparse::exponents
