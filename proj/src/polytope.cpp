#include "bisparse/polytope.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace bisparse::exponents {

namespace {

Int num(const Rat& r) { return boost::multiprecision::numerator(r); }
Int den(const Rat& r) { return boost::multiprecision::denominator(r); }

}  // namespace

Rat dot(const RatVec& a, const RatVec& b) {
    Rat s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

RatVec cross3(const RatVec& u, const RatVec& v) {
    return {u[1] * v[2] - u[2] * v[1], u[2] * v[0] - u[0] * v[2], u[0] * v[1] - u[1] * v[0]};
}

bool is_zero(const RatVec& v) {
    for (const Rat& c : v)
        if (c != 0) return false;
    return true;
}

HalfSpace HalfSpace::canonical() const {
    // scale to primitive integers, preserving orientation
    Int l = 1;
    for (const Rat& c : a) l = boost::multiprecision::lcm(l, den(c));
    l = boost::multiprecision::lcm(l, den(b));
    std::vector<Int> ints;
    for (const Rat& c : a) ints.push_back(num(c) * (l / den(c)));
    Int bi = num(b) * (l / den(b));
    Int g = 0;
    for (const Int& c : ints) g = boost::multiprecision::gcd(g, c);
    g = boost::multiprecision::gcd(g, bi);
    if (g == 0) g = 1;
    HalfSpace out;
    for (const Int& c : ints) out.a.push_back(Rat(c / g));
    out.b = Rat(bi / g);
    return out;
}

bool HalfSpace::operator<(const HalfSpace& other) const {
    if (a != other.a) return std::lexicographical_compare(a.begin(), a.end(), other.a.begin(),
                                                          other.a.end());
    return b < other.b;
}

namespace {

/// Exact affine rank of the point set and an affine basis (directions).
int affine_basis(const std::vector<RatVec>& pts, std::vector<RatVec>& basis) {
    basis.clear();
    if (pts.empty()) return -1;
    const int dim = static_cast<int>(pts[0].size());
    for (std::size_t i = 1; i < pts.size(); ++i) {
        RatVec v(dim);
        for (int a = 0; a < dim; ++a) v[a] = pts[i][a] - pts[0][a];
        // reduce against current basis
        for (const RatVec& bvec : basis) {
            // eliminate v's component along bvec's pivot
            int pivot = -1;
            for (int a = 0; a < dim; ++a)
                if (bvec[a] != 0) {
                    pivot = a;
                    break;
                }
            if (pivot >= 0 && v[pivot] != 0) {
                const Rat factor = v[pivot] / bvec[pivot];
                for (int a = 0; a < dim; ++a) v[a] -= factor * bvec[a];
            }
        }
        if (!is_zero(v)) {
            basis.push_back(v);
            if (static_cast<int>(basis.size()) == dim) break;
        }
    }
    return static_cast<int>(basis.size());
}

/// Solve (dim x dim) system A x = b by Cramer; returns false if singular.
bool solve_square(const std::vector<RatVec>& rows, const std::vector<Rat>& rhs, RatVec& x) {
    const int d = static_cast<int>(rows.size());
    auto det2 = [](const Rat& a, const Rat& b, const Rat& c, const Rat& dd) {
        return a * dd - b * c;
    };
    if (d == 2) {
        const Rat D = det2(rows[0][0], rows[0][1], rows[1][0], rows[1][1]);
        if (D == 0) return false;
        x = {det2(rhs[0], rows[0][1], rhs[1], rows[1][1]) / D,
             det2(rows[0][0], rhs[0], rows[1][0], rhs[1]) / D};
        return true;
    }
    if (d == 3) {
        auto det3 = [&](const RatVec& r0, const RatVec& r1, const RatVec& r2) {
            return r0[0] * det2(r1[1], r1[2], r2[1], r2[2]) -
                   r0[1] * det2(r1[0], r1[2], r2[0], r2[2]) +
                   r0[2] * det2(r1[0], r1[1], r2[0], r2[1]);
        };
        const Rat D = det3(rows[0], rows[1], rows[2]);
        if (D == 0) return false;
        x.resize(3);
        for (int col = 0; col < 3; ++col) {
            std::vector<RatVec> m = rows;
            for (int r = 0; r < 3; ++r) m[r][col] = rhs[r];
            x[col] = det3(m[0], m[1], m[2]) / D;
        }
        return true;
    }
    throw std::invalid_argument("solve_square: dimension must be 2 or 3");
}

std::vector<RatVec> dedupe_points(std::vector<RatVec> pts) {
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    return pts;
}

std::vector<HalfSpace> dedupe_halfspaces(std::vector<HalfSpace> hs) {
    for (auto& h : hs) h = h.canonical();
    std::sort(hs.begin(), hs.end());
    hs.erase(std::unique(hs.begin(), hs.end()), hs.end());
    return hs;
}

/// 2D convex hull, counterclockwise, exact (monotone chain).
std::vector<std::size_t> hull2d_indices(const std::vector<RatVec>& pts) {
    std::vector<std::size_t> order(pts.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
        return pts[i] < pts[j];
    });
    auto crossp = [&](std::size_t o, std::size_t a, std::size_t b) {
        return (pts[a][0] - pts[o][0]) * (pts[b][1] - pts[o][1]) -
               (pts[a][1] - pts[o][1]) * (pts[b][0] - pts[o][0]);
    };
    const std::size_t n = order.size();
    if (n <= 2) return order;
    std::vector<std::size_t> h(2 * n);
    std::size_t k = 0;
    for (std::size_t ii = 0; ii < n; ++ii) {
        while (k >= 2 && crossp(h[k - 2], h[k - 1], order[ii]) <= 0) --k;
        h[k++] = order[ii];
    }
    const std::size_t lower = k + 1;
    for (std::size_t ii = n - 1; ii-- > 0;) {
        while (k >= lower && crossp(h[k - 2], h[k - 1], order[ii]) <= 0) --k;
        h[k++] = order[ii];
    }
    h.resize(k - 1);
    return h;
}

/// Halfspaces of a full-dimensional 2D hull (vertices counterclockwise).
std::vector<HalfSpace> edges_to_halfspaces2d(const std::vector<RatVec>& hull_ccw) {
    std::vector<HalfSpace> out;
    const std::size_t n = hull_ccw.size();
    for (std::size_t i = 0; i < n; ++i) {
        const RatVec& p = hull_ccw[i];
        const RatVec& q = hull_ccw[(i + 1) % n];
        // outward normal of ccw edge p->q is (dy, -dx)
        HalfSpace h;
        h.a = {q[1] - p[1], p[0] - q[0]};
        h.b = dot(h.a, p);
        out.push_back(h.canonical());
    }
    return out;
}

}  // namespace

std::vector<RatVec> enumerate_vertices(int dim, const std::vector<HalfSpace>& halfspaces) {
    std::vector<RatVec> found;
    const std::size_t F = halfspaces.size();
    auto feasible = [&](const RatVec& x) {
        for (const auto& h : halfspaces)
            if (dot(h.a, x) > h.b) return false;
        return true;
    };
    if (dim == 2) {
        for (std::size_t i = 0; i < F; ++i)
            for (std::size_t j = i + 1; j < F; ++j) {
                RatVec x;
                if (solve_square({halfspaces[i].a, halfspaces[j].a},
                                 {halfspaces[i].b, halfspaces[j].b}, x) &&
                    feasible(x))
                    found.push_back(x);
            }
    } else if (dim == 3) {
        for (std::size_t i = 0; i < F; ++i)
            for (std::size_t j = i + 1; j < F; ++j)
                for (std::size_t k = j + 1; k < F; ++k) {
                    RatVec x;
                    if (solve_square({halfspaces[i].a, halfspaces[j].a, halfspaces[k].a},
                                     {halfspaces[i].b, halfspaces[j].b, halfspaces[k].b}, x) &&
                        feasible(x))
                        found.push_back(x);
                }
    } else {
        throw std::invalid_argument("enumerate_vertices: dimension must be 2 or 3");
    }
    return dedupe_points(std::move(found));
}

Polytope Polytope::hull(int dim, std::vector<RatVec> points) {
    if (dim != 2 && dim != 3) throw std::invalid_argument("Polytope: dimension must be 2 or 3");
    for (const auto& p : points)
        if (static_cast<int>(p.size()) != dim)
            throw std::invalid_argument("Polytope: point dimension mismatch");
    points = dedupe_points(std::move(points));
    if (points.empty()) throw std::invalid_argument("Polytope: need at least one point");

    Polytope out;
    out.dim_ = dim;
    std::vector<RatVec> basis;
    out.affine_dim_ = affine_basis(points, basis);

    const RatVec& p0 = points[0];
    if (out.affine_dim_ == 0) {
        out.vertices_ = {p0};
        for (int a = 0; a < dim; ++a) {
            HalfSpace up, down;
            up.a.assign(dim, Rat(0));
            up.a[a] = 1;
            up.b = p0[a];
            down.a.assign(dim, Rat(0));
            down.a[a] = -1;
            down.b = -p0[a];
            out.halfspaces_.push_back(up.canonical());
            out.halfspaces_.push_back(down.canonical());
        }
        return out;
    }

    if (out.affine_dim_ == 1) {
        const RatVec v = basis[0];
        // extremes along the line functional v . x
        std::size_t imin = 0, imax = 0;
        Rat lo = dot(v, points[0]), hi = lo;
        for (std::size_t i = 1; i < points.size(); ++i) {
            const Rat t = dot(v, points[i]);
            if (t < lo) {
                lo = t;
                imin = i;
            }
            if (t > hi) {
                hi = t;
                imax = i;
            }
        }
        out.vertices_ = dedupe_points({points[imin], points[imax]});
        // orthogonal complement pins the carrier line
        std::vector<RatVec> normals;
        if (dim == 2) {
            normals.push_back({-v[1], v[0]});
        } else {
            for (int a = 0; a < dim; ++a) {
                RatVec e(dim, Rat(0));
                e[a] = 1;
                RatVec w = cross3(v, e);
                if (!is_zero(w)) normals.push_back(w);
                if (normals.size() == 2) {
                    // ensure independence
                    std::vector<RatVec> bb;
                    std::vector<RatVec> probe = {RatVec(dim, Rat(0)), normals[0], normals[1]};
                    if (affine_basis(probe, bb) < 2) normals.pop_back();
                }
                if (normals.size() == 2) break;
            }
        }
        for (const auto& w : normals) {
            HalfSpace up{w, dot(w, p0)};
            HalfSpace down;
            for (const Rat& c : w) down.a.push_back(-c);
            down.b = -up.b;
            out.halfspaces_.push_back(up.canonical());
            out.halfspaces_.push_back(down.canonical());
        }
        HalfSpace cap_hi{v, hi};
        HalfSpace cap_lo;
        for (const Rat& c : v) cap_lo.a.push_back(-c);
        cap_lo.b = -lo;
        out.halfspaces_.push_back(cap_hi.canonical());
        out.halfspaces_.push_back(cap_lo.canonical());
        out.halfspaces_ = dedupe_halfspaces(std::move(out.halfspaces_));
        return out;
    }

    if (dim == 2 && out.affine_dim_ == 2) {
        const auto idx = hull2d_indices(points);
        for (auto i : idx) out.vertices_.push_back(points[i]);
        out.halfspaces_ = edges_to_halfspaces2d(out.vertices_);
        out.vertices_ = dedupe_points(std::move(out.vertices_));
        return out;
    }

    if (dim == 3 && out.affine_dim_ == 2) {
        // planar polygon in 3-space
        const RatVec n = cross3(basis[0], basis[1]);
        int drop = 0;
        for (int a = 1; a < 3; ++a)
            if (boost::multiprecision::abs(num(n[a])) * den(n[drop]) >
                boost::multiprecision::abs(num(n[drop])) * den(n[a]))
                drop = a;
        const int u = (drop + 1) % 3, w = (drop + 2) % 3;
        std::vector<RatVec> flat;
        flat.reserve(points.size());
        for (const auto& p : points) flat.push_back({p[u], p[w]});
        const auto idx = hull2d_indices(flat);
        std::vector<RatVec> poly2;
        for (auto i : idx) {
            out.vertices_.push_back(points[i]);
            poly2.push_back(flat[i]);
        }
        HalfSpace plane_up{n, dot(n, p0)};
        HalfSpace plane_down;
        for (const Rat& c : n) plane_down.a.push_back(-c);
        plane_down.b = -plane_up.b;
        out.halfspaces_.push_back(plane_up.canonical());
        out.halfspaces_.push_back(plane_down.canonical());
        for (const auto& e : edges_to_halfspaces2d(poly2)) {
            HalfSpace lifted;
            lifted.a.assign(3, Rat(0));
            lifted.a[u] = e.a[0];
            lifted.a[w] = e.a[1];
            lifted.b = e.b;
            out.halfspaces_.push_back(lifted.canonical());
        }
        out.halfspaces_ = dedupe_halfspaces(std::move(out.halfspaces_));
        out.vertices_ = dedupe_points(std::move(out.vertices_));
        return out;
    }

    // full-dimensional hull in 3-space: facet scan over point triples
    std::vector<HalfSpace> facets;
    const std::size_t N = points.size();
    for (std::size_t i = 0; i < N; ++i)
        for (std::size_t j = i + 1; j < N; ++j)
            for (std::size_t k = j + 1; k < N; ++k) {
                RatVec e1(3), e2(3);
                for (int a = 0; a < 3; ++a) {
                    e1[a] = points[j][a] - points[i][a];
                    e2[a] = points[k][a] - points[i][a];
                }
                const RatVec nrm = cross3(e1, e2);
                if (is_zero(nrm)) continue;
                const Rat b = dot(nrm, points[i]);
                bool all_le = true, all_ge = true;
                for (const auto& p : points) {
                    const Rat s = dot(nrm, p);
                    if (s > b) all_le = false;
                    if (s < b) all_ge = false;
                    if (!all_le && !all_ge) break;
                }
                if (all_le) facets.push_back(HalfSpace{nrm, b}.canonical());
                if (all_ge) {
                    HalfSpace h;
                    for (const Rat& c : nrm) h.a.push_back(-c);
                    h.b = -b;
                    facets.push_back(h.canonical());
                }
            }
    out.halfspaces_ = dedupe_halfspaces(std::move(facets));
    out.vertices_ = enumerate_vertices(3, out.halfspaces_);
    return out;
}

Polytope Polytope::from_halfspaces(int dim, std::vector<HalfSpace> halfspaces) {
    halfspaces = dedupe_halfspaces(std::move(halfspaces));
    const auto verts = enumerate_vertices(dim, halfspaces);
    if (verts.empty()) {
        Polytope out;
        out.dim_ = dim;
        out.affine_dim_ = -1;
        return out;
    }
    // rebuild clean facets from the vertex set
    Polytope out = hull(dim, verts);
    return out;
}

Polytope Polytope::intersect(const std::vector<HalfSpace>& extra) const {
    std::vector<HalfSpace> all = halfspaces_;
    for (const auto& h : extra) all.push_back(h.canonical());
    return from_halfspaces(dim_, std::move(all));
}

bool Polytope::contains(const RatVec& x, bool strict) const {
    if (empty()) return false;
    if (static_cast<int>(x.size()) != dim_)
        throw std::invalid_argument("Polytope::contains: dimension mismatch");
    for (const auto& h : halfspaces_) {
        const Rat s = dot(h.a, x);
        if (strict ? (s >= h.b) : (s > h.b)) return false;
    }
    return true;
}

bool Polytope::same_vertex_set(const std::vector<RatVec>& other) const {
    auto mine = vertices_;
    auto theirs = dedupe_points(other);
    std::sort(mine.begin(), mine.end());
    return mine == theirs;
}

void Polytope::cross_check() const {
    for (const auto& v : vertices_)
        for (const auto& h : halfspaces_)
            if (dot(h.a, v) > h.b)
                throw std::logic_error("Polytope: vertex violates a stored halfspace");
    const auto re = enumerate_vertices(dim_, halfspaces_);
    if (!same_vertex_set(re))
        throw std::logic_error("Polytope: V- and H-representations disagree");
}

RatVec Polytope::centroid() const {
    if (empty()) throw std::domain_error("Polytope::centroid: empty");
    RatVec c(dim_, Rat(0));
    for (const auto& v : vertices_)
        for (int a = 0; a < dim_; ++a) c[a] += v[a];
    for (int a = 0; a < dim_; ++a) c[a] /= static_cast<int>(vertices_.size());
    return c;
}

Rat parse_rational(const std::string& text) {
    const auto slash = text.find('/');
    try {
        if (slash == std::string::npos) return Rat(Int(text));
        const Int n(text.substr(0, slash));
        const Int d(text.substr(slash + 1));
        if (d == 0) throw std::invalid_argument("zero denominator");
        return Rat(n, d);
    } catch (const std::exception&) {
        throw std::invalid_argument("bad rational literal: " + text);
    }
}

std::string format_rational(const Rat& r) {
    std::string s = num(r).str();
    if (den(r) != 1) s += "/" + den(r).str();
    return s;
}

}  // namespace bisparse::exponents
