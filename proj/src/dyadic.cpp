#include "bisparse/dyadic.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace bisparse::dyadic {

int ipow(int base, int exp) {
    int r = 1;
    for (int i = 0; i < exp; ++i) r *= base;
    return r;
}

bool Box::contains(const double* x) const {
    for (int a = 0; a < dim(); ++a)
        if (x[a] < lo[a] || x[a] >= hi[a]) return false;
    return true;
}

bool Box::empty() const {
    for (int a = 0; a < dim(); ++a)
        if (hi[a] <= lo[a]) return true;
    return false;
}

Box Box::intersect(const Box& other) const {
    Box r{lo, hi};
    for (int a = 0; a < dim(); ++a) {
        r.lo[a] = std::max(lo[a], other.lo[a]);
        r.hi[a] = std::min(hi[a], other.hi[a]);
    }
    return r;
}

double Box::volume() const {
    double v = 1.0;
    for (int a = 0; a < dim(); ++a) v *= std::max(0.0, hi[a] - lo[a]);
    return v;
}

DyadicCube DyadicCube::root(int dim, double unit) {
    if (dim < 1) throw std::invalid_argument("DyadicCube: dimension must be >= 1");
    DyadicCube q;
    q.dim = dim;
    q.lattice_id = 1;
    q.generation = 0;
    q.corner.assign(dim, 0);
    q.unit = unit;
    return q;
}

double DyadicCube::side() const { return std::ldexp(unit, generation); }

double DyadicCube::corner_coord(int axis) const {
    return side() / 3.0 * static_cast<double>(corner[axis]);
}

Box DyadicCube::box() const {
    Box b;
    b.lo.resize(dim);
    b.hi.resize(dim);
    const double s = side();
    for (int a = 0; a < dim; ++a) {
        b.lo[a] = corner_coord(a);
        b.hi[a] = b.lo[a] + s;
    }
    return b;
}

Box DyadicCube::central_third() const {
    Box b = box();
    const double t = side() / 3.0;
    for (int a = 0; a < dim; ++a) {
        b.lo[a] += t;
        b.hi[a] = b.lo[a] + t;
    }
    return b;
}

Box DyadicCube::central_half() const {
    Box b = box();
    const double qtr = side() / 4.0;
    for (int a = 0; a < dim; ++a) {
        b.lo[a] += qtr;
        b.hi[a] -= qtr;
    }
    return b;
}

Box DyadicCube::tile(int j) const {
    const int total = ipow(3, dim);
    if (j < 1 || j > total) throw std::invalid_argument("tile index out of range");
    Box b;
    b.lo.resize(dim);
    b.hi.resize(dim);
    const double t = side() / 3.0;
    int rem = j - 1;
    // lexicographic: last axis fastest
    for (int a = dim - 1; a >= 0; --a) {
        const int o = rem % 3;
        rem /= 3;
        b.lo[a] = corner_coord(a) + o * t;
        b.hi[a] = b.lo[a] + t;
    }
    return b;
}

std::vector<DyadicCube> DyadicCube::children() const {
    std::vector<DyadicCube> out;
    out.reserve(static_cast<std::size_t>(1) << dim);
    for (int mask = 0; mask < (1 << dim); ++mask) {
        DyadicCube c = *this;
        c.generation -= 1;
        for (int a = 0; a < dim; ++a) {
            // child corner in units of (side/2)/3: 2n + 3c
            const int bit = (mask >> (dim - 1 - a)) & 1;
            c.corner[a] = 2 * corner[a] + 3 * bit;
        }
        out.push_back(std::move(c));
    }
    return out;
}

DyadicCube DyadicCube::parent() const {
    DyadicCube p = *this;
    p.generation += 1;
    for (int a = 0; a < dim; ++a) {
        const std::int64_t n = corner[a];
        // unique lattice-consistent parent: n even -> n/2, n odd -> (n-3)/2
        if (n % 2 == 0)
            p.corner[a] = n / 2;
        else
            p.corner[a] = (n - 3) / 2;
    }
    return p;
}

namespace {

// Compare positions n * 2^g across generations without overflow: both cubes
// rescaled to the finer generation.
bool interval_contains(std::int64_t n_outer, int g_outer, std::int64_t n_inner, int g_inner) {
    if (g_outer < g_inner) return false;
    const std::int64_t f = std::int64_t(1) << (g_outer - g_inner);
    return n_inner >= n_outer * f && n_inner + 3 <= (n_outer + 3) * f;
}

bool interval_disjoint(std::int64_t n_a, int g_a, std::int64_t n_b, int g_b) {
    const int g = std::min(g_a, g_b);
    const std::int64_t fa = std::int64_t(1) << (g_a - g);
    const std::int64_t fb = std::int64_t(1) << (g_b - g);
    return (n_a + 3) * fa <= n_b * fb || (n_b + 3) * fb <= n_a * fa;
}

}  // namespace

bool DyadicCube::contains(const DyadicCube& other) const {
    if (dim != other.dim) throw std::invalid_argument("cube dimension mismatch");
    for (int a = 0; a < dim; ++a)
        if (!interval_contains(corner[a], generation, other.corner[a], other.generation))
            return false;
    return true;
}

bool DyadicCube::disjoint_from(const DyadicCube& other) const {
    if (dim != other.dim) throw std::invalid_argument("cube dimension mismatch");
    for (int a = 0; a < dim; ++a)
        if (interval_disjoint(corner[a], generation, other.corner[a], other.generation))
            return true;
    return false;
}

bool DyadicCube::contains_point(const double* x) const {
    return box().contains(x);
}

bool DyadicCube::operator==(const DyadicCube& other) const {
    return dim == other.dim && generation == other.generation && corner == other.corner;
}

bool DyadicCube::operator<(const DyadicCube& other) const {
    if (generation != other.generation) return generation > other.generation;
    return corner < other.corner;
}

std::string DyadicCube::describe() const {
    std::ostringstream os;
    os << "Q(g=" << generation << ", n=[";
    for (int a = 0; a < dim; ++a) os << (a ? "," : "") << corner[a];
    os << "], side=" << side() << ")";
    return os.str();
}

int LatticeFamily::count() const { return ipow(3, dim); }

LatticeFamily shifted_lattices(int dim, double fundamental_side) {
    if (dim < 1) throw std::invalid_argument("shifted_lattices: dimension must be >= 1");
    if (!(fundamental_side > 0)) throw std::invalid_argument("shifted_lattices: fundamental side must be positive");
    return LatticeFamily{dim, fundamental_side};
}

DyadicCube LatticeFamily::base_cube(int g, const std::vector<std::int64_t>& k) const {
    if (static_cast<int>(k.size()) != dim) throw std::invalid_argument("base_cube: bad corner size");
    DyadicCube q;
    q.dim = dim;
    q.lattice_id = 1;
    q.generation = g;
    q.unit = fundamental / 3.0;
    q.corner.resize(dim);
    for (int a = 0; a < dim; ++a) q.corner[a] = 3 * k[a];
    return q;
}

DyadicCube LatticeFamily::tripled(const DyadicCube& base) const {
    DyadicCube q;
    q.dim = dim;
    q.generation = base.generation;
    q.unit = fundamental;
    q.corner.resize(dim);
    for (int a = 0; a < dim; ++a) q.corner[a] = base.corner[a] / 3 - 1;
    q.lattice_id = classify(q);
    return q;
}

std::vector<int> LatticeFamily::shift_digits(int lattice_id) const {
    if (lattice_id < 1 || lattice_id > count())
        throw std::invalid_argument("lattice id out of range");
    std::vector<int> digits(dim);
    int rem = lattice_id - 1;
    for (int a = dim - 1; a >= 0; --a) {
        digits[a] = rem % 3;
        rem /= 3;
    }
    return digits;
}

bool LatticeFamily::member(const DyadicCube& cube, int lattice_id) const {
    const auto digits = shift_digits(lattice_id);
    const int sign = (cube.generation % 2 == 0) ? 1 : -1;
    for (int a = 0; a < dim; ++a) {
        const std::int64_t want = ((sign * digits[a]) % 3 + 3) % 3;
        if (((cube.corner[a] % 3) + 3) % 3 != want) return false;
    }
    return true;
}

int LatticeFamily::classify(const DyadicCube& cube) const {
    const int sign = (cube.generation % 2 == 0) ? 1 : -1;
    int id = 0;
    for (int a = 0; a < dim; ++a) {
        const int cls = static_cast<int>(((cube.corner[a] % 3) + 3) % 3);
        const int digit = ((sign * cls) % 3 + 3) % 3;  // sign inverse == sign mod 3
        id = id * 3 + digit;
    }
    return id + 1;
}

DyadicCube LatticeFamily::cube_at(const double* x, int generation, int lattice_id) const {
    const auto digits = shift_digits(lattice_id);
    const int sign = (generation % 2 == 0) ? 1 : -1;
    DyadicCube q;
    q.dim = dim;
    q.lattice_id = lattice_id;
    q.generation = generation;
    q.unit = fundamental;
    q.corner.resize(dim);
    const double u = std::ldexp(fundamental, generation) / 3.0;
    for (int a = 0; a < dim; ++a) {
        const std::int64_t want = ((sign * digits[a]) % 3 + 3) % 3;
        std::int64_t n = static_cast<std::int64_t>(std::floor(x[a] / u));
        while (((n % 3) + 3) % 3 != want) --n;
        q.corner[a] = n;
    }
    return q;
}

std::vector<DyadicCube> subcube_enumeration(const DyadicCube& q) {
    const int total = ipow(3, q.dim);
    std::vector<DyadicCube> out;
    out.reserve(total);
    for (int idx = 0; idx < total; ++idx) {
        DyadicCube t = q;
        int rem = idx;
        for (int a = q.dim - 1; a >= 0; --a) {
            const int o = rem % 3 - 1;  // offsets -1,0,1
            rem /= 3;
            t.corner[a] = q.corner[a] + 3 * o;
        }
        out.push_back(std::move(t));
    }
    return out;
}

std::vector<DyadicCube> enlarged_cover(const DyadicCube& q, int j) {
    return cover_by_children(q, q.tile(j));
}

std::vector<DyadicCube> cover_by_children(const DyadicCube& q, const Box& region) {
    const Box clipped = region.intersect(q.box());
    if (clipped.empty()) return {};
    std::vector<DyadicCube> out;
    for (const auto& child : q.children()) {
        const Box cb = child.box();
        bool overlap = true;
        for (int a = 0; a < q.dim; ++a) {
            if (cb.hi[a] <= clipped.lo[a] || clipped.hi[a] <= cb.lo[a]) {
                overlap = false;
                break;
            }
        }
        if (overlap) out.push_back(child);
    }
    return out;
}

Box bounding_box(const std::vector<DyadicCube>& cubes) {
    if (cubes.empty()) throw std::invalid_argument("bounding_box: no cubes");
    Box b = cubes.front().box();
    for (const auto& q : cubes) {
        const Box qb = q.box();
        for (int a = 0; a < b.dim(); ++a) {
            b.lo[a] = std::min(b.lo[a], qb.lo[a]);
            b.hi[a] = std::max(b.hi[a], qb.hi[a]);
        }
    }
    return b;
}

}  // namespace bisparse::dyadic
