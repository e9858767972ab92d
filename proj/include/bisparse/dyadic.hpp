#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace bisparse::dyadic {

/// Axis-aligned half-open box [lo, hi) with real coordinates, used for the
/// cutoff geometry (thirds, tiles, covers) derived from cubes.
struct Box {
    std::vector<double> lo;
    std::vector<double> hi;

    int dim() const { return static_cast<int>(lo.size()); }
    bool contains(const double* x) const;
    bool empty() const;
    Box intersect(const Box& other) const;
    double volume() const;
};

/// Dyadic cube with purely integral coordinates.
///
/// A cube at generation g has sidelength unit * 2^g and corner
/// (side/3) * corner[i] on each axis, so corner positions are kept in units
/// of one third of the sidelength.  This makes both the standard lattice
/// (corner divisible by 3) and the 3^d shifted lattices (corner congruent to
/// a fixed pattern mod 3, with the sign of the pattern alternating by
/// generation) exactly representable.  All containment and partition logic
/// is integer arithmetic; floating geometry is derived on demand.
struct DyadicCube {
    int dim = 0;
    int lattice_id = 1;              // 1..3^d
    int generation = 0;              // side = unit * 2^generation
    std::vector<std::int64_t> corner;  // units of side/3
    double unit = 1.0;               // fundamental sidelength

    static DyadicCube root(int dim, double unit = 1.0);

    double side() const;
    double corner_coord(int axis) const;
    Box box() const;
    Box central_third() const;       // (1/3)Q
    Box central_half() const;        // (1/2)Q
    /// j-th sidelength-l(Q)/3 tile of Q, 1-based lexicographic index.
    Box tile(int j) const;

    /// 2^d half-sidelength children, lexicographic over offsets {0,1}^d.
    std::vector<DyadicCube> children() const;
    DyadicCube parent() const;

    bool contains(const DyadicCube& other) const;
    bool disjoint_from(const DyadicCube& other) const;
    bool contains_point(const double* x) const;

    bool operator==(const DyadicCube& other) const;
    bool operator<(const DyadicCube& other) const;  // generation-major, corner-lex

    std::string describe() const;
};

/// The 3^d shifted dyadic lattices D^1..D^{3^d} over a base lattice of
/// cubes with sidelengths fundamental/3 * 2^g.  Triplings 3Q of base-lattice
/// cubes land in exactly one shifted lattice.
struct LatticeFamily {
    int dim = 0;
    double fundamental = 1.0;

    int count() const;  // 3^d

    /// Base-lattice cube of sidelength fundamental/3 * 2^g with corner at
    /// k * sidelength (a cube of D').
    DyadicCube base_cube(int g, const std::vector<std::int64_t>& k) const;

    /// Concentric tripling 3Q of a base-lattice cube; the result carries the
    /// shifted-lattice id it belongs to.
    DyadicCube tripled(const DyadicCube& base) const;

    /// Shift pattern (each digit in {0,1,2}, meaning alpha = digit/3) of a
    /// lattice id.
    std::vector<int> shift_digits(int lattice_id) const;

    /// Whether a cube of sidelength fundamental * 2^g with the given corner
    /// belongs to lattice `lattice_id`.
    bool member(const DyadicCube& cube, int lattice_id) const;

    /// Id of the unique lattice containing the cube; 0 if none.
    int classify(const DyadicCube& cube) const;

    /// The unique cube of the given lattice and generation containing x.
    DyadicCube cube_at(const double* x, int generation, int lattice_id) const;
};

LatticeFamily shifted_lattices(int dim, double fundamental_side);

/// The 3^d sidelength-l(Q) cubes tiling 3Q, lexicographic over offsets
/// {-1,0,1}^d.  Tiles share Q's generation and mod-3 corner class.
std::vector<DyadicCube> subcube_enumeration(const DyadicCube& q);

/// Minimal set of half-sidelength children of Q covering tile j of Q
/// (the j-th cube of the subdivision of Q into 3^d congruent subcubes),
/// 1-based lexicographic j.
std::vector<DyadicCube> enlarged_cover(const DyadicCube& q, int j);

/// Minimal set of children of Q whose union contains region & Q; empty if
/// the region misses Q entirely.
std::vector<DyadicCube> cover_by_children(const DyadicCube& q, const Box& region);

/// Union-of-boxes region for the enlarged cutoff.
Box bounding_box(const std::vector<DyadicCube>& cubes);

int ipow(int base, int exp);

}  // namespace bisparse::dyadic
