#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "bisparse/dyadic.hpp"

namespace bisparse::grid {

using dyadic::Box;
using dyadic::DyadicCube;

/// Sampled nonnegative (or general finite) function on a uniform grid over a
/// cube, zero-extended outside.  Samples live at cell centers; off-grid
/// evaluation is multilinear interpolation against zero ghost cells.
///
/// Cube machinery works in the grid-local frame where the root cube is
/// [0, side)^d; `origin` places that frame in absolute coordinates and only
/// matters for I/O and weight construction.
class GridFunction {
public:
    GridFunction() = default;
    GridFunction(int dim, int n, double side, std::vector<double> origin,
                 std::vector<double> values, bool nonneg = false);

    static GridFunction zeros(int dim, int n, double side,
                              std::vector<double> origin = {});
    static GridFunction constant(int dim, int n, double side, double value,
                                 std::vector<double> origin = {});
    /// Sample fn at cell centers (grid-local coordinates).
    static GridFunction from_fn(int dim, int n, double side,
                                const std::function<double(const double*)>& fn,
                                std::vector<double> origin = {});

    int dim() const { return dim_; }
    int n() const { return n_; }
    std::size_t size() const { return values_.size(); }
    double side() const { return side_; }
    double h() const { return side_ / n_; }
    double cell_volume() const;
    const std::vector<double>& values() const { return values_; }
    std::vector<double>& values() { return values_; }
    const std::vector<double>& origin() const { return origin_; }
    bool nonneg() const { return nonneg_; }
    void set_nonneg(bool flag);

    DyadicCube root_cube() const { return DyadicCube::root(dim_, side_); }

    double operator[](std::size_t i) const { return values_[i]; }
    double& operator[](std::size_t i) { return values_[i]; }

    /// Cell center coordinate (grid-local) of the flat index.
    void cell_center(std::size_t flat, double* x) const;
    std::size_t flat_index(const int* idx) const;
    void unflatten(std::size_t flat, int* idx) const;

    /// Multilinear interpolation at a grid-local point, zero outside.
    double eval(const double* x) const;

    double integral() const;
    double lp_norm(double p) const;
    double sup_norm() const;
    /// L^r norm over cells at distance >= margin from the domain boundary.
    double interior_lr_norm(double r, double margin) const;

    bool same_geometry(const GridFunction& other) const;

private:
    int dim_ = 0;
    int n_ = 0;
    double side_ = 1.0;
    std::vector<double> origin_;
    std::vector<double> values_;
    bool nonneg_ = false;
};

/// Cell range of a grid-aligned dyadic subcube: per-axis [start, start+width).
struct CellRange {
    int level = 0;   // depth below the root
    std::vector<std::int64_t> start;
    std::int64_t width = 0;

    std::int64_t cell_count(int dim) const;
};

/// Maps a dyadic descendant of the root cube to its cell range; throws a
/// resolution error if the cube is finer than the grid or not aligned.
CellRange cube_cells(const GridFunction& f, const DyadicCube& q);

/// Normalized L^t average <f>_{Q,t} over an aligned cube (midpoint rule).
double lp_average(const GridFunction& f, const DyadicCube& q, double t);

/// x -> f(x) - f(x - y), zero extension outside the domain.
GridFunction translate_diff(const GridFunction& f, const std::vector<double>& y);

/// Per-level power sums sum_{cells in Q} |f|^p for every dyadic subcube of
/// the root, for O(1) averages during the stopping-time recursion.
class CubeAverages {
public:
    CubeAverages(const GridFunction& f, double p);

    double power_sum(const DyadicCube& q) const;   // sum of |f|^p over cells
    double average(const DyadicCube& q) const;     // <f>_{Q,p}
    int max_level() const { return max_level_; }

private:
    int dim_ = 0;
    int n_ = 0;
    double p_ = 1.0;
    int max_level_ = 0;
    std::vector<std::vector<double>> level_sums_;  // [level][flat cube index]
};

struct LevelSetDecomposition {
    std::vector<int> exponents;                    // m values, descending
    std::vector<std::vector<std::uint8_t>> sets;   // masks E_m over cells
    double residual_mass = 0.0;                    // mass dropped below 2^m_min
    int source_n = 0;
    int source_dim = 0;
};

/// E_m = {2^m <= f < 2^{m+1}} masks; f must be nonnegative.
LevelSetDecomposition level_sets(const GridFunction& f, int max_levels = 64);

/// Lorentz L^{r,1} norm of f over the cube q0 with respect to the normalized
/// measure |Q0|^{-1} dx, by exact summation over the sorted distribution.
double lorentz_norm(const GridFunction& f, const DyadicCube& q0, double r);

enum class TestFunctionKind { IndicatorUnionOfCubes, SmoothBumpMixture, Spike };

struct TestFunctionParams {
    int count = 4;           // cubes or bumps
    int min_level = 1;
    int max_level = 4;       // indicator kind: dyadic levels of the cubes
    double sigma_min = 0.02; // bump widths relative to side
    double sigma_max = 0.10;
    double amp_max = 1.0;
    double spike_mass = 1.0;
};

/// Deterministic seeded generator; indicator kinds produce exact {0,1}
/// values, and cube/bump parameters are resolution-independent.
GridFunction random_test_function(std::uint64_t seed, TestFunctionKind kind,
                                  const TestFunctionParams& params, int dim, int n,
                                  double side = 1.0, std::vector<double> origin = {});

double inner_product(const GridFunction& f, const GridFunction& g);

GridFunction pointwise_max(const GridFunction& f, const GridFunction& g);

}  // namespace bisparse::grid
