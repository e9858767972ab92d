#include "bisparse/grid.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <stdexcept>

namespace bisparse::grid {

namespace {

bool is_power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

int log2_int(int n) {
    int l = 0;
    while ((1 << l) < n) ++l;
    return l;
}

void check_finite(const std::vector<double>& v) {
    for (double x : v)
        if (!std::isfinite(x)) throw std::invalid_argument("GridFunction: values must be finite");
}

}  // namespace

GridFunction::GridFunction(int dim, int n, double side, std::vector<double> origin,
                           std::vector<double> values, bool nonneg)
    : dim_(dim), n_(n), side_(side), origin_(std::move(origin)), values_(std::move(values)),
      nonneg_(nonneg) {
    if (dim < 1 || dim > 3) throw std::invalid_argument("GridFunction: dim must be 1..3");
    if (!is_power_of_two(n)) throw std::invalid_argument("GridFunction: n must be a power of 2");
    if (!(side > 0)) throw std::invalid_argument("GridFunction: side must be positive");
    std::size_t expect = 1;
    for (int a = 0; a < dim; ++a) expect *= static_cast<std::size_t>(n);
    if (values_.size() != expect) throw std::invalid_argument("GridFunction: bad value count");
    if (origin_.empty()) origin_.assign(dim, 0.0);
    if (static_cast<int>(origin_.size()) != dim)
        throw std::invalid_argument("GridFunction: bad origin size");
    check_finite(values_);
    if (nonneg_)
        for (double x : values_)
            if (x < 0) throw std::invalid_argument("GridFunction: negative value with nonneg flag");
}

GridFunction GridFunction::zeros(int dim, int n, double side, std::vector<double> origin) {
    std::size_t total = 1;
    for (int a = 0; a < dim; ++a) total *= static_cast<std::size_t>(n);
    return GridFunction(dim, n, side, std::move(origin), std::vector<double>(total, 0.0), true);
}

GridFunction GridFunction::constant(int dim, int n, double side, double value,
                                    std::vector<double> origin) {
    std::size_t total = 1;
    for (int a = 0; a < dim; ++a) total *= static_cast<std::size_t>(n);
    return GridFunction(dim, n, side, std::move(origin), std::vector<double>(total, value),
                        value >= 0);
}

GridFunction GridFunction::from_fn(int dim, int n, double side,
                                   const std::function<double(const double*)>& fn,
                                   std::vector<double> origin) {
    GridFunction f = zeros(dim, n, side, std::move(origin));
    double x[3], xl[3];
    bool nonneg = true;
    for (std::size_t i = 0; i < f.size(); ++i) {
        f.cell_center(i, xl);
        for (int a = 0; a < dim; ++a) x[a] = xl[a] + f.origin_[a];
        const double v = fn(x);
        f.values_[i] = v;
        if (v < 0) nonneg = false;
    }
    f.nonneg_ = nonneg;
    check_finite(f.values_);
    return f;
}

double GridFunction::cell_volume() const {
    double v = 1.0;
    for (int a = 0; a < dim_; ++a) v *= h();
    return v;
}

void GridFunction::set_nonneg(bool flag) {
    if (flag)
        for (double x : values_)
            if (x < 0) throw std::invalid_argument("set_nonneg: negative value present");
    nonneg_ = flag;
}

void GridFunction::cell_center(std::size_t flat, double* x) const {
    int idx[3];
    unflatten(flat, idx);
    for (int a = 0; a < dim_; ++a) x[a] = (idx[a] + 0.5) * h();
}

std::size_t GridFunction::flat_index(const int* idx) const {
    std::size_t f = 0;
    for (int a = 0; a < dim_; ++a) f = f * n_ + static_cast<std::size_t>(idx[a]);
    return f;
}

void GridFunction::unflatten(std::size_t flat, int* idx) const {
    for (int a = dim_ - 1; a >= 0; --a) {
        idx[a] = static_cast<int>(flat % n_);
        flat /= n_;
    }
}

double GridFunction::eval(const double* x) const {
    // interpolation cell: u in [base, base+1) between cell centers
    int base[3];
    double frac[3];
    const double hh = h();
    for (int a = 0; a < dim_; ++a) {
        const double u = x[a] / hh - 0.5;
        const double fl = std::floor(u);
        base[a] = static_cast<int>(fl);
        frac[a] = u - fl;
        if (base[a] < -1 || base[a] > n_ - 1) return 0.0;
    }
    double acc = 0.0;
    for (int mask = 0; mask < (1 << dim_); ++mask) {
        double w = 1.0;
        std::size_t flat = 0;
        bool inside = true;
        for (int a = 0; a < dim_; ++a) {
            const int bit = (mask >> a) & 1;
            const int ia = base[a] + bit;
            w *= bit ? frac[a] : (1.0 - frac[a]);
            if (ia < 0 || ia >= n_) {
                inside = false;
                break;
            }
            flat = flat * n_ + static_cast<std::size_t>(ia);
        }
        if (inside && w != 0.0) acc += w * values_[flat];
    }
    return acc;
}

double GridFunction::integral() const {
    double s = 0.0;
    for (double v : values_) s += v;
    return s * cell_volume();
}

double GridFunction::lp_norm(double p) const {
    if (!(p > 0)) throw std::invalid_argument("lp_norm: exponent must be positive");
    double s = 0.0;
    for (double v : values_) s += std::pow(std::abs(v), p);
    return std::pow(s * cell_volume(), 1.0 / p);
}

double GridFunction::sup_norm() const {
    double m = 0.0;
    for (double v : values_) m = std::max(m, std::abs(v));
    return m;
}

double GridFunction::interior_lr_norm(double r, double margin) const {
    if (!(r > 0)) throw std::invalid_argument("interior_lr_norm: exponent must be positive");
    const int mc = static_cast<int>(std::ceil(margin / h()));
    if (2 * mc >= n_) throw std::invalid_argument("interior_lr_norm: margin swallows the grid");
    double s = 0.0;
    int idx[3];
    for (std::size_t i = 0; i < values_.size(); ++i) {
        unflatten(i, idx);
        bool interior = true;
        for (int a = 0; a < dim_; ++a)
            if (idx[a] < mc || idx[a] >= n_ - mc) {
                interior = false;
                break;
            }
        if (interior) s += std::pow(std::abs(values_[i]), r);
    }
    return std::pow(s * cell_volume(), 1.0 / r);
}

bool GridFunction::same_geometry(const GridFunction& other) const {
    return dim_ == other.dim_ && n_ == other.n_ && side_ == other.side_;
}

std::int64_t CellRange::cell_count(int dim) const {
    std::int64_t c = 1;
    for (int a = 0; a < dim; ++a) c *= width;
    return c;
}

CellRange cube_cells(const GridFunction& f, const DyadicCube& q) {
    if (q.dim != f.dim()) throw std::invalid_argument("cube_cells: dimension mismatch");
    if (q.generation > 0)
        throw std::domain_error("cube_cells: cube larger than the grid domain");
    const int level = -q.generation;
    const int max_level = log2_int(f.n());
    if (level > max_level)
        throw std::domain_error("cube_cells: cube below grid resolution");
    CellRange r;
    r.level = level;
    r.width = std::int64_t(1) << (max_level - level);
    r.start.resize(q.dim);
    for (int a = 0; a < q.dim; ++a) {
        if (q.corner[a] % 3 != 0)
            throw std::domain_error("cube_cells: cube not aligned with the grid lattice");
        const std::int64_t ci = q.corner[a] / 3;
        if (ci < 0 || ci >= (std::int64_t(1) << level))
            throw std::domain_error("cube_cells: cube outside the grid domain");
        r.start[a] = ci * r.width;
    }
    return r;
}

double lp_average(const GridFunction& f, const DyadicCube& q, double t) {
    if (!(t > 0)) throw std::invalid_argument("lp_average: exponent must be positive");
    const CellRange r = cube_cells(f, q);
    const int d = f.dim();
    double s = 0.0;
    std::int64_t count = 0;
    if (d == 1) {
        for (std::int64_t i = r.start[0]; i < r.start[0] + r.width; ++i)
            s += std::pow(std::abs(f[static_cast<std::size_t>(i)]), t);
        count = r.width;
    } else if (d == 2) {
        for (std::int64_t i = r.start[0]; i < r.start[0] + r.width; ++i)
            for (std::int64_t j = r.start[1]; j < r.start[1] + r.width; ++j)
                s += std::pow(std::abs(f[static_cast<std::size_t>(i * f.n() + j)]), t);
        count = r.width * r.width;
    } else {
        for (std::int64_t i = r.start[0]; i < r.start[0] + r.width; ++i)
            for (std::int64_t j = r.start[1]; j < r.start[1] + r.width; ++j)
                for (std::int64_t k = r.start[2]; k < r.start[2] + r.width; ++k)
                    s += std::pow(std::abs(f[static_cast<std::size_t>((i * f.n() + j) * f.n() + k)]), t);
        count = r.width * r.width * r.width;
    }
    return std::pow(s / static_cast<double>(count), 1.0 / t);
}

GridFunction translate_diff(const GridFunction& f, const std::vector<double>& y) {
    if (static_cast<int>(y.size()) != f.dim())
        throw std::invalid_argument("translate_diff: bad shift size");
    for (double c : y)
        if (!std::isfinite(c)) throw std::invalid_argument("translate_diff: shift must be finite");
    GridFunction out = f;
    double x[3], xs[3];
    for (std::size_t i = 0; i < f.size(); ++i) {
        f.cell_center(i, x);
        for (int a = 0; a < f.dim(); ++a) xs[a] = x[a] - y[a];
        out[i] = f[i] - f.eval(xs);
    }
    out.set_nonneg(false);
    return out;
}

CubeAverages::CubeAverages(const GridFunction& f, double p) : dim_(f.dim()), n_(f.n()), p_(p) {
    if (!(p > 0)) throw std::invalid_argument("CubeAverages: exponent must be positive");
    max_level_ = log2_int(n_);
    level_sums_.resize(max_level_ + 1);
    // finest level: |f|^p per cell
    auto& fine = level_sums_[max_level_];
    fine.resize(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) fine[i] = std::pow(std::abs(f[i]), p);
    // aggregate children upward
    for (int l = max_level_ - 1; l >= 0; --l) {
        const int nl = 1 << l;
        const int nc = 1 << (l + 1);
        auto& cur = level_sums_[l];
        const auto& child = level_sums_[l + 1];
        std::size_t total = 1;
        for (int a = 0; a < dim_; ++a) total *= static_cast<std::size_t>(nl);
        cur.assign(total, 0.0);
        if (dim_ == 1) {
            for (int i = 0; i < nl; ++i) cur[i] = child[2 * i] + child[2 * i + 1];
        } else if (dim_ == 2) {
            for (int i = 0; i < nl; ++i)
                for (int j = 0; j < nl; ++j)
                    cur[static_cast<std::size_t>(i) * nl + j] =
                        child[static_cast<std::size_t>(2 * i) * nc + 2 * j] +
                        child[static_cast<std::size_t>(2 * i) * nc + 2 * j + 1] +
                        child[static_cast<std::size_t>(2 * i + 1) * nc + 2 * j] +
                        child[static_cast<std::size_t>(2 * i + 1) * nc + 2 * j + 1];
        } else {
            for (int i = 0; i < nl; ++i)
                for (int j = 0; j < nl; ++j)
                    for (int k = 0; k < nl; ++k) {
                        double s = 0.0;
                        for (int ci = 0; ci < 2; ++ci)
                            for (int cj = 0; cj < 2; ++cj)
                                for (int ck = 0; ck < 2; ++ck)
                                    s += child[(static_cast<std::size_t>(2 * i + ci) * nc +
                                                (2 * j + cj)) * nc + (2 * k + ck)];
                        cur[(static_cast<std::size_t>(i) * nl + j) * nl + k] = s;
                    }
        }
    }
}

double CubeAverages::power_sum(const DyadicCube& q) const {
    if (q.generation > 0 || -q.generation > max_level_)
        throw std::domain_error("CubeAverages: cube outside the grid tree");
    const int level = -q.generation;
    const int nl = 1 << level;
    std::size_t flat = 0;
    for (int a = 0; a < dim_; ++a) {
        if (q.corner[a] % 3 != 0) throw std::domain_error("CubeAverages: misaligned cube");
        const std::int64_t ci = q.corner[a] / 3;
        if (ci < 0 || ci >= nl) throw std::domain_error("CubeAverages: cube outside domain");
        flat = flat * nl + static_cast<std::size_t>(ci);
    }
    return level_sums_[level][flat];
}

double CubeAverages::average(const DyadicCube& q) const {
    const int level = -q.generation;
    double count = 1.0;
    for (int a = 0; a < dim_; ++a) count *= static_cast<double>(std::int64_t(1) << (max_level_ - level));
    return std::pow(power_sum(q) / count, 1.0 / p_);
}

LevelSetDecomposition level_sets(const GridFunction& f, int max_levels) {
    for (double v : f.values())
        if (v < 0) throw std::invalid_argument("level_sets: function must be nonnegative");
    LevelSetDecomposition out;
    out.source_n = f.n();
    out.source_dim = f.dim();
    double vmax = 0.0, vmin_pos = 0.0;
    for (double v : f.values()) {
        if (v > 0) {
            vmax = std::max(vmax, v);
            vmin_pos = (vmin_pos == 0.0) ? v : std::min(vmin_pos, v);
        }
    }
    if (vmax == 0.0) return out;  // identically zero
    const int m_max = static_cast<int>(std::floor(std::log2(vmax)));
    int m_min = static_cast<int>(std::floor(std::log2(vmin_pos)));
    if (m_max - m_min + 1 > max_levels) m_min = m_max - max_levels + 1;
    for (int m = m_max; m >= m_min; --m) {
        out.exponents.push_back(m);
        out.sets.emplace_back(f.size(), 0);
    }
    const double floor_val = std::ldexp(1.0, m_min);
    for (std::size_t i = 0; i < f.size(); ++i) {
        const double v = f[i];
        if (v <= 0) continue;
        if (v < floor_val) {
            out.residual_mass += v * f.cell_volume();
            continue;
        }
        int m = static_cast<int>(std::floor(std::log2(v)));
        m = std::min(m, m_max);
        out.sets[static_cast<std::size_t>(m_max - m)][i] = 1;
    }
    return out;
}

double lorentz_norm(const GridFunction& f, const DyadicCube& q0, double r) {
    if (r < 1) throw std::invalid_argument("lorentz_norm: exponent must be >= 1");
    const CellRange range = cube_cells(f, q0);
    std::vector<double> vals;
    vals.reserve(static_cast<std::size_t>(range.cell_count(f.dim())));
    const int d = f.dim();
    if (d == 1) {
        for (std::int64_t i = range.start[0]; i < range.start[0] + range.width; ++i)
            vals.push_back(std::abs(f[static_cast<std::size_t>(i)]));
    } else if (d == 2) {
        for (std::int64_t i = range.start[0]; i < range.start[0] + range.width; ++i)
            for (std::int64_t j = range.start[1]; j < range.start[1] + range.width; ++j)
                vals.push_back(std::abs(f[static_cast<std::size_t>(i * f.n() + j)]));
    } else {
        for (std::int64_t i = range.start[0]; i < range.start[0] + range.width; ++i)
            for (std::int64_t j = range.start[1]; j < range.start[1] + range.width; ++j)
                for (std::int64_t k = range.start[2]; k < range.start[2] + range.width; ++k)
                    vals.push_back(std::abs(f[static_cast<std::size_t>((i * f.n() + j) * f.n() + k)]));
    }
    std::sort(vals.begin(), vals.end(), std::greater<double>());
    const double N = static_cast<double>(vals.size());
    double norm = 0.0;
    for (std::size_t k = 0; k < vals.size(); ++k) {
        const double next = (k + 1 < vals.size()) ? vals[k + 1] : 0.0;
        if (vals[k] > next)
            norm += std::pow((static_cast<double>(k) + 1.0) / N, 1.0 / r) * (vals[k] - next);
    }
    return norm;
}

GridFunction random_test_function(std::uint64_t seed, TestFunctionKind kind,
                                  const TestFunctionParams& params, int dim, int n, double side,
                                  std::vector<double> origin) {
    std::mt19937_64 rng(seed * 0x9e3779b97f4a7c15ULL + 0x1234abcdULL);
    if (kind == TestFunctionKind::IndicatorUnionOfCubes) {
        GridFunction f = GridFunction::zeros(dim, n, side, std::move(origin));
        std::uniform_int_distribution<int> level_dist(params.min_level, params.max_level);
        const int max_level = [&] {
            int l = 0;
            while ((1 << l) < n) ++l;
            return l;
        }();
        for (int c = 0; c < params.count; ++c) {
            const int level = std::min(level_dist(rng), max_level);
            std::int64_t start[3];
            for (int a = 0; a < dim; ++a) {
                std::uniform_int_distribution<std::int64_t> idx_dist(0, (std::int64_t(1) << level) - 1);
                start[a] = idx_dist(rng) * (std::int64_t(1) << (max_level - level));
            }
            const std::int64_t w = std::int64_t(1) << (max_level - level);
            if (dim == 1) {
                for (std::int64_t i = 0; i < w; ++i) f[static_cast<std::size_t>(start[0] + i)] = 1.0;
            } else if (dim == 2) {
                for (std::int64_t i = 0; i < w; ++i)
                    for (std::int64_t j = 0; j < w; ++j)
                        f[static_cast<std::size_t>((start[0] + i) * n + (start[1] + j))] = 1.0;
            } else {
                for (std::int64_t i = 0; i < w; ++i)
                    for (std::int64_t j = 0; j < w; ++j)
                        for (std::int64_t k = 0; k < w; ++k)
                            f[static_cast<std::size_t>(((start[0] + i) * n + (start[1] + j)) * n +
                                                       (start[2] + k))] = 1.0;
            }
        }
        f.set_nonneg(true);
        return f;
    }
    if (kind == TestFunctionKind::SmoothBumpMixture) {
        struct Bump {
            double c[3];
            double sigma;
            double amp;
        };
        std::vector<Bump> bumps(params.count);
        std::uniform_real_distribution<double> cdist(0.2, 0.8);
        std::uniform_real_distribution<double> sdist(params.sigma_min, params.sigma_max);
        std::uniform_real_distribution<double> adist(0.1, params.amp_max);
        for (auto& b : bumps) {
            for (int a = 0; a < dim; ++a) b.c[a] = cdist(rng) * side;
            b.sigma = sdist(rng) * side;
            b.amp = adist(rng);
        }
        std::vector<double> org = origin;
        GridFunction f = GridFunction::zeros(dim, n, side, std::move(org));
        double x[3];
        for (std::size_t i = 0; i < f.size(); ++i) {
            f.cell_center(i, x);
            double v = 0.0;
            for (const auto& b : bumps) {
                double d2 = 0.0;
                for (int a = 0; a < dim; ++a) d2 += (x[a] - b.c[a]) * (x[a] - b.c[a]);
                v += b.amp * std::exp(-d2 / (2.0 * b.sigma * b.sigma));
            }
            f[i] = v;
        }
        f.set_nonneg(true);
        return f;
    }
    // spike
    GridFunction f = GridFunction::zeros(dim, n, side, std::move(origin));
    std::uniform_real_distribution<double> pos(0.25, 0.75);
    int idx[3];
    for (int a = 0; a < dim; ++a) idx[a] = static_cast<int>(pos(rng) * n);
    f[f.flat_index(idx)] = params.spike_mass / f.cell_volume();
    f.set_nonneg(true);
    return f;
}

double inner_product(const GridFunction& f, const GridFunction& g) {
    if (!f.same_geometry(g)) throw std::invalid_argument("inner_product: geometry mismatch");
    double s = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) s += f[i] * g[i];
    return s * f.cell_volume();
}

GridFunction pointwise_max(const GridFunction& f, const GridFunction& g) {
    if (!f.same_geometry(g)) throw std::invalid_argument("pointwise_max: geometry mismatch");
    GridFunction out = f;
    for (std::size_t i = 0; i < f.size(); ++i) out[i] = std::max(f[i], g[i]);
    return out;
}

}  // namespace bisparse::grid
