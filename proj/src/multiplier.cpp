#include "bisparse/multiplier.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace bisparse::multiplier {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

void require_1d(const GridFunction& f, const char* what) {
    if (f.dim() != 1)
        throw std::domain_error(std::string(what) + ": only d = 1 periodic grids are implemented");
}

/// Fourier series coefficients on the period, matching samples at cell
/// centers: f(x_j) = sum_{k in [-n/2, n/2)} c_k e^{2 pi i k (j+1/2)/n}.
std::vector<std::complex<double>> series_coefficients(const GridFunction& f) {
    const int n = f.n();
    std::vector<std::complex<double>> a(n);
    for (int j = 0; j < n; ++j) a[j] = f[static_cast<std::size_t>(j)];
    fft(a, false);
    std::vector<std::complex<double>> c(n);
    for (int i = 0; i < n; ++i) {
        const int k = i - n / 2;  // centered
        const int km = ((k % n) + n) % n;
        const double phase = -std::numbers::pi * k / n;
        c[i] = a[km] * std::exp(std::complex<double>(0.0, phase)) / static_cast<double>(n);
    }
    return c;
}

}  // namespace

void fft(std::vector<std::complex<double>>& a, bool inverse) {
    const std::size_t n = a.size();
    if (n == 0 || (n & (n - 1)) != 0) throw std::invalid_argument("fft: size must be a power of 2");
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
    for (std::size_t len = 2; len <= n; len <<= 1) {
        const double ang = (inverse ? kTwoPi : -kTwoPi) / static_cast<double>(len);
        const std::complex<double> wl(std::cos(ang), std::sin(ang));
        for (std::size_t i = 0; i < n; i += len) {
            std::complex<double> w(1.0, 0.0);
            for (std::size_t j = 0; j < len / 2; ++j) {
                const std::complex<double> u = a[i + j];
                const std::complex<double> v = a[i + j + len / 2] * w;
                a[i + j] = u + v;
                a[i + j + len / 2] = u - v;
                w *= wl;
            }
        }
    }
    if (inverse)
        for (auto& x : a) x /= static_cast<double>(n);
}

MultiplierGrid MultiplierGrid::from_fn(
    int n, double period, const std::function<std::complex<double>(double, double)>& fn) {
    if (n <= 0 || (n & (n - 1)) != 0)
        throw std::invalid_argument("MultiplierGrid: n must be a power of 2");
    MultiplierGrid out;
    out.n = n;
    out.period = period;
    out.m.resize(static_cast<std::size_t>(n) * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) out.at(i, j) = fn(out.freq(i), out.freq(j));
    return out;
}

MultiplierGrid multiplier_from_measure(const measures::DiscreteMeasure& mu, int n, double period) {
    if (mu.dim != 1)
        throw std::domain_error("multiplier_from_measure: only d = 1 measures");
    MultiplierGrid out;
    out.n = n;
    out.period = period;
    out.m.assign(static_cast<std::size_t>(n) * n, {0.0, 0.0});
    // separable accumulation over nodes: mu-hat = sum_k w_k a_k(xi) b_k(eta)
    std::vector<std::complex<double>> ax(n), bx(n);
    for (std::size_t k = 0; k < mu.node_count(); ++k) {
        for (int i = 0; i < n; ++i) {
            const double f = out.freq(i);
            ax[i] = std::exp(std::complex<double>(0.0, -kTwoPi * f * mu.y[k]));
            bx[i] = std::exp(std::complex<double>(0.0, -kTwoPi * f * mu.z[k]));
        }
        for (int i = 0; i < n; ++i) {
            const std::complex<double> wa = mu.w[k] * ax[i];
            auto* row = out.m.data() + static_cast<std::size_t>(i) * n;
            for (int j = 0; j < n; ++j) row[j] += wa * bx[j];
        }
    }
    return out;
}

GridFunction bilinear_multiplier_apply(const MultiplierGrid& m, const GridFunction& f,
                                       const GridFunction& g) {
    require_1d(f, "bilinear_multiplier_apply");
    require_1d(g, "bilinear_multiplier_apply");
    if (!f.same_geometry(g))
        throw std::invalid_argument("bilinear_multiplier_apply: input grids must match");
    if (m.n != f.n() || m.period != f.side())
        throw std::invalid_argument("bilinear_multiplier_apply: multiplier grid mismatch");
    const int n = m.n;
    const auto cf = series_coefficients(f);
    const auto cg = series_coefficients(g);

    // unit-root table, exact modular indexing
    std::vector<std::complex<double>> root(n);
    for (int t = 0; t < n; ++t)
        root[t] = std::exp(std::complex<double>(0.0, kTwoPi * t / n));

    std::vector<std::complex<double>> acc(n, {0.0, 0.0});
    std::vector<std::complex<double>> inner(n);
    for (int i = 0; i < n; ++i) {
        const int k = i - n / 2;
        // inner transform over eta: v_j = sum_l cg_l m(k,l) e^{2 pi i l (j+1/2)/n}
        for (int jj = 0; jj < n; ++jj) {
            const int l = jj - n / 2;
            const int lm = ((l % n) + n) % n;
            const double phase = std::numbers::pi * l / n;
            inner[lm] = cg[jj] * m.at(i, jj) * std::exp(std::complex<double>(0.0, phase));
        }
        fft(inner, true);
        // accumulate c_k e^{2 pi i k (j+1/2)/n} * v_j; inverse fft supplied /n
        const std::complex<double> ck =
            cf[i] * std::exp(std::complex<double>(0.0, std::numbers::pi * k / n)) *
            static_cast<double>(n);
        const int km = ((k % n) + n) % n;
        for (int j = 0; j < n; ++j)
            acc[j] += ck * root[static_cast<std::size_t>(km) * j % n] * inner[j];
    }
    GridFunction out = GridFunction::zeros(1, n, f.side(), std::vector<double>(f.origin()));
    for (int j = 0; j < n; ++j) out[j] = acc[j].real();
    out.set_nonneg(false);
    return out;
}

void MultiplierProbe::validate() const {
    if (!(decay_s > 0)) throw std::invalid_argument("MultiplierProbe: decay exponent must be > 0");
    if (lq_exponent < 1 || lq_exponent >= 4)
        throw std::invalid_argument("MultiplierProbe: q must be in [1, 4)");
    if (!(cutoff_eps > 0) || cutoff_eps >= 1)
        throw std::invalid_argument("MultiplierProbe: cutoff eps must be in (0, 1)");
    if (split_a && (*split_a <= 0 || *split_a >= 1))
        throw std::invalid_argument("MultiplierProbe: split exponent must be in (0, 1)");
}

double cutoff_phi(double u, double eps, int order) {
    const double au = std::abs(u);
    if (au <= 1.0 - eps) return 1.0;
    if (au >= 1.0) return 0.0;
    const double s = (1.0 - au) / eps;  // ramps 0 -> 1 inward
    switch (order) {
        case 1: return s;
        case 2: return s * s * (3.0 - 2.0 * s);
        default: return s * s * s * (10.0 + s * (-15.0 + 6.0 * s));
    }
}

GridFunction forward_diff_periodic(const GridFunction& f, double y) {
    require_1d(f, "forward_diff_periodic");
    const int n = f.n();
    const long shift = std::lround(y / f.h());
    GridFunction out = f;
    for (int j = 0; j < n; ++j) {
        const int js = static_cast<int>(((j + shift) % n + n) % n);
        out[j] = f[static_cast<std::size_t>(js)] - f[static_cast<std::size_t>(j)];
    }
    out.set_nonneg(false);
    return out;
}

SplitResult continuity_split(const MultiplierGrid& m, double y, const MultiplierProbe& probe,
                             const GridFunction& f, const GridFunction& g) {
    require_1d(f, "continuity_split");
    probe.validate();
    if (std::abs(y) > 1.0)
        throw std::invalid_argument("continuity_split: requires |y| <= 1");
    const int n = m.n;
    const double h = f.h();
    const double ys = std::lround(y / h) * h;  // snap to a whole number of cells
    SplitResult res;
    if (ys == 0.0) {
        res.low = GridFunction::zeros(1, n, f.side(), std::vector<double>(f.origin()));
        res.high = res.low;
        res.radius = 0.0;
        return res;
    }
    res.radius = std::pow(std::abs(ys), -probe.a());
    MultiplierGrid low = m, high = m;
    for (int i = 0; i < n; ++i) {
        const double xi = m.freq(i);
        // forward difference in the first slot: (e^{2 pi i y xi} - 1)
        const std::complex<double> shift =
            std::exp(std::complex<double>(0.0, kTwoPi * ys * xi)) - 1.0;
        const double phi = cutoff_phi(xi / res.radius, probe.cutoff_eps, probe.cutoff_order);
        for (int j = 0; j < n; ++j) {
            const std::complex<double> base = m.at(i, j) * shift;
            low.at(i, j) = base * phi;
            high.at(i, j) = base * (1.0 - phi);
        }
    }
    res.low = bilinear_multiplier_apply(low, f, g);
    res.high = bilinear_multiplier_apply(high, f, g);
    return res;
}

}  // namespace bisparse::multiplier
