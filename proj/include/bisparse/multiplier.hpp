#pragma once

#include <complex>
#include <functional>
#include <optional>
#include <vector>

#include "bisparse/grid.hpp"
#include "bisparse/measures.hpp"

namespace bisparse::multiplier {

using grid::GridFunction;

/// Bilinear multiplier sampled on the discrete frequency grid of a periodic
/// 1-d grid of n cells and period equal to the grid side: entry (i, j) holds
/// m(k_i/period, k_j/period) with k = i - n/2 (centered indexing).
struct MultiplierGrid {
    int n = 0;
    double period = 1.0;
    std::vector<std::complex<double>> m;  // n*n, row-major over (k_xi, k_eta)

    static MultiplierGrid from_fn(
        int n, double period,
        const std::function<std::complex<double>(double, double)>& fn);

    std::complex<double>& at(int i, int j) { return m[static_cast<std::size_t>(i) * n + j]; }
    const std::complex<double>& at(int i, int j) const {
        return m[static_cast<std::size_t>(i) * n + j];
    }
    double freq(int i) const { return (i - n / 2) / period; }
};

/// Samples of mu-hat on the frequency grid (d = 1 measures).
MultiplierGrid multiplier_from_measure(const measures::DiscreteMeasure& mu, int n, double period);

/// T_m(f,g)(x) = sum_{xi,eta} fhat(xi) ghat(eta) m(xi,eta) e^{2 pi i x (xi+eta)}
/// on the periodized grid; returns the real part (callers feed Hermitian m).
GridFunction bilinear_multiplier_apply(const MultiplierGrid& m, const GridFunction& f,
                                       const GridFunction& g);

/// Parameters of the low/high frequency splitting of a decaying multiplier.
struct MultiplierProbe {
    double decay_s = 2.0;       // |d^a m| <~ (1+|(xi,eta)|)^{-s}
    double lq_exponent = 2.0;   // q in [1, 4)
    double cutoff_eps = 0.25;   // plateau edge of the cutoff
    int cutoff_order = 3;       // smoothstep order of the cutoff ramp
    std::optional<double> split_a;  // a in (0,1); default 1/(1+s)

    double a() const { return split_a ? *split_a : 1.0 / (1.0 + decay_s); }
    void validate() const;
};

/// Smooth cutoff with 1 on [-1+eps, 1-eps] and 0 outside [-1, 1].
double cutoff_phi(double u, double eps, int order);

struct SplitResult {
    GridFunction low;    // T_{m_A}(f, g): shift factor times m times Phi_R
    GridFunction high;   // T_{m_C}(f, g): complementary cutoff
    double radius = 0.0; // R = |y|^{-a}
};

/// Splits T_m(D_y f, g) into low/high frequency parts along Phi_R with
/// R = |y|^{-a}; low + high equals T_m(D_y f, g) exactly on the grid when
/// y is a whole number of cells (D_y f(x) = f(x+y) - f(x), circular).
SplitResult continuity_split(const MultiplierGrid& m, double y, const MultiplierProbe& probe,
                             const GridFunction& f, const GridFunction& g);

/// Circular forward difference f(x + y) - f(x) with y snapped to cells.
GridFunction forward_diff_periodic(const GridFunction& f, double y);

/// In-place radix-2 FFT utilities for the periodic machinery.
void fft(std::vector<std::complex<double>>& a, bool inverse);

}  // namespace bisparse::multiplier
