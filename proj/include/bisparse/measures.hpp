#pragma once

#include <complex>
#include <functional>
#include <string>
#include <vector>

namespace bisparse::measures {

/// Quadrature representation of a compactly supported measure on pairs
/// (y, z) in R^d x R^d.  Node k contributes weight w[k] at
/// (y[k*d..k*d+d), z[k*d..k*d+d)).
struct DiscreteMeasure {
    int dim = 0;
    std::vector<double> y;   // K*d, row-major per node
    std::vector<double> z;   // K*d
    std::vector<double> w;   // K, nonnegative
    double total_mass = 0.0;
    std::string family = "custom";

    std::size_t node_count() const { return w.size(); }
    const double* y_node(std::size_t k) const { return y.data() + k * dim; }
    const double* z_node(std::size_t k) const { return z.data() + k * dim; }

    /// Max pairwise distance of nodes in R^{2d}.
    double support_diam() const;
    /// Max of |y_k| and |z_k| over nodes.
    double support_radius() const;
    void validate() const;
};

/// Natural measure on the set |y| = |z| = |y - z| = 1 in R^2 x R^2: two
/// circle branches z = R(+-60deg) y, equal branch weights, mass 1.
DiscreteMeasure triangle_measure(int dim, int n_nodes);

/// Surface measure of the unit sphere of R^{2d}, split as (y, z); mass 1.
/// d=1: circle; d=2: S^3 via (cos a * w1, sin a * w2) with weight sin a cos a.
DiscreteMeasure bilinear_sphere_measure(int dim, int n_nodes);

/// Product measure on S^{d-1} x S^{d-1}; tensor grid of circle rules, mass 1.
DiscreteMeasure product_sphere_measure(int dim, int n_nodes);

struct NormalizedMeasure {
    DiscreteMeasure measure;
    double factor = 1.0;  // applied node scale
};

/// Rescales nodes by the largest factor <= 1 making support_diam <= 1/2.
NormalizedMeasure normalize_support(const DiscreteMeasure& mu);

/// mu^(xi, eta) = sum_k w_k exp(-2 pi i (xi . y_k + eta . z_k)).
std::complex<double> fourier_transform(const DiscreteMeasure& mu, const std::vector<double>& xi,
                                       const std::vector<double>& eta);

/// Quadrature sum of fn(y, z) against the measure.
double integrate(const DiscreteMeasure& mu,
                 const std::function<double(const double*, const double*)>& fn);

}  // namespace bisparse::measures
