#include "bisparse/measures.hpp"

#include <cmath>
#include <functional>
#include <numbers>
#include <stdexcept>

namespace bisparse::measures {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}

double DiscreteMeasure::support_diam() const {
    const std::size_t K = node_count();
    double best = 0.0;
    for (std::size_t i = 0; i < K; ++i) {
        for (std::size_t j = i + 1; j < K; ++j) {
            double d2 = 0.0;
            for (int a = 0; a < dim; ++a) {
                const double dy = y[i * dim + a] - y[j * dim + a];
                const double dz = z[i * dim + a] - z[j * dim + a];
                d2 += dy * dy + dz * dz;
            }
            best = std::max(best, d2);
        }
    }
    return std::sqrt(best);
}

double DiscreteMeasure::support_radius() const {
    double best = 0.0;
    for (std::size_t k = 0; k < node_count(); ++k) {
        double ny = 0.0, nz = 0.0;
        for (int a = 0; a < dim; ++a) {
            ny += y[k * dim + a] * y[k * dim + a];
            nz += z[k * dim + a] * z[k * dim + a];
        }
        best = std::max({best, ny, nz});
    }
    return std::sqrt(best);
}

void DiscreteMeasure::validate() const {
    if (dim < 1) throw std::invalid_argument("DiscreteMeasure: bad dimension");
    const std::size_t K = node_count();
    if (y.size() != K * dim || z.size() != K * dim)
        throw std::invalid_argument("DiscreteMeasure: node array size mismatch");
    double mass = 0.0;
    for (double wk : w) {
        if (wk < 0) throw std::invalid_argument("DiscreteMeasure: negative weight");
        mass += wk;
    }
    if (std::abs(mass - total_mass) > 1e-12 * std::max(1.0, std::abs(total_mass)))
        throw std::invalid_argument("DiscreteMeasure: total mass out of sync with weights");
}

DiscreteMeasure triangle_measure(int dim, int n_nodes) {
    if (dim != 2)
        throw std::domain_error("triangle_measure: only d = 2 is implemented");
    if (n_nodes < 8) throw std::invalid_argument("triangle_measure: need at least 8 nodes");
    const int per_branch = n_nodes / 2;
    DiscreteMeasure mu;
    mu.dim = 2;
    mu.family = "triangle";
    const double c60 = 0.5;
    const double s60 = std::sqrt(3.0) / 2.0;
    for (int branch = 0; branch < 2; ++branch) {
        const double sb = branch == 0 ? s60 : -s60;
        for (int i = 0; i < per_branch; ++i) {
            const double th = kTwoPi * (i + 0.5) / per_branch;
            const double yx = std::cos(th), yy = std::sin(th);
            mu.y.push_back(yx);
            mu.y.push_back(yy);
            // z = rotation of y by +-60 degrees, so |z| = 1 and |y - z| = 1
            mu.z.push_back(c60 * yx - sb * yy);
            mu.z.push_back(sb * yx + c60 * yy);
            mu.w.push_back(0.5 / per_branch);
        }
    }
    mu.total_mass = 0.0;
    for (double wk : mu.w) mu.total_mass += wk;
    return mu;
}

DiscreteMeasure bilinear_sphere_measure(int dim, int n_nodes) {
    DiscreteMeasure mu;
    mu.dim = dim;
    mu.family = "bisphere";
    if (dim == 1) {
        if (n_nodes < 4) throw std::invalid_argument("bilinear_sphere_measure: too few nodes");
        for (int i = 0; i < n_nodes; ++i) {
            const double th = kTwoPi * (i + 0.5) / n_nodes;
            mu.y.push_back(std::cos(th));
            mu.z.push_back(std::sin(th));
            mu.w.push_back(1.0 / n_nodes);
        }
    } else if (dim == 2) {
        // S^3 as (cos a * w1, sin a * w2), a in [0, pi/2], density sin a cos a
        int m = 2;
        while (m * m * m < n_nodes) ++m;
        const int n_alpha = m, n_th = m;
        double wsum = 0.0;
        for (int ia = 0; ia < n_alpha; ++ia) {
            const double alpha = (std::numbers::pi / 2.0) * (ia + 0.5) / n_alpha;
            const double wa = std::sin(alpha) * std::cos(alpha) * (std::numbers::pi / 2.0) / n_alpha;
            for (int i1 = 0; i1 < n_th; ++i1) {
                const double t1 = kTwoPi * (i1 + 0.5) / n_th;
                for (int i2 = 0; i2 < n_th; ++i2) {
                    const double t2 = kTwoPi * (i2 + 0.5) / n_th;
                    mu.y.push_back(std::cos(alpha) * std::cos(t1));
                    mu.y.push_back(std::cos(alpha) * std::sin(t1));
                    mu.z.push_back(std::sin(alpha) * std::cos(t2));
                    mu.z.push_back(std::sin(alpha) * std::sin(t2));
                    const double wk = wa / (n_th * n_th);
                    mu.w.push_back(wk);
                    wsum += wk;
                }
            }
        }
        for (double& wk : mu.w) wk /= wsum;  // probability normalization
    } else {
        throw std::domain_error("bilinear_sphere_measure: only d in {1,2} is implemented");
    }
    mu.total_mass = 0.0;
    for (double wk : mu.w) mu.total_mass += wk;
    return mu;
}

DiscreteMeasure product_sphere_measure(int dim, int n_nodes) {
    if (dim != 2)
        throw std::domain_error("product_sphere_measure: only d = 2 is implemented");
    int m = 2;
    while (m * m < n_nodes) ++m;
    DiscreteMeasure mu;
    mu.dim = 2;
    mu.family = "product-sphere";
    for (int i = 0; i < m; ++i) {
        const double t1 = kTwoPi * (i + 0.5) / m;
        for (int j = 0; j < m; ++j) {
            const double t2 = kTwoPi * (j + 0.5) / m;
            mu.y.push_back(std::cos(t1));
            mu.y.push_back(std::sin(t1));
            mu.z.push_back(std::cos(t2));
            mu.z.push_back(std::sin(t2));
            mu.w.push_back(1.0 / (m * m));
        }
    }
    mu.total_mass = 0.0;
    for (double wk : mu.w) mu.total_mass += wk;
    return mu;
}

NormalizedMeasure normalize_support(const DiscreteMeasure& mu) {
    if (mu.node_count() == 0) throw std::invalid_argument("normalize_support: empty measure");
    const double diam = mu.support_diam();
    NormalizedMeasure out{mu, 1.0};
    if (diam > 0.5) {
        out.factor = 0.5 / diam;
        for (double& c : out.measure.y) c *= out.factor;
        for (double& c : out.measure.z) c *= out.factor;
    }
    return out;
}

std::complex<double> fourier_transform(const DiscreteMeasure& mu, const std::vector<double>& xi,
                                       const std::vector<double>& eta) {
    if (static_cast<int>(xi.size()) != mu.dim || static_cast<int>(eta.size()) != mu.dim)
        throw std::invalid_argument("fourier_transform: frequency dimension mismatch");
    std::complex<double> acc(0.0, 0.0);
    for (std::size_t k = 0; k < mu.node_count(); ++k) {
        double phase = 0.0;
        for (int a = 0; a < mu.dim; ++a)
            phase += xi[a] * mu.y[k * mu.dim + a] + eta[a] * mu.z[k * mu.dim + a];
        acc += mu.w[k] * std::exp(std::complex<double>(0.0, -kTwoPi * phase));
    }
    return acc;
}

double integrate(const DiscreteMeasure& mu,
                 const std::function<double(const double*, const double*)>& fn) {
    double acc = 0.0;
    for (std::size_t k = 0; k < mu.node_count(); ++k)
        acc += mu.w[k] * fn(mu.y_node(k), mu.z_node(k));
    return acc;
}

}  // namespace bisparse::measures
