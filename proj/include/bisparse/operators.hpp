#pragma once

#include <functional>
#include <vector>

#include "bisparse/dyadic.hpp"
#include "bisparse/grid.hpp"
#include "bisparse/measures.hpp"

namespace bisparse::ops {

using dyadic::Box;
using dyadic::DyadicCube;
using grid::GridFunction;
using measures::DiscreteMeasure;

struct OperatorConfig {
    DiscreteMeasure measure;
    double scale_t = 1.0;
    int sup_samples = 17;   // discretization of s in [t, 2t]
    int j_min = 0;
    int j_max = 0;

    void validate() const;
    /// Geometric sample points of [t, 2t].
    std::vector<double> sup_scales(double t) const;
};

/// L_t(f,g)(x) = sum_k w_k f(x - t y_k) g(x - t z_k); output on f's grid.
GridFunction scale_average(const GridFunction& f, const GridFunction& g,
                           const OperatorConfig& cfg);
GridFunction scale_average(const GridFunction& f, const GridFunction& g,
                           const OperatorConfig& cfg, double t);

/// sup over s in [t, 2t] (geometric samples) of |L_s(f,g)|.
GridFunction single_scale_maximal(const GridFunction& f, const GridFunction& g,
                                  const OperatorConfig& cfg);
GridFunction single_scale_maximal(const GridFunction& f, const GridFunction& g,
                                  const OperatorConfig& cfg, double t);

/// max over j in [j_min, j_max] of |L_{2^j}(f,g)|.
GridFunction lacunary_maximal(const GridFunction& f, const GridFunction& g,
                              const OperatorConfig& cfg);

/// max over j of the single-scale maximal operator at t = 2^j.
GridFunction full_maximal(const GridFunction& f, const GridFunction& g,
                          const OperatorConfig& cfg);

/// L_Q^j = L_{l(Q)/8}(1_{(1/3)Q} f, 1_{tile_j(Q)} g); support inside Q is
/// checked and violations raise a geometry error.  Cutoffs are applied at
/// the quadrature evaluation points.
GridFunction localized_operator(const GridFunction& f, const GridFunction& g,
                                const DyadicCube& q, int j, const OperatorConfig& cfg);

/// S_{Q,j} = L_{l(Q)/8}(1_{(1/2)Q} f, 1_{cover_j(Q)} g) >= L_Q^j for f,g >= 0.
GridFunction enlarged_operator(const GridFunction& f, const GridFunction& g,
                               const DyadicCube& q, int j, const OperatorConfig& cfg);

/// First adjoint of the scale-t operator: the exact transpose of the
/// discrete f -> L_t(f,g) map, realizing the kernel
/// x -> sum_k w_k g(x - t(z_k - y_k)) h(x + t y_k) on scattered sample
/// points so that <L_t(f,g), h> = <f, adjoint_1(g,h)> holds to rounding.
GridFunction adjoint_1(const GridFunction& g, const GridFunction& h, const OperatorConfig& cfg);

/// Second adjoint: kernel x -> sum_k w_k f(x - t(y_k - z_k)) h(x + t z_k).
GridFunction adjoint_2(const GridFunction& f, const GridFunction& h, const OperatorConfig& cfg);

/// Pointwise L_{t(x)}(f,g)(x) for a measurable scale field with values in
/// [cfg.scale_t, 2 cfg.scale_t].
GridFunction linearized_full(const GridFunction& f, const GridFunction& g,
                             const GridFunction& t_field, const OperatorConfig& cfg);

/// Exact discrete transpose of linearized_full in its first slot.
GridFunction linearized_adjoint_1(const GridFunction& g, const GridFunction& h,
                                  const GridFunction& t_field, const OperatorConfig& cfg);

/// Scale field x -> argmax_s |L_s(f,g)(x)| over cfg's sample set, so that
/// linearized_full with this field reproduces single_scale_maximal.
GridFunction greedy_scale_field(const GridFunction& f, const GridFunction& g,
                                const OperatorConfig& cfg);

using LocalizedFamily =
    std::function<GridFunction(const GridFunction&, const GridFunction&, const DyadicCube&)>;

/// (f, g, Q) -> L_Q^j for a fixed tile index j.
LocalizedFamily localized_family(const OperatorConfig& cfg, int j);

}  // namespace bisparse::ops
