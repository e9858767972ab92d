#include "bisparse/operators.hpp"

#include <cmath>
#include <stdexcept>

#include "bisparse/parallel.hpp"

namespace bisparse::ops {

void OperatorConfig::validate() const {
    measure.validate();
    if (!(scale_t > 0)) throw std::invalid_argument("OperatorConfig: scale must be positive");
    if (sup_samples < 1) throw std::invalid_argument("OperatorConfig: sup_samples must be >= 1");
    if (j_min > j_max) throw std::invalid_argument("OperatorConfig: empty scale range");
}

std::vector<double> OperatorConfig::sup_scales(double t) const {
    std::vector<double> s(sup_samples);
    if (sup_samples == 1) {
        s[0] = t;
        return s;
    }
    for (int i = 0; i < sup_samples; ++i)
        s[i] = t * std::pow(2.0, static_cast<double>(i) / (sup_samples - 1));
    s[0] = t;  // keep endpoints exact
    s[sup_samples - 1] = 2.0 * t;
    return s;
}

namespace {

void check_pair(const GridFunction& f, const GridFunction& g, const DiscreteMeasure& mu) {
    if (!f.same_geometry(g))
        throw std::invalid_argument("bilinear operator: input grids must match");
    if (f.dim() != mu.dim)
        throw std::invalid_argument("bilinear operator: function/measure dimension mismatch");
}

/// Core quadrature loop with optional cutoff boxes applied at the evaluation
/// points (restrict-at-evaluation keeps support bookkeeping exact).
GridFunction quadrature_apply(const GridFunction& f, const GridFunction& g,
                              const DiscreteMeasure& mu, double t, const Box* f_cut,
                              const std::vector<Box>* g_cuts) {
    GridFunction out = GridFunction::zeros(f.dim(), f.n(), f.side(),
                                           std::vector<double>(f.origin()));
    const int d = f.dim();
    const std::size_t K = mu.node_count();
    auto* vout = out.values().data();
    parallel_for(out.size(), [&](std::size_t begin, std::size_t end) {
        double x[3], py[3], pz[3];
        for (std::size_t i = begin; i < end; ++i) {
            out.cell_center(i, x);
            double acc = 0.0;
            for (std::size_t k = 0; k < K; ++k) {
                const double* yk = mu.y_node(k);
                const double* zk = mu.z_node(k);
                for (int a = 0; a < d; ++a) {
                    py[a] = x[a] - t * yk[a];
                    pz[a] = x[a] - t * zk[a];
                }
                if (f_cut && !f_cut->contains(py)) continue;
                if (g_cuts) {
                    bool in = false;
                    for (const Box& b : *g_cuts)
                        if (b.contains(pz)) {
                            in = true;
                            break;
                        }
                    if (!in) continue;
                }
                const double fv = f.eval(py);
                if (fv == 0.0) continue;
                const double gv = g.eval(pz);
                if (gv == 0.0) continue;
                acc += mu.w[k] * fv * gv;
            }
            vout[i] = acc;
        }
    });
    out.set_nonneg(f.nonneg() && g.nonneg());
    return out;
}

}  // namespace

GridFunction scale_average(const GridFunction& f, const GridFunction& g,
                           const OperatorConfig& cfg) {
    return scale_average(f, g, cfg, cfg.scale_t);
}

GridFunction scale_average(const GridFunction& f, const GridFunction& g,
                           const OperatorConfig& cfg, double t) {
    check_pair(f, g, cfg.measure);
    if (!(t > 0)) throw std::invalid_argument("scale_average: scale must be positive");
    return quadrature_apply(f, g, cfg.measure, t, nullptr, nullptr);
}

GridFunction single_scale_maximal(const GridFunction& f, const GridFunction& g,
                                  const OperatorConfig& cfg) {
    return single_scale_maximal(f, g, cfg, cfg.scale_t);
}

GridFunction single_scale_maximal(const GridFunction& f, const GridFunction& g,
                                  const OperatorConfig& cfg, double t) {
    check_pair(f, g, cfg.measure);
    GridFunction out = GridFunction::zeros(f.dim(), f.n(), f.side(),
                                           std::vector<double>(f.origin()));
    for (double s : cfg.sup_scales(t)) {
        GridFunction layer = scale_average(f, g, cfg, s);
        for (std::size_t i = 0; i < out.size(); ++i)
            out[i] = std::max(out[i], std::abs(layer[i]));
    }
    out.set_nonneg(true);
    return out;
}

GridFunction lacunary_maximal(const GridFunction& f, const GridFunction& g,
                              const OperatorConfig& cfg) {
    cfg.validate();
    check_pair(f, g, cfg.measure);
    GridFunction out = GridFunction::zeros(f.dim(), f.n(), f.side(),
                                           std::vector<double>(f.origin()));
    for (int j = cfg.j_min; j <= cfg.j_max; ++j) {
        GridFunction layer = scale_average(f, g, cfg, std::ldexp(1.0, j));
        for (std::size_t i = 0; i < out.size(); ++i)
            out[i] = std::max(out[i], std::abs(layer[i]));
    }
    out.set_nonneg(true);
    return out;
}

GridFunction full_maximal(const GridFunction& f, const GridFunction& g,
                          const OperatorConfig& cfg) {
    cfg.validate();
    check_pair(f, g, cfg.measure);
    GridFunction out = GridFunction::zeros(f.dim(), f.n(), f.side(),
                                           std::vector<double>(f.origin()));
    for (int j = cfg.j_min; j <= cfg.j_max; ++j) {
        GridFunction layer = single_scale_maximal(f, g, cfg, std::ldexp(1.0, j));
        for (std::size_t i = 0; i < out.size(); ++i) out[i] = std::max(out[i], layer[i]);
    }
    out.set_nonneg(true);
    return out;
}

namespace {

void check_support_inside(const GridFunction& out, const DyadicCube& q, const char* what) {
    const Box qb = q.box();
    double x[3];
    for (std::size_t i = 0; i < out.size(); ++i) {
        if (out[i] == 0.0) continue;
        out.cell_center(i, x);
        if (!qb.contains(x))
            throw std::runtime_error(std::string(what) +
                                     ": internal geometry error, output mass outside the cube");
    }
}

}  // namespace

GridFunction localized_operator(const GridFunction& f, const GridFunction& g,
                                const DyadicCube& q, int j, const OperatorConfig& cfg) {
    check_pair(f, g, cfg.measure);
    const int tiles = dyadic::ipow(3, q.dim);
    if (j < 1 || j > tiles) throw std::invalid_argument("localized_operator: tile index");
    if (cfg.measure.support_radius() > 1.0)
        throw std::invalid_argument(
            "localized_operator: measure must be support-normalized (radius <= 1)");
    const double t = q.side() / 8.0;
    const Box f_cut = q.central_third();
    const std::vector<Box> g_cuts{q.tile(j)};
    GridFunction out = quadrature_apply(f, g, cfg.measure, t, &f_cut, &g_cuts);
    check_support_inside(out, q, "localized_operator");
    return out;
}

GridFunction enlarged_operator(const GridFunction& f, const GridFunction& g,
                               const DyadicCube& q, int j, const OperatorConfig& cfg) {
    check_pair(f, g, cfg.measure);
    for (const GridFunction* u : {&f, &g})
        for (double v : u->values())
            if (v < 0)
                throw std::invalid_argument("enlarged_operator: inputs must be nonnegative");
    const int tiles = dyadic::ipow(3, q.dim);
    if (j < 1 || j > tiles) throw std::invalid_argument("enlarged_operator: tile index");
    const double t = q.side() / 8.0;
    const Box f_cut = q.central_half();
    std::vector<Box> g_cuts;
    for (const auto& child : dyadic::enlarged_cover(q, j)) g_cuts.push_back(child.box());
    if (g_cuts.empty())
        return GridFunction::zeros(f.dim(), f.n(), f.side(), std::vector<double>(f.origin()));
    return quadrature_apply(f, g, cfg.measure, t, &f_cut, &g_cuts);
}

namespace {

/// Scatter the transpose of the interpolation stencil: out accumulates
/// weight * stencil(point).
void scatter(GridFunction& out, const double* p, double weight) {
    const int d = out.dim();
    const double hh = out.h();
    int base[3];
    double frac[3];
    for (int a = 0; a < d; ++a) {
        const double u = p[a] / hh - 0.5;
        const double fl = std::floor(u);
        base[a] = static_cast<int>(fl);
        frac[a] = u - fl;
        if (base[a] < -1 || base[a] > out.n() - 1) return;
    }
    for (int mask = 0; mask < (1 << d); ++mask) {
        double w = weight;
        std::size_t flat = 0;
        bool inside = true;
        for (int a = 0; a < d; ++a) {
            const int bit = (mask >> a) & 1;
            const int ia = base[a] + bit;
            w *= bit ? frac[a] : (1.0 - frac[a]);
            if (ia < 0 || ia >= out.n()) {
                inside = false;
                break;
            }
            flat = flat * out.n() + static_cast<std::size_t>(ia);
        }
        if (inside && w != 0.0) out[flat] += w;
    }
}

GridFunction transpose_slot1(const GridFunction& g, const GridFunction& h,
                             const DiscreteMeasure& mu, const GridFunction& scales,
                             bool swap_slots) {
    // Transpose of f -> L_{t(x)}(f, g) against h: for each output sample x_i
    // and node k the forward map reads f at x_i - t y_k with the multilinear
    // stencil; scattering h_i w_k g(x_i - t z_k) back through that stencil
    // realizes the adjoint kernel exactly.
    GridFunction out = GridFunction::zeros(g.dim(), g.n(), g.side(),
                                           std::vector<double>(g.origin()));
    const int d = g.dim();
    const std::size_t K = mu.node_count();
    double x[3], pg[3], pf[3];
    for (std::size_t i = 0; i < h.size(); ++i) {
        const double hv = h[i];
        if (hv == 0.0) continue;
        h.cell_center(i, x);
        const double t = scales[i];
        for (std::size_t k = 0; k < K; ++k) {
            const double* yk = mu.y_node(k);
            const double* zk = mu.z_node(k);
            const double* eval_dir = swap_slots ? yk : zk;   // slot read by forward map
            const double* scat_dir = swap_slots ? zk : yk;   // slot transposed
            for (int a = 0; a < d; ++a) {
                pg[a] = x[a] - t * eval_dir[a];
                pf[a] = x[a] - t * scat_dir[a];
            }
            const double gv = g.eval(pg);
            if (gv == 0.0) continue;
            scatter(out, pf, mu.w[k] * hv * gv);
        }
    }
    out.set_nonneg(g.nonneg() && h.nonneg());
    return out;
}

}  // namespace

GridFunction adjoint_1(const GridFunction& g, const GridFunction& h, const OperatorConfig& cfg) {
    check_pair(g, h, cfg.measure);
    GridFunction scales = GridFunction::constant(g.dim(), g.n(), g.side(), cfg.scale_t,
                                                 std::vector<double>(g.origin()));
    return transpose_slot1(g, h, cfg.measure, scales, false);
}

GridFunction adjoint_2(const GridFunction& f, const GridFunction& h, const OperatorConfig& cfg) {
    check_pair(f, h, cfg.measure);
    GridFunction scales = GridFunction::constant(f.dim(), f.n(), f.side(), cfg.scale_t,
                                                 std::vector<double>(f.origin()));
    return transpose_slot1(f, h, cfg.measure, scales, true);
}

GridFunction linearized_full(const GridFunction& f, const GridFunction& g,
                             const GridFunction& t_field, const OperatorConfig& cfg) {
    check_pair(f, g, cfg.measure);
    if (!t_field.same_geometry(f))
        throw std::invalid_argument("linearized_full: scale field grid mismatch");
    const double lo = cfg.scale_t, hi = 2.0 * cfg.scale_t;
    for (std::size_t i = 0; i < t_field.size(); ++i)
        if (t_field[i] < lo * (1 - 1e-12) || t_field[i] > hi * (1 + 1e-12))
            throw std::invalid_argument("linearized_full: scale field out of [t, 2t]");
    GridFunction out = GridFunction::zeros(f.dim(), f.n(), f.side(),
                                           std::vector<double>(f.origin()));
    const int d = f.dim();
    const std::size_t K = cfg.measure.node_count();
    parallel_for(out.size(), [&](std::size_t begin, std::size_t end) {
        double x[3], py[3], pz[3];
        for (std::size_t i = begin; i < end; ++i) {
            out.cell_center(i, x);
            const double t = t_field[i];
            double acc = 0.0;
            for (std::size_t k = 0; k < K; ++k) {
                const double* yk = cfg.measure.y_node(k);
                const double* zk = cfg.measure.z_node(k);
                for (int a = 0; a < d; ++a) {
                    py[a] = x[a] - t * yk[a];
                    pz[a] = x[a] - t * zk[a];
                }
                const double fv = f.eval(py);
                if (fv == 0.0) continue;
                acc += cfg.measure.w[k] * fv * g.eval(pz);
            }
            out[i] = acc;
        }
    });
    out.set_nonneg(f.nonneg() && g.nonneg());
    return out;
}

GridFunction linearized_adjoint_1(const GridFunction& g, const GridFunction& h,
                                  const GridFunction& t_field, const OperatorConfig& cfg) {
    check_pair(g, h, cfg.measure);
    if (!t_field.same_geometry(g))
        throw std::invalid_argument("linearized_adjoint_1: scale field grid mismatch");
    return transpose_slot1(g, h, cfg.measure, t_field, false);
}

GridFunction greedy_scale_field(const GridFunction& f, const GridFunction& g,
                                const OperatorConfig& cfg) {
    check_pair(f, g, cfg.measure);
    GridFunction best = GridFunction::constant(f.dim(), f.n(), f.side(), cfg.scale_t,
                                               std::vector<double>(f.origin()));
    GridFunction best_val = GridFunction::zeros(f.dim(), f.n(), f.side(),
                                                std::vector<double>(f.origin()));
    bool first = true;
    for (double s : cfg.sup_scales(cfg.scale_t)) {
        GridFunction layer = scale_average(f, g, cfg, s);
        for (std::size_t i = 0; i < layer.size(); ++i) {
            const double v = std::abs(layer[i]);
            if (first || v > best_val[i]) {
                best_val[i] = v;
                best[i] = s;
            }
        }
        first = false;
    }
    return best;
}

LocalizedFamily localized_family(const OperatorConfig& cfg, int j) {
    return [cfg, j](const GridFunction& f, const GridFunction& g, const DyadicCube& q) {
        return localized_operator(f, g, q, j, cfg);
    };
}

}  // namespace bisparse::ops
