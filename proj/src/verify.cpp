#include "bisparse/verify.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace bisparse::verify {

namespace {

struct LineFit {
    double slope = 0.0;
    double r2 = 0.0;
};

LineFit least_squares(const std::vector<double>& xs, const std::vector<double>& ys) {
    const std::size_t n = xs.size();
    if (n < 2) throw std::invalid_argument("least_squares: need at least two points");
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < n; ++i) {
        mx += xs[i];
        my += ys[i];
    }
    mx /= n;
    my /= n;
    double sxx = 0, sxy = 0, syy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        sxx += (xs[i] - mx) * (xs[i] - mx);
        sxy += (xs[i] - mx) * (ys[i] - my);
        syy += (ys[i] - my) * (ys[i] - my);
    }
    LineFit fit;
    fit.slope = sxy / sxx;
    fit.r2 = syy == 0.0 ? 1.0 : (sxy * sxy) / (sxx * syy);
    return fit;
}

/// Bounding box (cell index ranges) of the nonzero cells; false if empty.
bool support_cells(const GridFunction& f, int* lo, int* hi) {
    const int d = f.dim();
    for (int a = 0; a < d; ++a) {
        lo[a] = f.n();
        hi[a] = -1;
    }
    int idx[3];
    bool any = false;
    for (std::size_t i = 0; i < f.size(); ++i) {
        if (f[i] == 0.0) continue;
        any = true;
        f.unflatten(i, idx);
        for (int a = 0; a < d; ++a) {
            lo[a] = std::min(lo[a], idx[a]);
            hi[a] = std::max(hi[a], idx[a]);
        }
    }
    return any;
}

GridFunction dilate_about_center(const GridFunction& f, double t) {
    const double c = f.side() / 2.0;
    GridFunction out = GridFunction::zeros(f.dim(), f.n(), f.side(),
                                           std::vector<double>(f.origin()));
    double x[3], xs[3];
    for (std::size_t i = 0; i < out.size(); ++i) {
        out.cell_center(i, x);
        for (int a = 0; a < f.dim(); ++a) xs[a] = c + (x[a] - c) / t;
        out[i] = f.eval(xs);
    }
    out.set_nonneg(f.nonneg());
    return out;
}

}  // namespace

DecayFit fit_decay(std::vector<double> abscissae, std::vector<double> norms) {
    if (abscissae.size() != norms.size())
        throw std::invalid_argument("fit_decay: length mismatch");
    DecayFit fit;
    // drop zero norms (exact-zero shifts contribute nothing to the log fit)
    for (std::size_t i = 0; i < abscissae.size(); ++i) {
        if (norms[i] <= 0.0 || abscissae[i] <= 0.0) continue;
        fit.abscissae.push_back(abscissae[i]);
        fit.norms.push_back(norms[i]);
    }
    std::vector<std::size_t> order(fit.abscissae.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return fit.abscissae[a] > fit.abscissae[b];
    });
    std::vector<double> xs, ys, ns;
    for (auto i : order) {
        xs.push_back(std::log(fit.abscissae[i]));
        ys.push_back(std::log(fit.norms[i]));
        ns.push_back(fit.norms[i]);
    }
    fit.abscissae.clear();
    fit.norms = ns;
    for (auto x : xs) fit.abscissae.push_back(std::exp(x));
    for (std::size_t i = 0; i + 1 < ns.size(); ++i)
        if (ns[i + 1] > ns[i] * (1.0 + 1e-9)) fit.monotone = false;
    const LineFit lf = least_squares(xs, ys);
    fit.fitted_eta = lf.slope;
    fit.r2 = lf.r2;
    return fit;
}

ScalingReport scaling_law_experiment(const DiscreteMeasure& mu, const GridFunction& f,
                                     const GridFunction& g, double p, double q, double r,
                                     const std::vector<double>& t_list) {
    if (t_list.size() < 2)
        throw std::invalid_argument("scaling_law_experiment: need at least two scales");
    ScalingReport rep;
    rep.predicted = f.dim() * (1.0 / r - 1.0 / p - 1.0 / q);
    ops::OperatorConfig cfg{mu, 1.0, 1, 0, 0};
    const double reach = mu.support_radius();
    int lo[3], hi[3];
    for (double t : t_list) {
        const GridFunction ft = dilate_about_center(f, t);
        const GridFunction gt = dilate_about_center(g, t);
        // supports plus the operator reach t * radius must stay inside
        for (const GridFunction* u : {&ft, &gt}) {
            if (!support_cells(*u, lo, hi))
                throw std::invalid_argument("scaling_law_experiment: vanishing input");
            const double pad = t * reach + 2.0 * u->h();
            for (int a = 0; a < u->dim(); ++a) {
                const double xlo = lo[a] * u->h() - pad;
                const double xhi = (hi[a] + 1) * u->h() + pad;
                if (xlo < 0.0 || xhi > u->side())
                    throw std::invalid_argument(
                        "scaling_law_experiment: rescaled support escapes the grid");
            }
        }
        const GridFunction out = ops::scale_average(ft, gt, cfg, t);
        rep.t_values.push_back(t);
        rep.norms.push_back(out.lp_norm(r));
        rep.normalized.push_back(out.lp_norm(r) / (ft.lp_norm(p) * gt.lp_norm(q)));
    }
    std::vector<double> lt, ln, lnn;
    for (std::size_t i = 0; i < rep.t_values.size(); ++i) {
        lt.push_back(std::log(rep.t_values[i]));
        ln.push_back(std::log(rep.norms[i]));
        lnn.push_back(std::log(rep.normalized[i]));
    }
    rep.raw_slope = least_squares(lt, ln).slope;
    rep.normalized_slope = least_squares(lt, lnn).slope;
    return rep;
}

DecayFit continuity_experiment(ContinuityOperator kind, const DiscreteMeasure& mu,
                               const ContinuityParams& params, const std::vector<double>& y_list,
                               ContinuitySlot which, std::uint64_t seed) {
    for (double y : y_list)
        if (y > params.t)
            throw std::invalid_argument("continuity_experiment: requires |y| <= t");
    const int d = mu.dim;
    const double side = 8.0 * params.t;
    grid::TestFunctionParams tp;
    tp.count = 5;
    const auto kind_f = params.smooth_inputs ? grid::TestFunctionKind::SmoothBumpMixture
                                             : grid::TestFunctionKind::IndicatorUnionOfCubes;
    GridFunction f = grid::random_test_function(seed, kind_f, tp, d, params.n, side);
    GridFunction g = grid::random_test_function(seed + 1, kind_f, tp, d, params.n, side);
    ops::OperatorConfig cfg{mu, params.t, params.sup_samples, 0, 0};
    auto apply = [&](const GridFunction& a, const GridFunction& b) {
        return kind == ContinuityOperator::SingleScale ? ops::scale_average(a, b, cfg)
                                                       : ops::single_scale_maximal(a, b, cfg);
    };
    const double margin = 2.0 * params.t * mu.support_radius() + params.t + 2.0 * f.h();
    const double base_norm = apply(f, g).interior_lr_norm(params.r, margin);

    auto shifted = [&](const GridFunction& u, double y) {
        std::vector<double> shift(d, 0.0);
        shift[0] = y;
        GridFunction out = u;
        double x[3], xs[3];
        for (std::size_t i = 0; i < u.size(); ++i) {
            u.cell_center(i, x);
            for (int a = 0; a < d; ++a) xs[a] = x[a] - shift[a];
            out[i] = u.eval(xs);
        }
        return out;
    };

    std::vector<double> abscissae, norms;
    bool bound_ok = true;
    for (double y : y_list) {
        if (y == 0.0) continue;
        std::vector<double> shift(d, 0.0);
        shift[0] = y;
        const GridFunction df = grid::translate_diff(f, shift);
        const GridFunction dg = grid::translate_diff(g, shift);
        GridFunction out = [&] {
            switch (which) {
                case ContinuitySlot::First: return apply(df, g);
                case ContinuitySlot::Second: return apply(f, dg);
                default: return apply(df, dg);
            }
        }();
        const double norm = out.interior_lr_norm(params.r, margin);
        // trivial triangle bound: the difference splits into plain applications
        double cap = base_norm;
        const GridFunction tf = shifted(f, y);
        const GridFunction tg = shifted(g, y);
        switch (which) {
            case ContinuitySlot::First:
                cap += apply(tf, g).interior_lr_norm(params.r, margin);
                break;
            case ContinuitySlot::Second:
                cap += apply(f, tg).interior_lr_norm(params.r, margin);
                break;
            default:
                cap += apply(tf, g).interior_lr_norm(params.r, margin) +
                       apply(f, tg).interior_lr_norm(params.r, margin) +
                       apply(tf, tg).interior_lr_norm(params.r, margin);
                break;
        }
        if (norm > cap * (1.0 + 1e-9) + 1e-12) bound_ok = false;
        abscissae.push_back(y);
        norms.push_back(norm);
    }
    DecayFit fit = fit_decay(abscissae, norms);
    fit.triangle_bound_ok = bound_ok;
    return fit;
}

SparseRatioStats sparse_ratio_experiment(const DiscreteMeasure& mu,
                                         const exponents::ExponentTriple& x,
                                         const SparseRatioParams& params) {
    const auto adm = exponents::admissibility(x);
    if (!adm.sparse_hypothesis())
        throw std::invalid_argument(
            "sparse_ratio_experiment: triple must satisfy r >= p, q and r > 1");
    if (x.inv_p <= 0 || x.inv_q <= 0 || x.inv_r <= 0)
        throw std::invalid_argument("sparse_ratio_experiment: exponents must be finite");
    const double p = 1.0 / x.inv_p.convert_to<double>();
    const double q = 1.0 / x.inv_q.convert_to<double>();
    const double inv_r = x.inv_r.convert_to<double>();
    const double r_prime = 1.0 / (1.0 - inv_r);

    SparseRatioStats stats;
    ops::OperatorConfig cfg{mu, 1.0, 1, params.j_min, params.j_max};
    grid::TestFunctionParams ind;
    ind.count = 5;
    ind.min_level = 1;
    ind.max_level = 5;
    grid::TestFunctionParams bumps;
    bumps.count = 4;
    for (int trial = 0; trial < params.trials; ++trial) {
        SparseRatioTrial row;
        row.trial = trial;
        row.seed = params.seed + 1000ULL * static_cast<std::uint64_t>(trial);
        GridFunction f = grid::random_test_function(
            row.seed, grid::TestFunctionKind::IndicatorUnionOfCubes, ind, params.dim,
            params.grid_n);
        GridFunction g = grid::random_test_function(
            row.seed + 1, grid::TestFunctionKind::IndicatorUnionOfCubes, ind, params.dim,
            params.grid_n);
        GridFunction h = grid::random_test_function(
            row.seed + 2, grid::TestFunctionKind::SmoothBumpMixture, bumps, params.dim,
            params.grid_n);
        double hmax = h.sup_norm();
        if (hmax > 0)
            for (auto& v : h.values()) v /= hmax;  // bounded by 1

        const GridFunction lac = ops::lacunary_maximal(f, g, cfg);
        row.numerator = grid::inner_product(lac, h);
        const sparse::DyadicTree tree = sparse::DyadicTree::of_grid(f);
        const sparse::SparseCollection S =
            sparse::build_sparse_family(f, g, h, tree, p, q, r_prime);
        row.form = sparse::sparse_form(S, f, g, h, p, q, r_prime);
        row.sparsity_ok = sparse::verify_sparsity(S).pass;
        if (!row.sparsity_ok) ++stats.violations;
        if (row.form == 0.0) {
            row.skipped = true;
            ++stats.skipped;
        } else {
            row.ratio = row.numerator / row.form;
        }
        stats.trials.push_back(std::move(row));
    }
    std::vector<double> ratios;
    for (const auto& t : stats.trials)
        if (!t.skipped) ratios.push_back(t.ratio);
    if (!ratios.empty()) {
        stats.max_ratio = *std::max_element(ratios.begin(), ratios.end());
        std::nth_element(ratios.begin(), ratios.begin() + ratios.size() / 2, ratios.end());
        stats.median_ratio = ratios[ratios.size() / 2];
    }
    return stats;
}

void WeightVector::validate() const {
    if (!w1.same_geometry(w2)) throw std::invalid_argument("WeightVector: grids must match");
    for (const GridFunction* w : {&w1, &w2})
        for (double v : w->values())
            if (!(v > 0)) throw std::invalid_argument("WeightVector: weights must be positive");
    if (!(p1 > 0) || !(p2 > 0) || !(r1 >= 1) || !(r2 >= 1) || !(r3 >= 1))
        throw std::invalid_argument("WeightVector: bad exponents");
    if (1.0 / r1 + 1.0 / r2 + 1.0 / r3 <= 1.0)
        throw std::invalid_argument("WeightVector: requires sum 1/r_i > 1");
}

double WeightVector::holder_p() const { return 1.0 / (1.0 / p1 + 1.0 / p2); }

double muckenhoupt_constant(const WeightVector& wv, const std::vector<dyadic::DyadicCube>& cubes) {
    wv.validate();
    if (cubes.empty()) throw std::invalid_argument("muckenhoupt_constant: empty cube family");
    const double p = wv.holder_p();
    const double r3p = wv.r3 / (wv.r3 - 1.0);
    if (std::abs(r3p - p) < 1e-14 || std::abs(wv.r1 - p) < 1e-14 || std::abs(wv.r2 - p) < 1e-14)
        throw std::invalid_argument("muckenhoupt_constant: degenerate exponent relation");
    const double e_w = r3p / (r3p - p);
    const double e_1 = wv.r1 / (wv.r1 - p);
    const double e_2 = wv.r2 / (wv.r2 - p);
    // powered weights first; the exponents may be negative
    GridFunction pw_w = wv.w1, pw_1 = wv.w1, pw_2 = wv.w2;
    for (std::size_t i = 0; i < pw_w.size(); ++i) {
        const double w = std::pow(wv.w1[i], p / wv.p1) * std::pow(wv.w2[i], p / wv.p2);
        pw_w[i] = std::pow(w, e_w);
        pw_1[i] = std::pow(wv.w1[i], e_1);
        pw_2[i] = std::pow(wv.w2[i], e_2);
    }
    const grid::CubeAverages avg_w(pw_w, 1.0);
    const grid::CubeAverages avg_1(pw_1, 1.0);
    const grid::CubeAverages avg_2(pw_2, 1.0);
    double best = 0.0;
    for (const auto& qc : cubes) {
        const double val = std::pow(avg_w.average(qc), 1.0 / p - 1.0 / r3p) *
                           std::pow(avg_1.average(qc), 1.0 / wv.r1 - 1.0 / p) *
                           std::pow(avg_2.average(qc), 1.0 / wv.r2 - 1.0 / p);
        best = std::max(best, val);
    }
    return best;
}

exponents::Rat muckenhoupt_homogeneity(const exponents::Rat& p1, const exponents::Rat& p2,
                                       const exponents::Rat& r1, const exponents::Rat& r2,
                                       const exponents::Rat& r3) {
    using exponents::Rat;
    const Rat inv_p = 1 / p1 + 1 / p2;
    const Rat p = 1 / inv_p;
    const Rat r3p = r3 / (r3 - 1);
    // scaling both weights by c scales w by c^{p(1/p1+1/p2)} = c
    const Rat w_term = (r3p / (r3p - p)) * (1 / p - 1 / r3p);
    const Rat w1_term = (r1 / (r1 - p)) * (1 / r1 - 1 / p);
    const Rat w2_term = (r2 / (r2 - p)) * (1 / r2 - 1 / p);
    return w_term + w1_term + w2_term;
}

double lemma3_embedding_ratio(const GridFunction& f, double p, double r) {
    if (!(p > r)) throw std::invalid_argument("lemma3_embedding_ratio: requires p > r");
    const auto q0 = f.root_cube();
    const double lor = grid::lorentz_norm(f, q0, r);
    const double avg = grid::lp_average(f, q0, p);
    if (avg == 0.0) return 0.0;
    return lor / avg;
}

double lemma4_levelset_ratio(const GridFunction& f, double r) {
    const auto q0 = f.root_cube();
    const double lor = grid::lorentz_norm(f, q0, r);
    if (lor == 0.0) return 0.0;
    const auto dec = grid::level_sets(f);
    double sum = 0.0;
    const double total = static_cast<double>(f.size());
    for (std::size_t s = 0; s < dec.sets.size(); ++s) {
        double count = 0;
        for (auto b : dec.sets[s]) count += b;
        sum += std::ldexp(1.0, dec.exponents[s]) * std::pow(count / total, 1.0 / r);
    }
    return sum / lor;
}

double lemma5_ratio(const sparse::SparseCollection& S, const GridFunction& phi, double s,
                    double t) {
    if (!(s < t)) throw std::invalid_argument("lemma5_ratio: requires s < t");
    if (!(s >= 1)) throw std::invalid_argument("lemma5_ratio: requires s >= 1");
    const grid::CubeAverages avg(phi, s);
    double lhs = 0.0;
    for (const auto& qc : S.cubes) {
        double vol = 1.0;
        for (int a = 0; a < S.dim; ++a) vol *= qc.side();
        lhs += vol * avg.average(qc);
    }
    const auto q0 = phi.root_cube();
    double vol0 = 1.0;
    for (int a = 0; a < phi.dim(); ++a) vol0 *= phi.side();
    const double rhs = vol0 * grid::lp_average(phi, q0, t);
    if (rhs == 0.0) return 0.0;
    return lhs / rhs;
}

}  // namespace bisparse::verify
