// Acceptance suite: runs every acceptance criterion at its stated tolerance
// and prints one pass/fail line per criterion.  Exit code 0 iff all pass.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <vector>

#include "bisparse/exponents.hpp"
#include "bisparse/grid.hpp"
#include "bisparse/measures.hpp"
#include "bisparse/multiplier.hpp"
#include "bisparse/operators.hpp"
#include "bisparse/sparse.hpp"
#include "bisparse/verify.hpp"

using namespace bisparse;
using exponents::Rat;
using grid::GridFunction;

namespace {

struct Criterion {
    const char* name;
    double budget_s;
    bool (*run)(std::string& detail);
};

GridFunction smooth(std::uint64_t seed, int dim, int n, double side = 1.0) {
    grid::TestFunctionParams p;
    p.count = 4;
    return grid::random_test_function(seed, grid::TestFunctionKind::SmoothBumpMixture, p, dim, n,
                                      side);
}

// ---------------------------------------------------------------- criterion 1
bool criterion_polytopes(std::string& detail) {
    using exponents::RatVec;
    const auto tri = exponents::region(exponents::RegionName::TriangleFull, 10, 5);
    if (tri.parts.size() != 1) return false;
    std::vector<RatVec> expect = {
        {Rat(0), Rat(0), Rat(0)},
        {Rat(4, 5), Rat(1, 10), Rat(1, 10)},
        {Rat(1, 10), Rat(4, 5), Rat(1, 10)},
        {Rat(81, 101), Rat(9, 101), Rat(9, 101)},
        {Rat(9, 101), Rat(81, 101), Rat(9, 101)},
        {Rat(288, 535), Rat(288, 535), Rat(288, 535)},
    };
    if (!tri.parts[0].same_vertex_set(expect)) {
        detail = "triangle-full vertex set mismatch";
        return false;
    }
    tri.parts[0].cross_check();

    const auto bi = exponents::region(exponents::RegionName::BisphereFull, 10);
    if (bi.parts.size() != 2) return false;
    const Rat t(1, 10), nn(9, 10), hh(19, 20), f4(4, 45), e8(8, 9);
    std::vector<RatVec> hull_a = {{Rat(1), nn, nn}, {nn, Rat(1), nn}, {nn, Rat(1), t},
                                  {Rat(1), nn, t},  {Rat(1), t, t},   {t, Rat(1), t},
                                  {t, t, t},        {hh, hh, hh}};
    std::vector<RatVec> hull_b = {{Rat(0), Rat(0), Rat(0)}, {Rat(0), Rat(1), Rat(0)},
                                  {Rat(1), Rat(0), Rat(0)}, {e8, Rat(1), f4},
                                  {Rat(1), e8, f4},         {Rat(1), f4, f4},
                                  {f4, Rat(1), f4},         {f4, f4, f4}};
    if (!bi.parts[0].same_vertex_set(hull_a) || !bi.parts[1].same_vertex_set(hull_b)) {
        detail = "bisphere-full hull mismatch";
        return false;
    }
    bi.parts[0].cross_check();
    bi.parts[1].cross_check();
    return true;
}

// ---------------------------------------------------------------- criterion 2
bool criterion_dyadic(std::string& detail) {
    std::mt19937_64 rng(2024);
    int checks = 0;
    for (int dim : {1, 2}) {
        const auto fam = dyadic::shifted_lattices(dim, 1.0);
        std::uniform_int_distribution<int> gen_dist(-15, 15);
        std::uniform_int_distribution<std::int64_t> k_dist(-500, 500);
        std::uniform_int_distribution<int> id_dist(1, fam.count());
        std::uniform_real_distribution<double> x_dist(-4.0, 4.0);
        for (int trial = 0; trial < 2500; ++trial) {
            // child partition
            std::vector<std::int64_t> k(dim);
            for (auto& c : k) c = k_dist(rng);
            const auto base = fam.base_cube(gen_dist(rng), k);
            const auto q = fam.tripled(base);
            double vol = 0.0;
            const auto kids = q.children();
            for (const auto& c : kids) {
                if (!q.contains(c) || !(c.parent() == q)) {
                    detail = "child containment";
                    return false;
                }
                double v = 1.0;
                for (int a = 0; a < dim; ++a) v *= c.side();
                vol += v;
            }
            double qvol = 1.0;
            for (int a = 0; a < dim; ++a) qvol *= q.side();
            if (std::abs(vol - qvol) > 1e-12 * qvol) {
                detail = "child measures";
                return false;
            }
            ++checks;
            // lattice uniqueness of the tripling
            int members = 0;
            for (int id = 1; id <= fam.count(); ++id)
                if (fam.member(q, id)) ++members;
            if (members != 1) {
                detail = "tripling lattice uniqueness";
                return false;
            }
            ++checks;
            // nesting trichotomy inside one lattice
            const int id = id_dist(rng);
            double xa[2] = {x_dist(rng), x_dist(rng)};
            double xb[2] = {x_dist(rng), x_dist(rng)};
            const auto a = fam.cube_at(xa, gen_dist(rng) % 5, id);
            const auto b = fam.cube_at(xb, gen_dist(rng) % 5, id);
            const int rel = (a.contains(b) ? 1 : 0) + (b.contains(a) ? 1 : 0) +
                            (a.disjoint_from(b) ? 1 : 0);
            if (a == b ? rel != 2 : rel != 1) {
                detail = "nesting trichotomy";
                return false;
            }
            ++checks;
            // enlarged-cover containment
            const int tiles = dyadic::ipow(3, dim);
            const int j = 1 + static_cast<int>(rng() % tiles);
            const auto cover = dyadic::enlarged_cover(q, j);
            if (cover.empty()) {
                detail = "cover empty";
                return false;
            }
            const auto tile = q.tile(j);
            std::uniform_real_distribution<double> unit(0.0, 1.0);
            for (int probe = 0; probe < 8; ++probe) {
                double x[2];
                for (int a2 = 0; a2 < dim; ++a2)
                    x[a2] = tile.lo[a2] + unit(rng) * (tile.hi[a2] - tile.lo[a2]);
                bool covered = false;
                for (const auto& c : cover) covered = covered || c.contains_point(x);
                if (!covered) {
                    detail = "cover containment";
                    return false;
                }
            }
            ++checks;
        }
    }
    if (checks < 10000) {
        detail = "insufficient randomized checks";
        return false;
    }
    return true;
}

// ---------------------------------------------------------------- criterion 3
bool criterion_operator_oracles(std::string& detail) {
    // unit inputs for the three measure families
    struct Fam {
        measures::DiscreteMeasure mu;
        int dim;
    };
    std::vector<Fam> fams;
    fams.push_back({measures::bilinear_sphere_measure(1, 128), 1});
    fams.push_back({measures::triangle_measure(2, 128), 2});
    fams.push_back({measures::product_sphere_measure(2, 144), 2});
    for (auto& fam : fams) {
        const int n = fam.dim == 1 ? 512 : 128;
        const GridFunction one = GridFunction::constant(fam.dim, n, 4.0, 1.0);
        ops::OperatorConfig cfg{fam.mu, 1.0, 1, 0, 0};
        const GridFunction out = ops::scale_average(one, one, cfg);
        const int mc = static_cast<int>(std::ceil((1.0 + 3 * one.h()) / one.h()));
        int idx[3];
        for (std::size_t i = 0; i < out.size(); ++i) {
            out.unflatten(i, idx);
            bool interior = true;
            for (int a = 0; a < fam.dim; ++a)
                if (idx[a] < mc || idx[a] >= n - mc) interior = false;
            if (interior && std::abs(out[i] - 1.0) > 1e-6) {
                detail = "unit average deviates on " + fam.mu.family;
                return false;
            }
        }
    }
    // product factorization
    {
        const auto mu = measures::product_sphere_measure(2, 144);
        const int m = 12, n = 64;
        ops::OperatorConfig cfg{mu, 0.25, 1, 0, 0};
        const GridFunction f = smooth(81, 2, n, 2.0);
        const GridFunction g = smooth(82, 2, n, 2.0);
        const GridFunction joint = ops::scale_average(f, g, cfg);
        auto circle_avg = [&](const GridFunction& u) {
            GridFunction out = GridFunction::zeros(2, n, 2.0);
            double x[2], p[2];
            for (std::size_t i = 0; i < out.size(); ++i) {
                out.cell_center(i, x);
                double acc = 0.0;
                for (int k = 0; k < m; ++k) {
                    const double th = 2.0 * M_PI * (k + 0.5) / m;
                    p[0] = x[0] - 0.25 * std::cos(th);
                    p[1] = x[1] - 0.25 * std::sin(th);
                    acc += u.eval(p);
                }
                out[i] = acc / m;
            }
            return out;
        };
        const GridFunction af = circle_avg(f), ag = circle_avg(g);
        for (std::size_t i = 0; i < joint.size(); ++i)
            if (std::abs(joint[i] - af[i] * ag[i]) > 1e-6) {
                detail = "product factorization";
                return false;
            }
    }
    // adjoint and linearized duality, 50 random triples over d in {1,2}
    std::mt19937_64 rng(99);
    for (int trial = 0; trial < 50; ++trial) {
        const int dim = trial % 2 == 0 ? 1 : 2;
        const auto mu = dim == 1 ? measures::bilinear_sphere_measure(1, 48)
                                 : measures::triangle_measure(2, 48);
        const int n = dim == 1 ? 256 : 32;
        ops::OperatorConfig cfg{mu, 0.25, 1, 0, 0};
        const GridFunction f = smooth(rng(), dim, n);
        const GridFunction g = smooth(rng(), dim, n);
        const GridFunction h = smooth(rng(), dim, n);
        const double lhs = grid::inner_product(ops::scale_average(f, g, cfg), h);
        const double rhs = grid::inner_product(f, ops::adjoint_1(g, h, cfg));
        const double scale = std::max({std::abs(lhs), std::abs(rhs), 1e-30});
        if (std::abs(lhs - rhs) / scale > 1e-6) {
            detail = "adjoint duality";
            return false;
        }
        // linearized duality with a random scale field in [t, 2t]
        GridFunction tf = GridFunction::constant(dim, n, 1.0, 0.25);
        std::uniform_real_distribution<double> sdist(0.25, 0.5);
        for (auto& v : tf.values()) v = sdist(rng);
        const double llhs = grid::inner_product(ops::linearized_full(f, g, tf, cfg), h);
        const double lrhs = grid::inner_product(f, ops::linearized_adjoint_1(g, h, tf, cfg));
        const double lscale = std::max({std::abs(llhs), std::abs(lrhs), 1e-30});
        if (std::abs(llhs - lrhs) / lscale > 1e-6) {
            detail = "linearized duality";
            return false;
        }
    }
    return true;
}

// ---------------------------------------------------------------- criterion 4
bool criterion_scaling(std::string& detail) {
    struct Case {
        int dim;
        measures::DiscreteMeasure mu;
        std::vector<double> ts;
        int n;
        double sigma;
    };
    std::vector<Case> cases;
    cases.push_back({1,
                     measures::normalize_support(measures::bilinear_sphere_measure(1, 96)).measure,
                     {0.25, 0.5, 1.0, 2.0, 4.0},
                     2048,
                     0.35});
    cases.push_back({2,
                     measures::normalize_support(measures::triangle_measure(2, 96)).measure,
                     {0.5, 1.0, 2.0},
                     256,
                     0.5});
    const std::vector<std::array<double, 3>> triples = {{2, 2, 2}, {2, 2, 1.5}, {3, 3, 2}};
    for (auto& c : cases) {
        const double side = 16.0;
        const double sg = c.sigma;
        GridFunction gauss = GridFunction::from_fn(c.dim, c.n, side, [&](const double* x) {
            double d2 = 0.0;
            for (int a = 0; a < c.dim; ++a) d2 += (x[a] - side / 2) * (x[a] - side / 2);
            return std::exp(-d2 / (2 * sg * sg));
        });
        for (const auto& tr : triples) {
            const auto rep =
                verify::scaling_law_experiment(c.mu, gauss, gauss, tr[0], tr[1], tr[2], c.ts);
            if (std::abs(rep.normalized_slope - rep.predicted) >= 0.1) {
                detail = "slope off for d=" + std::to_string(c.dim);
                return false;
            }
        }
    }
    return true;
}

// ---------------------------------------------------------------- criterion 5
bool criterion_continuity(std::string& detail) {
    const auto mu = measures::bilinear_sphere_measure(1, 96);
    verify::ContinuityParams params;
    params.n = 1024;
    params.nodes = 96;
    params.sup_samples = 7;
    const std::vector<double> ys = {0.25, 0.125, 0.0625, 0.03125, 0.015625};
    for (auto kind : {verify::ContinuityOperator::SingleScale,
                      verify::ContinuityOperator::SingleScaleMaximal}) {
        for (auto slot : {verify::ContinuitySlot::First, verify::ContinuitySlot::Second}) {
            for (std::uint64_t seed : {101ULL, 202ULL, 303ULL}) {
                const auto fit = verify::continuity_experiment(kind, mu, params, ys, slot, seed);
                if (!(fit.fitted_eta > 0.0) || fit.r2 < 0.9) {
                    detail = "eta=" + std::to_string(fit.fitted_eta) +
                             " r2=" + std::to_string(fit.r2);
                    return false;
                }
            }
        }
    }
    return true;
}

// ---------------------------------------------------------------- criterion 6
bool criterion_cz_stopping(std::string& detail) {
    const int n = 512;
    std::mt19937_64 rng(606);
    grid::TestFunctionParams ind;
    ind.count = 4;
    ind.max_level = 4;
    const double c0 = sparse::choose_C0(2, 2, 2).C0;
    // CZ: mean-zero residuals and the explicit good-part bound
    for (int trial = 0; trial < 25; ++trial) {
        GridFunction f = grid::random_test_function(
            rng(), grid::TestFunctionKind::IndicatorUnionOfCubes, ind, 1, n);
        for (auto& v : f.values()) v *= 2.0;
        f[static_cast<std::size_t>(rng() % n)] += 30.0;
        f.set_nonneg(true);
        const auto tree = sparse::DyadicTree::of_grid(f);
        const auto dec = sparse::cz_decompose(f, tree, 2.0, c0);
        for (const auto& P : dec.bad_cubes) {
            const auto range = grid::cube_cells(f, P);
            double piece = 0.0, mass = 0.0;
            for (std::int64_t i = range.start[0]; i < range.start[0] + range.width; ++i) {
                piece += dec.bad_pieces.at(P.generation)[static_cast<std::size_t>(i)];
                mass += f[static_cast<std::size_t>(i)];
            }
            if (std::abs(piece) > 1e-12 * std::max(1.0, mass)) {
                detail = "CZ mean zero";
                return false;
            }
        }
        const double bound =
            std::pow(2.0, 0.5) * 2.0 * c0 * grid::lp_average(f, tree.root, 2.0);
        if (dec.good.sup_norm() > bound + 1e-9) {
            detail = "good-part bound";
            return false;
        }
    }
    // stopping measure bound across 100 random indicator triples
    for (int trial = 0; trial < 100; ++trial) {
        const GridFunction f = grid::random_test_function(
            rng(), grid::TestFunctionKind::IndicatorUnionOfCubes, ind, 1, n);
        const GridFunction g = grid::random_test_function(
            rng(), grid::TestFunctionKind::IndicatorUnionOfCubes, ind, 1, n);
        const GridFunction h = grid::random_test_function(
            rng(), grid::TestFunctionKind::IndicatorUnionOfCubes, ind, 1, n);
        const auto tree = sparse::DyadicTree::of_grid(f);
        const auto res = sparse::stopping_family(f, g, h, tree, sparse::choose_C0(2, 2, 2));
        double stopped = 0.0;
        for (const auto& q : res.stopping) stopped += q.side();
        if (stopped > 0.5 + 1e-12) {
            detail = "stopping measure bound";
            return false;
        }
    }
    // linearization sandwich, 25 trials
    const auto mu = measures::normalize_support(measures::bilinear_sphere_measure(1, 64)).measure;
    ops::OperatorConfig cfg{mu, 1.0, 1, 0, 0};
    const auto family = ops::localized_family(cfg, 2);
    for (int trial = 0; trial < 25; ++trial) {
        const GridFunction f = grid::random_test_function(
            rng(), grid::TestFunctionKind::IndicatorUnionOfCubes, ind, 1, n);
        const GridFunction g = grid::random_test_function(
            rng(), grid::TestFunctionKind::IndicatorUnionOfCubes, ind, 1, n);
        grid::TestFunctionParams hb;
        GridFunction h = grid::random_test_function(
            rng(), grid::TestFunctionKind::SmoothBumpMixture, hb, 1, n);
        const double hm = h.sup_norm();
        if (hm > 0)
            for (auto& v : h.values()) v /= hm;
        const auto tree = sparse::DyadicTree::of_grid(f);
        const auto stop = sparse::stopping_family(f, g, h, tree, sparse::choose_C0(2, 2, 2));
        const auto lin = sparse::linearize(stop.d0, f, g, family);
        double sum = 0.0;
        for (std::size_t c = 0; c < lin.cubes.size(); ++c)
            sum += grid::inner_product(lin.values[c], sparse::h_piece(lin, c, h));
        const double mid = grid::inner_product(lin.sup, h);
        if (!(sum <= mid + 1e-9 && mid <= 2.0 * sum + 1e-9)) {
            detail = "linearization sandwich";
            return false;
        }
    }
    return true;
}

// ---------------------------------------------------------------- criterion 7
bool criterion_end_to_end(std::string& detail) {
    const auto x = exponents::ExponentTriple::of(Rat(1, 2), Rat(1, 2), Rat(1, 3));
    struct Setup {
        int dim;
        int n;
        measures::DiscreteMeasure mu;
    };
    std::vector<Setup> setups;
    setups.push_back(
        {1, 1024, measures::normalize_support(measures::bilinear_sphere_measure(1, 128)).measure});
    setups.push_back(
        {2, 256, measures::normalize_support(measures::triangle_measure(2, 128)).measure});
    for (auto& s : setups) {
        verify::SparseRatioParams params;
        params.trials = 100;
        params.grid_n = s.n;
        params.dim = s.dim;
        params.j_min = -6;
        params.j_max = -1;
        params.seed = 7;
        const auto coarse = verify::sparse_ratio_experiment(s.mu, x, params);
        if (coarse.violations != 0) {
            detail = "sparsity violations";
            return false;
        }
        for (const auto& t : coarse.trials)
            if (!t.skipped && !std::isfinite(t.ratio)) {
                detail = "non-finite ratio";
                return false;
            }
        params.grid_n = 2 * s.n;
        const auto fine = verify::sparse_ratio_experiment(s.mu, x, params);
        if (fine.violations != 0) {
            detail = "sparsity violations at the refined grid";
            return false;
        }
        const double delta =
            std::abs(fine.max_ratio - coarse.max_ratio) / std::max(coarse.max_ratio, 1e-30);
        if (delta >= 0.2) {
            detail = "refinement delta " + std::to_string(delta) + " at d=" +
                     std::to_string(s.dim);
            return false;
        }
    }
    return true;
}

// ---------------------------------------------------------------- criterion 8
bool criterion_lemmas(std::string& detail) {
    std::mt19937_64 rng(808);
    grid::TestFunctionParams tp;
    tp.count = 4;
    tp.max_level = 4;
    // Lemma 3 embedding ratio bounded across refinements
    const double p = 2.0, r = 1.5;
    double prev = 0.0;
    for (int n : {256, 512, 1024}) {
        double worst = 0.0;
        for (int trial = 0; trial < 10; ++trial) {
            const auto f = grid::random_test_function(
                900 + trial, grid::TestFunctionKind::IndicatorUnionOfCubes, tp, 1, n);
            worst = std::max(worst, verify::lemma3_embedding_ratio(f, p, r));
        }
        if (prev > 0 && worst > prev * 1.25 + 0.1) {
            detail = "embedding ratio grows under refinement";
            return false;
        }
        prev = worst;
    }
    if (prev > p / (p - r)) {
        detail = "embedding ratio above the analytic constant";
        return false;
    }
    // Lemma 4 level-set sum
    for (int trial = 0; trial < 10; ++trial) {
        const auto f = grid::random_test_function(
            1000 + trial, grid::TestFunctionKind::SmoothBumpMixture, tp, 1, 512);
        const double ratio = verify::lemma4_levelset_ratio(f, 2.0);
        if (!(ratio > 0.0 && ratio <= 2.0 + 1e-9)) {
            detail = "level-set sum ratio " + std::to_string(ratio);
            return false;
        }
    }
    // Lemma 5 over 50 random sparse families
    const int n = 512;
    const auto tree = sparse::DyadicTree::of_grid(GridFunction::zeros(1, n, 1.0));
    double worst5 = 0.0;
    for (int trial = 0; trial < 50; ++trial) {
        const auto f = grid::random_test_function(
            rng(), grid::TestFunctionKind::IndicatorUnionOfCubes, tp, 1, n);
        const auto g = grid::random_test_function(
            rng(), grid::TestFunctionKind::IndicatorUnionOfCubes, tp, 1, n);
        const auto h = grid::random_test_function(
            rng(), grid::TestFunctionKind::SmoothBumpMixture, tp, 1, n);
        const auto S = sparse::build_sparse_family(f, g, h, tree, 2, 2, 2);
        const auto phi = grid::random_test_function(
            rng(), grid::TestFunctionKind::SmoothBumpMixture, tp, 1, n);
        worst5 = std::max(worst5, verify::lemma5_ratio(S, phi, 1.0, 2.0));
    }
    if (!(worst5 > 0.0 && worst5 < 50.0)) {
        detail = "sparse-average sum ratio " + std::to_string(worst5);
        return false;
    }
    return true;
}

// ---------------------------------------------------------------- criterion 9
bool criterion_multiplier(std::string& detail) {
    const int n = 512;
    const GridFunction f = smooth(7, 1, n);
    const GridFunction g = smooth(8, 1, n);
    const double s = 2.0, q = 2.0;
    const auto m = multiplier::MultiplierGrid::from_fn(n, 1.0, [s](double xi, double eta) {
        return std::complex<double>(std::pow(1.0 + xi * xi + eta * eta, -s / 2.0), 0.0);
    });
    multiplier::MultiplierProbe probe;
    probe.decay_s = s;
    probe.lq_exponent = q;
    std::vector<double> ys, norms;
    for (int k = 3; k <= 7; ++k) {
        const double y = std::ldexp(1.0, -k);
        const auto split = multiplier::continuity_split(m, y, probe, f, g);
        const auto df = multiplier::forward_diff_periodic(f, y);
        const auto whole = multiplier::bilinear_multiplier_apply(m, df, g);
        double scale = 1e-30;
        for (std::size_t i = 0; i < whole.size(); ++i)
            scale = std::max(scale, std::abs(whole[i]));
        for (std::size_t i = 0; i < whole.size(); ++i)
            if (std::abs(split.low[i] + split.high[i] - whole[i]) > 1e-10 * scale) {
                detail = "split sum identity";
                return false;
            }
        ys.push_back(y);
        norms.push_back(split.low.lp_norm(1.0) + split.high.lp_norm(1.0));
    }
    const auto fit = verify::fit_decay(ys, norms);
    const double target =
        exponents::multiplier_continuity_exponent(Rat(2), Rat(2)).convert_to<double>();
    if (fit.fitted_eta < 0.8 * target) {
        detail = "split decay slope " + std::to_string(fit.fitted_eta);
        return false;
    }
    // threshold arithmetic, exact
    const auto d2 = exponents::decay_thresholds(2);
    const auto d4 = exponents::decay_thresholds(4);
    const auto d1 = exponents::decay_thresholds(1);
    if (!(d2.lt_threshold == Rat(8, 3) && *d2.maximal_threshold == Rat(8) && !d2.maximal_below_4 &&
          d4.lt_threshold == Rat(16, 7) && *d4.maximal_threshold == Rat(16, 5) &&
          d4.maximal_below_4 && !d1.maximal_threshold.has_value())) {
        detail = "decay thresholds";
        return false;
    }
    return true;
}

}  // namespace

int main() {
    const std::vector<Criterion> criteria = {
        {"exact polytopes", 1.0, criterion_polytopes},
        {"dyadic lattice suite", 10.0, criterion_dyadic},
        {"operator oracles", 60.0, criterion_operator_oracles},
        {"scaling law", 120.0, criterion_scaling},
        {"continuity decay", 120.0, criterion_continuity},
        {"CZ and stopping suite", 120.0, criterion_cz_stopping},
        {"end-to-end sparse domination", 600.0, criterion_end_to_end},
        {"lemma checks", 60.0, criterion_lemmas},
        {"multiplier splitting", 60.0, criterion_multiplier},
    };
    bool all = true;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const auto start = std::chrono::steady_clock::now();
        std::string detail;
        bool ok = false;
        try {
            ok = criteria[i].run(detail);
        } catch (const std::exception& e) {
            detail = std::string("exception: ") + e.what();
        }
        const double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        const bool in_budget = secs < criteria[i].budget_s;
        const bool pass = ok && in_budget;
        all = all && pass;
        std::printf("[%s] criterion %zu: %s (%.2f s%s)%s%s\n", pass ? "PASS" : "FAIL", i + 1,
                    criteria[i].name, secs, in_budget ? "" : ", OVER BUDGET",
                    detail.empty() ? "" : " -- ", detail.c_str());
        std::fflush(stdout);
    }
    return all ? 0 : 1;
}
