#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "bisparse/measures.hpp"
#include "bisparse/verify.hpp"

using namespace bisparse;
using namespace bisparse::verify;
using exponents::Rat;
using grid::GridFunction;

TEST_CASE("fit_decay") {
    // exact power law: norms = c * y^1.5
    std::vector<double> ys = {0.5, 0.25, 0.125, 0.0625};
    std::vector<double> ns;
    for (double y : ys) ns.push_back(3.0 * std::pow(y, 1.5));
    const auto fit = fit_decay(ys, ns);
    CHECK(fit.fitted_eta == doctest::Approx(1.5).epsilon(1e-9));
    CHECK(fit.r2 == doctest::Approx(1.0));
    CHECK(fit.monotone);

    SUBCASE("zero norms are excluded from the fit") {
        ys.push_back(0.03125);
        ns.push_back(0.0);
        const auto fit2 = fit_decay(ys, ns);
        CHECK(fit2.abscissae.size() == 4);
    }
    SUBCASE("non-monotone data is reported, not thrown") {
        const auto fit3 = fit_decay({0.5, 0.25, 0.125}, {1.0, 2.0, 0.5});
        CHECK(!fit3.monotone);
    }
}

TEST_CASE("scaling law experiment") {
    const auto mu = measures::normalize_support(measures::bilinear_sphere_measure(1, 96)).measure;
    const int n = 1024;
    const double side = 16.0;
    auto gauss = GridFunction::from_fn(1, n, side, [side](const double* x) {
        const double d = x[0] - side / 2;
        return std::exp(-d * d / (2 * 0.35 * 0.35));
    });
    const std::vector<double> ts = {0.25, 0.5, 1.0, 2.0, 4.0};

    SUBCASE("smooth inputs track the rescaled-norm prediction") {
        for (auto [p, q, r] : {std::array<double, 3>{2, 2, 2}, std::array<double, 3>{2, 2, 1.5},
                               std::array<double, 3>{3, 3, 2}}) {
            const auto rep = scaling_law_experiment(mu, gauss, gauss, p, q, r, ts);
            CHECK(std::abs(rep.normalized_slope - rep.predicted) < 0.1);
        }
    }
    SUBCASE("plateau probe: raw slope is d/r") {
        // indicator of a centered cube; closed-form self-similarity
        auto plateau = GridFunction::from_fn(1, n, side, [side](const double* x) {
            return std::abs(x[0] - side / 2) < 1.0 ? 1.0 : 0.0;
        });
        const double r = 2.0;
        const auto rep = scaling_law_experiment(mu, plateau, plateau, 2, 2, r, ts);
        CHECK(std::abs(rep.raw_slope - 1.0 / r) < 0.05);
    }
    SUBCASE("single scale is rejected") {
        CHECK_THROWS_AS(scaling_law_experiment(mu, gauss, gauss, 2, 2, 2, {1.0}),
                        std::invalid_argument);
    }
    SUBCASE("support escape is detected") {
        auto wide = GridFunction::from_fn(1, n, side, [](const double*) { return 1.0; });
        CHECK_THROWS_AS(scaling_law_experiment(mu, wide, wide, 2, 2, 2, ts),
                        std::invalid_argument);
    }
}

TEST_CASE("continuity experiment") {
    const auto mu = measures::bilinear_sphere_measure(1, 96);
    ContinuityParams params;
    params.n = 512;
    params.nodes = 96;
    params.sup_samples = 5;
    const std::vector<double> ys = {0.25, 0.125, 0.0625, 0.03125, 0.015625};

    SUBCASE("smooth inputs gain a full Lipschitz power") {
        const auto fit = continuity_experiment(ContinuityOperator::SingleScale, mu, params, ys,
                                               ContinuitySlot::First, 3);
        CHECK(fit.fitted_eta >= 0.9);
        CHECK(fit.r2 >= 0.9);
        CHECK(fit.triangle_bound_ok);
    }
    SUBCASE("indicator inputs still decay strictly, three seeds") {
        ContinuityParams rough = params;
        rough.smooth_inputs = false;
        for (std::uint64_t seed : {11ULL, 12ULL, 13ULL}) {
            const auto fit = continuity_experiment(ContinuityOperator::SingleScale, mu, rough, ys,
                                                   ContinuitySlot::First, seed);
            CHECK(fit.fitted_eta > 0.0);
        }
    }
    SUBCASE("second slot and maximal variant") {
        const auto fit = continuity_experiment(ContinuityOperator::SingleScaleMaximal, mu, params,
                                               ys, ContinuitySlot::Second, 5);
        CHECK(fit.fitted_eta > 0.0);
        CHECK(fit.r2 >= 0.9);
    }
    SUBCASE("y = 0 contributes nothing") {
        std::vector<double> with_zero = ys;
        with_zero.push_back(0.0);
        const auto fit = continuity_experiment(ContinuityOperator::SingleScale, mu, params,
                                               with_zero, ContinuitySlot::First, 3);
        CHECK(fit.abscissae.size() == ys.size());
    }
    SUBCASE("exceeding the scale is rejected") {
        CHECK_THROWS_AS(continuity_experiment(ContinuityOperator::SingleScale, mu, params, {2.0},
                                              ContinuitySlot::First, 3),
                        std::invalid_argument);
    }
}

TEST_CASE("sparse ratio experiment") {
    const auto mu = measures::normalize_support(measures::bilinear_sphere_measure(1, 64)).measure;
    SUBCASE("hypothesis check") {
        SparseRatioParams params;
        params.trials = 1;
        CHECK_THROWS_AS(
            sparse_ratio_experiment(mu, exponents::ExponentTriple::of(Rat(1, 2), Rat(1, 2), 1),
                                    params),
            std::invalid_argument);
    }
    SUBCASE("small batch yields finite ratios and zero violations") {
        SparseRatioParams params;
        params.trials = 10;
        params.grid_n = 256;
        params.seed = 3;
        const auto x = exponents::ExponentTriple::of(Rat(1, 2), Rat(1, 2), Rat(1, 3));
        const auto stats = sparse_ratio_experiment(mu, x, params);
        CHECK(stats.violations == 0);
        CHECK(stats.trials.size() == 10);
        for (const auto& t : stats.trials) {
            if (t.skipped) continue;
            CHECK(std::isfinite(t.ratio));
            CHECK(t.ratio >= 0.0);
        }
        CHECK(std::isfinite(stats.max_ratio));
    }
    SUBCASE("constant-input sanity ratio is at most one") {
        // <L_lac(1,1), 1> = 1 for probability measures; the form is |Q0| = 1
        const GridFunction one = GridFunction::constant(1, 256, 1.0, 1.0);
        ops::OperatorConfig cfg{mu, 1.0, 1, -6, -1};
        const auto lac = ops::lacunary_maximal(one, one, cfg);
        const auto tree = sparse::DyadicTree::of_grid(one);
        const auto S = sparse::build_sparse_family(one, one, one, tree, 2, 2, 3.0 / 2);
        const double ratio = grid::inner_product(lac, one) /
                             sparse::sparse_form(S, one, one, one, 2, 2, 3.0 / 2);
        CHECK(ratio <= 1.0 + 1e-9);
    }
}

TEST_CASE("muckenhoupt constants") {
    const int n = 256;
    auto cubes = [&](const GridFunction& ref) {
        std::vector<dyadic::DyadicCube> out;
        std::vector<dyadic::DyadicCube> stack{ref.root_cube()};
        while (!stack.empty()) {
            auto q = stack.back();
            stack.pop_back();
            out.push_back(q);
            if (-q.generation < 4)
                for (auto& c : q.children()) stack.push_back(c);
        }
        return out;
    };

    SUBCASE("unit weights give constant one") {
        WeightVector w;
        w.w1 = GridFunction::constant(1, n, 1.0, 1.0);
        w.w2 = GridFunction::constant(1, n, 1.0, 1.0);
        const double c = muckenhoupt_constant(w, cubes(w.w1));
        CHECK(c == doctest::Approx(1.0).epsilon(1e-12));
    }
    SUBCASE("scaling follows the symbolic homogeneity exponent") {
        WeightVector w;
        w.w1 = GridFunction::from_fn(1, n, 1.0, [](const double* x) { return 1.0 + x[0]; });
        w.w2 = GridFunction::from_fn(1, n, 1.0, [](const double* x) { return 2.0 - x[0]; });
        w.p1 = 2.0;
        w.p2 = 2.0;
        w.r1 = 1.0;
        w.r2 = 1.0;
        w.r3 = 2.0;
        const auto fam = cubes(w.w1);
        const double base = muckenhoupt_constant(w, fam);
        WeightVector ws = w;
        for (auto& v : ws.w1.values()) v *= 2.0;
        for (auto& v : ws.w2.values()) v *= 2.0;
        const double scaled = muckenhoupt_constant(ws, fam);
        const Rat sigma = muckenhoupt_homogeneity(Rat(2), Rat(2), Rat(1), Rat(1), Rat(2));
        CHECK(scaled / base ==
              doctest::Approx(std::pow(2.0, sigma.convert_to<double>())).epsilon(1e-9));
    }
    SUBCASE("power weights grow with the exponent") {
        auto make = [&](double a) {
            WeightVector w;
            w.w1 = GridFunction::from_fn(1, n, 1.0, [a](const double* x) {
                return std::pow(std::abs(x[0] - 0.5) + 1e-3, a);
            });
            w.w2 = GridFunction::constant(1, n, 1.0, 1.0);
            return w;
        };
        const auto fam = cubes(make(0.3).w1);
        const double small = muckenhoupt_constant(make(0.3), fam);
        const double large = muckenhoupt_constant(make(0.6), fam);
        CHECK(std::isfinite(small));
        CHECK(std::isfinite(large));
        CHECK(large > small);
    }
    SUBCASE("validation") {
        WeightVector w;
        w.w1 = GridFunction::constant(1, n, 1.0, 1.0);
        w.w2 = GridFunction::constant(1, n, 1.0, 1.0);
        w.w1[0] = 0.0;
        CHECK_THROWS_AS(muckenhoupt_constant(w, {w.w1.root_cube()}), std::invalid_argument);
        w.w1[0] = 1.0;
        w.r1 = 4.0;
        w.r2 = 4.0;
        w.r3 = 4.0;  // sum 1/r_i = 3/4 <= 1
        CHECK_THROWS_AS(muckenhoupt_constant(w, {w.w1.root_cube()}), std::invalid_argument);
    }
}

TEST_CASE("lemma ratio experiments") {
    const int n = 512;
    std::mt19937_64 rng(7);

    SUBCASE("embedding ratio is bounded across refinements") {
        for (double p : {2.0, 3.0}) {
            const double r = 1.5;
            double prev = 0.0;
            for (int nn : {128, 256, 512}) {
                double worst = 0.0;
                for (int trial = 0; trial < 10; ++trial) {
                    grid::TestFunctionParams tp;
                    const auto f = grid::random_test_function(
                        900 + trial, grid::TestFunctionKind::IndicatorUnionOfCubes, tp, 1, nn);
                    worst = std::max(worst, lemma3_embedding_ratio(f, p, r));
                }
                if (prev > 0) CHECK(worst <= prev * 1.25 + 0.1);
                prev = worst;
            }
            // the analytic constant for the embedding is p/(p-r)
            CHECK(prev <= p / (p - 1.5) + 1e-9);
        }
    }
    SUBCASE("level-set sum against the Lorentz norm") {
        for (int trial = 0; trial < 10; ++trial) {
            grid::TestFunctionParams tp;
            auto f = grid::random_test_function(
                1000 + trial, grid::TestFunctionKind::SmoothBumpMixture, tp, 1, n);
            const double ratio = lemma4_levelset_ratio(f, 2.0);
            CHECK(ratio <= 2.0 + 1e-9);  // dyadic-block comparison constant
            CHECK(ratio > 0.0);
        }
    }
    SUBCASE("sparse-average sum") {
        const GridFunction one = GridFunction::constant(1, n, 1.0, 1.0);
        const auto tree = sparse::DyadicTree::of_grid(one);
        const auto S1 = sparse::build_sparse_family(one, one, one, tree, 2, 2, 2);
        SUBCASE("single-cube family is the power-mean ratio") {
            grid::TestFunctionParams tp;
            const auto phi = grid::random_test_function(
                55, grid::TestFunctionKind::SmoothBumpMixture, tp, 1, n);
            const double ratio = lemma5_ratio(S1, phi, 1.0, 2.0);
            CHECK(ratio <= 1.0 + 1e-12);
            CHECK(ratio > 0.0);
        }
        SUBCASE("equal exponents are rejected") {
            const auto phi = GridFunction::constant(1, n, 1.0, 1.0);
            CHECK_THROWS_AS(lemma5_ratio(S1, phi, 2.0, 2.0), std::invalid_argument);
        }
        SUBCASE("random sparse families stay bounded over 50 trials") {
            double worst = 0.0;
            for (int trial = 0; trial < 50; ++trial) {
                grid::TestFunctionParams tp;
                tp.count = 4;
                tp.max_level = 4;
                const auto f = grid::random_test_function(
                    rng(), grid::TestFunctionKind::IndicatorUnionOfCubes, tp, 1, n);
                const auto g = grid::random_test_function(
                    rng(), grid::TestFunctionKind::IndicatorUnionOfCubes, tp, 1, n);
                const auto h = grid::random_test_function(
                    rng(), grid::TestFunctionKind::SmoothBumpMixture, tp, 1, n);
                const auto S =
                    sparse::build_sparse_family(f, g, h, tree, 2, 2, 2);
                const auto phi = grid::random_test_function(
                    rng(), grid::TestFunctionKind::SmoothBumpMixture, tp, 1, n);
                worst = std::max(worst, lemma5_ratio(S, phi, 1.0, 2.0));
            }
            CHECK(worst > 0.0);
            CHECK(worst < 50.0);
        }
    }
}
