#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>

#include "bisparse/exponents.hpp"
#include "bisparse/measures.hpp"
#include "bisparse/multiplier.hpp"
#include "bisparse/operators.hpp"
#include "bisparse/verify.hpp"

using namespace bisparse;
using namespace bisparse::multiplier;
using grid::GridFunction;

namespace {

GridFunction bumps(std::uint64_t seed, int n) {
    grid::TestFunctionParams p;
    p.count = 3;
    return grid::random_test_function(seed, grid::TestFunctionKind::SmoothBumpMixture, p, 1, n);
}

}  // namespace

TEST_CASE("fft round trip") {
    std::vector<std::complex<double>> a(64);
    for (std::size_t i = 0; i < a.size(); ++i)
        a[i] = {std::sin(0.3 * i), std::cos(0.11 * i)};
    auto b = a;
    fft(b, false);
    fft(b, true);
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(b[i].real() == doctest::Approx(a[i].real()).epsilon(1e-12));
        CHECK(b[i].imag() == doctest::Approx(a[i].imag()).epsilon(1e-12));
    }
    std::vector<std::complex<double>> bad(3);
    CHECK_THROWS_AS(fft(bad, false), std::invalid_argument);
}

TEST_CASE("unit multiplier is the pointwise product") {
    const int n = 256;
    const GridFunction f = bumps(1, n);
    const GridFunction g = bumps(2, n);
    const auto m = MultiplierGrid::from_fn(n, 1.0, [](double, double) {
        return std::complex<double>(1.0, 0.0);
    });
    const GridFunction out = bilinear_multiplier_apply(m, f, g);
    for (std::size_t i = 0; i < out.size(); ++i)
        CHECK(out[i] == doctest::Approx(f[i] * g[i]).epsilon(1e-9));
}

TEST_CASE("zero multiplier gives zero") {
    const int n = 128;
    const GridFunction f = bumps(3, n);
    const GridFunction g = bumps(4, n);
    const auto m = MultiplierGrid::from_fn(n, 1.0, [](double, double) {
        return std::complex<double>(0.0, 0.0);
    });
    const GridFunction out = bilinear_multiplier_apply(m, f, g);
    for (std::size_t i = 0; i < out.size(); ++i) CHECK(std::abs(out[i]) < 1e-14);
}

TEST_CASE("sampled measure transform matches the spatial evaluation") {
    const int n = 512;
    const auto mu = measures::bilinear_sphere_measure(1, 512);
    // scale the nodes so evaluation points stay well inside the unit cell
    const auto scaled = measures::normalize_support(mu).measure;
    GridFunction f = bumps(5, n);
    GridFunction g = bumps(6, n);

    // spectral evaluation needs the multiplier of the *scaled* measure
    const auto m = multiplier_from_measure(scaled, n, 1.0);
    const GridFunction spectral = bilinear_multiplier_apply(m, f, g);
    ops::OperatorConfig cfg{scaled, 1.0, 1, 0, 0};
    const GridFunction spatial = ops::scale_average(f, g, cfg);
    double num = 0, den = 0;
    for (std::size_t i = 0; i < spectral.size(); ++i) {
        num += (spectral[i] - spatial[i]) * (spectral[i] - spatial[i]);
        den += spatial[i] * spatial[i];
    }
    REQUIRE(den > 0);
    // discretization tolerance: periodization + interpolation differences
    CHECK(std::sqrt(num / den) < 2e-2);
}

TEST_CASE("cutoff function brackets the plateau") {
    for (int order : {1, 2, 3}) {
        CHECK(cutoff_phi(0.0, 0.25, order) == 1.0);
        CHECK(cutoff_phi(0.74, 0.25, order) == 1.0);
        CHECK(cutoff_phi(1.0, 0.25, order) == 0.0);
        CHECK(cutoff_phi(-1.1, 0.25, order) == 0.0);
        const double mid = cutoff_phi(0.9, 0.25, order);
        CHECK(mid > 0.0);
        CHECK(mid < 1.0);
    }
}

TEST_CASE("continuity split") {
    const int n = 512;
    const GridFunction f = bumps(7, n);
    const GridFunction g = bumps(8, n);
    const double s = 2.0;
    const auto m = MultiplierGrid::from_fn(n, 1.0, [s](double xi, double eta) {
        return std::complex<double>(std::pow(1.0 + xi * xi + eta * eta, -s / 2.0), 0.0);
    });
    MultiplierProbe probe;
    probe.decay_s = s;
    probe.lq_exponent = 2.0;

    SUBCASE("zero shift yields two zero parts") {
        const auto split = continuity_split(m, 0.0, probe, f, g);
        for (std::size_t i = 0; i < split.low.size(); ++i) {
            CHECK(split.low[i] == 0.0);
            CHECK(split.high[i] == 0.0);
        }
    }
    SUBCASE("shift bound is enforced") {
        CHECK_THROWS_AS(continuity_split(m, 1.5, probe, f, g), std::invalid_argument);
    }
    SUBCASE("the two parts sum to the full difference operator") {
        for (double y : {1.0 / 8, 1.0 / 32, 1.0 / 128}) {
            const auto split = continuity_split(m, y, probe, f, g);
            const GridFunction df = forward_diff_periodic(f, y);
            const GridFunction whole = bilinear_multiplier_apply(m, df, g);
            double scale = 0.0;
            for (std::size_t i = 0; i < whole.size(); ++i)
                scale = std::max(scale, std::abs(whole[i]));
            for (std::size_t i = 0; i < whole.size(); ++i)
                CHECK(std::abs(split.low[i] + split.high[i] - whole[i]) <=
                      1e-10 * std::max(1.0, scale));
        }
    }
    SUBCASE("split radius follows |y|^{-a}") {
        const auto split = continuity_split(m, 1.0 / 64, probe, f, g);
        CHECK(split.radius == doctest::Approx(std::pow(1.0 / 64, -1.0 / 3.0)));
    }
    SUBCASE("decay rate beats the guaranteed exponent") {
        std::vector<double> ys, norms;
        for (int k = 3; k <= 7; ++k) {
            const double y = std::ldexp(1.0, -k);
            const auto split = continuity_split(m, y, probe, f, g);
            ys.push_back(y);
            norms.push_back(split.low.lp_norm(1.0) + split.high.lp_norm(1.0));
        }
        const auto fit = verify::fit_decay(ys, norms);
        const double target = exponents::multiplier_continuity_exponent(exponents::Rat(2),
                                                                        exponents::Rat(2))
                                  .convert_to<double>();
        CHECK(fit.fitted_eta >= 0.8 * target);
    }
}

TEST_CASE("probe validation") {
    MultiplierProbe probe;
    probe.lq_exponent = 5.0;
    CHECK_THROWS_AS(probe.validate(), std::invalid_argument);
    probe.lq_exponent = 2.0;
    probe.split_a = 1.5;
    CHECK_THROWS_AS(probe.validate(), std::invalid_argument);
    probe.split_a.reset();
    CHECK_NOTHROW(probe.validate());
    CHECK(probe.a() == doctest::Approx(1.0 / 3.0));
}
