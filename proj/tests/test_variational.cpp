#include <doctest.h>

#include <cmath>

#include "deconv/convolve.hpp"
#include "deconv/degrade.hpp"
#include "deconv/variational.hpp"
#include "oracles.hpp"

using namespace deconv;

namespace {

PointSpreadFunction binomial_psf() {
    return PointSpreadFunction::from_weights(3, 3, oracle::binomial3());
}

// Central finite differences of the discrete energy, the gradient oracle.
Image fd_gradient(const Image& u, const Image& f, const PointSpreadFunction& psf,
                  const DescentConfig& cfg, double h = 1e-3) {
    Image grad(u.width, u.height, u.channels);
    Image probe = u;
    for (std::size_t i = 0; i < u.data.size(); ++i) {
        probe.data[i] = u.data[i] + h;
        const double ep = descent_energy(probe, f, psf, cfg);
        probe.data[i] = u.data[i] - h;
        const double em = descent_energy(probe, f, psf, cfg);
        probe.data[i] = u.data[i];
        grad.data[i] = (ep - em) / (2.0 * h);
    }
    return grad;
}

void check_gradient(const DescentConfig& cfg, int channels, std::uint64_t seed) {
    PointSpreadFunction psf = binomial_psf();
    Image u = oracle::random_positive(8, 8, channels, seed, 20.0, 230.0);
    Image f = oracle::random_positive(8, 8, channels, seed + 1, 20.0, 230.0);

    Image analytic = descent_direction(u, f, psf, cfg);  // -dE/du
    Image fd = fd_gradient(u, f, psf, cfg);
    for (std::size_t i = 0; i < u.data.size(); ++i) {
        const double a = -analytic.data[i];
        const double b = fd.data[i];
        const double scale = std::max(std::abs(a), std::abs(b));
        REQUIRE(scale > 1e-12);
        CHECK(std::abs(a - b) / scale < 1e-4);
    }

    // Constrained form: the multiplicative gradient is u . dE/du.
    for (std::size_t i = 0; i < u.data.size(); ++i) {
        const double mult_analytic = -u.data[i] * analytic.data[i];
        const double mult_fd = u.data[i] * fd.data[i];
        const double scale = std::max(std::abs(mult_analytic), std::abs(mult_fd));
        if (scale > 1e-12)
            CHECK(std::abs(mult_analytic - mult_fd) / scale < 1e-4);
    }
}

}  // namespace

TEST_CASE("analytic gradient matches finite differences, all penalisers") {
    DescentConfig cfg;
    cfg.alpha = 0.06;
    cfg.smoothness_penaliser = {SmoothnessPenaliser::Kind::perona_malik, 15.0, 1e-3};
    check_gradient(cfg, 1, 101);

    cfg.smoothness_penaliser = {SmoothnessPenaliser::Kind::total_variation, 15.0, 1e-1};
    check_gradient(cfg, 1, 103);

    cfg.smoothness_penaliser = {SmoothnessPenaliser::Kind::whittaker_tikhonov, 15.0, 1e-3};
    check_gradient(cfg, 1, 107);
}

TEST_CASE("analytic gradient matches finite differences on colour images") {
    DescentConfig cfg;
    cfg.alpha = 0.03;
    cfg.smoothness_penaliser = {SmoothnessPenaliser::Kind::perona_malik, 15.0, 1e-3};
    check_gradient(cfg, 3, 109);
}

TEST_CASE("exact data with alpha 0 is a stationary point") {
    PointSpreadFunction psf = binomial_psf();
    Image u = oracle::random_positive(8, 8, 1, 113);
    Image f = convolve(u, psf, BoundaryMode::reflect);
    DescentConfig cfg;
    cfg.alpha = 0.0;
    Image out = descent_step(u, f, psf, cfg);
    CHECK(oracle::max_abs_diff(out, u) == 0.0);
}

TEST_CASE("constant image is stationary for any alpha") {
    PointSpreadFunction psf = binomial_psf();
    Image c(8, 8, 1, 42.0);
    DescentConfig cfg;
    cfg.alpha = 0.5;
    cfg.smoothness_penaliser = {SmoothnessPenaliser::Kind::perona_malik, 15.0, 1e-3};
    Image out = descent_step(c, c, psf, cfg);
    CHECK(oracle::max_abs_diff(out, c) < 1e-12);
}

TEST_CASE("descent with delta kernel and alpha 0 approaches f monotonically") {
    PointSpreadFunction delta = PointSpreadFunction::delta();
    Image f = oracle::random_positive(8, 8, 1, 127);
    Image u = oracle::random_positive(8, 8, 1, 131);
    DescentConfig cfg;
    cfg.alpha = 0.0;
    cfg.tau = 0.02;
    double prev = 1e300;
    for (int k = 0; k < 200; ++k) {
        u = descent_step(u, f, delta, cfg);
        double dist = 0.0;
        for (std::size_t i = 0; i < u.data.size(); ++i)
            dist += std::abs(u.data[i] - f.data[i]);
        CHECK(dist <= prev + 1e-9);
        prev = dist;
    }
}

TEST_CASE("run_descent keeps the energy non-increasing at the default step size") {
    Image g = oracle::random_positive(16, 16, 1, 137, 20.0, 230.0);
    PointSpreadFunction psf = binomial_psf();
    NoiseSpec noise;
    noise.fraction = 0.15;
    noise.seed = 3;
    Image f = apply_intensity_floor(add_noise(synth_blur(g, psf), noise));

    for (bool constrained : {false, true}) {
        DescentConfig cfg;
        cfg.iterations = 150;
        cfg.alpha = 0.06;
        cfg.constrained = constrained;
        cfg.smoothness_penaliser = {SmoothnessPenaliser::Kind::perona_malik, 15.0, 1e-3};
        RunResult rr = run_descent(f, psf, cfg);
        double prev = rr.trace.energy_initial;
        for (const TraceStep& s : rr.trace.steps) {
            CHECK(s.energy <= prev);
            prev = s.energy;
        }
        CHECK_FALSE(rr.trace.step_size_warning);
        if (constrained) CHECK(rr.trace.min_over_run() > 0.0);
    }
}

TEST_CASE("doubling tau until instability raises the step-size warning") {
    Image g = oracle::random_positive(16, 16, 1, 139, 20.0, 230.0);
    PointSpreadFunction psf = binomial_psf();
    NoiseSpec noise;
    noise.fraction = 0.15;
    noise.seed = 4;
    Image f = apply_intensity_floor(add_noise(synth_blur(g, psf), noise));

    bool warned = false;
    for (double tau = DescentConfig{}.tau; tau < 1e5 && !warned; tau *= 2.0) {
        DescentConfig cfg;
        cfg.tau = tau;
        cfg.iterations = 60;
        cfg.alpha = 0.06;
        cfg.smoothness_penaliser = {SmoothnessPenaliser::Kind::whittaker_tikhonov, 15.0, 1e-3};
        try {
            RunResult rr = run_descent(f, psf, cfg);
            warned = rr.trace.step_size_warning;
        } catch (const DivergenceError&) {
            break;  // blow-up without ten clean increases first
        }
    }
    CHECK(warned);
}

TEST_CASE("constrained descent reports a step-size error when positivity breaks") {
    Image g = oracle::random_positive(12, 12, 1, 149, 1.0, 250.0);
    PointSpreadFunction psf = binomial_psf();
    Image f = apply_intensity_floor(g);
    DescentConfig cfg;
    cfg.constrained = true;
    cfg.tau = 1e4;
    cfg.alpha = 0.5;
    cfg.smoothness_penaliser = {SmoothnessPenaliser::Kind::whittaker_tikhonov, 15.0, 1e-3};
    CHECK_THROWS_AS(descent_step(f, f, psf, cfg), StepSizeError);
}

TEST_CASE("config validation") {
    Image f = oracle::random_positive(6, 6, 1, 151);
    DescentConfig cfg;
    cfg.tau = 0.0;
    CHECK_THROWS_AS(run_descent(f, binomial_psf(), cfg), DomainError);
    cfg.tau = 0.01;
    cfg.iterations = 0;
    CHECK_THROWS_AS(run_descent(f, binomial_psf(), cfg), DomainError);
}
