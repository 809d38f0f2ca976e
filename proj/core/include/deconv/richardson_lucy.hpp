#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <vector>

#include "deconv/convolve.hpp"
#include "deconv/image.hpp"
#include "deconv/penalisers.hpp"

namespace deconv {

// The four multiplicative fixed-point solvers. regularised adds the
// sign-split divergence term, robust adds the sub-linear data penaliser,
// rrrl combines both; rl is the classical iteration.
enum class Variant { rl, regularised, robust, rrrl };

// Denominator floor for the quotient f / (H (*) u). Hitting it indicates a
// configuration error, not silent repair; the count is surfaced per step.
inline constexpr double kRatioDenomFloor = 1e-12;

struct SolverConfig {
    int iterations = 1;
    double alpha = 0.0;  // regularisation weight, dimensionless
    DataPenaliser data_penaliser;
    SmoothnessPenaliser smoothness_penaliser;
    std::optional<double> stop_rel_change;  // early stop, in (0,1)
    int record_energy_every = 0;            // 0 = never evaluate the energy
};

struct TraceStep {
    int iteration = 0;       // 1-based step index
    double rel_change = 0;   // |u_k - u_{k-1}|_1 / |u_{k-1}|_1
    double min_value = 0;    // smallest iterate value after the step
    double energy = std::numeric_limits<double>::quiet_NaN();  // NaN if not recorded
    std::int64_t guarded_pixels = 0;  // ratio-denominator floor hits
};

struct IterationTrace {
    std::vector<TraceStep> steps;
    double energy_initial = std::numeric_limits<double>::quiet_NaN();
    // Set by run_descent when the energy grew over ten consecutive steps.
    bool step_size_warning = false;
    int warning_iteration = -1;

    double min_over_run() const;
};

struct RunResult {
    Image restored;
    IterationTrace trace;
};

/// One classical Richardson-Lucy step u' = (H* (*) (f / (H (*) u))) u.
/// u and f must be strictly positive and of equal shape.
Image rl_step(const Image& u, const Image& f, const PointSpreadFunction& psf,
              BoundaryMode mode = BoundaryMode::reflect,
              std::int64_t* guarded = nullptr);

/// Regularised step: the divergence field D = div(psi'(|grad u|^2) grad u)
/// enters sign-split, positive part into the numerator and negative part
/// into the denominator,
///   u' = (H* (*) (f / (H (*) u)) + alpha [D]+) / (1 - alpha [D]-) . u,
/// which keeps both strictly positive. alpha = 0 reduces bit-for-bit to
/// rl_step.
Image regularised_rl_step(const Image& u, const Image& f,
                          const PointSpreadFunction& psf, const SolverConfig& cfg,
                          BoundaryMode mode = BoundaryMode::reflect,
                          std::int64_t* guarded = nullptr);

/// Robust and regularised step for single-channel images,
///   u' = (H* (*) (phi'(r) f / (H (*) u)) + alpha [D]+)
///        / (H* (*) phi'(r) - alpha [D]-) . u
/// with r the pointwise information divergence of H (*) u against f.
Image rrrl_step(const Image& u, const Image& f, const PointSpreadFunction& psf,
                const SolverConfig& cfg, BoundaryMode mode = BoundaryMode::reflect,
                std::int64_t* guarded = nullptr);

/// Multi-channel variant: the data weight phi'(R) uses the divergence summed
/// over channels and the diffusivity psi'(G) the squared gradients summed
/// over channels; each channel is then updated with these shared weights.
/// With one channel this is exactly rrrl_step.
Image rrrl_step_multichannel(const Image& u, const Image& f,
                             const PointSpreadFunction& psf, const SolverConfig& cfg,
                             BoundaryMode mode = BoundaryMode::reflect,
                             std::int64_t* guarded = nullptr);

/// Runs a variant from u0 = f for cfg.iterations steps (or until the
/// relative change drops below cfg.stop_rel_change). All iterates stay
/// strictly positive; a non-finite value raises DivergenceError with the
/// iteration index. Restoration always uses reflecting spatial convolution.
RunResult run(const Image& f, const PointSpreadFunction& psf,
              const SolverConfig& cfg, Variant variant);

}  // namespace deconv
