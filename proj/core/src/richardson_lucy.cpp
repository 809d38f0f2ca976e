#include "deconv/richardson_lucy.hpp"

#include <cmath>
#include <string>

#include "deconv/diffusion.hpp"
#include "deconv/metrics.hpp"

namespace deconv {

namespace {

void check_pair(const Image& u, const Image& f) {
    if (!u.same_shape(f))
        throw ShapeError("iterate and observed image must have equal shape");
}

// H* (*) (f / (H (*) u)) with the guarded quotient.
Image rl_multiplier(const Image& u, const Image& f, const PointSpreadFunction& psf,
                    BoundaryMode mode, std::int64_t* guarded) {
    Image blurred = convolve(u, psf, mode);
    Image ratio(u.width, u.height, u.channels);
    std::int64_t hits = 0;
    for (std::size_t i = 0; i < ratio.data.size(); ++i) {
        double d = blurred.data[i];
        if (d < kRatioDenomFloor) {
            d = kRatioDenomFloor;
            ++hits;
        }
        ratio.data[i] = f.data[i] / d;
    }
    if (guarded) *guarded += hits;
    return adjoint_convolve(ratio, psf, mode);
}

void validate_config(const SolverConfig& cfg) {
    if (cfg.iterations < 1) throw DomainError("iterations must be >= 1");
    if (!(cfg.alpha >= 0.0)) throw DomainError("alpha must be >= 0");
    if (cfg.stop_rel_change &&
        !(*cfg.stop_rel_change > 0.0 && *cfg.stop_rel_change < 1.0))
        throw DomainError("stop_rel_change must lie in (0,1)");
}

}  // namespace

double IterationTrace::min_over_run() const {
    double m = std::numeric_limits<double>::infinity();
    for (const TraceStep& s : steps) m = std::min(m, s.min_value);
    return m;
}

Image rl_step(const Image& u, const Image& f, const PointSpreadFunction& psf,
              BoundaryMode mode, std::int64_t* guarded) {
    check_pair(u, f);
    Image m = rl_multiplier(u, f, psf, mode, guarded);
    Image out = u;
    // m vanishes exactly where the adjoint deposits no kernel mass (possible
    // at corners for one-sided kernels); the data does not constrain such
    // pixels, so they stay unchanged.
    for (std::size_t i = 0; i < out.data.size(); ++i)
        if (m.data[i] != 0.0) out.data[i] *= m.data[i];
    return out;
}

Image regularised_rl_step(const Image& u, const Image& f,
                          const PointSpreadFunction& psf, const SolverConfig& cfg,
                          BoundaryMode mode, std::int64_t* guarded) {
    check_pair(u, f);
    Image m = rl_multiplier(u, f, psf, mode, guarded);
    Image out = u;
    if (cfg.alpha == 0.0) {
        for (std::size_t i = 0; i < out.data.size(); ++i)
            if (m.data[i] != 0.0) out.data[i] *= m.data[i];
        return out;
    }
    Image div = divergence_term(u, cfg.smoothness_penaliser, /*coupled=*/true);
    for (std::size_t i = 0; i < out.data.size(); ++i) {
        if (m.data[i] == 0.0) continue;  // outside the adjoint support
        const double d = div.data[i];
        const double num = m.data[i] + cfg.alpha * std::max(d, 0.0);
        const double den = 1.0 - cfg.alpha * std::min(d, 0.0);  // >= 1
        out.data[i] *= num / den;
    }
    return out;
}

Image rrrl_step_multichannel(const Image& u, const Image& f,
                             const PointSpreadFunction& psf, const SolverConfig& cfg,
                             BoundaryMode mode, std::int64_t* guarded) {
    check_pair(u, f);
    const int w = u.width, h = u.height, ch = u.channels;

    Image blurred = convolve(u, psf, mode);
    Image ratio(w, h, ch);
    Image weight(w, h, 1);  // phi'(R), shared across channels
    std::int64_t hits = 0;
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            double divergence_sum = 0.0;
            for (int c = 0; c < ch; ++c) {
                double d = blurred.at(x, y, c);
                if (d < kRatioDenomFloor) {
                    d = kRatioDenomFloor;
                    ++hits;
                }
                ratio.at(x, y, c) = f.at(x, y, c) / d;
                divergence_sum += csiszar_divergence(d, f.at(x, y, c));
            }
            weight.at(x, y, 0) = phi_prime(divergence_sum, cfg.data_penaliser);
        }
    }
    if (guarded) *guarded += hits;

    Image weighted_ratio(w, h, ch);
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x)
            for (int c = 0; c < ch; ++c)
                weighted_ratio.at(x, y, c) = weight.at(x, y, 0) * ratio.at(x, y, c);

    Image numerator = adjoint_convolve(weighted_ratio, psf, mode);
    Image denominator_base = adjoint_convolve(weight, psf, mode);
    const bool regularise = cfg.alpha > 0.0;
    Image div;
    if (regularise) div = divergence_term(u, cfg.smoothness_penaliser, /*coupled=*/true);

    Image out = u;
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            const double den_base = denominator_base.at(x, y, 0);
            if (den_base == 0.0) continue;  // outside the adjoint support
            for (int c = 0; c < ch; ++c) {
                double num = numerator.at(x, y, c);
                double den = den_base;
                if (regularise) {
                    const double d = div.at(x, y, c);
                    num += cfg.alpha * std::max(d, 0.0);
                    den -= cfg.alpha * std::min(d, 0.0);
                }
                if (!(den > 0.0))
                    throw StabilityError(
                        "nonpositive fixed-point denominator at pixel (" +
                        std::to_string(x) + "," + std::to_string(y) + "), channel " +
                        std::to_string(c) + ", alpha=" + std::to_string(cfg.alpha));
                out.at(x, y, c) *= num / den;
            }
        }
    }
    return out;
}

Image rrrl_step(const Image& u, const Image& f, const PointSpreadFunction& psf,
                const SolverConfig& cfg, BoundaryMode mode, std::int64_t* guarded) {
    if (u.channels != 1)
        throw ShapeError("rrrl_step takes single-channel images; use "
                         "rrrl_step_multichannel");
    return rrrl_step_multichannel(u, f, psf, cfg, mode, guarded);
}

RunResult run(const Image& f, const PointSpreadFunction& psf,
              const SolverConfig& cfg, Variant variant) {
    validate_config(cfg);
    if (!(f.min_value() > 0.0))
        throw DomainError("observed image must be strictly positive; apply the "
                          "intensity floor first");

    // The energy of the variant being minimised: non-robust variants use the
    // identity data penaliser, non-regularised ones drop the smoothness term.
    SolverConfig energy_cfg = cfg;
    if (variant == Variant::rl || variant == Variant::regularised)
        energy_cfg.data_penaliser = DataPenaliser{DataPenaliser::Kind::identity, 0.0};
    if (variant == Variant::rl || variant == Variant::robust) energy_cfg.alpha = 0.0;

    SolverConfig step_cfg = cfg;
    if (variant == Variant::robust) step_cfg.alpha = 0.0;

    const bool record = cfg.record_energy_every > 0;
    constexpr BoundaryMode mode = BoundaryMode::reflect;

    RunResult result;
    result.restored = f;
    if (record)
        result.trace.energy_initial = energy(result.restored, f, psf, energy_cfg);

    Image& u = result.restored;
    for (int k = 1; k <= cfg.iterations; ++k) {
        TraceStep step;
        step.iteration = k;

        Image next = [&] {
            switch (variant) {
                case Variant::rl:
                    return rl_step(u, f, psf, mode, &step.guarded_pixels);
                case Variant::regularised:
                    return regularised_rl_step(u, f, psf, step_cfg, mode,
                                               &step.guarded_pixels);
                case Variant::robust:
                case Variant::rrrl:
                    return rrrl_step_multichannel(u, f, psf, step_cfg, mode,
                                                  &step.guarded_pixels);
            }
            throw DomainError("unknown solver variant");
        }();

        double norm_prev = 0.0, norm_diff = 0.0;
        double min_val = std::numeric_limits<double>::infinity();
        bool finite = true;
        for (std::size_t i = 0; i < next.data.size(); ++i) {
            const double v = next.data[i];
            if (!std::isfinite(v)) finite = false;
            min_val = std::min(min_val, v);
            norm_prev += std::abs(u.data[i]);
            norm_diff += std::abs(v - u.data[i]);
        }
        if (!finite)
            throw DivergenceError("non-finite iterate at iteration " +
                                  std::to_string(k));
        if (!(min_val > 0.0))
            throw DivergenceError("nonpositive iterate at iteration " +
                                  std::to_string(k));

        step.rel_change = norm_diff / norm_prev;
        step.min_value = min_val;
        u = std::move(next);

        const bool early_stop =
            cfg.stop_rel_change && step.rel_change < *cfg.stop_rel_change;
        const bool last = early_stop || k == cfg.iterations;
        if (record && (k % cfg.record_energy_every == 0 || last))
            step.energy = energy(u, f, psf, energy_cfg);

        result.trace.steps.push_back(step);
        if (early_stop) break;
    }
    return result;
}

}  // namespace deconv
