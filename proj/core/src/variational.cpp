#include "deconv/variational.hpp"

#include <cmath>
#include <string>

#include "deconv/convolve.hpp"
#include "deconv/diffusion.hpp"

namespace deconv {

namespace {

// Exact transposes of the mirrored central differences: scatter each
// contribution v(x)/2 onto the same extended indices the forward operator
// reads from.
Image central_diff_x_transpose(const Image& v) {
    Image out(v.width, v.height, v.channels);
    for (int y = 0; y < v.height; ++y)
        for (int x = 0; x < v.width; ++x) {
            const int xe = std::min(x + 1, v.width - 1);
            const int xw = std::max(x - 1, 0);
            for (int c = 0; c < v.channels; ++c) {
                const double half = 0.5 * v.at(x, y, c);
                out.at(xe, y, c) += half;
                out.at(xw, y, c) -= half;
            }
        }
    return out;
}

Image central_diff_y_transpose(const Image& v) {
    Image out(v.width, v.height, v.channels);
    for (int y = 0; y < v.height; ++y) {
        const int ys = std::min(y + 1, v.height - 1);
        const int yn = std::max(y - 1, 0);
        for (int x = 0; x < v.width; ++x)
            for (int c = 0; c < v.channels; ++c) {
                const double half = 0.5 * v.at(x, y, c);
                out.at(x, ys, c) += half;
                out.at(x, yn, c) -= half;
            }
    }
    return out;
}

void validate_config(const DescentConfig& cfg) {
    if (!(cfg.tau > 0.0)) throw DomainError("tau must be > 0");
    if (cfg.iterations < 1) throw DomainError("iterations must be >= 1");
    if (!(cfg.alpha >= 0.0)) throw DomainError("alpha must be >= 0");
}

}  // namespace

double descent_energy(const Image& u, const Image& f, const PointSpreadFunction& psf,
                      const DescentConfig& cfg) {
    if (!u.same_shape(f))
        throw ShapeError("descent_energy requires images of equal shape");
    Image blurred = convolve(u, psf, BoundaryMode::reflect);
    Image s2 = squared_gradient(u);
    const double eps2 = cfg.data_eps * cfg.data_eps;

    double total = 0.0;
    for (int y = 0; y < u.height; ++y)
        for (int x = 0; x < u.width; ++x) {
            double q = 0.0, grad = 0.0;
            for (int c = 0; c < u.channels; ++c) {
                const double r = f.at(x, y, c) - blurred.at(x, y, c);
                q += r * r;
                grad += s2.at(x, y, c);
            }
            total += std::sqrt(q + eps2);
            if (cfg.alpha > 0.0)
                total += cfg.alpha * psi(grad, cfg.smoothness_penaliser);
        }
    return total;
}

Image descent_direction(const Image& u, const Image& f, const PointSpreadFunction& psf,
                        const DescentConfig& cfg, double* energy_out) {
    if (!u.same_shape(f))
        throw ShapeError("descent_direction requires images of equal shape");
    const int w = u.width, h = u.height, ch = u.channels;
    const double eps2 = cfg.data_eps * cfg.data_eps;

    // Data term.
    Image blurred = convolve(u, psf, BoundaryMode::reflect);
    Image residual(w, h, ch);
    Image weighted(w, h, ch);
    double energy_total = 0.0;
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x) {
            double q = 0.0;
            for (int c = 0; c < ch; ++c) {
                const double r = f.at(x, y, c) - blurred.at(x, y, c);
                residual.at(x, y, c) = r;
                q += r * r;
            }
            const double root = std::sqrt(q + eps2);
            energy_total += root;
            const double wq = 0.5 / root;  // phi'(q)
            for (int c = 0; c < ch; ++c)
                weighted.at(x, y, c) = wq * residual.at(x, y, c);
        }
    Image direction = adjoint_convolve(weighted, psf, BoundaryMode::reflect);
    for (double& v : direction.data) v *= 2.0;

    // Smoothness term.
    if (cfg.alpha > 0.0) {
        Image dx = central_diff_x(u);
        Image dy = central_diff_y(u);
        Image gdx(w, h, ch), gdy(w, h, ch);
        for (int y = 0; y < h; ++y)
            for (int x = 0; x < w; ++x) {
                double grad = 0.0;
                for (int c = 0; c < ch; ++c)
                    grad += dx.at(x, y, c) * dx.at(x, y, c) +
                            dy.at(x, y, c) * dy.at(x, y, c);
                energy_total += cfg.alpha * psi(grad, cfg.smoothness_penaliser);
                const double g = psi_prime(grad, cfg.smoothness_penaliser);
                for (int c = 0; c < ch; ++c) {
                    gdx.at(x, y, c) = g * dx.at(x, y, c);
                    gdy.at(x, y, c) = g * dy.at(x, y, c);
                }
            }
        Image tx = central_diff_x_transpose(gdx);
        Image ty = central_diff_y_transpose(gdy);
        for (std::size_t i = 0; i < direction.data.size(); ++i)
            direction.data[i] -= 2.0 * cfg.alpha * (tx.data[i] + ty.data[i]);
    }

    if (energy_out) *energy_out = energy_total;
    return direction;
}

Image descent_step(const Image& u, const Image& f, const PointSpreadFunction& psf,
                   const DescentConfig& cfg) {
    validate_config(cfg);
    Image d = descent_direction(u, f, psf, cfg);
    Image out = u;
    if (cfg.constrained) {
        for (std::size_t i = 0; i < out.data.size(); ++i)
            out.data[i] += cfg.tau * u.data[i] * d.data[i];
        if (!(out.min_value() > 0.0))
            throw StepSizeError("constrained descent lost positivity; reduce tau (" +
                                std::to_string(cfg.tau) + ")");
    } else {
        for (std::size_t i = 0; i < out.data.size(); ++i)
            out.data[i] += cfg.tau * d.data[i];
    }
    return out;
}

RunResult run_descent(const Image& f, const PointSpreadFunction& psf,
                      const DescentConfig& cfg) {
    validate_config(cfg);
    if (cfg.constrained && !(f.min_value() > 0.0))
        throw DomainError("constrained descent needs a strictly positive start; "
                          "apply the intensity floor first");

    RunResult result;
    result.restored = f;
    result.trace.energy_initial = descent_energy(f, f, psf, cfg);

    Image& u = result.restored;
    double previous_energy = result.trace.energy_initial;
    int increase_streak = 0;

    for (int k = 1; k <= cfg.iterations; ++k) {
        Image next = descent_step(u, f, psf, cfg);

        TraceStep step;
        step.iteration = k;
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
        step.rel_change = norm_diff / norm_prev;
        step.min_value = min_val;
        u = std::move(next);

        step.energy = descent_energy(u, f, psf, cfg);
        if (step.energy > previous_energy) {
            if (++increase_streak >= 10 && !result.trace.step_size_warning) {
                result.trace.step_size_warning = true;
                result.trace.warning_iteration = k;
            }
        } else {
            increase_streak = 0;
        }
        previous_energy = step.energy;
        result.trace.steps.push_back(step);
    }
    return result;
}

}  // namespace deconv
