#include "deconv/metrics.hpp"

#include <cmath>
#include <cstdio>
#include <limits>

#include "deconv/convolve.hpp"
#include "deconv/diffusion.hpp"

namespace deconv {

namespace {

double variance(const std::vector<double>& v) {
    double mean = 0.0;
    for (double x : v) mean += x;
    mean /= static_cast<double>(v.size());
    double var = 0.0;
    for (double x : v) var += (x - mean) * (x - mean);
    return var / static_cast<double>(v.size());
}

}  // namespace

double snr(const Image& u, const Image& g) {
    if (!u.same_shape(g))
        throw ShapeError("snr requires images of equal shape");
    const double var_g = variance(g.data);
    if (var_g <= 0.0)
        throw DomainError("snr is undefined for a constant reference image");
    std::vector<double> diff(g.data.size());
    for (std::size_t i = 0; i < diff.size(); ++i) diff[i] = g.data[i] - u.data[i];
    const double var_diff = variance(diff);
    if (var_diff == 0.0) return std::numeric_limits<double>::infinity();
    return 10.0 * std::log10(var_g / var_diff);
}

double energy(const Image& u, const Image& f, const PointSpreadFunction& psf,
              const SolverConfig& cfg) {
    if (!u.same_shape(f))
        throw ShapeError("energy requires images of equal shape");
    Image blurred = convolve(u, psf, BoundaryMode::reflect);
    Image s2 = squared_gradient(u);

    double total = 0.0;
    for (int y = 0; y < u.height; ++y) {
        for (int x = 0; x < u.width; ++x) {
            double divergence_sum = 0.0;
            double gradient_sum = 0.0;
            for (int c = 0; c < u.channels; ++c) {
                divergence_sum +=
                    csiszar_divergence(blurred.at(x, y, c), f.at(x, y, c));
                gradient_sum += s2.at(x, y, c);
            }
            total += phi(divergence_sum, cfg.data_penaliser);
            if (cfg.alpha > 0.0)
                total += cfg.alpha * psi(gradient_sum, cfg.smoothness_penaliser);
        }
    }
    return total;
}

std::string bench_csv_header() {
    return "method,variant,alpha,iterations,snr_db,energy_final,wall_s";
}

std::string bench_csv_row(const BenchRecord& r) {
    char buf[256];
    std::snprintf(buf, sizeof(buf), "%s,%s,%.6f,%d,%.6f,%.6f,%.6f",
                  r.method.c_str(), r.variant.c_str(), r.alpha, r.iterations,
                  r.snr_db, r.energy_final, r.wall_s);
    return buf;
}

}  // namespace deconv
