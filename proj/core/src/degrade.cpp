#include "deconv/degrade.hpp"

#include <algorithm>
#include <cmath>

namespace deconv {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

double gaussian_draw(SplitMix64& rng) {
    // Box-Muller; 1 - uniform() keeps the logarithm away from zero.
    const double u1 = 1.0 - rng.uniform();
    const double u2 = rng.uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(kTwoPi * u2);
}

// Knuth's product-of-uniforms sampler; fine for means up to the grey-value
// range.
std::int64_t poisson_draw(SplitMix64& rng, double mean) {
    const double limit = std::exp(-mean);
    std::int64_t k = 0;
    double p = 1.0;
    do {
        ++k;
        p *= rng.uniform();
    } while (p > limit);
    return k - 1;
}

}  // namespace

Image synth_blur(const Image& g, const PointSpreadFunction& psf) {
    return convolve(g, psf, BoundaryMode::cyclic);
}

Image add_noise(const Image& img, const NoiseSpec& spec) {
    if (spec.fraction < 0.0 || spec.fraction > 1.0)
        throw DomainError("noise fraction must lie in [0,1]");
    if (spec.sigma < 0.0) throw DomainError("noise sigma must be >= 0");

    Image out = img;
    SplitMix64 rng(spec.seed);
    const int values_per_pixel = img.channels;

    for (std::size_t p = 0; p < img.pixel_count(); ++p) {
        double* px = &out.data[p * values_per_pixel];
        switch (spec.kind) {
            case NoiseSpec::Kind::impulse_uniform: {
                if (rng.uniform() < spec.fraction)
                    for (int c = 0; c < values_per_pixel; ++c)
                        px[c] = 255.0 * rng.uniform();
                break;
            }
            case NoiseSpec::Kind::gaussian: {
                for (int c = 0; c < values_per_pixel; ++c) {
                    px[c] += spec.sigma * gaussian_draw(rng);
                    px[c] = std::clamp(px[c], kIntensityFloor, 255.0);
                }
                break;
            }
            case NoiseSpec::Kind::poisson: {
                for (int c = 0; c < values_per_pixel; ++c) {
                    if (!(px[c] >= 0.0))
                        throw DomainError("poisson noise needs nonnegative input");
                    px[c] = std::max(static_cast<double>(poisson_draw(rng, px[c])),
                                     kIntensityFloor);
                }
                break;
            }
        }
    }
    return out;
}

}  // namespace deconv
