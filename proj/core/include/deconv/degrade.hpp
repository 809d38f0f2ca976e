#pragma once

#include <cstdint>

#include "deconv/convolve.hpp"
#include "deconv/image.hpp"

namespace deconv {

// Fixed 64-bit generator (splitmix64) so noise streams are bit-reproducible
// across platforms; no platform entropy is ever mixed in.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    /// Uniform double in [0, 1), 53 mantissa bits.
    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

private:
    std::uint64_t state_;
};

struct NoiseSpec {
    enum class Kind { impulse_uniform, gaussian, poisson };
    Kind kind = Kind::impulse_uniform;
    double fraction = 0.0;  // replacement probability, impulse only
    double sigma = 0.0;     // standard deviation in grey-values, gaussian only
    std::uint64_t seed = 0;
};

/// Synthetic blur for degradation: periodic (cyclic) convolution per
/// channel. Restoration never uses this path; the solvers convolve in the
/// spatial domain with mirrored boundaries.
Image synth_blur(const Image& g, const PointSpreadFunction& psf);

/// Applies noise deterministically for a given seed, visiting pixels in
/// raster order. impulse_uniform replaces a pixel's channels with
/// independent uniform draws on [0,255] with probability `fraction`;
/// gaussian adds N(0, sigma^2) and clamps to [kIntensityFloor, 255];
/// poisson draws each value from a Poisson law with the pixel value as mean
/// and floors the result at kIntensityFloor.
Image add_noise(const Image& img, const NoiseSpec& spec);

}  // namespace deconv
