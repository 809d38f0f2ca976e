#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "deconv/errors.hpp"

namespace deconv {

// Raster image with 1..C interleaved channels, stored row-major at double
// precision. Grey values live on the [0,255] scale; solvers keep their
// iterates strictly positive on that scale.
struct Image {
    int width = 0;
    int height = 0;
    int channels = 1;
    std::vector<double> data;

    Image() = default;
    Image(int w, int h, int c, double fill = 0.0);

    double& at(int x, int y, int c = 0) {
        return data[(static_cast<std::size_t>(y) * width + x) * channels + c];
    }
    double at(int x, int y, int c = 0) const {
        return data[(static_cast<std::size_t>(y) * width + x) * channels + c];
    }

    std::size_t pixel_count() const {
        return static_cast<std::size_t>(width) * height;
    }
    std::size_t value_count() const { return data.size(); }

    bool same_shape(const Image& o) const {
        return width == o.width && height == o.height && channels == o.channels;
    }

    double min_value() const;
    double max_value() const;
    bool all_finite() const;
};

// Smallest grey value fed to a solver. Zeros in degraded inputs are lifted
// to this floor before deconvolution so the logarithmic data term and the
// multiplicative iterations stay defined.
inline constexpr double kIntensityFloor = 0.1;

/// Reads a binary PGM (P5, 1 channel) or PPM (P6, 3 channels), maxval <= 255.
Image load_image(const std::string& path);

/// Writes P5/P6 with maxval 255; values are clamped to [0,255] and rounded
/// half-up. Only 1- and 3-channel images are supported.
void save_image(const Image& img, const std::string& path);

/// Copy of `img` with every value below `floor` raised to it. The number of
/// lifted values is reported through `lifted` when non-null.
Image apply_intensity_floor(const Image& img, double floor = kIntensityFloor,
                            std::int64_t* lifted = nullptr);

// Discrete convolution kernel with odd dimensions so the anchor is the
// centre tap. Weights are nonnegative and normalised to unit sum.
struct PointSpreadFunction {
    int width = 1;
    int height = 1;
    std::vector<double> weights{1.0};

    int radius_x() const { return width / 2; }
    int radius_y() const { return height / 2; }

    /// Weight at offset (dx, dy) from the anchor, dx in [-radius_x, radius_x].
    double weight(int dx, int dy) const {
        return weights[static_cast<std::size_t>(dy + radius_y()) * width +
                       (dx + radius_x())];
    }

    static PointSpreadFunction delta();

    /// Validates (odd dims, nonnegative, not all zero) and normalises.
    static PointSpreadFunction from_weights(int width, int height,
                                            std::vector<double> weights);
};

/// Reads a kernel from a whitespace-separated text grid or a P5 image and
/// normalises it to unit sum.
PointSpreadFunction load_psf(const std::string& path);

}  // namespace deconv
