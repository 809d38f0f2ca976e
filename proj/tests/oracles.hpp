// Independent reference implementations used as oracles: direct summation
// convolution, a dense-matrix transpose, direct stencil assembly for the
// divergence term, and direct sums for the energies. Everything here is
// written from the operator definitions, not from the library code paths it
// checks.
#pragma once

#include <cmath>
#include <vector>

#include "deconv/degrade.hpp"
#include "deconv/image.hpp"
#include "deconv/penalisers.hpp"

namespace oracle {

using deconv::Image;

inline int wrap(int i, int n) {
    i %= n;
    return i < 0 ? i + n : i;
}

inline int mirror(int i, int n) {
    while (i < 0 || i >= n) {
        if (i < 0) i = -1 - i;
        if (i >= n) i = 2 * n - 1 - i;
    }
    return i;
}

inline int fold(int i, int n, bool cyclic) { return cyclic ? wrap(i, n) : mirror(i, n); }

// Direct quadruple-loop convolution sum out(x) = sum_z k(z) img(x - z).
// `kernel` is a row-major kh x kw grid (unnormalised values allowed).
inline Image convolve(const Image& img, int kw, int kh,
                      const std::vector<double>& kernel, bool cyclic) {
    const int cx = kw / 2, cy = kh / 2;
    Image out(img.width, img.height, img.channels);
    for (int y = 0; y < img.height; ++y)
        for (int x = 0; x < img.width; ++x)
            for (int c = 0; c < img.channels; ++c) {
                double acc = 0.0;
                for (int ky = 0; ky < kh; ++ky)
                    for (int kx = 0; kx < kw; ++kx) {
                        const int sx = fold(x - (kx - cx), img.width, cyclic);
                        const int sy = fold(y - (ky - cy), img.height, cyclic);
                        acc += kernel[ky * kw + kx] * img.at(sx, sy, c);
                    }
                out.at(x, y, c) = acc;
            }
    return out;
}

// Dense matrix of the single-channel forward convolution, built by applying
// the direct sum to basis images; the exact adjoint is then the transpose.
inline std::vector<std::vector<double>> convolve_matrix(int w, int h, int kw, int kh,
                                                        const std::vector<double>& kernel,
                                                        bool cyclic) {
    const int n = w * h;
    std::vector<std::vector<double>> A(n, std::vector<double>(n, 0.0));
    for (int j = 0; j < n; ++j) {
        Image basis(w, h, 1);
        basis.data[j] = 1.0;
        Image col = convolve(basis, kw, kh, kernel, cyclic);
        for (int i = 0; i < n; ++i) A[i][j] = col.data[i];
    }
    return A;
}

inline Image apply_transpose(const std::vector<std::vector<double>>& A, const Image& v) {
    const int n = static_cast<int>(v.data.size());
    Image out(v.width, v.height, 1);
    for (int j = 0; j < n; ++j) {
        double acc = 0.0;
        for (int i = 0; i < n; ++i) acc += A[i][j] * v.data[i];
        out.data[j] = acc;
    }
    return out;
}

// Diffusivity formulas, restated.
inline double diffusivity(double s2, const deconv::SmoothnessPenaliser& p) {
    using K = deconv::SmoothnessPenaliser::Kind;
    switch (p.kind) {
        case K::whittaker_tikhonov: return 1.0;
        case K::total_variation: return 0.5 / std::sqrt(s2 + p.eps * p.eps);
        case K::perona_malik: return 1.0 / (1.0 + s2 / (p.lambda * p.lambda));
    }
    return 0.0;
}

// Squared gradient magnitude at pixel centres: mirrored central differences.
inline double grad_sq_at(const Image& u, int x, int y, int c) {
    const double dx = 0.5 * (u.at(mirror(x + 1, u.width), y, c) -
                             u.at(mirror(x - 1, u.width), y, c));
    const double dy = 0.5 * (u.at(x, mirror(y + 1, u.height), c) -
                             u.at(x, mirror(y - 1, u.height), c));
    return dx * dx + dy * dy;
}

// Direct assembly of the divergence stencil: pixel-centre diffusivities,
// arithmetic means on half-points, one-sided differences, flux differences,
// zero flux through the image border.
inline Image divergence(const Image& u, const deconv::SmoothnessPenaliser& p,
                        bool coupled) {
    const int w = u.width, h = u.height, ch = u.channels;
    auto diff_at = [&](int x, int y, int c) {
        if (coupled) {
            double sum = 0.0;
            for (int cc = 0; cc < ch; ++cc) sum += grad_sq_at(u, x, y, cc);
            return diffusivity(sum, p);
        }
        return diffusivity(grad_sq_at(u, x, y, c), p);
    };
    Image out(w, h, ch);
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x)
            for (int c = 0; c < ch; ++c) {
                double acc = 0.0;
                if (x + 1 < w)
                    acc += 0.5 * (diff_at(x, y, c) + diff_at(x + 1, y, c)) *
                           (u.at(x + 1, y, c) - u.at(x, y, c));
                if (x > 0)
                    acc -= 0.5 * (diff_at(x, y, c) + diff_at(x - 1, y, c)) *
                           (u.at(x, y, c) - u.at(x - 1, y, c));
                if (y + 1 < h)
                    acc += 0.5 * (diff_at(x, y, c) + diff_at(x, y + 1, c)) *
                           (u.at(x, y + 1, c) - u.at(x, y, c));
                if (y > 0)
                    acc -= 0.5 * (diff_at(x, y, c) + diff_at(x, y - 1, c)) *
                           (u.at(x, y, c) - u.at(x, y - 1, c));
                out.at(x, y, c) = acc;
            }
    return out;
}

// Test-instance helpers.

inline Image random_positive(int w, int h, int ch, std::uint64_t seed, double lo = 1.0,
                             double hi = 255.0) {
    deconv::SplitMix64 rng(seed);
    Image img(w, h, ch);
    for (double& v : img.data) v = lo + (hi - lo) * rng.uniform();
    return img;
}

inline Image random_signed(int w, int h, int ch, std::uint64_t seed, double amp = 1.0) {
    deconv::SplitMix64 rng(seed);
    Image img(w, h, ch);
    for (double& v : img.data) v = amp * (2.0 * rng.uniform() - 1.0);
    return img;
}

inline double max_abs_diff(const Image& a, const Image& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.data.size(); ++i)
        m = std::max(m, std::abs(a.data[i] - b.data[i]));
    return m;
}

// Largest relative difference over the interior, excluding a margin band.
inline double interior_max_rel_diff(const Image& a, const Image& b, int margin) {
    double m = 0.0;
    for (int y = margin; y < a.height - margin; ++y)
        for (int x = margin; x < a.width - margin; ++x)
            for (int c = 0; c < a.channels; ++c) {
                const double va = a.at(x, y, c), vb = b.at(x, y, c);
                const double scale = std::max({std::abs(va), std::abs(vb), 1e-30});
                m = std::max(m, std::abs(va - vb) / scale);
            }
    return m;
}

inline double inner(const Image& a, const Image& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.data.size(); ++i) s += a.data[i] * b.data[i];
    return s;
}

// 3x3 binomial kernel, unnormalised.
inline std::vector<double> binomial3() { return {1, 2, 1, 2, 4, 2, 1, 2, 1}; }

}  // namespace oracle
