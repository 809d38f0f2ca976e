#include "deconv/convolve.hpp"

#include <vector>

namespace deconv {

namespace {

int wrap_index(int i, int n) {
    i %= n;
    return i < 0 ? i + n : i;
}

// Half-sample mirror: ... u1 u0 | u0 u1 ... u(n-1) | u(n-1) ...
// Folds repeatedly so radii larger than the image stay valid.
int mirror_index(int i, int n) {
    while (i < 0 || i >= n) {
        if (i < 0) i = -1 - i;
        if (i >= n) i = 2 * n - 1 - i;
    }
    return i;
}

// Lookup table mapping extended coordinates [-radius, n + radius) to
// in-range indices; entry k corresponds to coordinate k - radius.
std::vector<int> index_map(int n, int radius, BoundaryMode mode) {
    std::vector<int> map(static_cast<std::size_t>(n) + 2 * radius);
    for (int i = -radius; i < n + radius; ++i)
        map[i + radius] = (mode == BoundaryMode::cyclic) ? wrap_index(i, n)
                                                         : mirror_index(i, n);
    return map;
}

}  // namespace

Image convolve(const Image& img, const PointSpreadFunction& psf, BoundaryMode mode) {
    const int w = img.width, h = img.height, ch = img.channels;
    const int rx = psf.radius_x(), ry = psf.radius_y();
    const std::vector<int> xmap = index_map(w, rx, mode);
    const std::vector<int> ymap = index_map(h, ry, mode);

    Image out(w, h, ch);
    std::vector<double> acc(ch);
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            std::fill(acc.begin(), acc.end(), 0.0);
            for (int dy = -ry; dy <= ry; ++dy) {
                const int sy = ymap[y - dy + ry];
                for (int dx = -rx; dx <= rx; ++dx) {
                    const int sx = xmap[x - dx + rx];
                    const double wgt = psf.weight(dx, dy);
                    if (wgt == 0.0) continue;
                    const double* src = &img.data[(static_cast<std::size_t>(sy) * w + sx) * ch];
                    for (int c = 0; c < ch; ++c) acc[c] += wgt * src[c];
                }
            }
            double* dst = &out.data[(static_cast<std::size_t>(y) * w + x) * ch];
            for (int c = 0; c < ch; ++c) dst[c] = acc[c];
        }
    }
    return out;
}

Image adjoint_convolve(const Image& img, const PointSpreadFunction& psf, BoundaryMode mode) {
    const int w = img.width, h = img.height, ch = img.channels;
    const int rx = psf.radius_x(), ry = psf.radius_y();
    const std::vector<int> xmap = index_map(w, rx, mode);
    const std::vector<int> ymap = index_map(h, ry, mode);

    // Scatter form of the transpose: every forward contribution
    // h(z) * img(map(x - z)) -> out(x) becomes h(z) * v(x) -> out(map(x - z)),
    // so the boundary index map is applied exactly as in convolve().
    Image out(w, h, ch);
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            const double* src = &img.data[(static_cast<std::size_t>(y) * w + x) * ch];
            for (int dy = -ry; dy <= ry; ++dy) {
                const int ty = ymap[y - dy + ry];
                for (int dx = -rx; dx <= rx; ++dx) {
                    const double wgt = psf.weight(dx, dy);
                    if (wgt == 0.0) continue;
                    const int tx = xmap[x - dx + rx];
                    double* dst = &out.data[(static_cast<std::size_t>(ty) * w + tx) * ch];
                    for (int c = 0; c < ch; ++c) dst[c] += wgt * src[c];
                }
            }
        }
    }
    return out;
}

Image conservation_defect(const PointSpreadFunction& psf, int width, int height,
                          BoundaryMode mode) {
    Image ones(width, height, 1, 1.0);
    return adjoint_convolve(ones, psf, mode);
}

}  // namespace deconv
