#include "deconv/diffusion.hpp"

namespace deconv {

namespace {

inline int mirror_lo(int i) { return i < 0 ? 0 : i; }
inline int mirror_hi(int i, int n) { return i >= n ? n - 1 : i; }

}  // namespace

Image central_diff_x(const Image& u) {
    Image d(u.width, u.height, u.channels);
    for (int y = 0; y < u.height; ++y)
        for (int x = 0; x < u.width; ++x) {
            const int xe = mirror_hi(x + 1, u.width);
            const int xw = mirror_lo(x - 1);
            for (int c = 0; c < u.channels; ++c)
                d.at(x, y, c) = 0.5 * (u.at(xe, y, c) - u.at(xw, y, c));
        }
    return d;
}

Image central_diff_y(const Image& u) {
    Image d(u.width, u.height, u.channels);
    for (int y = 0; y < u.height; ++y) {
        const int ys = mirror_hi(y + 1, u.height);
        const int yn = mirror_lo(y - 1);
        for (int x = 0; x < u.width; ++x)
            for (int c = 0; c < u.channels; ++c)
                d.at(x, y, c) = 0.5 * (u.at(x, ys, c) - u.at(x, yn, c));
    }
    return d;
}

Image squared_gradient(const Image& u) {
    Image dx = central_diff_x(u);
    Image dy = central_diff_y(u);
    Image s2(u.width, u.height, u.channels);
    for (std::size_t i = 0; i < s2.data.size(); ++i)
        s2.data[i] = dx.data[i] * dx.data[i] + dy.data[i] * dy.data[i];
    return s2;
}

Image divergence_term(const Image& u, const SmoothnessPenaliser& p, bool coupled) {
    const int w = u.width, h = u.height, ch = u.channels;
    Image s2 = squared_gradient(u);

    // Diffusivity planes: one shared plane when coupled, one per channel
    // otherwise.
    const int gplanes = coupled ? 1 : ch;
    Image g(w, h, gplanes);
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x) {
            if (coupled) {
                double sum = 0.0;
                for (int c = 0; c < ch; ++c) sum += s2.at(x, y, c);
                g.at(x, y, 0) = psi_prime(sum, p);
            } else {
                for (int c = 0; c < ch; ++c)
                    g.at(x, y, c) = psi_prime(s2.at(x, y, c), p);
            }
        }

    Image div(w, h, ch);
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            for (int c = 0; c < ch; ++c) {
                const int gc = coupled ? 0 : c;
                const double gp = g.at(x, y, gc);
                const double up = u.at(x, y, c);
                double acc = 0.0;
                // Half-point fluxes; boundary faces carry none.
                if (x + 1 < w)
                    acc += 0.5 * (gp + g.at(x + 1, y, gc)) * (u.at(x + 1, y, c) - up);
                if (x > 0)
                    acc -= 0.5 * (gp + g.at(x - 1, y, gc)) * (up - u.at(x - 1, y, c));
                if (y + 1 < h)
                    acc += 0.5 * (gp + g.at(x, y + 1, gc)) * (u.at(x, y + 1, c) - up);
                if (y > 0)
                    acc -= 0.5 * (gp + g.at(x, y - 1, gc)) * (up - u.at(x, y - 1, c));
                div.at(x, y, c) = acc;
            }
        }
    }
    return div;
}

}  // namespace deconv
