#pragma once

#include "deconv/errors.hpp"

namespace deconv {

// Penaliser applied on top of the per-pixel information divergence of the
// data term. identity recovers the quadratic-free classical data term;
// robust_sqrt grows sub-linearly so outliers get bounded influence.
struct DataPenaliser {
    enum class Kind { identity, robust_sqrt };
    Kind kind = Kind::identity;
    double eps = 1e-2;  // regularisation constant, grey-value^2 units
};

// Smoothness penaliser psi acting on the squared gradient magnitude.
struct SmoothnessPenaliser {
    enum class Kind { whittaker_tikhonov, total_variation, perona_malik };
    Kind kind = Kind::whittaker_tikhonov;
    double lambda = 15.0;  // contrast parameter (perona_malik only)
    double eps = 1e-3;     // TV regularisation constant, grey-values
};

/// Csiszar information divergence integrand r_f(w) = w - f - f ln(w/f).
/// Strictly convex for w > 0 with its minimum value 0 at w = f.
double csiszar_divergence(double w, double f);

/// phi(s): identity -> s; robust_sqrt -> sqrt(s + eps) - sqrt(eps).
double phi(double s, const DataPenaliser& p);

/// phi'(s): identity -> 1; robust_sqrt -> 1 / (2 sqrt(s + eps)).
double phi_prime(double s, const DataPenaliser& p);

/// psi(s2): whittaker_tikhonov -> s2; total_variation -> sqrt(s2 + eps^2);
/// perona_malik -> lambda^2 ln(1 + s2 / lambda^2).
double psi(double s2, const SmoothnessPenaliser& p);

/// psi'(s2), the diffusivity: 1; 1 / (2 sqrt(s2 + eps^2));
/// 1 / (1 + s2 / lambda^2). Positive everywhere for all three kinds.
double psi_prime(double s2, const SmoothnessPenaliser& p);

}  // namespace deconv
