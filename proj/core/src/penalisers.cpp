#include "deconv/penalisers.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace deconv {

double csiszar_divergence(double w, double f) {
    if (!(w > 0.0) || !(f > 0.0))
        throw DomainError("csiszar_divergence requires w > 0 and f > 0, got w=" +
                          std::to_string(w) + " f=" + std::to_string(f));
    // Nonnegative by convexity; rounding can leave a tiny negative residue
    // near w = f, which must not reach the penaliser domain checks.
    return std::max(w - f - f * std::log(w / f), 0.0);
}

double phi(double s, const DataPenaliser& p) {
    if (!(s >= 0.0)) throw DomainError("phi requires s >= 0");
    switch (p.kind) {
        case DataPenaliser::Kind::identity:
            return s;
        case DataPenaliser::Kind::robust_sqrt:
            return std::sqrt(s + p.eps) - std::sqrt(p.eps);
    }
    throw DomainError("unknown data penaliser kind");
}

double phi_prime(double s, const DataPenaliser& p) {
    if (!(s >= 0.0)) throw DomainError("phi_prime requires s >= 0");
    switch (p.kind) {
        case DataPenaliser::Kind::identity:
            return 1.0;
        case DataPenaliser::Kind::robust_sqrt:
            return 0.5 / std::sqrt(s + p.eps);
    }
    throw DomainError("unknown data penaliser kind");
}

double psi(double s2, const SmoothnessPenaliser& p) {
    if (!(s2 >= 0.0)) throw DomainError("psi requires s2 >= 0");
    switch (p.kind) {
        case SmoothnessPenaliser::Kind::whittaker_tikhonov:
            return s2;
        case SmoothnessPenaliser::Kind::total_variation:
            return std::sqrt(s2 + p.eps * p.eps);
        case SmoothnessPenaliser::Kind::perona_malik:
            return p.lambda * p.lambda * std::log1p(s2 / (p.lambda * p.lambda));
    }
    throw DomainError("unknown smoothness penaliser kind");
}

double psi_prime(double s2, const SmoothnessPenaliser& p) {
    if (!(s2 >= 0.0)) throw DomainError("psi_prime requires s2 >= 0");
    switch (p.kind) {
        case SmoothnessPenaliser::Kind::whittaker_tikhonov:
            return 1.0;
        case SmoothnessPenaliser::Kind::total_variation:
            return 0.5 / std::sqrt(s2 + p.eps * p.eps);
        case SmoothnessPenaliser::Kind::perona_malik:
            return 1.0 / (1.0 + s2 / (p.lambda * p.lambda));
    }
    throw DomainError("unknown smoothness penaliser kind");
}

}  // namespace deconv
