#pragma once

#include "deconv/image.hpp"
#include "deconv/penalisers.hpp"

namespace deconv {

/// Central difference in x with mirrored boundaries, per channel:
/// (u(x+1) - u(x-1)) / 2 with u(-1) = u(0), u(w) = u(w-1).
Image central_diff_x(const Image& u);

/// Central difference in y, same conventions.
Image central_diff_y(const Image& u);

/// Per-channel squared gradient magnitude from the central differences.
/// This single definition feeds both the diffusivities and the smoothness
/// energies; the channel-coupled variants sum it over channels.
Image squared_gradient(const Image& u);

// Discrete div(psi'(.) grad u): diffusivities psi'(s2) at pixel centres,
// averaged onto half-points, times one-sided differences, then flux
// differences. Boundary faces carry zero flux (mirrored extension), so each
// channel's field sums to zero.
//
// With coupled = true the diffusivity argument is the squared gradient
// summed over channels; for a single channel both modes coincide exactly.
Image divergence_term(const Image& u, const SmoothnessPenaliser& p, bool coupled);

}  // namespace deconv
