#pragma once

#include "deconv/image.hpp"

namespace deconv {

// Two index conventions for out-of-range taps. Synthetic degradation uses
// the periodic domain; restoration always works in the spatial domain with
// mirrored (Neumann) extension, so the two pipelines never share a
// discretisation.
enum class BoundaryMode { cyclic, reflect };

/// Convolution out(x) = sum_z h(z) img(x - z), each channel independently.
Image convolve(const Image& img, const PointSpreadFunction& psf, BoundaryMode mode);

/// Exact transpose of convolve() for the same boundary mode, so that
/// <convolve(u), v> == <u, adjoint_convolve(v)> holds to rounding. For a
/// point-symmetric kernel this coincides with convolve(); in cyclic mode it
/// equals convolution with the point-reflected kernel.
Image adjoint_convolve(const Image& img, const PointSpreadFunction& psf, BoundaryMode mode);

/// adjoint_convolve applied to a constant-one image: measures how far the
/// unit-mass property survives the boundary handling. All ones in cyclic
/// mode; deviations stay within one kernel radius of the border in reflect
/// mode.
Image conservation_defect(const PointSpreadFunction& psf, int width, int height,
                          BoundaryMode mode);

}  // namespace deconv
