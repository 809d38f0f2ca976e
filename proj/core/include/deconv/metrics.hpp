#pragma once

#include <string>
#include <vector>

#include "deconv/image.hpp"
#include "deconv/richardson_lucy.hpp"

namespace deconv {

/// Signal-to-noise ratio 10 log10(var(g) / var(g - u)) in dB, variances
/// taken over all pixels of all channels jointly. Returns +infinity when
/// u reproduces g up to a constant shift; a constant reference g is a
/// domain error.
double snr(const Image& u, const Image& g);

/// Discrete objective of the multiplicative solver family:
///   sum_x phi(R(x)) + alpha psi(G(x))
/// with R the information divergence of H (*) u against f summed over
/// channels and G the squared gradient magnitude summed over channels.
/// alpha and the penalisers come from cfg; spatial convolution uses the
/// reflecting boundary, matching the solvers.
double energy(const Image& u, const Image& f, const PointSpreadFunction& psf,
              const SolverConfig& cfg);

// One row of a benchmark results table.
struct BenchRecord {
    std::string method;
    std::string variant;
    double alpha = 0.0;
    int iterations = 0;
    double snr_db = 0.0;
    double energy_initial = 0.0;
    double energy_final = 0.0;
    double wall_s = 0.0;
    double min_iterate = 0.0;  // smallest value seen across all iterations
};

std::string bench_csv_header();
std::string bench_csv_row(const BenchRecord& r);

}  // namespace deconv
