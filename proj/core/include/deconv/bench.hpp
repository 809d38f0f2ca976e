#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "deconv/image.hpp"
#include "deconv/metrics.hpp"
#include "deconv/richardson_lucy.hpp"

namespace deconv {

struct BenchOptions {
    std::uint64_t seed = 7;
    std::string data_dir = "data";
    // With timing off, wall_s is reported as 0 so a fixed seed yields
    // byte-identical CSV output across runs.
    bool timing = true;
};

// Full per-method outputs of a preset run; tests want the traces and the
// restored images, the CLI only the records.
struct BenchRun {
    BenchRecord record;
    IterationTrace trace;
    Image restored;
};

struct BenchResult {
    Image ground_truth;
    Image degraded;                  // blurred + noise, before the floor
    Image observed;                  // degraded with the intensity floor applied
    std::int64_t floored_pixels = 0;
    std::vector<BenchRun> runs;
};

/// Runs one of the bundled benchmark presets.
///
/// fig1: moderate irregular blur (psf_irregular9.txt) + 15% impulse noise;
///       methods rl@10, regularised@100 (alpha 0.1), robust@50,
///       rrrl@200 and rrrl@2000 (alpha 0.005), variational descent
///       (Perona-Malik lambda 15, alpha 0.06, 1500 steps) without and with
///       the positivity constraint.
/// fig2: severe motion blur (psf_motion15.txt) + 30% impulse noise;
///       methods rl@10, regularised@100 (alpha 0.05), robust@100,
///       rrrl@400 (alpha 0.003).
///
/// Both degrade the bundled 256x256 chart (chart256.pgm) found under
/// options.data_dir. Missing assets raise IoError.
BenchResult run_preset(const std::string& name, const BenchOptions& options);

/// Records only, in deterministic order.
std::vector<BenchRecord> bench_preset(const std::string& name,
                                      const BenchOptions& options);

/// Header line plus one row per record.
std::string bench_csv(const std::vector<BenchRecord>& records);

}  // namespace deconv
