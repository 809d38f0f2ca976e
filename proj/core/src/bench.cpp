#include "deconv/bench.hpp"

#include <chrono>

#include "deconv/degrade.hpp"
#include "deconv/variational.hpp"

namespace deconv {

namespace {

using Clock = std::chrono::steady_clock;

struct MethodSpec {
    std::string method;
    std::string variant;
    Variant solver = Variant::rl;
    bool is_descent = false;
    int iterations = 0;
    double alpha = 0.0;
    bool constrained = false;
};

BenchRun execute(const MethodSpec& m, const Image& observed,
                 const Image& ground_truth, const PointSpreadFunction& psf,
                 bool timing) {
    BenchRun out;
    const auto t0 = Clock::now();
    RunResult rr;
    if (m.is_descent) {
        DescentConfig cfg;
        cfg.iterations = m.iterations;
        cfg.alpha = m.alpha;
        cfg.constrained = m.constrained;
        cfg.smoothness_penaliser = {SmoothnessPenaliser::Kind::perona_malik, 15.0, 1e-3};
        rr = run_descent(observed, psf, cfg);
    } else {
        SolverConfig cfg;
        cfg.iterations = m.iterations;
        cfg.alpha = m.alpha;
        cfg.data_penaliser = {DataPenaliser::Kind::robust_sqrt, 1e-2};
        // TV smoothing scale of one grey value: keeps the flat-region
        // diffusivity, and with it alpha's effective weight, on the order the
        // preset alphas assume for [0,255] data.
        cfg.smoothness_penaliser = {SmoothnessPenaliser::Kind::total_variation, 15.0, 1.0};
        cfg.record_energy_every = m.iterations;  // initial and final energies
        rr = run(observed, psf, cfg, m.solver);
    }
    const auto t1 = Clock::now();

    out.restored = std::move(rr.restored);
    out.trace = std::move(rr.trace);
    out.record.method = m.method;
    out.record.variant = m.variant;
    out.record.alpha = m.alpha;
    out.record.iterations = m.iterations;
    out.record.snr_db = snr(out.restored, ground_truth);
    out.record.energy_initial = out.trace.energy_initial;
    out.record.energy_final =
        out.trace.steps.empty() ? out.trace.energy_initial
                                : out.trace.steps.back().energy;
    out.record.min_iterate = out.trace.min_over_run();
    out.record.wall_s =
        timing ? std::chrono::duration<double>(t1 - t0).count() : 0.0;
    return out;
}

}  // namespace

BenchResult run_preset(const std::string& name, const BenchOptions& options) {
    std::string psf_file;
    double noise_fraction = 0.0;
    std::vector<MethodSpec> methods;

    if (name == "fig1") {
        psf_file = "psf_irregular9.txt";
        noise_fraction = 0.15;
        methods = {
            {"rl", "plain", Variant::rl, false, 10, 0.0, false},
            {"regularised", "tv", Variant::regularised, false, 100, 0.1, false},
            {"robust", "sqrt", Variant::robust, false, 50, 0.0, false},
            {"rrrl", "tv", Variant::rrrl, false, 200, 0.005, false},
            {"rrrl", "tv-long", Variant::rrrl, false, 2000, 0.005, false},
            {"variational", "unconstrained", Variant::rl, true, 1500, 0.06, false},
            {"variational", "constrained", Variant::rl, true, 1500, 0.06, true},
        };
    } else if (name == "fig2") {
        psf_file = "psf_motion15.txt";
        noise_fraction = 0.30;
        methods = {
            {"rl", "plain", Variant::rl, false, 10, 0.0, false},
            {"regularised", "tv", Variant::regularised, false, 100, 0.05, false},
            {"robust", "sqrt", Variant::robust, false, 100, 0.0, false},
            {"rrrl", "tv", Variant::rrrl, false, 400, 0.003, false},
        };
    } else {
        throw DomainError("unknown bench preset '" + name + "' (use fig1 or fig2)");
    }

    BenchResult result;
    result.ground_truth = load_image(options.data_dir + "/chart256.pgm");
    const PointSpreadFunction psf = load_psf(options.data_dir + "/" + psf_file);

    NoiseSpec noise;
    noise.kind = NoiseSpec::Kind::impulse_uniform;
    noise.fraction = noise_fraction;
    noise.seed = options.seed;
    result.degraded = add_noise(synth_blur(result.ground_truth, psf), noise);
    result.observed =
        apply_intensity_floor(result.degraded, kIntensityFloor, &result.floored_pixels);

    for (const MethodSpec& m : methods)
        result.runs.push_back(
            execute(m, result.observed, result.ground_truth, psf, options.timing));
    return result;
}

std::vector<BenchRecord> bench_preset(const std::string& name,
                                      const BenchOptions& options) {
    BenchResult result = run_preset(name, options);
    std::vector<BenchRecord> records;
    records.reserve(result.runs.size());
    for (BenchRun& r : result.runs) records.push_back(std::move(r.record));
    return records;
}

std::string bench_csv(const std::vector<BenchRecord>& records) {
    std::string out = bench_csv_header() + "\n";
    for (const BenchRecord& r : records) out += bench_csv_row(r) + "\n";
    return out;
}

}  // namespace deconv
