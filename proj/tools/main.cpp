// Command-line front end: degradation (blur, noise), deconvolution with the
// multiplicative solver family or the variational descent baseline, and the
// benchmark presets.

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <map>
#include <set>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "deconv/bench.hpp"
#include "deconv/degrade.hpp"
#include "deconv/image.hpp"
#include "deconv/metrics.hpp"
#include "deconv/richardson_lucy.hpp"
#include "deconv/variational.hpp"

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitIo = 2;
constexpr int kExitNumerical = 3;

struct BlurArgs {
    std::string input, output, psf;
};

struct NoiseArgs {
    std::string input, output;
    deconv::NoiseSpec spec;
};

struct DeconvArgs {
    std::string input, output, psf, method = "rl", ground_truth;
    int iterations = 1;
    double alpha = 0.0;
    std::string phi = "robust-sqrt";
    double phi_eps = 1e-2;
    std::string psi = "tv";
    double psi_eps = 1e-3;
    double lambda = 15.0;
    double tau = 0.001;
    double data_eps = 0.1;
    double floor = deconv::kIntensityFloor;
    bool constrained = false;
    double stop_rel_change = 0.0;
    int record_energy = 0;
    bool dump_config = false;
};

struct BenchArgs {
    std::string preset, out, data_dir = "data";
    std::uint64_t seed = 7;
    bool no_timing = false;
};

deconv::DataPenaliser make_phi(const DeconvArgs& a) {
    deconv::DataPenaliser p;
    p.kind = a.phi == "identity" ? deconv::DataPenaliser::Kind::identity
                                 : deconv::DataPenaliser::Kind::robust_sqrt;
    p.eps = a.phi_eps;
    return p;
}

deconv::SmoothnessPenaliser make_psi(const DeconvArgs& a) {
    deconv::SmoothnessPenaliser p;
    if (a.psi == "wt")
        p.kind = deconv::SmoothnessPenaliser::Kind::whittaker_tikhonov;
    else if (a.psi == "pm")
        p.kind = deconv::SmoothnessPenaliser::Kind::perona_malik;
    else
        p.kind = deconv::SmoothnessPenaliser::Kind::total_variation;
    p.lambda = a.lambda;
    p.eps = a.psi_eps;
    return p;
}

int run_blur(const BlurArgs& a) {
    deconv::Image img = deconv::load_image(a.input);
    deconv::PointSpreadFunction psf = deconv::load_psf(a.psf);
    deconv::save_image(deconv::synth_blur(img, psf), a.output);
    return 0;
}

int run_noise(const NoiseArgs& a) {
    deconv::Image img = deconv::load_image(a.input);
    deconv::save_image(deconv::add_noise(img, a.spec), a.output);
    return 0;
}

int run_deconv(const DeconvArgs& a) {
    deconv::Image observed = deconv::load_image(a.input);
    deconv::PointSpreadFunction psf = deconv::load_psf(a.psf);

    std::int64_t lifted = 0;
    observed = deconv::apply_intensity_floor(observed, a.floor, &lifted);
    if (lifted > 0)
        std::cerr << "note: lifted " << lifted << " values to the intensity floor "
                  << a.floor << "\n";

    deconv::RunResult result;
    if (a.method == "variational") {
        deconv::DescentConfig cfg;
        cfg.tau = a.tau;
        cfg.iterations = a.iterations;
        cfg.alpha = a.alpha;
        cfg.data_eps = a.data_eps;
        cfg.smoothness_penaliser = make_psi(a);
        cfg.constrained = a.constrained;
        result = deconv::run_descent(observed, psf, cfg);
        if (result.trace.step_size_warning)
            std::cerr << "warning: energy increased over ten consecutive steps "
                         "(iteration "
                      << result.trace.warning_iteration << "); reduce --tau\n";
    } else {
        deconv::SolverConfig cfg;
        cfg.iterations = a.iterations;
        cfg.alpha = a.alpha;
        cfg.data_penaliser = make_phi(a);
        cfg.smoothness_penaliser = make_psi(a);
        if (a.stop_rel_change > 0.0) cfg.stop_rel_change = a.stop_rel_change;
        cfg.record_energy_every = a.record_energy;
        const std::map<std::string, deconv::Variant> variants{
            {"rl", deconv::Variant::rl},
            {"regularised", deconv::Variant::regularised},
            {"robust", deconv::Variant::robust},
            {"rrrl", deconv::Variant::rrrl}};
        result = deconv::run(observed, psf, cfg, variants.at(a.method));
    }

    std::int64_t guarded = 0;
    for (const auto& s : result.trace.steps) guarded += s.guarded_pixels;
    if (guarded > 0)
        std::cerr << "warning: ratio denominator floored on " << guarded
                  << " pixel evaluations; check the configuration\n";

    deconv::save_image(result.restored, a.output);

    if (!a.ground_truth.empty()) {
        deconv::Image g = deconv::load_image(a.ground_truth);
        char buf[64];
        std::snprintf(buf, sizeof(buf), "SNR: %.4f dB",
                      deconv::snr(result.restored, g));
        std::cout << buf << "\n";
    }
    return 0;
}

int run_bench(const BenchArgs& a) {
    deconv::BenchOptions options;
    options.seed = a.seed;
    options.data_dir = a.data_dir;
    options.timing = !a.no_timing;
    const std::string csv = deconv::bench_csv(deconv::bench_preset(a.preset, options));
    if (a.out.empty()) {
        std::cout << csv;
    } else {
        std::ofstream out(a.out);
        if (!out) throw deconv::IoError(a.out + ": cannot open for writing");
        out << csv;
    }
    return 0;
}

}  // namespace

// Expands `deconv --config FILE ...` by translating the file's key=value
// lines into --key=value arguments injected ahead of the explicit flags, so
// the command line overrides the file and the file overrides the defaults.
// Unknown keys are rejected before any computation.
std::vector<std::string> expand_config(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    if (args.empty() || args[0] != "deconv") return args;

    std::string path;
    for (std::size_t i = 1; i < args.size(); ++i) {
        if (args[i] == "--config" && i + 1 < args.size())
            path = args[i + 1];
        else if (args[i].rfind("--config=", 0) == 0)
            path = args[i].substr(9);
    }
    if (path.empty()) return args;

    static const std::set<std::string> known{
        "method",    "iterations", "alpha",   "psf",  "phi",
        "phi-eps",   "psi",        "psi-eps", "lambda", "tau",
        "data-eps",  "floor",      "constrained", "stop-rel-change",
        "record-energy", "ground-truth"};

    // Keys set explicitly on the command line win; skip them when injecting.
    auto given_on_cmdline = [&](const std::string& key) {
        const std::string plain = "--" + key;
        const std::string assigned = plain + "=";
        for (std::size_t i = 1; i < args.size(); ++i)
            if (args[i] == plain || args[i].rfind(assigned, 0) == 0) return true;
        return false;
    };

    std::ifstream in(path);
    if (!in) throw deconv::IoError(path + ": cannot open config file");
    std::vector<std::string> injected;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos) continue;
        const auto last = line.find_last_not_of(" \t\r");
        line = line.substr(first, last - first + 1);
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw CLI::ValidationError("config", path + ":" + std::to_string(lineno) +
                                                     ": expected key=value");
        const std::string key = line.substr(0, eq);
        if (!known.count(key))
            throw CLI::ValidationError("config", path + ":" + std::to_string(lineno) +
                                                     ": unknown key '" + key + "'");
        if (!given_on_cmdline(key)) injected.push_back("--" + line);
    }
    args.insert(args.begin() + 1, injected.begin(), injected.end());
    return args;
}

int main(int argc, char** argv) {
    CLI::App app{"Positive image deconvolution: Richardson-Lucy family and "
                 "variational descent baselines"};
    app.require_subcommand(1);

    BlurArgs blur_args;
    auto* blur = app.add_subcommand("blur", "Synthetic periodic blur");
    blur->add_option("--psf", blur_args.psf, "Kernel file (text grid or P5)")->required();
    blur->add_option("input", blur_args.input, "Input PGM/PPM")->required();
    blur->add_option("output", blur_args.output, "Output PGM/PPM")->required();

    NoiseArgs noise_args;
    auto* noise = app.add_subcommand("noise", "Add seeded synthetic noise");
    noise
        ->add_option_function<std::string>(
            "--kind",
            [&](const std::string& kind) {
                if (kind == "impulse")
                    noise_args.spec.kind = deconv::NoiseSpec::Kind::impulse_uniform;
                else if (kind == "gaussian")
                    noise_args.spec.kind = deconv::NoiseSpec::Kind::gaussian;
                else
                    noise_args.spec.kind = deconv::NoiseSpec::Kind::poisson;
            },
            "Noise kind")
        ->check(CLI::IsMember({"impulse", "gaussian", "poisson"}))
        ->default_str("impulse");
    noise->add_option("--fraction", noise_args.spec.fraction,
                      "Replacement probability (impulse)")
        ->check(CLI::Range(0.0, 1.0));
    noise->add_option("--sigma", noise_args.spec.sigma, "Std deviation (gaussian)")
        ->check(CLI::NonNegativeNumber);
    noise->add_option("--seed", noise_args.spec.seed, "Generator seed");
    noise->add_option("input", noise_args.input)->required();
    noise->add_option("output", noise_args.output)->required();

    DeconvArgs deconv_args;
    auto* dec = app.add_subcommand("deconv", "Non-blind deconvolution");
    std::string config_path;
    dec->add_option("--config", config_path,
                    "Flat key=value config file; flags override it, the file "
                    "overrides built-in defaults");
    dec->add_option("--method", deconv_args.method, "Solver")
        ->check(CLI::IsMember({"rl", "regularised", "robust", "rrrl", "variational"}))
        ->capture_default_str();
    dec->add_option("--iterations", deconv_args.iterations, "Iteration count")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    dec->add_option("--alpha", deconv_args.alpha, "Regularisation weight")
        ->check(CLI::NonNegativeNumber)
        ->capture_default_str();
    dec->add_option("--psf", deconv_args.psf, "Kernel file")->required();
    dec->add_option("--phi", deconv_args.phi, "Data penaliser (robust/rrrl)")
        ->check(CLI::IsMember({"identity", "robust-sqrt"}))
        ->capture_default_str();
    dec->add_option("--phi-eps", deconv_args.phi_eps, "Data penaliser constant")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    dec->add_option("--psi", deconv_args.psi, "Smoothness penaliser")
        ->check(CLI::IsMember({"wt", "tv", "pm"}))
        ->capture_default_str();
    dec->add_option("--psi-eps", deconv_args.psi_eps, "TV regularisation constant")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    dec->add_option("--lambda", deconv_args.lambda, "Perona-Malik contrast")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    dec->add_option("--tau", deconv_args.tau, "Descent time step (variational)")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    dec->add_option("--data-eps", deconv_args.data_eps,
                    "L1 data-term constant (variational)")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    dec->add_option("--floor", deconv_args.floor, "Intensity floor for the input")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    dec->add_flag("--constrained", deconv_args.constrained,
                  "Positivity-preserving descent (variational)");
    dec->add_option("--stop-rel-change", deconv_args.stop_rel_change,
                    "Early stop threshold in (0,1); 0 disables")
        ->check(CLI::Range(0.0, 1.0))
        ->capture_default_str();
    dec->add_option("--record-energy", deconv_args.record_energy,
                    "Record the energy every N iterations; 0 disables")
        ->check(CLI::NonNegativeNumber)
        ->capture_default_str();
    dec->add_option("--ground-truth", deconv_args.ground_truth,
                    "Reference image; prints the final SNR");
    dec->add_flag("--dump-config", deconv_args.dump_config,
                  "Print the fully resolved configuration and exit");
    dec->add_option("input", deconv_args.input)->required();
    dec->add_option("output", deconv_args.output)->required();

    BenchArgs bench_args;
    auto* bench = app.add_subcommand("bench", "Run a benchmark preset, emit CSV");
    bench->add_option("--preset", bench_args.preset, "fig1 or fig2")
        ->check(CLI::IsMember({"fig1", "fig2"}))
        ->required();
    bench->add_option("--seed", bench_args.seed, "Degradation seed");
    bench->add_option("--out", bench_args.out, "CSV output path (default stdout)");
    bench->add_option("--data-dir", bench_args.data_dir, "Asset directory")
        ->capture_default_str();
    bench->add_flag("--no-timing", bench_args.no_timing,
                    "Report wall_s as 0 for byte-reproducible CSV");

    try {
        std::vector<std::string> args = expand_config(argc, argv);
        std::reverse(args.begin(), args.end());  // CLI11 consumes back-to-front
        app.parse(std::move(args));
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        app.exit(e);
        return kExitUsage;
    } catch (const deconv::IoError& e) {
        std::cerr << "error: io: " << e.what() << "\n";
        return kExitIo;
    }

    try {
        if (blur->parsed()) return run_blur(blur_args);
        if (noise->parsed()) return run_noise(noise_args);
        if (dec->parsed()) {
            if (deconv_args.dump_config) {
                std::cout << dec->config_to_str(true, false);
                return 0;
            }
            return run_deconv(deconv_args);
        }
        if (bench->parsed()) return run_bench(bench_args);
    } catch (const deconv::StabilityError& e) {
        std::cerr << "error: stability: " << e.what() << "\n";
        return kExitNumerical;
    } catch (const deconv::DivergenceError& e) {
        std::cerr << "error: divergence: " << e.what() << "\n";
        return kExitNumerical;
    } catch (const deconv::StepSizeError& e) {
        std::cerr << "error: step-size: " << e.what() << "\n";
        return kExitNumerical;
    } catch (const deconv::IoError& e) {
        std::cerr << "error: io: " << e.what() << "\n";
        return kExitIo;
    } catch (const deconv::Error& e) {
        std::cerr << "error: input: " << e.what() << "\n";
        return kExitIo;
    }
    return 0;
}
