#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include "deconv/bench.hpp"
#include "deconv/image.hpp"
#include "oracles.hpp"

using namespace deconv;

namespace {

int run_cli(const std::string& args) {
    const std::string cmd = std::string(RLDECONV_CLI) + " " + args;
    const int status = std::system(cmd.c_str());
    return WEXITSTATUS(status);
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

TEST_CASE("bench preset rejects unknown names and missing assets") {
    BenchOptions opts;
    opts.data_dir = "no_such_dir";
    CHECK_THROWS_AS(bench_preset("fig3", opts), DomainError);
    CHECK_THROWS_AS(bench_preset("fig1", opts), IoError);
}

TEST_CASE("cli: missing subcommand and bad flags give usage errors") {
    CHECK(run_cli("> /dev/null 2>&1") == 1);
    CHECK(run_cli("deconv --method nope --psf k.txt a.pgm b.pgm > /dev/null 2>&1") == 1);
    CHECK(run_cli("deconv --method rrrl --alpha -1 --psf k.txt a.pgm b.pgm > /dev/null 2>&1") == 1);
    CHECK(run_cli("bench --preset fig9 > /dev/null 2>&1") == 1);
}

TEST_CASE("cli: i/o failures exit with code 2") {
    CHECK(run_cli("blur --psf no_kernel.txt no_input.pgm out.pgm > /dev/null 2>&1") == 2);
}

TEST_CASE("cli: blur, noise and deconv round-trip on a tiny image") {
    Image img = oracle::random_positive(16, 16, 1, 3, 30.0, 220.0);
    save_image(img, "cli_in.pgm");
    {
        std::ofstream k("cli_k.txt");
        k << "1 2 1\n2 4 2\n1 2 1\n";
    }

    CHECK(run_cli("blur --psf cli_k.txt cli_in.pgm cli_blur.pgm > /dev/null 2>&1") == 0);
    CHECK(run_cli("noise --kind impulse --fraction 0.1 --seed 3 cli_blur.pgm "
                  "cli_noisy.pgm > /dev/null 2>&1") == 0);
    CHECK(run_cli("deconv --method rrrl --iterations 5 --alpha 0.01 --psi tv "
                  "--psi-eps 1.0 --psf cli_k.txt --ground-truth cli_in.pgm "
                  "cli_noisy.pgm cli_out.pgm > cli_snr.txt 2>/dev/null") == 0);
    const std::string out = slurp("cli_snr.txt");
    CHECK(out.find("SNR:") != std::string::npos);
    CHECK(out.find("dB") != std::string::npos);
    Image restored = load_image("cli_out.pgm");
    CHECK(restored.width == 16);

    CHECK(run_cli("deconv --method variational --iterations 5 --alpha 0.01 "
                  "--constrained --psf cli_k.txt cli_noisy.pgm cli_out.pgm "
                  "> /dev/null 2>&1") == 0);

    for (const char* p : {"cli_in.pgm", "cli_k.txt", "cli_blur.pgm", "cli_noisy.pgm",
                          "cli_out.pgm", "cli_snr.txt"})
        std::remove(p);
}

TEST_CASE("cli: config file feeds defaults, flags override, unknown keys rejected") {
    Image img = oracle::random_positive(8, 8, 1, 5, 30.0, 220.0);
    save_image(img, "cli_cfg_in.pgm");
    {
        std::ofstream k("cli_cfg_k.txt");
        k << "1\n";
    }
    {
        std::ofstream cfg("cli_cfg.txt");
        cfg << "iterations=3\nalpha=0.25\n";
    }

    CHECK(run_cli("deconv --config cli_cfg.txt --psf cli_cfg_k.txt --dump-config "
                  "cli_cfg_in.pgm cli_cfg_out.pgm > cli_cfg_dump.txt 2>&1") == 0);
    const std::string dump = slurp("cli_cfg_dump.txt");
    CHECK(dump.find("alpha=0.25") != std::string::npos);
    CHECK(dump.find("iterations=3") != std::string::npos);

    // Flag wins over the file.
    CHECK(run_cli("deconv --config cli_cfg.txt --alpha 0.5 --psf cli_cfg_k.txt "
                  "--dump-config cli_cfg_in.pgm cli_cfg_out.pgm > cli_cfg_dump.txt "
                  "2>&1") == 0);
    CHECK(slurp("cli_cfg_dump.txt").find("alpha=0.5") != std::string::npos);

    {
        std::ofstream cfg("cli_cfg.txt");
        cfg << "no_such_key=1\n";
    }
    CHECK(run_cli("deconv --config cli_cfg.txt --psf cli_cfg_k.txt cli_cfg_in.pgm "
                  "cli_cfg_out.pgm > /dev/null 2>&1") == 1);

    for (const char* p : {"cli_cfg_in.pgm", "cli_cfg_k.txt", "cli_cfg.txt",
                          "cli_cfg_out.pgm", "cli_cfg_dump.txt"})
        std::remove(p);
}

TEST_CASE("cli: numerical failure exits with code 3") {
    // Constrained descent with an absurd time step loses positivity.
    Image img = oracle::random_positive(8, 8, 1, 7, 30.0, 220.0);
    save_image(img, "cli_num_in.pgm");
    {
        std::ofstream k("cli_num_k.txt");
        k << "1 2 1\n2 4 2\n1 2 1\n";
    }
    CHECK(run_cli("deconv --method variational --constrained --tau 10000 "
                  "--iterations 3 --alpha 0.5 --psi wt --psf cli_num_k.txt "
                  "cli_num_in.pgm cli_num_out.pgm > /dev/null 2>&1") == 3);
    for (const char* p : {"cli_num_in.pgm", "cli_num_k.txt", "cli_num_out.pgm"})
        std::remove(p);
}
