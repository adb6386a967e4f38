// Command-line front end: encryption/decryption of images and byte
// payloads, security metrics, dynamics sweeps, and randomness testing,
// all driven by a 13-number key file. Exit codes: 0 success, 1 usage,
// 2 input/format errors, 3 numerical errors (divergence/collapse).

#include <cstdio>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "memchaos/cipher.hpp"
#include "memchaos/csv.hpp"
#include "memchaos/dynamics.hpp"
#include "memchaos/error.hpp"
#include "memchaos/image.hpp"
#include "memchaos/io.hpp"
#include "memchaos/keystream.hpp"
#include "memchaos/metrics.hpp"
#include "memchaos/modbus.hpp"
#include "memchaos/nist.hpp"
#include "memchaos/system.hpp"

namespace {

using namespace memchaos;

Key load_key(const std::string& path) {
    const auto bytes = io::read_file(path);
    return key_from_text(std::string(bytes.begin(), bytes.end()));
}

Key key_or_canonical(const std::string& path) {
    return path.empty() ? canonical_key() : load_key(path);
}

void write_text_atomic(const std::string& path, const std::string& text) {
    io::write_file_atomic(path, text.data(), text.size());
}

std::string join_path(const std::string& dir, const std::string& name) {
    if (dir.empty() || dir == ".") return name;
    return dir.back() == '/' ? dir + name : dir + "/" + name;
}

// -------- subcommand bodies ----------------------------------------------

void cmd_encrypt_image(const std::string& key_path, const std::string& in,
                       const std::string& out, unsigned rounds) {
    const Key key = load_key(key_path);
    const Image img = io::load_image(in);
    io::write_envelope(cipher::encrypt_image(img, key, static_cast<std::uint8_t>(rounds)),
                       out);
    std::fprintf(stderr, "encrypted %ux%u image -> %s\n", img.width, img.height,
                 out.c_str());
}

void cmd_decrypt_image(const std::string& key_path, const std::string& in,
                       const std::string& out) {
    const Key key = load_key(key_path);
    const Image img = cipher::decrypt_image(io::read_envelope(in), key);
    io::save_image(img, out);
    std::fprintf(stderr, "decrypted %ux%u image -> %s\n", img.width, img.height,
                 out.c_str());
}

void cmd_encrypt_data(const std::string& key_path, const std::string& in,
                      const std::string& out, const std::string& hex, unsigned rounds) {
    const Key key = load_key(key_path);
    std::vector<std::uint8_t> data;
    if (!hex.empty()) {
        data = parse_modbus_hex(hex).bytes;
    } else {
        data = io::read_file(in);
        if (data.empty()) {
            throw DomainError("input file is empty: nothing to encrypt");
        }
    }
    io::write_envelope(cipher::encrypt_bytes(data, key, static_cast<std::uint8_t>(rounds)),
                       out);
    std::fprintf(stderr, "encrypted %zu bytes -> %s\n", data.size(), out.c_str());
}

void cmd_decrypt_data(const std::string& key_path, const std::string& in,
                      const std::string& out, bool as_hex) {
    const Key key = load_key(key_path);
    const auto data = cipher::decrypt_bytes(io::read_envelope(in), key);
    if (as_hex) {
        ModbusFrame frame{data};
        std::printf("%s\n", format_modbus_hex(frame).c_str());
    }
    if (!out.empty()) {
        io::write_file_atomic(out, data.data(), data.size());
        std::fprintf(stderr, "decrypted %zu bytes -> %s\n", data.size(), out.c_str());
    }
}

void print_channel_row(const char* label, const std::array<double, 3>& v) {
    std::printf("%-24s R=%.6f G=%.6f B=%.6f\n", label, v[0], v[1], v[2]);
}

void cmd_analyze(const std::string& in, const std::string& ref_path,
                 const std::string& out_dir, unsigned n_pairs, std::uint64_t seed) {
    const auto bytes = io::read_file(in);
    Image img;
    if (bytes.size() >= 4 && bytes[0] == '7' && bytes[1] == 'D' && bytes[2] == 'C' &&
        bytes[3] == 'C') {
        const auto env = cipher::deserialize(bytes);
        std::printf("ciphertext envelope: %s payload, side %u, %zu plane(s)\n",
                    env.kind == cipher::PayloadKind::image ? "image" : "bytes",
                    env.side, env.planes.size());
        for (std::size_t p = 0; p < env.planes.size(); ++p) {
            const auto& plane = env.planes[p];
            std::printf("plane %zu: entropy=%.6f chi_square=%.4f", p,
                        metrics::shannon_entropy(plane),
                        metrics::chi_square_flatness(plane));
            if (env.side >= 2) {
                std::printf(
                    " corr_h=%.6f corr_v=%.6f corr_d=%.6f",
                    metrics::adjacent_correlation(plane, env.side, env.side,
                                                  metrics::Direction::horizontal,
                                                  n_pairs, seed),
                    metrics::adjacent_correlation(plane, env.side, env.side,
                                                  metrics::Direction::vertical, n_pairs,
                                                  seed + 1),
                    metrics::adjacent_correlation(plane, env.side, env.side,
                                                  metrics::Direction::diagonal, n_pairs,
                                                  seed + 2));
            }
            std::printf("\n");
        }
        return;
    }

    const Image image = io::load_image(in);
    Image ref;
    const bool has_ref = !ref_path.empty();
    if (has_ref) {
        ref = io::load_image(ref_path);
    }
    const metrics::MetricsReport report =
        metrics::image_metrics(image, has_ref ? &ref : nullptr, n_pairs, seed);
    std::printf("image: %ux%u, 3 channels\n", image.width, image.height);
    print_channel_row("entropy (bits)", report.entropy);
    print_channel_row("chi_square (df=255)", report.chi_square);
    std::array<double, 3> row{};
    const char* dir_label[3] = {"correlation horizontal", "correlation vertical",
                                "correlation diagonal"};
    for (std::size_t k = 0; k < 3; ++k) {
        for (std::size_t ch = 0; ch < 3; ++ch) row[ch] = report.correlation[ch][k];
        print_channel_row(dir_label[k], row);
    }
    if (report.has_reference) {
        std::printf("%-24s %.4f dB\n", "psnr vs reference", report.psnr);
        std::printf("%-24s %.6f\n", "ssim vs reference", report.ssim);
    }
    const char* names[3] = {"histogram_r.csv", "histogram_g.csv", "histogram_b.csv"};
    for (std::size_t ch = 0; ch < 3; ++ch) {
        const std::string path = join_path(out_dir, names[ch]);
        write_text_atomic(path, io::histogram_csv(report.histogram[ch]));
        std::fprintf(stderr, "wrote %s\n", path.c_str());
    }
}

void cmd_dynamics(const std::string& key_path, const std::string& out_dir,
                  bool do_lyapunov, bool do_bifurcation, bool do_zero_one,
                  bool do_complexity, std::uint64_t steps, double alpha_lo,
                  double alpha_hi, std::size_t alpha_points, double d_lo, double d_hi,
                  std::size_t d_points, std::uint64_t zo_samples,
                  std::uint64_t zo_stride, std::uint64_t seed) {
    const Key key = key_or_canonical(key_path);
    IntegratorConfig cfg;

    if (do_lyapunov) {
        const auto spectrum =
            dynamics::lyapunov_spectrum(key.params, key.init, cfg, 10, steps);
        const std::string path = join_path(out_dir, "lyapunov.csv");
        write_text_atomic(path, io::lyapunov_csv(spectrum));
        std::fprintf(stderr, "wrote %s (largest exponent %.6f)\n", path.c_str(),
                     spectrum.exponents[0]);
    }
    if (do_bifurcation) {
        IntegratorConfig sweep_cfg = cfg;
        sweep_cfg.sample_steps = 200000;
        const auto data = dynamics::bifurcation_sweep(
            {alpha_lo, alpha_hi, alpha_points}, key.params, key.init, sweep_cfg);
        const std::string path = join_path(out_dir, "bifurcation.csv");
        write_text_atomic(path, io::bifurcation_csv(data));
        std::fprintf(stderr, "wrote %s (%zu extrema, %zu diverged)\n", path.c_str(),
                     data.rows.size(), data.diverged_alphas.size());
    }
    if (do_zero_one) {
        Rk4Stepper stepper(key.init, key.params, cfg.dt);
        stepper.advance(cfg.transient_steps);
        std::vector<double> x1;
        x1.reserve(zo_samples);
        for (std::uint64_t i = 0; i < zo_samples; ++i) {
            stepper.advance(zo_stride);
            x1.push_back(stepper.state()[0]);
        }
        const auto scan = dynamics::zero_one_scan(x1, 100, seed);
        const std::string path = join_path(out_dir, "zero_one.csv");
        write_text_atomic(path, io::zero_one_csv(scan));
        std::fprintf(stderr, "wrote %s (K = %.6f)\n", path.c_str(), scan.K);
    }
    if (do_complexity) {
        const auto map = dynamics::complexity_map({alpha_lo, alpha_hi, alpha_points},
                                                  {d_lo, d_hi, d_points}, key.params,
                                                  cfg);
        const std::string path = join_path(out_dir, "complexity_map.csv");
        write_text_atomic(path, io::complexity_csv(map));
        std::fprintf(stderr, "wrote %s (%zu cells)\n", path.c_str(), map.cells.size());
    }
}

void cmd_nist(const std::string& key_path, const std::string& out,
              std::uint64_t n_bits) {
    const Key key = key_or_canonical(key_path);
    KeystreamGenerator g(key);
    const auto bits = nist::bits_from_keystream(g, n_bits);
    const auto results = nist::battery(bits);
    std::printf("%-22s %-12s %s\n", "test", "p_value", "verdict");
    for (const auto& r : results) {
        std::printf("%-22s %-12.6f %s\n", r.name.c_str(), r.p_value,
                    r.pass ? "pass" : "FAIL");
    }
    if (!out.empty()) {
        write_text_atomic(out, io::nist_csv(results));
        std::fprintf(stderr, "wrote %s\n", out.c_str());
    }
}

void cmd_keystream(const std::string& key_path, const std::string& out,
                   std::uint64_t n_bytes) {
    const Key key = key_or_canonical(key_path);
    KeystreamGenerator g(key);
    std::vector<std::uint8_t> bytes(n_bytes);
    g.fill(bytes.data(), bytes.size());
    io::write_file_atomic(out, bytes.data(), bytes.size());
    std::fprintf(stderr, "wrote %llu keystream bytes -> %s\n",
                 static_cast<unsigned long long>(n_bytes), out.c_str());
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "Chaotic-flow keystream cipher: image/byte encryption with "
        "dynamics and security analysis"};
    app.require_subcommand(1);

    std::string key_path, in_path, out_path, ref_path, hex_input, out_dir = ".";
    unsigned rounds = 3;
    unsigned n_pairs = 8000;
    bool as_hex = false;
    bool do_lyapunov = false, do_bifurcation = false, do_zero_one = false,
         do_complexity = false;
    std::uint64_t steps = 500000, n_bits = 1000000, n_bytes = 0;
    std::uint64_t zo_samples = 10000, zo_stride = 250, seed = 0x07dcc;
    double alpha_lo = 5.0, alpha_hi = 15.0, d_lo = 0.5, d_hi = 2.0;
    std::size_t alpha_points = 101, d_points = 11;

    const char* kKeyHelp = "key file: 13 numbers (initial state + parameters)";

    auto* enc_img = app.add_subcommand("encrypt-image", "Encrypt a PNG/PPM image");
    enc_img->add_option("--key", key_path, kKeyHelp)->envname("MEMCHAOS_KEY")->required();
    enc_img->add_option("--in", in_path, "input image")->required();
    enc_img->add_option("--out", out_path, "output envelope file")->required();
    enc_img->add_option("--rounds", rounds, "scrambling rounds")->check(CLI::Range(1u, 255u));

    auto* dec_img = app.add_subcommand("decrypt-image", "Decrypt an image envelope");
    dec_img->add_option("--key", key_path, kKeyHelp)->envname("MEMCHAOS_KEY")->required();
    dec_img->add_option("--in", in_path, "input envelope file")->required();
    dec_img->add_option("--out", out_path, "output image (.png or .ppm)")->required();

    auto* enc_data = app.add_subcommand("encrypt-data", "Encrypt a byte payload");
    enc_data->add_option("--key", key_path, kKeyHelp)->envname("MEMCHAOS_KEY")->required();
    auto* enc_in = enc_data->add_option("--in", in_path, "input file");
    auto* enc_hex =
        enc_data->add_option("--hex", hex_input, "inline hex payload, e.g. \"13 04 00\"");
    enc_data->add_option("--out", out_path, "output envelope file")->required();
    enc_data->add_option("--rounds", rounds, "scrambling rounds")->check(CLI::Range(1u, 255u));
    enc_in->excludes(enc_hex);

    auto* dec_data = app.add_subcommand("decrypt-data", "Decrypt a byte envelope");
    dec_data->add_option("--key", key_path, kKeyHelp)->envname("MEMCHAOS_KEY")->required();
    dec_data->add_option("--in", in_path, "input envelope file")->required();
    dec_data->add_option("--out", out_path, "output file");
    dec_data->add_flag("--hex", as_hex, "print the plaintext as hex octets");
    dec_data->callback([&]() {
        if (out_path.empty() && !as_hex) {
            throw CLI::ValidationError("decrypt-data",
                                       "choose --out and/or --hex; otherwise the "
                                       "plaintext has nowhere to go");
        }
    });

    auto* analyze = app.add_subcommand(
        "analyze", "Security metrics of an image or ciphertext envelope");
    analyze->add_option("--in", in_path, "image or envelope file")->required();
    analyze->add_option("--ref", ref_path, "reference image for PSNR/SSIM");
    analyze->add_option("--out-dir", out_dir, "directory for histogram CSVs");
    analyze->add_option("--pairs", n_pairs, "adjacent-pixel sample pairs");
    analyze->add_option("--seed", seed, "sampler seed");

    auto* dynamics_cmd =
        app.add_subcommand("dynamics", "Dynamical-systems sweeps and statistics");
    dynamics_cmd->add_option("--key", key_path, kKeyHelp)->envname("MEMCHAOS_KEY");
    dynamics_cmd->add_option("--out-dir", out_dir, "directory for CSV output");
    dynamics_cmd->add_flag("--lyapunov", do_lyapunov, "write lyapunov.csv");
    dynamics_cmd->add_flag("--bifurcation", do_bifurcation, "write bifurcation.csv");
    dynamics_cmd->add_flag("--zero-one", do_zero_one, "write zero_one.csv");
    dynamics_cmd->add_flag("--complexity", do_complexity, "write complexity_map.csv");
    dynamics_cmd->add_option("--steps", steps, "tangent-integration steps");
    dynamics_cmd->add_option("--alpha-lo", alpha_lo, "sweep/grid alpha start");
    dynamics_cmd->add_option("--alpha-hi", alpha_hi, "sweep/grid alpha end");
    dynamics_cmd->add_option("--alpha-points", alpha_points, "sweep/grid alpha count");
    dynamics_cmd->add_option("--d-lo", d_lo, "grid d start");
    dynamics_cmd->add_option("--d-hi", d_hi, "grid d end");
    dynamics_cmd->add_option("--d-points", d_points, "grid d count");
    dynamics_cmd->add_option("--samples", zo_samples, "0-1 test sample count");
    dynamics_cmd->add_option("--stride", zo_stride, "0-1 test sample stride (steps)");
    dynamics_cmd->add_option("--seed", seed, "0-1 test frequency seed");
    dynamics_cmd->callback([&]() {
        if (!do_lyapunov && !do_bifurcation && !do_zero_one && !do_complexity) {
            throw CLI::ValidationError(
                "dynamics",
                "choose at least one of --lyapunov --bifurcation --zero-one "
                "--complexity");
        }
    });

    auto* nist_cmd =
        app.add_subcommand("nist", "Statistical randomness battery on the keystream");
    nist_cmd->add_option("--key", key_path, kKeyHelp)->envname("MEMCHAOS_KEY");
    nist_cmd->add_option("--bits", n_bits, "bit count (default 1e6)");
    nist_cmd->add_option("--out", out_path, "CSV output path");

    auto* ks_cmd = app.add_subcommand("keystream", "Dump raw keystream bytes");
    ks_cmd->add_option("--key", key_path, kKeyHelp)->envname("MEMCHAOS_KEY");
    ks_cmd->add_option("--bytes", n_bytes, "byte count")->required();
    ks_cmd->add_option("--out", out_path, "output file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (enc_img->parsed()) {
            cmd_encrypt_image(key_path, in_path, out_path, rounds);
        } else if (dec_img->parsed()) {
            cmd_decrypt_image(key_path, in_path, out_path);
        } else if (enc_data->parsed()) {
            if (in_path.empty() && hex_input.empty()) {
                std::fprintf(stderr, "encrypt-data: provide --in or --hex\n");
                return 1;
            }
            cmd_encrypt_data(key_path, in_path, out_path, hex_input, rounds);
        } else if (dec_data->parsed()) {
            cmd_decrypt_data(key_path, in_path, out_path, as_hex);
        } else if (analyze->parsed()) {
            cmd_analyze(in_path, ref_path, out_dir, n_pairs, seed);
        } else if (dynamics_cmd->parsed()) {
            cmd_dynamics(key_path, out_dir, do_lyapunov, do_bifurcation, do_zero_one,
                         do_complexity, steps, alpha_lo, alpha_hi, alpha_points, d_lo,
                         d_hi, d_points, zo_samples, zo_stride, seed);
        } else if (nist_cmd->parsed()) {
            cmd_nist(key_path, out_path, n_bits);
        } else if (ks_cmd->parsed()) {
            cmd_keystream(key_path, out_path, n_bytes);
        }
    } catch (const DivergenceError& e) {
        std::fprintf(stderr, "numerical error: %s\n", e.what());
        return 3;
    } catch (const NumericError& e) {
        std::fprintf(stderr, "numerical error: %s\n", e.what());
        return 3;
    } catch (const Error& e) {
        // Parse, format, I/O, and domain failures share the input-error code.
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
    return 0;
}
