#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <png.h>
#include <unistd.h>

#include <cmath>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <string>
#include <vector>

#include "memchaos/cipher.hpp"
#include "memchaos/csv.hpp"
#include "memchaos/error.hpp"
#include "memchaos/image.hpp"
#include "memchaos/io.hpp"
#include "memchaos/keystream.hpp"
#include "memchaos/modbus.hpp"
#include "memchaos/prng.hpp"
#include "support.hpp"

using namespace memchaos;
namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() /
               ("memchaos_io_test_" + std::to_string(::getpid()));
        fs::create_directories(path);
    }
    ~TempDir() {
        std::error_code ec;
        fs::remove_all(path, ec);
    }
    std::string file(const std::string& name) const { return (path / name).string(); }
};

std::vector<std::uint8_t> str_bytes(const std::string& s) {
    return std::vector<std::uint8_t>(s.begin(), s.end());
}

// Writes an 8- or 16-bit PNG with the given simplified-API format so the
// decoder's feature rejections can be exercised with real files.
std::vector<std::uint8_t> make_png(std::uint32_t w, std::uint32_t h,
                                   std::uint32_t format,
                                   const std::vector<std::uint8_t>& raw) {
    png_image img;
    std::memset(&img, 0, sizeof(img));
    img.version = PNG_IMAGE_VERSION;
    img.width = w;
    img.height = h;
    img.format = format;
    png_alloc_size_t size = 0;
    REQUIRE(png_image_write_to_memory(&img, nullptr, &size, 0, raw.data(), 0,
                                      nullptr) != 0);
    std::vector<std::uint8_t> out(size);
    REQUIRE(png_image_write_to_memory(&img, out.data(), &size, 0, raw.data(), 0,
                                      nullptr) != 0);
    out.resize(size);
    return out;
}

}  // namespace

TEST_CASE("binary pixmap encoding round-trips and pins its header") {
    const Image img = testsupport::make_test_image(7, 5, 3);
    const auto bytes = io::encode_ppm(img);
    const std::string head = "P6\n7 5\n255\n";
    REQUIRE(bytes.size() == head.size() + 3 * 7 * 5);
    CHECK(std::memcmp(bytes.data(), head.data(), head.size()) == 0);
    const Image back = io::decode_ppm(bytes);
    CHECK(back.width == img.width);
    CHECK(back.height == img.height);
    CHECK(back.pixels == img.pixels);

    const Image tiny = testsupport::make_test_image(1, 1, 4);
    CHECK(io::decode_ppm(io::encode_ppm(tiny)).pixels == tiny.pixels);
}

TEST_CASE("pixmap parser accepts comments and flexible header whitespace") {
    auto bytes = str_bytes("P6 # binary pixmap\n# a comment line\n 2\t1 \n255 ");
    const std::vector<std::uint8_t> payload{0xFF, 0x00, 0x10, 0x20, 0x30, 0x40};
    bytes.insert(bytes.end(), payload.begin(), payload.end());
    const Image img = io::decode_ppm(bytes);
    CHECK(img.width == 2);
    CHECK(img.height == 1);
    CHECK(img.pixels == payload);
}

TEST_CASE("pixmap parser rejects malformed inputs precisely") {
    CHECK_THROWS_AS(io::decode_ppm(str_bytes("P5\n1 1\n255\nxyz")), FormatError);
    CHECK_THROWS_AS(io::decode_ppm(str_bytes("P6\n0 1\n255\n")), FormatError);
    CHECK_THROWS_AS(io::decode_ppm(str_bytes("P6\n1 1\n65535\n abcdef")), FormatError);
    // Truncated payload: 1x1 needs 3 bytes.
    CHECK_THROWS_AS(io::decode_ppm(str_bytes(std::string("P6\n1 1\n255\nab"))),
                    FormatError);
    // Surplus payload is as wrong as a missing one.
    CHECK_THROWS_AS(io::decode_ppm(str_bytes(std::string("P6\n1 1\n255\nabcd"))),
                    FormatError);
    // Garbage where a number belongs names the field.
    try {
        io::decode_ppm(str_bytes("P6\nW 1\n255\nabc"));
        FAIL("expected FormatError");
    } catch (const FormatError& e) {
        CHECK(std::string(e.what()).find("width") != std::string::npos);
    }
    CHECK_THROWS_AS(io::decode_ppm({}), FormatError);
}

TEST_CASE("png codec round-trips RGB images") {
    const Image img = testsupport::make_test_image(31, 17, 6);
    const auto bytes = io::encode_png(img);
    // PNG signature.
    REQUIRE(bytes.size() >= 8);
    CHECK(bytes[0] == 0x89);
    CHECK(bytes[1] == 'P');
    CHECK(bytes[2] == 'N');
    CHECK(bytes[3] == 'G');
    const Image back = io::decode_png(bytes);
    CHECK(back.width == img.width);
    CHECK(back.height == img.height);
    CHECK(back.pixels == img.pixels);
}

TEST_CASE("grayscale png promotes to three equal channels") {
    const std::vector<std::uint8_t> gray{0, 64, 128, 255};
    const auto bytes = make_png(2, 2, PNG_FORMAT_GRAY, gray);
    const Image img = io::decode_png(bytes);
    CHECK(img.width == 2);
    CHECK(img.height == 2);
    REQUIRE(img.pixels.size() == 12);
    for (std::size_t i = 0; i < 4; ++i) {
        CHECK(img.pixels[3 * i] == gray[i]);
        CHECK(img.pixels[3 * i + 1] == gray[i]);
        CHECK(img.pixels[3 * i + 2] == gray[i]);
    }
}

TEST_CASE("png features outside 8-bit RGB are rejected by name") {
    const std::vector<std::uint8_t> rgba{10, 20, 30, 40};
    const auto with_alpha = make_png(1, 1, PNG_FORMAT_RGBA, rgba);
    try {
        io::decode_png(with_alpha);
        FAIL("expected IoError");
    } catch (const IoError& e) {
        CHECK(std::string(e.what()).find("alpha") != std::string::npos);
    }

    // 16-bit linear gray: 2 bytes per sample.
    const std::vector<std::uint8_t> deep{0x12, 0x34};
    const auto sixteen = make_png(1, 1, PNG_FORMAT_LINEAR_Y, deep);
    try {
        io::decode_png(sixteen);
        FAIL("expected IoError");
    } catch (const IoError& e) {
        CHECK(std::string(e.what()).find("16-bit") != std::string::npos);
    }

    CHECK_THROWS_AS(io::decode_png(str_bytes("not a png at all")), IoError);
}

TEST_CASE("image loading sniffs content, not extensions") {
    TempDir dir;
    const Image img = testsupport::make_test_image(12, 9, 8);

    // PNG bytes behind a .ppm name still load as PNG.
    const auto png_bytes = io::encode_png(img);
    io::write_file_atomic(dir.file("disguised.ppm"), png_bytes.data(), png_bytes.size());
    CHECK(io::load_image(dir.file("disguised.ppm")).pixels == img.pixels);

    // And PPM bytes behind a .png name load as PPM.
    const auto ppm_bytes = io::encode_ppm(img);
    io::write_file_atomic(dir.file("disguised.png"), ppm_bytes.data(), ppm_bytes.size());
    CHECK(io::load_image(dir.file("disguised.png")).pixels == img.pixels);

    const std::string junk = "neither magic";
    io::write_file_atomic(dir.file("junk.dat"), junk.data(), junk.size());
    CHECK_THROWS_AS(io::load_image(dir.file("junk.dat")), IoError);
    CHECK_THROWS_AS(io::load_image(dir.file("missing.png")), IoError);
}

TEST_CASE("image saving picks the codec from the extension") {
    TempDir dir;
    const Image img = testsupport::make_test_image(5, 5, 2);
    io::save_image(img, dir.file("out.png"));
    io::save_image(img, dir.file("out.ppm"));
    CHECK(io::load_image(dir.file("out.png")).pixels == img.pixels);
    CHECK(io::load_image(dir.file("out.ppm")).pixels == img.pixels);
    // The PNG file must really be a PNG.
    const auto raw = io::read_file(dir.file("out.png"));
    CHECK(raw[1] == 'P');
    CHECK(raw[2] == 'N');
    CHECK_THROWS_AS(io::save_image(img, dir.file("out.bmp")), IoError);
}

TEST_CASE("atomic writes leave no temporaries and no partial targets") {
    TempDir dir;
    const std::string payload = "payload bytes";
    const std::string path = dir.file("data.bin");
    io::write_file_atomic(path, payload.data(), payload.size());
    const auto back = io::read_file(path);
    CHECK(std::string(back.begin(), back.end()) == payload);
    CHECK_FALSE(fs::exists(path + ".tmp"));

    // Overwrite in place.
    const std::string next = "v2";
    io::write_file_atomic(path, next.data(), next.size());
    CHECK(io::read_file(path).size() == 2);

    // A missing parent directory fails without creating anything.
    const std::string bad = (dir.path / "no_such_dir" / "x.bin").string();
    CHECK_THROWS_AS(io::write_file_atomic(bad, payload.data(), payload.size()),
                    IoError);
    CHECK_FALSE(fs::exists(bad));
    CHECK_THROWS_AS(io::read_file(bad), IoError);
}

TEST_CASE("ciphertext container files round-trip and validate on read") {
    TempDir dir;
    const auto data = str_bytes("attack at dawn, or maybe brunch");
    const auto env = cipher::encrypt_bytes(data, canonical_key());
    const std::string path = dir.file("secret.7dcc");
    io::write_envelope(env, path);

    const auto back = io::read_envelope(path);
    CHECK(cipher::decrypt_bytes(back, canonical_key()) == data);

    // Flip one magic byte on disk: the reader must refuse.
    auto raw = io::read_file(path);
    raw[0] ^= 0xFF;
    io::write_file_atomic(path, raw.data(), raw.size());
    CHECK_THROWS_AS(io::read_envelope(path), FormatError);

    // Truncated file.
    raw[0] ^= 0xFF;
    io::write_file_atomic(path, raw.data(), raw.size() - 1);
    CHECK_THROWS_AS(io::read_envelope(path), FormatError);
    CHECK_THROWS_AS(io::read_envelope(dir.file("absent.7dcc")), IoError);
}

TEST_CASE("serial frame hex parses the documented example") {
    const ModbusFrame frame = parse_modbus_hex("13 04 00 00 00 01 32 B8");
    CHECK(frame.bytes ==
          std::vector<std::uint8_t>{0x13, 0x04, 0x00, 0x00, 0x00, 0x01, 0x32, 0xB8});
    CHECK(format_modbus_hex(frame) == "0x13 0x04 0x00 0x00 0x00 0x01 0x32 0xB8");

    // Prefixed, bare, and mixed-case forms all parse to the same frame.
    const ModbusFrame mixed = parse_modbus_hex("0x13 0X04 00 00 00 01 0x32 b8");
    CHECK(mixed.bytes == frame.bytes);
}

TEST_CASE("serial frame hex round-trips random frames") {
    SplitMix64 rng(2718);
    for (int t = 0; t < 50; ++t) {
        ModbusFrame f;
        const std::size_t n = 1 + rng.next_below(32);
        for (std::size_t i = 0; i < n; ++i) {
            f.bytes.push_back(static_cast<std::uint8_t>(rng.next() & 0xFF));
        }
        CHECK(parse_modbus_hex(format_modbus_hex(f)).bytes == f.bytes);
    }
}

TEST_CASE("serial frame hex names the offending token") {
    try {
        parse_modbus_hex("");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.token_index() == 0);
    }
    try {
        parse_modbus_hex("13 xz 00");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.token_index() == 1);
    }
    try {
        parse_modbus_hex("13 04 123");  // three digits is not an octet
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.token_index() == 2);
    }
    CHECK_THROWS_AS(parse_modbus_hex("0x"), ParseError);
    CHECK_THROWS_AS(parse_modbus_hex("   \t  \n"), ParseError);
}

TEST_CASE("tabular outputs render exactly and deterministically") {
    dynamics::LyapunovSpectrum spec;
    spec.exponents = {2.0, 1.5, 0.5, 0.0, -0.25, -1.0, -3.5};
    const std::string ly = io::lyapunov_csv(spec);
    CHECK(ly ==
          "index,exponent\n1,2\n2,1.5\n3,0.5\n4,0\n5,-0.25\n6,-1\n7,-3.5\n");

    dynamics::BifurcationData bif;
    bif.rows = {{2.0, 0.5}, {2.5, -0.75}};
    CHECK(io::bifurcation_csv(bif) == "alpha,extremum\n2,0.5\n2.5,-0.75\n");

    dynamics::ComplexityMap map;
    map.cells = {{1.5, 2.5, 0.5, 0.25, false},
                 {1.5, 3.0, std::nan(""), std::nan(""), true}};
    CHECK(io::complexity_csv(map) ==
          "p1,p2,se,c0,diverged\n1.5,2.5,0.5,0.25,0\n1.5,3,nan,nan,1\n");

    dynamics::ZeroOneScan scan;
    scan.c = {0.75, 1.5};
    scan.Kc = {0.25, 1.0};
    scan.is_median = {true, false};
    scan.K = 0.25;
    CHECK(io::zero_one_csv(scan) == "c,K_c,is_median\n0.75,0.25,1\n1.5,1,0\n");

    std::vector<nist::TestResult> rows{{"Frequency", 0.5, true},
                                       {"Serial", 0.0078125, false}};
    CHECK(io::nist_csv(rows) ==
          "test,p_value,pass\nFrequency,0.5,1\nSerial,0.0078125,0\n");

    std::array<std::uint64_t, 256> counts{};
    counts[3] = 7;
    const std::string hist = io::histogram_csv(counts);
    CHECK(hist.substr(0, 12) == "value,count\n");
    CHECK(hist.find("\n3,7\n") != std::string::npos);
    std::size_t lines = 0;
    for (char ch : hist) lines += (ch == '\n');
    CHECK(lines == 257);

    CHECK(io::lyapunov_csv(spec) == io::lyapunov_csv(spec));
}
