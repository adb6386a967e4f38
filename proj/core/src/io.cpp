#include "memchaos/io.hpp"

#include <png.h>

#include <cerrno>
#include <cstdio>
#include <cstring>
#include <string>

#include "memchaos/error.hpp"

namespace memchaos::io {

namespace {

// PPM P6 header tokens separated by whitespace; '#' comments run to end
// of line and may appear between tokens.
struct PpmCursor {
    const std::vector<std::uint8_t>& bytes;
    std::size_t pos = 0;

    void skip_space_and_comments() {
        while (pos < bytes.size()) {
            const char c = static_cast<char>(bytes[pos]);
            if (c == '#') {
                while (pos < bytes.size() && bytes[pos] != '\n') ++pos;
            } else if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
                ++pos;
            } else {
                break;
            }
        }
    }

    std::uint64_t next_uint(const char* field) {
        skip_space_and_comments();
        if (pos >= bytes.size() || bytes[pos] < '0' || bytes[pos] > '9') {
            throw FormatError(std::string("PPM header field '") + field +
                              "' is missing or non-numeric");
        }
        std::uint64_t value = 0;
        while (pos < bytes.size() && bytes[pos] >= '0' && bytes[pos] <= '9') {
            value = value * 10 + (bytes[pos] - '0');
            if (value > 0xFFFFFFFFull) {
                throw FormatError(std::string("PPM header field '") + field +
                                  "' is out of range");
            }
            ++pos;
        }
        return value;
    }
};

}  // namespace

std::vector<std::uint8_t> read_file(const std::string& path) {
    std::FILE* f = std::fopen(path.c_str(), "rb");
    if (f == nullptr) {
        throw IoError("cannot open '" + path + "': " + std::strerror(errno));
    }
    std::vector<std::uint8_t> data;
    std::uint8_t buf[65536];
    std::size_t got;
    while ((got = std::fread(buf, 1, sizeof(buf), f)) > 0) {
        data.insert(data.end(), buf, buf + got);
    }
    const bool failed = std::ferror(f) != 0;
    std::fclose(f);
    if (failed) {
        throw IoError("read failed for '" + path + "'");
    }
    return data;
}

void write_file_atomic(const std::string& path, const void* data, std::size_t size) {
    const std::string tmp = path + ".tmp";
    std::FILE* f = std::fopen(tmp.c_str(), "wb");
    if (f == nullptr) {
        throw IoError("cannot create '" + tmp + "': " + std::strerror(errno));
    }
    const std::size_t written = size == 0 ? 0 : std::fwrite(data, 1, size, f);
    const bool flush_failed = std::fflush(f) != 0;
    const bool close_failed = std::fclose(f) != 0;
    if (written != size || flush_failed || close_failed) {
        std::remove(tmp.c_str());
        throw IoError("write failed for '" + tmp + "'");
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0) {
        std::remove(tmp.c_str());
        throw IoError("cannot rename '" + tmp + "' to '" + path +
                      "': " + std::strerror(errno));
    }
}

Image decode_ppm(const std::vector<std::uint8_t>& bytes) {
    if (bytes.size() < 2 || bytes[0] != 'P' || bytes[1] != '6') {
        throw FormatError("not a binary PPM: magic P6 missing");
    }
    PpmCursor cur{bytes, 2};
    const std::uint64_t width = cur.next_uint("width");
    const std::uint64_t height = cur.next_uint("height");
    const std::uint64_t maxval = cur.next_uint("maxval");
    if (width < 1 || height < 1) {
        throw FormatError("PPM dimensions must be >= 1");
    }
    if (maxval != 255) {
        throw FormatError("PPM maxval must be 255, got " + std::to_string(maxval));
    }
    // Exactly one whitespace byte separates the header from pixel data.
    if (cur.pos >= bytes.size()) {
        throw FormatError("PPM truncated before pixel data");
    }
    const char sep = static_cast<char>(bytes[cur.pos]);
    if (sep != ' ' && sep != '\t' && sep != '\r' && sep != '\n') {
        throw FormatError("PPM header must end with a whitespace byte");
    }
    ++cur.pos;
    const std::size_t expect = 3 * static_cast<std::size_t>(width) * height;
    if (bytes.size() - cur.pos != expect) {
        throw FormatError("PPM pixel payload size mismatch: expected " +
                          std::to_string(expect) + " bytes, got " +
                          std::to_string(bytes.size() - cur.pos));
    }
    Image img;
    img.width = static_cast<std::uint32_t>(width);
    img.height = static_cast<std::uint32_t>(height);
    img.pixels.assign(bytes.begin() + static_cast<std::ptrdiff_t>(cur.pos), bytes.end());
    return img;
}

std::vector<std::uint8_t> encode_ppm(const Image& img) {
    validate(img);
    const std::string header = "P6\n" + std::to_string(img.width) + " " +
                               std::to_string(img.height) + "\n255\n";
    std::vector<std::uint8_t> out(header.begin(), header.end());
    out.insert(out.end(), img.pixels.begin(), img.pixels.end());
    return out;
}

Image decode_png(const std::vector<std::uint8_t>& bytes) {
    png_image png;
    std::memset(&png, 0, sizeof(png));
    png.version = PNG_IMAGE_VERSION;
    if (png_image_begin_read_from_memory(&png, bytes.data(), bytes.size()) == 0) {
        const std::string msg = png.message;
        png_image_free(&png);
        throw IoError("PNG decode failed: " + msg);
    }
    if ((png.format & PNG_FORMAT_FLAG_ALPHA) != 0) {
        png_image_free(&png);
        throw IoError("PNG alpha channels are unsupported");
    }
    if ((png.format & PNG_FORMAT_FLAG_LINEAR) != 0) {
        png_image_free(&png);
        throw IoError("PNG 16-bit depth is unsupported");
    }
    png.format = PNG_FORMAT_RGB;  // grayscale promotes to 3 equal planes
    Image img;
    img.width = png.width;
    img.height = png.height;
    img.pixels.resize(PNG_IMAGE_SIZE(png));
    if (png_image_finish_read(&png, nullptr, img.pixels.data(), 0, nullptr) == 0) {
        const std::string msg = png.message;
        png_image_free(&png);
        throw IoError("PNG decode failed: " + msg);
    }
    return img;
}

std::vector<std::uint8_t> encode_png(const Image& img) {
    validate(img);
    png_image png;
    std::memset(&png, 0, sizeof(png));
    png.version = PNG_IMAGE_VERSION;
    png.width = img.width;
    png.height = img.height;
    png.format = PNG_FORMAT_RGB;
    png_alloc_size_t size = 0;
    if (png_image_write_to_memory(&png, nullptr, &size, 0, img.pixels.data(), 0,
                                  nullptr) == 0) {
        const std::string msg = png.message;
        png_image_free(&png);
        throw IoError("PNG encode failed: " + msg);
    }
    std::vector<std::uint8_t> out(size);
    if (png_image_write_to_memory(&png, out.data(), &size, 0, img.pixels.data(), 0,
                                  nullptr) == 0) {
        const std::string msg = png.message;
        png_image_free(&png);
        throw IoError("PNG encode failed: " + msg);
    }
    out.resize(size);
    return out;
}

Image load_image(const std::string& path) {
    const auto bytes = read_file(path);
    static const std::uint8_t kPngMagic[4] = {0x89, 'P', 'N', 'G'};
    if (bytes.size() >= 4 && std::memcmp(bytes.data(), kPngMagic, 4) == 0) {
        return decode_png(bytes);
    }
    if (bytes.size() >= 2 && bytes[0] == 'P' && bytes[1] == '6') {
        return decode_ppm(bytes);
    }
    throw IoError("unsupported image format in '" + path +
                  "': expected PNG or binary PPM (P6)");
}

void save_image(const Image& img, const std::string& path) {
    const auto dot = path.find_last_of('.');
    const std::string ext = dot == std::string::npos ? "" : path.substr(dot);
    std::vector<std::uint8_t> bytes;
    if (ext == ".png") {
        bytes = encode_png(img);
    } else if (ext == ".ppm") {
        bytes = encode_ppm(img);
    } else {
        throw IoError("unsupported image extension '" + ext +
                      "': use .png or .ppm");
    }
    write_file_atomic(path, bytes.data(), bytes.size());
}

void write_envelope(const cipher::CipherEnvelope& env, const std::string& path) {
    const auto bytes = cipher::serialize(env);
    write_file_atomic(path, bytes.data(), bytes.size());
}

cipher::CipherEnvelope read_envelope(const std::string& path) {
    return cipher::deserialize(read_file(path));
}

}  // namespace memchaos::io
