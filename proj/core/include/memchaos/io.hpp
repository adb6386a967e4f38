#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "memchaos/cipher.hpp"
#include "memchaos/image.hpp"

namespace memchaos::io {

// Whole-file read; IoError on any failure.
std::vector<std::uint8_t> read_file(const std::string& path);

// Writes to a sibling temp file and renames into place, so a failed
// write never leaves a partial file at path.
void write_file_atomic(const std::string& path, const void* data, std::size_t size);

// Binary PPM (P6, maxval 255). Codec functions work on memory buffers so
// they stay testable without the filesystem.
Image decode_ppm(const std::vector<std::uint8_t>& bytes);
std::vector<std::uint8_t> encode_ppm(const Image& img);

// 8-bit PNG; grayscale is promoted to three identical planes, while
// alpha channels and 16-bit depth are rejected (IoError naming the
// feature) rather than silently converted.
Image decode_png(const std::vector<std::uint8_t>& bytes);
std::vector<std::uint8_t> encode_png(const Image& img);

// Sniffs the signature (PNG or P6) regardless of extension.
Image load_image(const std::string& path);

// Picks the codec by extension: .png, or .ppm; anything else is an
// IoError. The write is atomic.
void save_image(const Image& img, const std::string& path);

// Ciphertext container file: the cipher module's bit-exact wire form,
// written atomically / validated on read.
void write_envelope(const cipher::CipherEnvelope& env, const std::string& path);
cipher::CipherEnvelope read_envelope(const std::string& path);

}  // namespace memchaos::io
