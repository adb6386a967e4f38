#pragma once

#include <cstdint>
#include <vector>

#include "memchaos/image.hpp"
#include "memchaos/keystream.hpp"

namespace memchaos::cipher {

// Torus scrambling parameters: side-L square plane, k rounds of the
// unimodular map [[1, A], [B, A*B+1]] followed by a +(1,1) shift. The
// matrix has determinant 1 for every A, B, so the map is a bijection on
// the L*L grid regardless of the drawn values.
struct ArnoldParams {
    std::uint32_t a = 0;       // 0 <= a < side
    std::uint32_t b = 0;       // 0 <= b < side
    std::uint32_t side = 1;    // L >= 1
    std::uint32_t rounds = 3;  // k >= 1
};

void validate(const ArnoldParams& ap);

enum class PayloadKind : std::uint8_t { bytes = 0, image = 1 };

// On-disk/envelope form of a ciphertext. Header serializes big-endian:
// magic "7DCC", version 0x01, kind, then either width+height (two u32)
// or byte length (one u64), then side L (u32) and rounds k (u8) — 19
// bytes either way — followed by 3 (image) or 1 (bytes) planes of L*L
// ciphertext bytes each.
struct CipherEnvelope {
    PayloadKind kind = PayloadKind::bytes;
    std::uint32_t width = 0;        // image payloads: M
    std::uint32_t height = 0;       // image payloads: N
    std::uint64_t byte_length = 0;  // byte payloads: original length
    std::uint32_t side = 0;         // padded plane side L
    std::uint8_t rounds = 3;        // Arnold rounds k
    std::vector<std::vector<std::uint8_t>> planes;
};

void validate(const CipherEnvelope& env);

inline constexpr std::uint8_t kEnvelopeVersion = 1;
inline constexpr std::size_t kEnvelopeHeaderSize = 19;

// Key-derived Fisher-Yates shuffle of [0, n): i runs from n-1 down to 1,
// swap partner j = next_uint_below(i+1). n must be in [1, 2^32 - 1] so
// every draw bound fits the 32-bit rejection sampler.
std::vector<std::uint32_t> keyed_permutation(std::size_t n, KeystreamGenerator& g);

// out[i] = data[perm[i]].
std::vector<std::uint8_t> apply_permutation(const std::vector<std::uint8_t>& data,
                                            const std::vector<std::uint32_t>& perm);

// Exact inverse of apply_permutation: out[perm[i]] = data[i].
std::vector<std::uint8_t> invert_permutation(const std::vector<std::uint8_t>& data,
                                             const std::vector<std::uint32_t>& perm);

// k rounds of (row, col) -> ((row + a*col) % L + 1, (b*row + (a*b+1)*col) % L + 1),
// both coordinates reduced mod L. plane is row-major with L*L bytes.
std::vector<std::uint8_t> arnold_forward(const std::vector<std::uint8_t>& plane,
                                         const ArnoldParams& ap);

// Exact inverse: undoes the +(1,1) shift then applies the inverse matrix
// [[a*b+1, -a], [-b, 1]] mod L.
std::vector<std::uint8_t> arnold_inverse(const std::vector<std::uint8_t>& plane,
                                         const ArnoldParams& ap);

// Seven XOR passes folded into one sweep: element j absorbs the next 7
// stream bytes (one full step when the generator is step-aligned, as a
// fresh generator is). XOR commutes, so any ordering of the 7 passes
// produces this same output; rerunning at the same stream position is a
// perfect inverse.
std::vector<std::uint8_t> diffuse(std::vector<std::uint8_t> buf, KeystreamGenerator& g);

// Per channel (R, then G, then B) on one continuous keystream: flatten
// row-major, keyed permutation, pad to L*L (L = max(width, height)) with
// keystream bytes, Arnold with A and B drawn from the stream, then
// diffuse. Each channel plane must hold at most 2^32 - 1 pixels.
CipherEnvelope encrypt_image(const Image& img, const Key& key, std::uint8_t rounds = 3);

// Exact inverse; consumes the stream in the same order as encryption.
// A wrong key produces garbage, never an error: there is no
// authentication tag.
Image decrypt_image(const CipherEnvelope& env, const Key& key);

// Same pipeline on a single plane with L = ceil(sqrt(len)); len must be
// in [1, 2^32 - 1].
CipherEnvelope encrypt_bytes(const std::vector<std::uint8_t>& data, const Key& key,
                             std::uint8_t rounds = 3);

std::vector<std::uint8_t> decrypt_bytes(const CipherEnvelope& env, const Key& key);

// Bit-exact big-endian wire form described on CipherEnvelope.
std::vector<std::uint8_t> serialize(const CipherEnvelope& env);

// Validates magic, version, kind, dimension arithmetic, and total size
// (all before any plane allocation); trailing bytes are an error. Throws
// FormatError naming the offending field.
CipherEnvelope deserialize(const std::vector<std::uint8_t>& buf);

}  // namespace memchaos::cipher
