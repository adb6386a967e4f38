#include "memchaos/cipher.hpp"

#include <cmath>
#include <cstring>
#include <numeric>
#include <string>

#include "memchaos/error.hpp"

namespace memchaos::cipher {

namespace {

constexpr std::uint64_t kMaxPlaneElems = 0xFFFFFFFFull;  // next_uint_below bound limit

// Smallest L with L*L >= n.
std::uint32_t ceil_sqrt(std::uint64_t n) {
    auto r = static_cast<std::uint64_t>(std::ceil(std::sqrt(static_cast<double>(n))));
    while (r * r < n) ++r;
    while (r > 0 && (r - 1) * (r - 1) >= n) --r;
    return static_cast<std::uint32_t>(r);
}

void push_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
    out.push_back(static_cast<std::uint8_t>(v >> 24));
    out.push_back(static_cast<std::uint8_t>(v >> 16));
    out.push_back(static_cast<std::uint8_t>(v >> 8));
    out.push_back(static_cast<std::uint8_t>(v));
}

void push_u64(std::vector<std::uint8_t>& out, std::uint64_t v) {
    push_u32(out, static_cast<std::uint32_t>(v >> 32));
    push_u32(out, static_cast<std::uint32_t>(v));
}

std::uint32_t read_u32(const std::uint8_t* p) {
    return (std::uint32_t{p[0]} << 24) | (std::uint32_t{p[1]} << 16) |
           (std::uint32_t{p[2]} << 8) | std::uint32_t{p[3]};
}

std::uint64_t read_u64(const std::uint8_t* p) {
    return (std::uint64_t{read_u32(p)} << 32) | read_u32(p + 4);
}

// Forward scrambling of one already-permuted channel: pad with stream
// bytes, draw A and B, Arnold, diffuse. Shared by image and byte paths.
std::vector<std::uint8_t> scramble_plane(std::vector<std::uint8_t> data, std::uint32_t side,
                                         std::uint8_t rounds, KeystreamGenerator& g) {
    const std::size_t area = static_cast<std::size_t>(side) * side;
    const std::size_t n = data.size();
    data.resize(area);
    g.fill(data.data() + n, area - n);
    ArnoldParams ap;
    ap.a = g.next_uint_below(side);
    ap.b = g.next_uint_below(side);
    ap.side = side;
    ap.rounds = rounds;
    return diffuse(arnold_forward(data, ap), g);
}

// Inverse of scramble_plane; consumes perm/padding/A/B draws in encrypt
// order before un-diffusing, so the XOR stage lands on the same stream
// position it used going forward.
std::vector<std::uint8_t> unscramble_plane(const std::vector<std::uint8_t>& plane,
                                           std::size_t n, std::uint32_t side,
                                           std::uint8_t rounds, KeystreamGenerator& g,
                                           std::vector<std::uint32_t>& perm_out) {
    perm_out = keyed_permutation(n, g);
    const std::size_t area = static_cast<std::size_t>(side) * side;
    std::vector<std::uint8_t> discard(area - n);
    g.fill(discard.data(), discard.size());
    ArnoldParams ap;
    ap.a = g.next_uint_below(side);
    ap.b = g.next_uint_below(side);
    ap.side = side;
    ap.rounds = rounds;
    std::vector<std::uint8_t> padded = arnold_inverse(diffuse(plane, g), ap);
    padded.resize(n);
    return padded;
}

}  // namespace

void validate(const ArnoldParams& ap) {
    if (ap.side < 1) {
        throw DomainError("scrambling side must be >= 1");
    }
    if (ap.a >= ap.side || ap.b >= ap.side) {
        throw DomainError("scrambling coefficients must lie in [0, side)");
    }
    if (ap.rounds < 1) {
        throw DomainError("scrambling rounds must be >= 1");
    }
}

void validate(const CipherEnvelope& env) {
    if (env.side < 1) {
        throw DomainError("envelope side must be >= 1");
    }
    if (env.rounds < 1) {
        throw DomainError("envelope rounds must be >= 1");
    }
    const std::size_t area = static_cast<std::size_t>(env.side) * env.side;
    if (env.kind == PayloadKind::image) {
        if (env.width < 1 || env.height < 1) {
            throw DomainError("envelope image dimensions must be >= 1");
        }
        if (env.side != std::max(env.width, env.height)) {
            throw DomainError("envelope side must equal max(width, height)");
        }
        if (env.planes.size() != 3) {
            throw DomainError("image envelope must carry 3 planes");
        }
    } else {
        if (env.byte_length < 1) {
            throw DomainError("envelope byte length must be >= 1");
        }
        if (env.side != ceil_sqrt(env.byte_length)) {
            throw DomainError("envelope side must equal ceil(sqrt(length))");
        }
        if (env.planes.size() != 1) {
            throw DomainError("byte envelope must carry 1 plane");
        }
    }
    for (const auto& plane : env.planes) {
        if (plane.size() != area) {
            throw DomainError("envelope plane size must equal side*side");
        }
    }
}

std::vector<std::uint32_t> keyed_permutation(std::size_t n, KeystreamGenerator& g) {
    if (n < 1 || n > kMaxPlaneElems) {
        throw DomainError("permutation size must be in [1, 2^32 - 1]");
    }
    std::vector<std::uint32_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0u);
    for (std::size_t i = n - 1; i >= 1; --i) {
        const std::uint32_t j = g.next_uint_below(static_cast<std::uint32_t>(i + 1));
        std::swap(perm[i], perm[j]);
    }
    return perm;
}

std::vector<std::uint8_t> apply_permutation(const std::vector<std::uint8_t>& data,
                                            const std::vector<std::uint32_t>& perm) {
    if (data.size() != perm.size()) {
        throw DomainError("permutation length must match data length");
    }
    std::vector<std::uint8_t> out(data.size());
    for (std::size_t i = 0; i < data.size(); ++i) {
        out[i] = data[perm[i]];
    }
    return out;
}

std::vector<std::uint8_t> invert_permutation(const std::vector<std::uint8_t>& data,
                                             const std::vector<std::uint32_t>& perm) {
    if (data.size() != perm.size()) {
        throw DomainError("permutation length must match data length");
    }
    std::vector<std::uint8_t> out(data.size());
    for (std::size_t i = 0; i < data.size(); ++i) {
        out[perm[i]] = data[i];
    }
    return out;
}

std::vector<std::uint8_t> arnold_forward(const std::vector<std::uint8_t>& plane,
                                         const ArnoldParams& ap) {
    validate(ap);
    const std::uint64_t L = ap.side;
    if (plane.size() != static_cast<std::size_t>(L) * L) {
        throw DomainError("scrambling plane must be side*side bytes");
    }
    const std::uint64_t coef = (std::uint64_t{ap.a} * ap.b + 1) % L;
    std::vector<std::uint8_t> src = plane;
    std::vector<std::uint8_t> dst(plane.size());
    for (std::uint32_t round = 0; round < ap.rounds; ++round) {
        for (std::uint64_t r = 0; r < L; ++r) {
            const std::uint64_t br = (std::uint64_t{ap.b} * r) % L;
            for (std::uint64_t c = 0; c < L; ++c) {
                const std::uint64_t r2 = ((r + std::uint64_t{ap.a} * c) % L + 1) % L;
                const std::uint64_t c2 = ((br + coef * c) % L + 1) % L;
                dst[r2 * L + c2] = src[r * L + c];
            }
        }
        std::swap(src, dst);
    }
    return src;
}

std::vector<std::uint8_t> arnold_inverse(const std::vector<std::uint8_t>& plane,
                                         const ArnoldParams& ap) {
    validate(ap);
    const std::uint64_t L = ap.side;
    if (plane.size() != static_cast<std::size_t>(L) * L) {
        throw DomainError("scrambling plane must be side*side bytes");
    }
    const std::uint64_t coef = (std::uint64_t{ap.a} * ap.b + 1) % L;
    const std::uint64_t neg_a = (L - ap.a % L) % L;
    const std::uint64_t neg_b = (L - ap.b % L) % L;
    std::vector<std::uint8_t> src = plane;
    std::vector<std::uint8_t> dst(plane.size());
    for (std::uint32_t round = 0; round < ap.rounds; ++round) {
        for (std::uint64_t r2 = 0; r2 < L; ++r2) {
            const std::uint64_t t = (r2 + L - 1) % L;
            for (std::uint64_t c2 = 0; c2 < L; ++c2) {
                const std::uint64_t u = (c2 + L - 1) % L;
                const std::uint64_t r = (coef * t % L + neg_a * u % L) % L;
                const std::uint64_t c = (neg_b * t % L + u) % L;
                dst[r * L + c] = src[r2 * L + c2];
            }
        }
        std::swap(src, dst);
    }
    return src;
}

std::vector<std::uint8_t> diffuse(std::vector<std::uint8_t> buf, KeystreamGenerator& g) {
    for (auto& byte : buf) {
        for (std::size_t pass = 0; pass < kDim; ++pass) {
            byte ^= g.next_byte();
        }
    }
    return buf;
}

CipherEnvelope encrypt_image(const Image& img, const Key& key, std::uint8_t rounds) {
    memchaos::validate(img);
    if (rounds < 1) {
        throw DomainError("scrambling rounds must be >= 1");
    }
    if (img.pixel_count() > kMaxPlaneElems) {
        throw DomainError("image plane must hold at most 2^32 - 1 pixels");
    }
    const std::uint32_t side = std::max(img.width, img.height);
    KeystreamGenerator g(key);
    CipherEnvelope env;
    env.kind = PayloadKind::image;
    env.width = img.width;
    env.height = img.height;
    env.side = side;
    env.rounds = rounds;
    for (int channel = 0; channel < 3; ++channel) {
        std::vector<std::uint8_t> plane = channel_plane(img, channel);
        const auto perm = keyed_permutation(plane.size(), g);
        env.planes.push_back(
            scramble_plane(apply_permutation(plane, perm), side, rounds, g));
    }
    return env;
}

Image decrypt_image(const CipherEnvelope& env, const Key& key) {
    validate(env);
    if (env.kind != PayloadKind::image) {
        throw DomainError("envelope does not carry an image payload");
    }
    const std::size_t n = static_cast<std::size_t>(env.width) * env.height;
    KeystreamGenerator g(key);
    Image img;
    img.width = env.width;
    img.height = env.height;
    img.pixels.assign(3 * n, 0);
    for (int channel = 0; channel < 3; ++channel) {
        std::vector<std::uint32_t> perm;
        std::vector<std::uint8_t> data =
            unscramble_plane(env.planes[static_cast<std::size_t>(channel)], n, env.side,
                             env.rounds, g, perm);
        set_channel_plane(img, channel, invert_permutation(data, perm));
    }
    return img;
}

CipherEnvelope encrypt_bytes(const std::vector<std::uint8_t>& data, const Key& key,
                             std::uint8_t rounds) {
    if (data.empty() || data.size() > kMaxPlaneElems) {
        throw DomainError("byte payload length must be in [1, 2^32 - 1]");
    }
    if (rounds < 1) {
        throw DomainError("scrambling rounds must be >= 1");
    }
    KeystreamGenerator g(key);
    CipherEnvelope env;
    env.kind = PayloadKind::bytes;
    env.byte_length = data.size();
    env.side = ceil_sqrt(data.size());
    env.rounds = rounds;
    const auto perm = keyed_permutation(data.size(), g);
    env.planes.push_back(
        scramble_plane(apply_permutation(data, perm), env.side, rounds, g));
    return env;
}

std::vector<std::uint8_t> decrypt_bytes(const CipherEnvelope& env, const Key& key) {
    validate(env);
    if (env.kind != PayloadKind::bytes) {
        throw DomainError("envelope does not carry a byte payload");
    }
    const auto n = static_cast<std::size_t>(env.byte_length);
    KeystreamGenerator g(key);
    std::vector<std::uint32_t> perm;
    std::vector<std::uint8_t> data =
        unscramble_plane(env.planes[0], n, env.side, env.rounds, g, perm);
    return invert_permutation(data, perm);
}

std::vector<std::uint8_t> serialize(const CipherEnvelope& env) {
    validate(env);
    std::vector<std::uint8_t> out;
    const std::size_t area = static_cast<std::size_t>(env.side) * env.side;
    out.reserve(kEnvelopeHeaderSize + env.planes.size() * area);
    out.insert(out.end(), {'7', 'D', 'C', 'C'});
    out.push_back(kEnvelopeVersion);
    out.push_back(static_cast<std::uint8_t>(env.kind));
    if (env.kind == PayloadKind::image) {
        push_u32(out, env.width);
        push_u32(out, env.height);
    } else {
        push_u64(out, env.byte_length);
    }
    push_u32(out, env.side);
    out.push_back(env.rounds);
    for (const auto& plane : env.planes) {
        out.insert(out.end(), plane.begin(), plane.end());
    }
    return out;
}

CipherEnvelope deserialize(const std::vector<std::uint8_t>& buf) {
    if (buf.size() < kEnvelopeHeaderSize) {
        throw FormatError("envelope truncated: header needs 19 bytes, got " +
                          std::to_string(buf.size()));
    }
    if (std::memcmp(buf.data(), "7DCC", 4) != 0) {
        throw FormatError("envelope magic mismatch: expected 7DCC");
    }
    if (buf[4] != kEnvelopeVersion) {
        throw FormatError("envelope version unsupported: " + std::to_string(buf[4]));
    }
    if (buf[5] > 1) {
        throw FormatError("envelope payload kind unknown: " + std::to_string(buf[5]));
    }
    CipherEnvelope env;
    env.kind = static_cast<PayloadKind>(buf[5]);
    if (env.kind == PayloadKind::image) {
        env.width = read_u32(buf.data() + 6);
        env.height = read_u32(buf.data() + 10);
        if (env.width < 1 || env.height < 1) {
            throw FormatError("envelope image dimensions must be >= 1");
        }
    } else {
        env.byte_length = read_u64(buf.data() + 6);
        if (env.byte_length < 1) {
            throw FormatError("envelope byte length must be >= 1");
        }
        if (env.byte_length > kMaxPlaneElems) {
            throw FormatError("envelope byte length exceeds supported maximum");
        }
    }
    env.side = read_u32(buf.data() + 14);
    env.rounds = buf[18];
    if (env.side < 1) {
        throw FormatError("envelope side must be >= 1");
    }
    if (env.rounds < 1) {
        throw FormatError("envelope rounds must be >= 1");
    }
    if (env.kind == PayloadKind::image) {
        if (env.side != std::max(env.width, env.height)) {
            throw FormatError("envelope side inconsistent with image dimensions");
        }
    } else if (env.side != ceil_sqrt(env.byte_length)) {
        throw FormatError("envelope side inconsistent with byte length");
    }
    // Size arithmetic in 128 bits, checked before any plane allocation.
    const unsigned __int128 area =
        static_cast<unsigned __int128>(env.side) * env.side;
    const std::size_t plane_count = env.kind == PayloadKind::image ? 3 : 1;
    const unsigned __int128 expect =
        static_cast<unsigned __int128>(kEnvelopeHeaderSize) + plane_count * area;
    if (static_cast<unsigned __int128>(buf.size()) != expect) {
        throw FormatError("envelope size mismatch: planes do not match header");
    }
    const std::size_t plane_size = static_cast<std::size_t>(env.side) * env.side;
    const std::uint8_t* p = buf.data() + kEnvelopeHeaderSize;
    for (std::size_t i = 0; i < plane_count; ++i) {
        env.planes.emplace_back(p, p + plane_size);
        p += plane_size;
    }
    return env;
}

}  // namespace memchaos::cipher
