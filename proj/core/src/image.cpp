#include "memchaos/image.hpp"

#include "memchaos/error.hpp"

namespace memchaos {

void validate(const Image& img) {
    if (img.width == 0 || img.height == 0) {
        throw DomainError("image dimensions must be >= 1");
    }
    const std::size_t expect = 3 * img.pixel_count();
    if (img.pixels.size() != expect) {
        throw DomainError("image pixel buffer size does not match dimensions");
    }
}

std::vector<std::uint8_t> channel_plane(const Image& img, int channel) {
    validate(img);
    if (channel < 0 || channel > 2) {
        throw DomainError("channel index must be 0, 1, or 2");
    }
    const std::size_t n = img.pixel_count();
    std::vector<std::uint8_t> plane(n);
    for (std::size_t i = 0; i < n; ++i) {
        plane[i] = img.pixels[3 * i + static_cast<std::size_t>(channel)];
    }
    return plane;
}

void set_channel_plane(Image& img, int channel, const std::vector<std::uint8_t>& plane) {
    validate(img);
    if (channel < 0 || channel > 2) {
        throw DomainError("channel index must be 0, 1, or 2");
    }
    const std::size_t n = img.pixel_count();
    if (plane.size() != n) {
        throw DomainError("channel plane size does not match image dimensions");
    }
    for (std::size_t i = 0; i < n; ++i) {
        img.pixels[3 * i + static_cast<std::size_t>(channel)] = plane[i];
    }
}

}  // namespace memchaos
