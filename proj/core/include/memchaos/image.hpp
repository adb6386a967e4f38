#pragma once

#include <cstdint>
#include <cstddef>
#include <vector>

namespace memchaos {

// 8-bit RGB image, row-major, interleaved RGBRGB... Width is the number
// of columns, height the number of rows.
struct Image {
    std::uint32_t width = 0;
    std::uint32_t height = 0;
    std::vector<std::uint8_t> pixels;  // size == 3 * width * height

    std::size_t pixel_count() const noexcept {
        return static_cast<std::size_t>(width) * height;
    }
};

// Throws DomainError if dimensions are zero or the pixel buffer size
// does not match 3 * width * height.
void validate(const Image& img);

// Extracts one channel (0=R, 1=G, 2=B) as a planar buffer of
// width*height bytes.
std::vector<std::uint8_t> channel_plane(const Image& img, int channel);

// Writes a planar buffer back into one channel; sizes must match.
void set_channel_plane(Image& img, int channel, const std::vector<std::uint8_t>& plane);

}  // namespace memchaos
