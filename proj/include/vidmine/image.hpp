#ifndef VIDMINE_IMAGE_HPP
#define VIDMINE_IMAGE_HPP

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

namespace vidmine {

struct Rgb {
    std::uint8_t r = 0;
    std::uint8_t g = 0;
    std::uint8_t b = 0;
};

// 8-bit RGB frame; pixels are row-major, pixels.size() == width * height.
struct FrameImage {
    std::size_t width = 0;
    std::size_t height = 0;
    std::vector<Rgb> pixels;
};

// Parses a binary PPM ("P6", maxval 255). Header comments start with '#'
// and run to end of line. Throws InputError naming the byte offset on
// malformed input.
FrameImage decode_ppm(std::span<const std::uint8_t> data);

// Reads the file and decodes it; errors are prefixed with the path.
FrameImage decode_ppm_file(const std::filesystem::path& path);

} // namespace vidmine

#endif
