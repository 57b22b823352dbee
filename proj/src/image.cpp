#include "vidmine/image.hpp"

#include "vidmine/errors.hpp"

#include <fstream>
#include <sstream>

namespace vidmine {

namespace {

bool is_ppm_space(std::uint8_t c) {
    return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\v' || c == '\f';
}

bool is_digit(std::uint8_t c) {
    return c >= '0' && c <= '9';
}

[[noreturn]] void fail(const std::string& what, std::size_t offset) {
    std::ostringstream msg;
    msg << what << " at byte " << offset;
    throw InputError(msg.str());
}

// Skips whitespace and '#' comments (comments end at newline).
void skip_separators(std::span<const std::uint8_t> data, std::size_t& pos) {
    while (pos < data.size()) {
        if (is_ppm_space(data[pos])) {
            ++pos;
        } else if (data[pos] == '#') {
            while (pos < data.size() && data[pos] != '\n')
                ++pos;
        } else {
            return;
        }
    }
}

std::size_t read_uint(std::span<const std::uint8_t> data, std::size_t& pos,
                      const char* field) {
    skip_separators(data, pos);
    const std::size_t start = pos;
    if (pos >= data.size() || !is_digit(data[pos]))
        fail(std::string("expected unsigned integer for ") + field, start);
    std::size_t value = 0;
    while (pos < data.size() && is_digit(data[pos])) {
        value = value * 10 + static_cast<std::size_t>(data[pos] - '0');
        if (value > (1u << 30))
            fail(std::string(field) + " out of range", start);
        ++pos;
    }
    return value;
}

} // namespace

FrameImage decode_ppm(std::span<const std::uint8_t> data) {
    if (data.size() < 2 || data[0] != 'P' || data[1] != '6')
        fail("malformed magic number, expected \"P6\"", 0);

    std::size_t pos = 2;
    const std::size_t width_at = pos;
    const std::size_t width = read_uint(data, pos, "width");
    const std::size_t height_at = pos;
    const std::size_t height = read_uint(data, pos, "height");
    const std::size_t maxval_at = pos;
    const std::size_t maxval = read_uint(data, pos, "maxval");

    if (width == 0)
        fail("zero dimensions: width must be >= 1", width_at);
    if (height == 0)
        fail("zero dimensions: height must be >= 1", height_at);
    if (maxval != 255) {
        std::ostringstream msg;
        msg << "unsupported maxval " << maxval << " (only 255)";
        fail(msg.str(), maxval_at);
    }

    // Exactly one whitespace byte separates the header from the raster.
    if (pos >= data.size() || !is_ppm_space(data[pos]))
        fail("expected single whitespace before pixel data", pos);
    ++pos;

    const std::size_t need = 3 * width * height;
    if (data.size() - pos < need) {
        std::ostringstream msg;
        msg << "truncated pixel data: need " << need << " bytes, have "
            << (data.size() - pos);
        fail(msg.str(), pos);
    }

    FrameImage frame;
    frame.width = width;
    frame.height = height;
    frame.pixels.resize(width * height);
    for (std::size_t i = 0; i < frame.pixels.size(); ++i) {
        frame.pixels[i].r = data[pos + 3 * i];
        frame.pixels[i].g = data[pos + 3 * i + 1];
        frame.pixels[i].b = data[pos + 3 * i + 2];
    }
    return frame;
}

FrameImage decode_ppm_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw InputError(path.string() + ": cannot open file");
    std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                    std::istreambuf_iterator<char>());
    try {
        return decode_ppm(bytes);
    } catch (const InputError& e) {
        throw InputError(path.string() + ": " + e.what());
    }
}

} // namespace vidmine
