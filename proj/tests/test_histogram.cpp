#include "vidmine/errors.hpp"
#include "vidmine/histogram.hpp"
#include "vidmine/image.hpp"
#include "vidmine/vec.hpp"

#include "test_support.hpp"

#include <doctest.h>

#include <cmath>
#include <cstddef>
#include <random>
#include <vector>

using namespace vidmine;
using namespace testsupport;

namespace {

// Independent histogram oracle: count per-channel bins with plain loops and
// divide by the pixel count at the end.
FrameHistogram slow_histogram(const FrameImage& frame, std::size_t bins) {
    FrameHistogram h;
    h.bins_per_channel = bins;
    h.values.assign(3 * bins, 0.0);
    for (const Rgb& px : frame.pixels) {
        h.values[px.r * bins / 256] += 1.0;
        h.values[bins + px.g * bins / 256] += 1.0;
        h.values[2 * bins + px.b * bins / 256] += 1.0;
    }
    for (double& v : h.values) v /= static_cast<double>(frame.pixels.size());
    return h;
}

} // namespace

TEST_CASE("frame_histogram puts a solid frame's mass in one bin per channel") {
    const FrameImage red = solid_frame(4, 4, Rgb{255, 0, 0});
    const FrameHistogram h = frame_histogram(red, 16);
    REQUIRE(h.values.size() == 48);
    CHECK(h.values[15] == doctest::Approx(1.0));     // red channel, top bin
    CHECK(h.values[16] == doctest::Approx(1.0));     // green channel, bin 0
    CHECK(h.values[32] == doctest::Approx(1.0));     // blue channel, bin 0
    double total = 0.0;
    for (double v : h.values) total += v;
    CHECK(total == doctest::Approx(3.0));
}

TEST_CASE("frame_histogram bin indexing is floor(v * B / 256)") {
    FrameImage frame;
    frame.width = 4;
    frame.height = 1;
    // Boundary values for B = 4: bins are [0,64), [64,128), [128,192), [192,256).
    frame.pixels = {Rgb{0, 63, 64}, Rgb{127, 128, 191}, Rgb{192, 255, 0},
                    Rgb{64, 64, 64}};
    const FrameHistogram h = frame_histogram(frame, 4);
    CHECK(h.values[0] == doctest::Approx(0.25));  // r = 0
    CHECK(h.values[1] == doctest::Approx(0.50));  // r = 127, 64
    CHECK(h.values[3] == doctest::Approx(0.25));  // r = 192
    CHECK(h.values[4] == doctest::Approx(0.25));  // g = 63
    CHECK(h.values[7] == doctest::Approx(0.25));  // g = 255
    CHECK(h.values[9] == doctest::Approx(0.50));  // b = 64 twice
}

TEST_CASE("frame_histogram matches a brute-force recount on random frames") {
    std::mt19937_64 gen(7);
    for (std::size_t trial = 0; trial < 10; ++trial) {
        const FrameImage frame = random_frame(gen, 9, 5);
        for (std::size_t bins : {2, 3, 16, 256}) {
            const FrameHistogram fast = frame_histogram(frame, bins);
            const FrameHistogram slow = slow_histogram(frame, bins);
            REQUIRE(fast.values.size() == slow.values.size());
            for (std::size_t i = 0; i < fast.values.size(); ++i)
                CHECK(fast.values[i] == doctest::Approx(slow.values[i]));
        }
    }
}

TEST_CASE("frame_histogram per-channel blocks each sum to one") {
    std::mt19937_64 gen(11);
    const FrameImage frame = random_frame(gen, 8, 8);
    const FrameHistogram h = frame_histogram(frame, 16);
    for (std::size_t c = 0; c < 3; ++c) {
        double block = 0.0;
        for (std::size_t b = 0; b < 16; ++b) block += h.values[c * 16 + b];
        CHECK(block == doctest::Approx(1.0));
    }
}

TEST_CASE("frame_histogram rejects fewer than two bins") {
    const FrameImage frame = solid_frame(1, 1, Rgb{0, 0, 0});
    CHECK_THROWS_AS(frame_histogram(frame, 1), ConfigError);
    CHECK_THROWS_AS(frame_histogram(frame, 0), ConfigError);
}

TEST_CASE("histogram_l1 between solid red and solid blue is 4 at any bin count") {
    for (std::size_t bins : {2, 16, 64}) {
        const FrameHistogram red = frame_histogram(solid_frame(2, 2, Rgb{255, 0, 0}), bins);
        const FrameHistogram blue = frame_histogram(solid_frame(2, 2, Rgb{0, 0, 255}), bins);
        CHECK(histogram_l1(red, blue) == doctest::Approx(4.0));
    }
}

TEST_CASE("histogram_l1 is zero on identical frames and at most six") {
    std::mt19937_64 gen(3);
    const FrameHistogram a = frame_histogram(random_frame(gen, 6, 6), 16);
    const FrameHistogram b = frame_histogram(random_frame(gen, 6, 6), 16);
    CHECK(histogram_l1(a, a) == doctest::Approx(0.0));
    CHECK(histogram_l1(a, b) >= 0.0);
    CHECK(histogram_l1(a, b) <= 6.0);
    CHECK(histogram_l1(a, b) == doctest::Approx(histogram_l1(b, a)));
}

TEST_CASE("histogram_l1 rejects mismatched dimensions") {
    const FrameHistogram a = frame_histogram(solid_frame(1, 1, Rgb{0, 0, 0}), 4);
    const FrameHistogram b = frame_histogram(solid_frame(1, 1, Rgb{0, 0, 0}), 8);
    CHECK_THROWS_AS(histogram_l1(a, b), InputError);
}

TEST_CASE("to_descriptor yields a unit vector proportional to the histogram") {
    std::mt19937_64 gen(5);
    const FrameHistogram h = frame_histogram(random_frame(gen, 7, 3), 8);
    const Descriptor d = to_descriptor(h);
    REQUIRE(d.values.size() == h.values.size());
    CHECK(is_unit_norm(d));
    // Proportionality: d = h / ||h||.
    const double n = vec::l2_norm(h.values);
    for (std::size_t i = 0; i < d.values.size(); ++i)
        CHECK(d.values[i] == doctest::Approx(h.values[i] / n));
}

TEST_CASE("to_descriptor rejects an all-zero histogram") {
    FrameHistogram h;
    h.bins_per_channel = 4;
    h.values.assign(12, 0.0);
    CHECK_THROWS_WITH_AS(to_descriptor(h), doctest::Contains("degenerate"), InputError);
}

TEST_CASE("is_unit_norm tolerance window") {
    Descriptor d;
    d.values = {1.0, 0.0};
    CHECK(is_unit_norm(d));
    d.values = {1.0 + 1e-10, 0.0};
    CHECK(is_unit_norm(d));
    d.values = {1.0 + 1e-6, 0.0};
    CHECK_FALSE(is_unit_norm(d));
    d.values = {0.5, 0.5};
    CHECK_FALSE(is_unit_norm(d));
}
