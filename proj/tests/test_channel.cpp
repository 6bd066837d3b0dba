#include <cmath>
#include <vector>

#include "doctest.h"
#include "scscc/channel.hpp"

using namespace scscc;

TEST_CASE("modulation maps bit 0 to +1 and bit 1 to -1") {
    const std::vector<uint8_t> bits = {0, 1, 1, 0};
    const std::vector<double> expect = {1.0, -1.0, -1.0, 1.0};
    CHECK(modulate(bits) == expect);
}

TEST_CASE("noise variance folds in the code rate") {
    CHECK(make_channel(0.0, 1.0 / 3.0).sigma2 == doctest::Approx(1.5).epsilon(1e-12));
    // a factor-of-two Eb/N0 halves the variance
    CHECK(make_channel(10.0 * std::log10(2.0), 1.0 / 3.0).sigma2 ==
          doctest::Approx(0.75).epsilon(1e-12));
    CHECK(make_channel(0.0, 0.5).sigma2 == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("channel values scale received samples by two over the variance") {
    ChannelSpec ch;
    ch.sigma2 = 0.5;
    const std::vector<double> y = {1.0, -0.25};
    const auto llrs = channel_llrs(y, ch);
    CHECK(llrs[0] == doctest::Approx(4.0).epsilon(1e-12));
    CHECK(llrs[1] == doctest::Approx(-1.0).epsilon(1e-12));
}

TEST_CASE("generated noise matches the requested variance") {
    const auto ch = make_channel(2.0, 1.0 / 3.0);
    CounterRng rng(777);
    const std::vector<double> clean(1000000, 1.0);
    const auto noisy = add_noise(clean, ch, rng);
    double sum = 0, sum2 = 0;
    for (const double y : noisy) {
        sum += y - 1.0;
        sum2 += (y - 1.0) * (y - 1.0);
    }
    const double mean = sum / double(noisy.size());
    const double var = sum2 / double(noisy.size()) - mean * mean;
    CHECK(std::fabs(mean) < 5e-3);
    CHECK(var == doctest::Approx(ch.sigma2).epsilon(0.01));
}

TEST_CASE("noise is reproducible from the generator key") {
    const auto ch = make_channel(1.0, 1.0 / 3.0);
    const std::vector<double> clean(64, -1.0);
    CounterRng a(42), b(42), c(43);
    const auto ya = add_noise(clean, ch, a);
    const auto yb = add_noise(clean, ch, b);
    const auto yc = add_noise(clean, ch, c);
    CHECK(ya == yb);
    CHECK(ya != yc);
}

TEST_CASE("all-zero transmission gives the textbook channel statistics") {
    const auto ch = make_channel(0.0, 1.0 / 3.0); // sigma2 = 1.5
    CounterRng rng(2025);
    const std::vector<uint8_t> zeros(200000, 0);
    const auto y = add_noise(modulate(zeros), ch, rng);
    const auto llrs = channel_llrs(y, ch);
    double sum = 0, sum2 = 0;
    for (const double l : llrs) {
        sum += l;
        sum2 += l * l;
    }
    const double mean = sum / double(llrs.size());
    const double var = sum2 / double(llrs.size()) - mean * mean;
    CHECK(mean == doctest::Approx(2.0 / ch.sigma2).epsilon(0.02));
    CHECK(var == doctest::Approx(4.0 / ch.sigma2).epsilon(0.02));
}
