#include "nematiq/wiener.hpp"

#include <cmath>
#include <cstdio>

namespace nematiq {

namespace {

// Philox4x32-10 (Salmon et al.), the usual constants.
constexpr uint32_t kPhiloxM0 = 0xD2511F53u;
constexpr uint32_t kPhiloxM1 = 0xCD9E8D57u;
constexpr uint32_t kPhiloxW0 = 0x9E3779B9u;
constexpr uint32_t kPhiloxW1 = 0xBB67AE85u;

struct Block {
    uint32_t x[4];
};

inline void philox_round(Block& b, uint32_t k0, uint32_t k1) {
    const uint64_t p0 = uint64_t(kPhiloxM0) * b.x[0];
    const uint64_t p1 = uint64_t(kPhiloxM1) * b.x[2];
    const uint32_t hi0 = uint32_t(p0 >> 32), lo0 = uint32_t(p0);
    const uint32_t hi1 = uint32_t(p1 >> 32), lo1 = uint32_t(p1);
    b = Block{{hi1 ^ b.x[1] ^ k0, lo1, hi0 ^ b.x[3] ^ k1, lo0}};
}

Block philox10(Block ctr, uint32_t k0, uint32_t k1) {
    for (int r = 0; r < 10; ++r) {
        philox_round(ctr, k0, k1);
        k0 += kPhiloxW0;
        k1 += kPhiloxW1;
    }
    return ctr;
}

inline double to_unit(uint32_t hi, uint32_t lo) {
    // 53 random bits -> (0,1), never exactly 0.
    const uint64_t bits = (uint64_t(hi) << 21) ^ (uint64_t(lo) >> 11);
    return (double(bits & ((uint64_t(1) << 53) - 1)) + 0.5) * 0x1.0p-53;
}

}  // namespace

double gaussian_draw(uint64_t seed, uint32_t channel, uint64_t step) {
    Block ctr{{uint32_t(step), uint32_t(step >> 32), channel, 0u}};
    const Block out = philox10(ctr, uint32_t(seed), uint32_t(seed >> 32));
    const double u1 = to_unit(out.x[0], out.x[1]);
    const double u2 = to_unit(out.x[2], out.x[3]);
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
}

WienerPath::WienerPath(uint64_t seed, double dt_fine, int steps, int channels)
    : seed_(seed), dt_fine_(dt_fine), steps_(steps), channels_(channels) {
    if (!(dt_fine > 0.0)) throw std::invalid_argument("WienerPath: dt_fine must be positive");
    if (steps < 0 || channels < 1) throw std::invalid_argument("WienerPath: bad shape");
    const double sd = std::sqrt(dt_fine);
    inc_.assign(channels, std::vector<double>(steps));
    for (int c = 0; c < channels; ++c)
        for (int s = 0; s < steps; ++s)
            inc_[c][s] = sd * gaussian_draw(seed, uint32_t(c), uint64_t(s));
}

double WienerPath::increment(int channel, int step) const {
    return inc_.at(channel).at(step);
}

double WienerPath::coarse_increment(int channel, int coarse_step, int m) const {
    double acc = 0.0;
    for (int s = coarse_step * m; s < (coarse_step + 1) * m; ++s) acc += inc_.at(channel).at(s);
    return acc;
}

double WienerPath::path_value(int channel, int step) const {
    double acc = 0.0;
    for (int s = 0; s < step; ++s) acc += inc_.at(channel).at(s);
    return acc;
}

WienerPath WienerPath::coarsened(int m) const {
    if (m < 1 || steps_ % m != 0)
        throw std::invalid_argument("WienerPath::coarsened: m must divide the step count");
    WienerPath out;
    out.seed_ = seed_;
    out.dt_fine_ = dt_fine_ * m;
    out.steps_ = steps_ / m;
    out.channels_ = channels_;
    out.inc_.assign(channels_, std::vector<double>(out.steps_));
    for (int c = 0; c < channels_; ++c)
        for (int s = 0; s < out.steps_; ++s) out.inc_[c][s] = coarse_increment(c, s, m);
    return out;
}

WienerPath sample_path(uint64_t seed, double dt_fine, int steps, int channels) {
    return WienerPath(seed, dt_fine, steps, channels);
}

std::string path_to_ndjson(const WienerPath& path) {
    std::string out;
    char buf[128];
    for (int c = 0; c < path.channels(); ++c) {
        for (int s = 0; s < path.steps(); ++s) {
            std::snprintf(buf, sizeof(buf), "{\"channel\":%d,\"step\":%d,\"increment\":%.17g}\n",
                          c, s, path.increment(c, s));
            out += buf;
        }
    }
    return out;
}

}  // namespace nematiq
