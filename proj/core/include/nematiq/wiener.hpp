// Wiener increments from counter-based substreams.
//
// Every N(0, dt_fine) increment is a pure function of (seed, channel, step)
// through a Philox4x32-10 block cipher, so paths are reproducible bit for
// bit regardless of scheduling, and coarse increments are sums of fine ones
// (refinement consistency).

#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace nematiq {

/// Standard normal draw for counter (seed, channel, step).
double gaussian_draw(uint64_t seed, uint32_t channel, uint64_t step);

class WienerPath {
  public:
    WienerPath() = default;
    WienerPath(uint64_t seed, double dt_fine, int steps, int channels);

    uint64_t seed() const { return seed_; }
    double dt_fine() const { return dt_fine_; }
    int steps() const { return steps_; }
    int channels() const { return channels_; }

    /// Fine increment dW over [step*dt_fine, (step+1)*dt_fine).
    double increment(int channel, int step) const;

    /// Coarse increment over [step*m, (step+1)*m) fine steps.
    double coarse_increment(int channel, int coarse_step, int m) const;

    /// W(t_step) = sum of the first `step` fine increments.
    double path_value(int channel, int step) const;

    /// Path with every increment the sum of m fine increments of this one.
    WienerPath coarsened(int m) const;

  private:
    uint64_t seed_ = 0;
    double dt_fine_ = 0.0;
    int steps_ = 0;
    int channels_ = 0;
    std::vector<std::vector<double>> inc_;  // [channel][step]
};

WienerPath sample_path(uint64_t seed, double dt_fine, int steps, int channels);

/// NDJSON audit dump, one record {channel, step, increment} per line.
std::string path_to_ndjson(const WienerPath& path);

}  // namespace nematiq
