// The coupled unknown y = (v, n), discrete sample paths, and the
// trajectory norm  |y|_{X_{a,b}}^2 = sup_[a,b] ||y||_V^2 + int_a^b ||y||_E^2 ds
// with ||y||_V^2 = ||v||_{H^1}^2 + ||n||_{H^2}^2 and
//      ||y||_E^2 = ||v||_{H^2}^2 + ||n||_{H^3}^2  (shifted norms throughout).

#pragma once

#include "nematiq/field.hpp"
#include "nematiq/norms.hpp"

#include <optional>

namespace nematiq {

struct SystemState {
    SpectralField v;  // velocity, 2 components, divergence-free
    SpectralField n;  // director, 3 components
    double t = 0.0;

    SystemState() = default;
    SystemState(const Grid& g, double time = 0.0)
        : v(g, FieldTag::velocity), n(g, FieldTag::director), t(time) {}
};

bool all_finite(const SystemState& y);

/// ||y||_V^2 and ||y||_E^2 of the pair.
double vnorm2(const SystemState& y);
double enorm2(const SystemState& y);
double vnorm2_diff(const SystemState& a, const SystemState& b);
double enorm2_diff(const SystemState& a, const SystemState& b);

struct Trajectory {
    Grid grid;
    std::vector<double> times;        // strictly increasing, uniform step
    std::vector<SystemState> states;  // aligned with times
    bool blown_up = false;

    double dt() const { return times.size() > 1 ? times[1] - times[0] : 0.0; }
    size_t steps() const { return times.empty() ? 0 : times.size() - 1; }
    int index_of(double t) const;
};

/// |traj|_{X_{a,b}}; a and b must be grid times, the time integral uses
/// the trapezoid rule on the stored grid.
double xnorm(const Trajectory& traj, double a, double b);

/// X-norm of the difference of two trajectories on a shared time grid.
double xnorm_distance(const Trajectory& a, const Trajectory& b, double t0, double t1);

/// Running |y|_{X_t} accumulator: push states in time order, query the
/// norm up to the latest pushed time.
class RunningXNorm {
  public:
    void push(const SystemState& y, double t);
    double value() const;
    void clear();

  private:
    double sup_v2_ = 0.0;
    double integral_e2_ = 0.0;
    double prev_e2_ = 0.0;
    double prev_t_ = 0.0;
    bool have_prev_ = false;
};

}  // namespace nematiq
