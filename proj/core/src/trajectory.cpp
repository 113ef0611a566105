#include "nematiq/trajectory.hpp"

#include <cmath>

namespace nematiq {

bool all_finite(const SystemState& y) { return all_finite(y.v) && all_finite(y.n); }

double vnorm2(const SystemState& y) {
    const double a = sobolev_norm(y.v, {1.0, true});
    const double b = sobolev_norm(y.n, {2.0, true});
    return a * a + b * b;
}

double enorm2(const SystemState& y) {
    const double a = sobolev_norm(y.v, {2.0, true});
    const double b = sobolev_norm(y.n, {3.0, true});
    return a * a + b * b;
}

double vnorm2_diff(const SystemState& a, const SystemState& b) {
    SystemState d;
    d.v = a.v - b.v;
    d.n = a.n - b.n;
    return vnorm2(d);
}

double enorm2_diff(const SystemState& a, const SystemState& b) {
    SystemState d;
    d.v = a.v - b.v;
    d.n = a.n - b.n;
    return enorm2(d);
}

int Trajectory::index_of(double t) const {
    const double h = dt();
    if (times.empty()) throw std::invalid_argument("Trajectory::index_of: empty trajectory");
    const double tol = (h > 0 ? h : 1.0) * 1e-9;
    const long i = std::lround((t - times.front()) / (h > 0 ? h : 1.0));
    if (i < 0 || i >= static_cast<long>(times.size()) || std::abs(times[i] - t) > tol)
        throw std::invalid_argument("Trajectory::index_of: time not on the stored grid");
    return static_cast<int>(i);
}

namespace {

double xnorm_impl(int i0, int i1, const std::vector<double>& times,
                  const std::vector<double>& v2, const std::vector<double>& e2) {
    double sup = 0.0, integral = 0.0;
    for (int i = i0; i <= i1; ++i) {
        sup = std::max(sup, v2[i]);
        if (i > i0) integral += 0.5 * (e2[i] + e2[i - 1]) * (times[i] - times[i - 1]);
    }
    return std::sqrt(sup + integral);
}

}  // namespace

double xnorm(const Trajectory& traj, double a, double b) {
    const int i0 = traj.index_of(a);
    const int i1 = traj.index_of(b);
    if (i1 < i0) throw std::invalid_argument("xnorm: requires a <= b");
    std::vector<double> v2(i1 + 1), e2(i1 + 1);
    for (int i = i0; i <= i1; ++i) {
        v2[i] = vnorm2(traj.states[i]);
        e2[i] = enorm2(traj.states[i]);
    }
    return xnorm_impl(i0, i1, traj.times, v2, e2);
}

double xnorm_distance(const Trajectory& a, const Trajectory& b, double t0, double t1) {
    const int i0 = a.index_of(t0);
    const int i1 = a.index_of(t1);
    if (b.index_of(t0) != i0 || b.index_of(t1) != i1)
        throw std::invalid_argument("xnorm_distance: trajectories not on a shared grid");
    std::vector<double> v2(i1 + 1), e2(i1 + 1);
    for (int i = i0; i <= i1; ++i) {
        v2[i] = vnorm2_diff(a.states[i], b.states[i]);
        e2[i] = enorm2_diff(a.states[i], b.states[i]);
    }
    return xnorm_impl(i0, i1, a.times, v2, e2);
}

void RunningXNorm::push(const SystemState& y, double t) {
    const double v2 = vnorm2(y);
    const double e2 = enorm2(y);
    sup_v2_ = std::max(sup_v2_, v2);
    if (have_prev_) integral_e2_ += 0.5 * (e2 + prev_e2_) * (t - prev_t_);
    prev_e2_ = e2;
    prev_t_ = t;
    have_prev_ = true;
}

double RunningXNorm::value() const { return std::sqrt(sup_v2_ + integral_e2_); }

void RunningXNorm::clear() {
    sup_v2_ = integral_e2_ = prev_e2_ = prev_t_ = 0.0;
    have_prev_ = false;
}

}  // namespace nematiq
