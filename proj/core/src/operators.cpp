#include "nematiq/operators.hpp"

#include "nematiq/norms.hpp"

#include <cmath>

namespace nematiq {

SpectralField derivative(const SpectralField& f, int axis) {
    if (axis != 0 && axis != 1) throw std::invalid_argument("derivative: axis must be 0 or 1");
    const Grid& g = f.grid();
    SpectralField out = f;
    for (int c = 0; c < f.ncomp(); ++c)
        for (int m = 0; m < g.size(); ++m)
            out[c][m] = Complex(0, 1) * (axis == 0 ? g.kx(m) : g.ky(m)) * f[c][m];
    return out;
}

SpectralField leray_project(const SpectralField& u) {
    if (u.ncomp() != 2) throw std::invalid_argument("leray_project: needs a 2-component field");
    const Grid& g = u.grid();
    SpectralField out(g, FieldTag::velocity);
    for (int m = 0; m < g.size(); ++m) {
        const double k2 = g.k2(m);
        if (k2 == 0.0) {
            out[0][m] = u[0][m];
            out[1][m] = u[1][m];
            continue;
        }
        const Complex kdotu = g.kx(m) * u[0][m] + g.ky(m) * u[1][m];
        out[0][m] = u[0][m] - g.kx(m) * kdotu / k2;
        out[1][m] = u[1][m] - g.ky(m) * kdotu / k2;
    }
    return out;
}

SpectralField apply_stokes(const SpectralField& v, double power) {
    if (power < -1.0 || power > 1.0)
        throw std::invalid_argument("apply_stokes: power outside [-1,1]");
    const Grid& g = v.grid();
    if (power < 0.0)
        for (int c = 0; c < v.ncomp(); ++c)
            if (std::abs(v[c][0]) > 0.0)
                throw std::invalid_argument("apply_stokes: negative power needs a zero-mean field");
    SpectralField out = v;
    for (int c = 0; c < v.ncomp(); ++c) {
        for (int m = 0; m < g.size(); ++m) {
            const double k2 = g.k2(m);
            if (k2 == 0.0) {
                if (power != 0.0) out[c][m] = Complex{};
            } else {
                out[c][m] *= std::pow(k2, power);
            }
        }
    }
    return out;
}

SpectralField apply_A1(const SpectralField& n, double power, bool shifted) {
    if (power < -2.0 || power > 2.0)
        throw std::invalid_argument("apply_A1: power outside [-2,2]");
    const Grid& g = n.grid();
    if (!shifted && power < 0.0)
        for (int c = 0; c < n.ncomp(); ++c)
            if (std::abs(n[c][0]) > 0.0)
                throw std::invalid_argument(
                    "apply_A1: unshifted negative power needs a zero-mean field");
    SpectralField out = n;
    for (int c = 0; c < n.ncomp(); ++c) {
        for (int m = 0; m < g.size(); ++m) {
            const double k2 = g.k2(m);
            if (shifted) {
                out[c][m] *= std::pow(1.0 + k2, power);
            } else if (k2 == 0.0) {
                if (power != 0.0) out[c][m] = Complex{};
            } else {
                out[c][m] *= std::pow(k2, power);
            }
        }
    }
    return out;
}

SpectralField semigroup_apply(const SpectralField& f, double t) {
    if (t < 0.0) throw std::invalid_argument("semigroup_apply: t must be nonnegative");
    const Grid& g = f.grid();
    SpectralField out = f;
    for (int c = 0; c < f.ncomp(); ++c)
        for (int m = 0; m < g.size(); ++m) out[c][m] *= std::exp(-t * g.k2(m));
    return out;
}

namespace {

// Real-space samples of all partial derivatives of the components of f.
// d[axis][c] is the sample array of d_axis f_c.
struct GradSamples {
    std::vector<std::vector<double>> d[2];
};

GradSamples gradient_samples(const SpectralField& f) {
    GradSamples gs;
    for (int axis = 0; axis < 2; ++axis) {
        RealField r = to_real(derivative(f, axis));
        gs.d[axis] = std::move(r.comp);
    }
    return gs;
}

}  // namespace

double trilinear_b(const SpectralField& u, const SpectralField& v, const SpectralField& w) {
    require_same_grid(u.grid(), v.grid(), "trilinear_b");
    require_same_grid(u.grid(), w.grid(), "trilinear_b");
    if (u.ncomp() != 2) throw std::invalid_argument("trilinear_b: u needs 2 components");
    if (v.ncomp() != w.ncomp())
        throw std::invalid_argument("trilinear_b: v and w need equal component counts");

    const RealField ur = to_real(dealias(u));
    const RealField wr = to_real(dealias(w));
    const GradSamples dv = gradient_samples(dealias(v));

    const int sz = u.grid().size();
    double acc = 0.0;
    for (int m = 0; m < sz; ++m) {
        double s = 0.0;
        for (int j = 0; j < v.ncomp(); ++j)
            s += (ur.comp[0][m] * dv.d[0][j][m] + ur.comp[1][m] * dv.d[1][j][m]) * wr.comp[j][m];
        acc += s;
    }
    return acc * u.grid().cell_area();
}

namespace {

// u.grad v in real space, dealiased on output.
SpectralField advect(const SpectralField& u, const SpectralField& v, FieldTag out_tag) {
    require_same_grid(u.grid(), v.grid(), "advect");
    const RealField ur = to_real(u);
    const GradSamples dv = gradient_samples(v);
    RealField out(u.grid(), out_tag);
    const int sz = u.grid().size();
    for (int j = 0; j < component_count(out_tag); ++j)
        for (int m = 0; m < sz; ++m)
            out.comp[j][m] = ur.comp[0][m] * dv.d[0][j][m] + ur.comp[1][m] * dv.d[1][j][m];
    return dealias(to_spectral(out, out_tag));
}

}  // namespace

SpectralField apply_B(const SpectralField& u, const SpectralField& v) {
    if (u.ncomp() != 2 || v.ncomp() != 2)
        throw std::invalid_argument("apply_B: velocity fields expected");
    return leray_project(advect(u, v, FieldTag::velocity));
}

SpectralField apply_Btilde(const SpectralField& v, const SpectralField& n) {
    if (v.ncomp() != 2 || n.ncomp() != 3)
        throw std::invalid_argument("apply_Btilde: (velocity, director) expected");
    return advect(v, n, FieldTag::director);
}

SpectralField apply_M(const SpectralField& n1, const SpectralField& n2) {
    require_same_grid(n1.grid(), n2.grid(), "apply_M");
    if (n1.ncomp() != 3 || n2.ncomp() != 3)
        throw std::invalid_argument("apply_M: director fields expected");
    const Grid& g = n1.grid();
    const GradSamples d1 = gradient_samples(n1);
    const GradSamples d2 = gradient_samples(n2);
    const int sz = g.size();

    // T_{ij} = sum_k d_i n1^k d_j n2^k, then (Div T)_i = sum_j d_j T_{ij}.
    SpectralField div(g, FieldTag::velocity);
    RealField tij(g, FieldTag::scalar);
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
            for (int m = 0; m < sz; ++m) {
                double s = 0.0;
                for (int k = 0; k < 3; ++k) s += d1.d[i][k][m] * d2.d[j][k][m];
                tij.comp[0][m] = s;
            }
            SpectralField t_hat = dealias(to_spectral(tij, FieldTag::scalar));
            for (int m = 0; m < sz; ++m)
                div[i][m] += Complex(0, 1) * (j == 0 ? g.kx(m) : g.ky(m)) * t_hat[0][m];
        }
    }
    return leray_project(div);
}

DirectorNoise::DirectorNoise(SpectralField h_raw, double amp) : amplitude(amp) {
    if (h_raw.ncomp() != 3) throw std::invalid_argument("DirectorNoise: h needs 3 components");
    h = dealias(std::move(h_raw));
    h *= amp;
}

SpectralField cross_product(const SpectralField& a, const SpectralField& b) {
    require_same_grid(a.grid(), b.grid(), "cross_product");
    if (a.ncomp() != 3 || b.ncomp() != 3)
        throw std::invalid_argument("cross_product: director fields expected");
    const RealField ar = to_real(a);
    const RealField br = to_real(b);
    RealField out(a.grid(), FieldTag::director);
    const int sz = a.grid().size();
    for (int m = 0; m < sz; ++m) {
        const double a0 = ar.comp[0][m], a1 = ar.comp[1][m], a2 = ar.comp[2][m];
        const double b0 = br.comp[0][m], b1 = br.comp[1][m], b2 = br.comp[2][m];
        out.comp[0][m] = a1 * b2 - a2 * b1;
        out.comp[1][m] = a2 * b0 - a0 * b2;
        out.comp[2][m] = a0 * b1 - a1 * b0;
    }
    return dealias(to_spectral(out, FieldTag::director));
}

SpectralField apply_G(const SpectralField& n, const DirectorNoise& dn, int order) {
    if (order != 1 && order != 2) throw std::invalid_argument("apply_G: order must be 1 or 2");
    SpectralField g1 = cross_product(n, dn.h);
    if (order == 1) return g1;
    return cross_product(g1, dn.h);
}

VelocityNoise VelocityNoise::smoothed(const Grid&, double s, double sigma0, int J) {
    if (s < 0.5) throw std::invalid_argument("VelocityNoise: smoothing order must be >= 1/2");
    if (J < 1) throw std::invalid_argument("VelocityNoise: needs J >= 1 modes");
    VelocityNoise vn;
    vn.mode = Mode::smoothed_multiplicative;
    vn.smoothing_order = s;
    vn.sigmas.resize(J);
    double sum2 = 0.0;
    for (int j = 0; j < J; ++j) {
        vn.sigmas[j] = sigma0 / (j + 1.0);
        sum2 += vn.sigmas[j] * vn.sigmas[j];
    }
    // ||(I+A)^{-s} v||_{H^1}^2 <= |v|_{L^2}^2 for s >= 1/2, so ell5 = sum sigma_j^2.
    vn.ell5 = sum2;
    return vn;
}

VelocityNoise VelocityNoise::additive(const Grid& g, double sigma0, int J) {
    if (J < 1) throw std::invalid_argument("VelocityNoise: needs J >= 1 modes");
    static const int kvecs[][2] = {{1, 0}, {0, 1},  {1, 1},  {1, -1}, {2, 0},  {0, 2},
                                   {2, 1}, {1, 2},  {2, -1}, {-1, 2}, {2, 2},  {3, 0},
                                   {0, 3}, {3, 1},  {1, 3},  {2, -2}};
    if (J > static_cast<int>(sizeof(kvecs) / sizeof(kvecs[0])))
        throw std::invalid_argument("VelocityNoise: too many additive modes requested");
    VelocityNoise vn;
    vn.mode = Mode::additive;
    vn.sigmas.resize(J);
    vn.basis.reserve(J);
    double ell5 = 0.0;
    for (int j = 0; j < J; ++j) {
        vn.sigmas[j] = sigma0 / (j + 1.0);
        const int kx = kvecs[j][0], ky = kvecs[j][1];
        // Single-mode divergence-free field: cos(k.x) * perp(k)/|k|.
        const double kn = std::sqrt(double(kx) * kx + double(ky) * ky);
        SpectralField gj(g, FieldTag::velocity);
        const int mp = g.mode_index(kx, ky);
        const int mm = g.mode_index(-kx, -ky);
        const Complex half(0.5, 0.0);
        gj[0][mp] = half * (-ky / kn);
        gj[0][mm] = half * (-ky / kn);
        gj[1][mp] = half * (kx / kn);
        gj[1][mm] = half * (kx / kn);
        dealias_inplace(gj);
        const double h1 = h1_norm(gj);
        ell5 += vn.sigmas[j] * vn.sigmas[j] * h1 * h1;
        vn.basis.push_back(std::move(gj));
    }
    vn.ell5 = ell5;
    return vn;
}

SpectralField apply_S(const SpectralField& v, const VelocityNoise& vn, int j) {
    if (j < 0 || j >= vn.modes()) throw std::out_of_range("apply_S: mode index out of range");
    if (vn.mode == VelocityNoise::Mode::additive) return vn.sigmas[j] * vn.basis[j];
    SpectralField out = apply_A1(v, -vn.smoothing_order, true);
    out *= vn.sigmas[j];
    return out;
}

double hilbert_schmidt_h1_sq(const SpectralField& v, const VelocityNoise& vn) {
    double acc = 0.0;
    for (int j = 0; j < vn.modes(); ++j) {
        const double a = h1_norm(apply_S(v, vn, j));
        acc += a * a;
    }
    return acc;
}

double hilbert_schmidt_l2_sq(const SpectralField& v, const VelocityNoise& vn) {
    double acc = 0.0;
    for (int j = 0; j < vn.modes(); ++j) {
        const double a = l2_norm(apply_S(v, vn, j));
        acc += a * a;
    }
    return acc;
}

}  // namespace nematiq
