#include "nematiq/polynomial.hpp"

#include "nematiq/norms.hpp"

#include <cmath>

namespace nematiq {

PolynomialF::PolynomialF(std::vector<double> coeffs, double epsilon)
    : coeffs_(std::move(coeffs)), epsilon_(epsilon) {
    if (coeffs_.size() < 2)
        throw std::invalid_argument("PolynomialF: needs degree N >= 1");
    if (!(coeffs_.back() < 0.0))
        throw std::invalid_argument("PolynomialF: leading coefficient a_N must be negative");
}

PolynomialF PolynomialF::ginzburg_landau(double epsilon) {
    if (!(epsilon > 0.0)) throw std::invalid_argument("PolynomialF: eps must be positive");
    const double s = 1.0 / (epsilon * epsilon);
    return PolynomialF({s, -s}, epsilon);
}

double PolynomialF::ftilde(double r) const {
    double acc = 0.0;
    for (size_t k = coeffs_.size(); k-- > 0;) acc = acc * r + coeffs_[k];
    return acc;
}

double PolynomialF::ftilde_prime(double r) const {
    double acc = 0.0;
    for (size_t k = coeffs_.size(); k-- > 1;) acc = acc * r + k * coeffs_[k];
    return acc;
}

double PolynomialF::Ftilde(double r) const {
    double acc = 0.0;
    for (size_t k = coeffs_.size(); k-- > 0;) acc = acc * r + coeffs_[k] / (k + 1.0);
    return acc * r;
}

std::array<double, 3> PolynomialF::f_point(const std::array<double, 3>& d) const {
    const double r = d[0] * d[0] + d[1] * d[1] + d[2] * d[2];
    const double s = ftilde(r);
    return {s * d[0], s * d[1], s * d[2]};
}

namespace {

void require_director(const SpectralField& n, const char* where) {
    if (n.ncomp() != 3) throw std::invalid_argument(std::string(where) + ": needs 3 components");
}

}  // namespace

SpectralField eval_f(const SpectralField& n, const PolynomialF& poly) {
    require_director(n, "eval_f");
    const RealField nr = to_real(n);
    RealField out(n.grid(), FieldTag::director);
    const int sz = n.grid().size();
    for (int m = 0; m < sz; ++m) {
        const double r = nr.comp[0][m] * nr.comp[0][m] + nr.comp[1][m] * nr.comp[1][m] +
                         nr.comp[2][m] * nr.comp[2][m];
        const double s = poly.ftilde(r);
        for (int c = 0; c < 3; ++c) out.comp[c][m] = s * nr.comp[c][m];
    }
    return dealias(to_spectral(out, FieldTag::director));
}

SpectralField eval_f_prime(const SpectralField& n, const SpectralField& g,
                           const PolynomialF& poly) {
    require_director(n, "eval_f_prime");
    require_director(g, "eval_f_prime");
    const RealField nr = to_real(n);
    const RealField gr = to_real(g);
    RealField out(n.grid(), FieldTag::director);
    const int sz = n.grid().size();
    for (int m = 0; m < sz; ++m) {
        double r = 0.0, dot = 0.0;
        for (int c = 0; c < 3; ++c) {
            r += nr.comp[c][m] * nr.comp[c][m];
            dot += nr.comp[c][m] * gr.comp[c][m];
        }
        const double s = poly.ftilde(r);
        const double sp = 2.0 * poly.ftilde_prime(r) * dot;
        for (int c = 0; c < 3; ++c) out.comp[c][m] = s * gr.comp[c][m] + sp * nr.comp[c][m];
    }
    return dealias(to_spectral(out, FieldTag::director));
}

SpectralField eval_f_second(const SpectralField& n, const SpectralField& g,
                            const PolynomialF& poly) {
    require_director(n, "eval_f_second");
    require_director(g, "eval_f_second");
    const RealField nr = to_real(n);
    const RealField gr = to_real(g);
    RealField out(n.grid(), FieldTag::director);
    const int sz = n.grid().size();
    // f''(d)[g,g] = 2 ft'(r) [2 (d.g) g + |g|^2 d] + 4 ft''(r) (d.g)^2 d,  r = |d|^2.
    for (int m = 0; m < sz; ++m) {
        double r = 0.0, dot = 0.0, g2 = 0.0;
        for (int c = 0; c < 3; ++c) {
            r += nr.comp[c][m] * nr.comp[c][m];
            dot += nr.comp[c][m] * gr.comp[c][m];
            g2 += gr.comp[c][m] * gr.comp[c][m];
        }
        const double ftp = poly.ftilde_prime(r);
        // ftilde'' via the coefficients.
        double ftpp = 0.0;
        const auto& a = poly.coeffs();
        for (size_t k = a.size(); k-- > 2;) ftpp = ftpp * r + k * (k - 1.0) * a[k];
        for (int c = 0; c < 3; ++c)
            out.comp[c][m] = 2.0 * ftp * (2.0 * dot * gr.comp[c][m] + g2 * nr.comp[c][m]) +
                             4.0 * ftpp * dot * dot * nr.comp[c][m];
    }
    return dealias(to_spectral(out, FieldTag::director));
}

double eval_F_potential(const SpectralField& n, const PolynomialF& poly) {
    require_director(n, "eval_F_potential");
    const RealField nr = to_real(n);
    RealField dens(n.grid(), FieldTag::scalar);
    const int sz = n.grid().size();
    for (int m = 0; m < sz; ++m) {
        const double r = nr.comp[0][m] * nr.comp[0][m] + nr.comp[1][m] * nr.comp[1][m] +
                         nr.comp[2][m] * nr.comp[2][m];
        dens.comp[0][m] = 0.5 * poly.Ftilde(r);
    }
    return quadrature(dens);
}

}  // namespace nematiq
