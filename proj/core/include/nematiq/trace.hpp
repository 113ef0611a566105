// Per-step scalar diagnostics recorded along a trajectory.

#pragma once

#include <vector>

namespace nematiq {

struct TraceRow {
    double t = 0.0;
    double E = 0.0;      // (1/2)(|v|^2 + |n|^2 + |grad n|^2 + int F)
    double D = 0.0;      // |grad v|^2 + |A1 n - f(n)|^2
    double psi1 = 0.0;   // (1/2)|A1 n - f(n)|^2
    double psi2 = 0.0;   // (1/2)|grad v|^2
    double phi = 1.0;    // exponential weight, filled by diagnostics
    double Q = 0.0;      // |grad v|^2 + ||n||_2^2 + int_0^t (|A v|^2 + ||n||_3^2)
    double xnorm = 0.0;  // running |y|_{X_t}
    double vL2 = 0.0;
    double nH1 = 0.0;
    double nH2 = 0.0;
    // extra diagnostics, not part of the canonical CSV columns
    double E_gl = 0.0;     // (1/2)(|v|^2 + |n|^2 + |grad n|^2) - int F (strict-decay variant)
    double lq = 0.0;       // |n|_{L^{2N+2}}^{2N+2}
    double Av2 = 0.0;      // |A v|^2
    double grad_y2 = 0.0;  // |grad(A1 n - f(n))|^2
};

struct EnergyTrace {
    std::vector<TraceRow> rows;
    int poly_degree = 1;  // N of the nonlinearity, needed by the Phi weight
    double dt = 0.0;
};

}  // namespace nematiq
