#pragma once

#include <complex>
#include <vector>

#include "superosc/approximation.hpp"
#include "superosc/sequence.hpp"

namespace superosc::spectral {

using cplx = std::complex<double>;

// Region of the spectrum over which F_n(T,a) is normed.
struct SpectrumWindow {
    enum class Kind { Compact, Truncated, FullLine };
    Kind kind = Kind::FullLine;
    double K = 1.0;      // compact half-width
    double gamma = 3.0;  // truncation exponent, > 2

    static SpectrumWindow compact(double K);
    static SpectrumWindow truncated(double gamma);
    static SpectrumWindow full_line();

    // half-width of the window for a given n (compact: K; truncated: n^{1/g} pi/g)
    double half_width(int n) const;
};

// ||F_n(T,a)|| = sup over the window of (cos^2(l/n) + a^2 sin^2(l/n))^{n/2}.
// Full line evaluates the closed form a^n (attained at l = n pi/2); the
// truncated window evaluates its endpoint (the integrand is monotone there).
double norm_on_window(int n, double a, const SpectrumWindow& w);

// ||Q_n(T,a,gamma)||: endpoint value at theta_n = n^{1/gamma - 1} pi / gamma.
double qn_norm(int n, double a, double gamma);
// small-angle law log ||Q_n|| ~ (a^2-1) pi^2/(2 gamma^2) n^{2/gamma - 1}
double qn_norm_smallangle_log(int n, double a, double gamma);

// Discretized spectral measure (E(dl) psi, psi).
struct SpectralDensity {
    std::vector<double> grid;
    std::vector<double> weights;
    void validate() const;  // weights >= 0, sum to 1 within 1e-12
};

// ||[Q_n - F] psi||^2 = sum_i w_i E_n(l_i, a)^2; grid must lie in the window.
double l2_convergence(int n, double a, const SpectralDensity& density,
                      const SpectrumWindow& w);

// F_n(P_hat, a) psi (x) = sum_j C_j(n,a) psi(x + (1-2j/n) L)
cplx momentum_shift_action(const approx::BandFn& psi, int n, double a, double L, double x,
                           const PrecisionPolicy& policy);

}  // namespace superosc::spectral
