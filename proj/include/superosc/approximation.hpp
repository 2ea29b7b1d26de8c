#pragma once

#include <complex>
#include <functional>
#include <vector>

#include "superosc/sequence.hpp"

namespace superosc::approx {

using cplx = std::complex<double>;

// A test function evaluable (with derivatives) at the ambient mpfr precision.
// Absolute accuracy of eval must track the working precision: the C_j(n,a)
// combination amplifies pointwise errors by a^n.
struct BandFn {
    std::function<MPComplex(int deriv, const Real& x)> eval;
    double l1_hat = 0;      // integral of |psi_hat|, when known
    double band_limit = 0;  // psi_hat supported in [-B, B]
};

// phi_{psi,n,a}(x) = sum_j C_j(n,a) psi^{(k)}(x + shift_scale*(1-2j/n));
// approximates psi^{(k)}(x + a) for band-limited psi.
cplx standard_approx(const BandFn& psi, int n, double a, double x, int deriv,
                     const PrecisionPolicy& policy, double shift_scale = 1.0);

// Summed form over several shift parameters (the delta-train corollary).
cplx standard_approx_multi(const BandFn& psi, int n, const std::vector<double>& shifts, double x,
                           int deriv, const PrecisionPolicy& policy);

// eps_{n,k} * integral|psi_hat| with eps_{n,k} = sup_{|lambda|<=B} |lambda|^k E_n(lambda,a).
// Requires B < n*pi/2 (branch-valid domain of E_n).
double bandlimited_error_bound(double B, double l1_hat, int n, double a, int k);

// X_gamma uniform bound (1 + a^n) * gamma / (2 pi), inverse-transform
// normalization included so the u_alpha example comes out as (1/pi)(1+a^n)sqrt(pi/alpha).
double xgamma_bound(int n, double a, double gamma);

// u_alpha(x) = x e^{-alpha x^2} and its transform
double ualpha(double alpha, double x);
cplx ualpha_hat(double alpha, double lambda);
double ualpha_l1(double alpha);  // 2 sqrt(pi/alpha)
// alpha_0 with (1+a^n) sqrt(1/(pi alpha_0)) = eps
double alpha_threshold(double a, int n, double eps);

// ----- canned high-precision corpus -------------------------------------------

BandFn fejer_fn();                  // psi_hat = (1-|l|)_+ on [-1,1], l1 = 1
BandFn exp_wave_fn(double omega);   // psi = e^{i omega x} (shift eigenfunction)
BandFn ualpha_fn(double alpha);
BandFn gaussian_fn(double alpha);   // v_alpha = e^{-alpha x^2} (counterexample)

// ----- sampled band-limited functions ------------------------------------------

// psi_hat on a uniform grid over [-B, B]; psi is the trapezoid inverse
// transform, a finite exponential sum (exactly band limited by construction).
struct BandLimitedFunction {
    double B = 1.0;
    std::vector<double> lambda;
    std::vector<cplx> hat;
    double grid_step = 0;

    double l1() const;     // trapezoid integral of |psi_hat|
    BandFn to_fn() const;  // supports any derivative order
};

BandLimitedFunction make_fejer_blf(int points = 257);
BandLimitedFunction make_raised_cosine_blf(int points = 257);
BandLimitedFunction make_bump_blf(int points = 257);

// ----- Dirichlet-series superoscillation ---------------------------------------

struct DirichletData {
    std::vector<cplx> coeffs;   // c_j
    std::vector<double> freqs;  // lambda_j > 1
    int m = 0;                  // outer truncation (defaults to coeffs.size())
    int n = 1;                  // inner superoscillation order

    void validate() const;
};

// sum_{j<m} c_j sum_k C_k(n,lambda_j) e^{i(1-2k/n)x}; evaluated through the
// product form F_n(x,lambda_j), to which the inner sum is algebraically equal.
cplx dirichlet_approx(const DirichletData& data, double x);
cplx dirichlet_limit(const DirichletData& data, double x);  // sum c_j e^{i lambda_j x}
double dirichlet_error_bound(const DirichletData& data, double M);

}  // namespace superosc::approx
