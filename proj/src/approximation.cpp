#include "superosc/approximation.hpp"

#include <cmath>
#include <stdexcept>

#include "superosc/core.hpp"

namespace superosc::approx {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

Real mp_pi() {
    Real p;
    mpfr_const_pi(p.backend().data(), MPFR_RNDN);
    return p;
}

}  // namespace

cplx standard_approx(const BandFn& psi, int n, double a, double x, int deriv,
                     const PrecisionPolicy& policy, double shift_scale) {
    if (deriv < 0) throw std::invalid_argument("standard_approx: derivative order >= 0");
    Rational ar = rational_from_double(a);
    return prototype_term_sum(
               n, ar,
               [&](int, const Real& k) { return psi.eval(deriv, Real(x) + Real(shift_scale) * k); },
               policy)
        .to_double();
}

cplx standard_approx_multi(const BandFn& psi, int n, const std::vector<double>& shifts, double x,
                           int deriv, const PrecisionPolicy& policy) {
    cplx s = 0;
    for (double a : shifts) s += standard_approx(psi, n, a, x, deriv, policy);
    return s;
}

double bandlimited_error_bound(double B, double l1_hat, int n, double a, int k) {
    if (B <= 0) throw std::domain_error("bandlimited_error_bound: band limit must be > 0");
    if (B >= n * kPi / 2)
        throw std::domain_error("bandlimited_error_bound: K outside the branch-valid domain of E_n");
    return core::weighted_sup_error(n, a, 0.0, B, k) * l1_hat;
}

double xgamma_bound(int n, double a, double gamma) {
    if (gamma <= 0) throw std::domain_error("xgamma_bound: gamma must be > 0");
    return (1.0 + std::pow(a, n)) * gamma / (2.0 * kPi);
}

double ualpha(double alpha, double x) {
    if (alpha <= 0) throw std::domain_error("ualpha: alpha must be > 0");
    return x * std::exp(-alpha * x * x);
}

cplx ualpha_hat(double alpha, double lambda) {
    if (alpha <= 0) throw std::domain_error("ualpha_hat: alpha must be > 0");
    return cplx(0, -lambda / (2 * alpha)) * std::sqrt(kPi / alpha) *
           std::exp(-lambda * lambda / (4 * alpha));
}

double ualpha_l1(double alpha) {
    if (alpha <= 0) throw std::domain_error("ualpha_l1: alpha must be > 0");
    return 2.0 * std::sqrt(kPi / alpha);
}

double alpha_threshold(double a, int n, double eps) {
    if (eps <= 0) throw std::domain_error("alpha_threshold: eps must be > 0");
    double c = 1.0 + std::pow(a, n);
    return c * c / (kPi * eps * eps);
}

// ----- corpus -------------------------------------------------------------------

BandFn fejer_fn() {
    BandFn f;
    f.l1_hat = 1.0;
    f.band_limit = 1.0;
    // psi(x) = (1 - cos x)/(pi x^2) = 2 sin^2(x/2)/(pi x^2); psi_hat triangular.
    // Near zero the closed forms cancel, so a short factorial series takes over.
    f.eval = [](int deriv, const Real& x) -> MPComplex {
        if (deriv > 1) throw std::invalid_argument("fejer_fn: derivative order <= 1");
        Real pi = mp_pi();
        Real ax = abs(x);
        if (ax < Real(1) / 4) {
            // (1-cos x)/x^2 = sum_r (-1)^r x^{2r}/(2r+2)!
            Real x2 = x * x, term(1), sum0(0), sum1(0);
            Int fact = 2;  // (2r+2)! starting at r=0
            int r = 0;
            while (true) {
                Real piece = term / Real(fact);
                if (r % 2) piece = -piece;
                sum0 += piece;
                if (r >= 1) {
                    Real dp = piece * (2 * r);
                    sum1 += dp;
                }
                if (abs(piece) < ldexp(Real(1), -static_cast<long>(Real::default_precision() * 3.4) - 30) &&
                    r > 2)
                    break;
                ++r;
                term *= x2;
                fact *= (2 * r + 1) * (2 * r + 2);
                if (r > 200) break;
            }
            if (deriv == 0) return {sum0 / pi, Real(0)};
            // psi'(x) = (1/pi) sum_{r>=1} (-1)^r 2r x^{2r-1}/(2r+2)!
            return {sum1 / (pi * x), Real(0)};
        }
        Real s2 = sin(x / 2);
        if (deriv == 0) return {2 * s2 * s2 / (pi * x * x), Real(0)};
        // psi' = 2 sin(x/2) [x cos(x/2) - 2 sin(x/2)] / (pi x^3)
        Real bracket = x * cos(x / 2) - 2 * s2;
        return {2 * s2 * bracket / (pi * x * x * x), Real(0)};
    };
    return f;
}

BandFn exp_wave_fn(double omega) {
    BandFn f;
    f.band_limit = std::abs(omega);
    f.l1_hat = std::numeric_limits<double>::quiet_NaN();  // delta spectrum
    f.eval = [omega](int deriv, const Real& x) -> MPComplex {
        MPComplex v = mp_cexp(Real(0), Real(omega) * x);
        for (int i = 0; i < deriv; ++i) v *= MPComplex(Real(0), Real(omega));
        return v;
    };
    return f;
}

BandFn ualpha_fn(double alpha) {
    BandFn f;
    f.l1_hat = ualpha_l1(alpha);
    f.band_limit = std::numeric_limits<double>::infinity();  // Schwartz, not band limited
    f.eval = [alpha](int deriv, const Real& x) -> MPComplex {
        Real e = exp(-Real(alpha) * x * x);
        if (deriv == 0) return {x * e, Real(0)};
        if (deriv == 1) return {(1 - 2 * Real(alpha) * x * x) * e, Real(0)};
        throw std::invalid_argument("ualpha_fn: derivative order <= 1");
    };
    return f;
}

BandFn gaussian_fn(double alpha) {
    BandFn f;
    f.l1_hat = 2.0 * kPi;  // integral of sqrt(pi/a) e^{-l^2/4a} is 2 pi, independent of alpha
    f.band_limit = std::numeric_limits<double>::infinity();
    f.eval = [alpha](int deriv, const Real& x) -> MPComplex {
        Real e = exp(-Real(alpha) * x * x);
        if (deriv == 0) return {e, Real(0)};
        if (deriv == 1) return {-2 * Real(alpha) * x * e, Real(0)};
        throw std::invalid_argument("gaussian_fn: derivative order <= 1");
    };
    return f;
}

// ----- sampled band-limited functions ---------------------------------------------

double BandLimitedFunction::l1() const {
    double s = 0;
    for (size_t i = 0; i < hat.size(); ++i) {
        double w = (i == 0 || i + 1 == hat.size()) ? 0.5 : 1.0;
        s += w * std::abs(hat[i]);
    }
    return s * grid_step;
}

BandFn BandLimitedFunction::to_fn() const {
    BandFn f;
    f.l1_hat = l1();
    f.band_limit = B;
    auto lam = lambda;
    auto h = hat;
    double step = grid_step;
    f.eval = [lam, h, step](int deriv, const Real& x) -> MPComplex {
        Real pi = mp_pi();
        MPComplex acc(Real(0), Real(0));
        for (size_t i = 0; i < h.size(); ++i) {
            double w = (i == 0 || i + 1 == h.size()) ? 0.5 : 1.0;
            MPComplex mode = mp_cexp(Real(0), Real(lam[i]) * x);
            for (int d = 0; d < deriv; ++d) mode *= MPComplex(Real(0), Real(lam[i]));
            mode *= MPComplex(Real(w * h[i].real()), Real(w * h[i].imag()));
            acc += mode;
        }
        acc *= Real(step) / (2 * pi);
        return acc;
    };
    return f;
}

namespace {

BandLimitedFunction sampled(int points, const std::function<double(double)>& hat_of_lambda) {
    if (points < 3 || points % 2 == 0)
        throw std::invalid_argument("band-limited sampling wants an odd point count >= 3");
    BandLimitedFunction blf;
    blf.B = 1.0;
    blf.grid_step = 2.0 / (points - 1);
    blf.lambda.resize(static_cast<size_t>(points));
    blf.hat.resize(static_cast<size_t>(points));
    for (int i = 0; i < points; ++i) {
        double l = -1.0 + blf.grid_step * i;
        blf.lambda[static_cast<size_t>(i)] = l;
        blf.hat[static_cast<size_t>(i)] = hat_of_lambda(l);
    }
    return blf;
}

}  // namespace

BandLimitedFunction make_fejer_blf(int points) {
    return sampled(points, [](double l) { return std::max(0.0, 1.0 - std::abs(l)); });
}

BandLimitedFunction make_raised_cosine_blf(int points) {
    return sampled(points, [](double l) {
        return std::abs(l) <= 1.0 ? 0.5 * (1.0 + std::cos(kPi * l)) : 0.0;
    });
}

BandLimitedFunction make_bump_blf(int points) {
    return sampled(points, [](double l) {
        double s = 1.0 - l * l;
        return s > 1e-14 ? std::exp(-1.0 / s) : 0.0;
    });
}

// ----- Dirichlet ---------------------------------------------------------------------

void DirichletData::validate() const {
    if (coeffs.size() != freqs.size())
        throw std::invalid_argument("DirichletData: coefficient/frequency length mismatch");
    if (n < 1) throw std::domain_error("DirichletData: inner order n must be >= 1");
    for (double l : freqs)
        if (!(l > 1.0))
            throw std::domain_error("DirichletData: frequencies must satisfy lambda_j > 1");
}

cplx dirichlet_approx(const DirichletData& data, double x) {
    data.validate();
    size_t m = data.m > 0 ? std::min<size_t>(static_cast<size_t>(data.m), data.coeffs.size())
                          : data.coeffs.size();
    cplx s = 0;
    for (size_t j = 0; j < m; ++j)
        s += data.coeffs[j] * core::eval_product(data.n, data.freqs[j], x);
    return s;
}

cplx dirichlet_limit(const DirichletData& data, double x) {
    data.validate();
    size_t m = data.m > 0 ? std::min<size_t>(static_cast<size_t>(data.m), data.coeffs.size())
                          : data.coeffs.size();
    cplx s = 0;
    for (size_t j = 0; j < m; ++j)
        s += data.coeffs[j] * std::exp(cplx(0, data.freqs[j] * x));
    return s;
}

double dirichlet_error_bound(const DirichletData& data, double M) {
    data.validate();
    if (M <= 0) throw std::domain_error("dirichlet_error_bound: M must be > 0");
    double s = 0;
    size_t m = data.m > 0 ? std::min<size_t>(static_cast<size_t>(data.m), data.coeffs.size())
                          : data.coeffs.size();
    for (size_t j = 0; j < m; ++j) s += 2.0 * std::abs(data.coeffs[j]) * M / data.n * data.freqs[j];
    return s;
}

}  // namespace superosc::approx
