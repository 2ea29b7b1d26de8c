#pragma once

#include <complex>
#include <functional>
#include <string>
#include <vector>

#include "superosc/sequence.hpp"

namespace superosc::core {

// F_n(x,a) = (cos(x/n) + i a sin(x/n))^n evaluated in polar form; stable for
// every real x, modulus computed as exp((n/2)*log1p((a^2-1)sin^2(x/n))).
std::complex<double> eval_product(int n, double a, double x);
MPComplex eval_product_mp(int n, const Real& a, const Real& x);

// Binomial-sum form sum_j C_j(n,a) e^{i k_j x}; fixed ascending-j order.
std::complex<double> eval_sum(const SuperoscSequence& seq, double x,
                              const PrecisionPolicy& policy);

// Exact error envelope E_n(x,a) = |F_n(x,a) - e^{iax}| in closed trigonometric
// form. Rejects x at the tan singularity x/n = pi/2 + k*pi.
double error_envelope(int n, double a, double x);

// Pointwise / asymptotic / sup-over-interval error report.
struct ErrorReport {
    double pointwise = 0;       // E_n(x,a)
    double asymptotic = 0;      // paper's leading-order law (|x|/n)sqrt(1.5(a^2-1))
    double sup_on_interval = 0; // eps(n,a) over [-M,M]
};
ErrorReport error_report(int n, double a, double x, double M);

// sup over [-M,M] of E_n; grid scan then golden-section refinement.
// Requires n > 2M/pi.
double sup_error(int n, double a, double M);

// sup over [lo,hi] of |lambda|^k * E_n(lambda,a); used by approximation bounds.
double weighted_sup_error(int n, double a, double lo, double hi, int k);

// First or second derivative of F_n via F' = n (g'/g) F.
std::complex<double> derivative(int n, double a, double x, int order);

struct RationalComplex {
    Rational re, im;
    std::complex<double> to_double() const {
        return {static_cast<double>(re), static_cast<double>(im)};
    }
};

// F_n^{(p)}(0,a) = sum_j C_j(n,a) [i(1-2j/n)]^p, exact over rationals.
RationalComplex taylor_moment(int n, const Rational& a, int p);

// (i/n)^p * sum over compositions k_1+...+k_n = p of p!/(k_1!...k_n!) a^eps,
// eps = number of odd parts; exhaustive enumeration, budget n,p <= 8.
RationalComplex multinomial_moment(int n, const Rational& a, int p);

// Superoscillation verdict for a sequence family along an n-schedule.
struct SuperoscVerdict {
    enum class Outcome { Yes, No, Inconclusive };
    Outcome outcome = Outcome::Inconclusive;
    std::string reason;
    std::vector<double> sup_errors;  // measured sup-distance per schedule entry
};

SuperoscVerdict check_superoscillation(const std::function<SuperoscSequence(int)>& family,
                                       double target_g_of_a, double alpha_bound, double M,
                                       double tol, const std::vector<int>& n_schedule);

}  // namespace superosc::core
