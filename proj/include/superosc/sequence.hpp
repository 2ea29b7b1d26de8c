#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "superosc/precision.hpp"

namespace superosc {

// Rules evaluate at the ambient mpfr precision so that rebuilding a sequence
// inside a high-precision sum does not inject double-rounding noise.
using FreqRule = std::function<Real(int j, int n)>;
using CoeffRule = std::function<Real(int j, int n, const Real& a)>;

// Generalized Fourier sequence: Y_n(x,a) = sum_j coeffs[j] * exp(i*freqs[j]*x).
// The prototype family has freqs[j] = 1-2j/n and binomial coefficients; for it
// the exact rational parameter is kept so coefficients stay exact.
struct SuperoscSequence {
    int n = 1;
    double a = 1.0;
    std::optional<Rational> a_exact;  // set when a is known as an exact rational
    bool prototype = false;
    FreqRule freq_rule;
    CoeffRule coeff_rule;
    std::vector<double> freqs;   // materialized views, rounded to double
    std::vector<double> coeffs;

    // log2 of sum_j |coeffs[j]|, the condition number of the coefficient sum
    double log2_abs_coeff_sum() const;
};

// C_j(n,a) = (-1)^j / 2^n * binom(n,j) * (a+1)^{n-j} * (a-1)^j
Rational coefficient_exact(int n, int j, const Rational& a);
double coefficient(int n, int j, double a);

// All prototype coefficients at once, as exact rationals.
std::vector<Rational> prototype_coefficients_exact(int n, const Rational& a);

Rational rational_from_double(double a);
// Parses "p/q" or a decimal literal into an exact rational.
Rational rational_from_string(const std::string& s);

SuperoscSequence build_prototype(int n, double a);
SuperoscSequence build_prototype(int n, const Rational& a);
SuperoscSequence build_generalized(FreqRule freq_rule, CoeffRule coeff_rule, int n, double a);

// Policy bits actually needed for this sequence's coefficient sum.
unsigned required_bits_for(const SuperoscSequence& seq);
void enforce_policy_for(const PrecisionPolicy& policy, const SuperoscSequence& seq);

// --- High-precision weighted exponential sums -------------------------------
//
// Everything the library evaluates on a sequence has the shape
//     sum_j C_j * exp(z(k_j)),   k_j = freqs[j],
// where z is a polynomial with complex coefficients, z(k) = sum_m gamma[m] k^m.
// The gamma coefficients are produced by a builder invoked after the working
// precision has been raised, so they are never pre-rounded through doubles.
// For the prototype the phases advance through a finite-difference rotation
// recurrence (no per-term sin/cos) and the coefficients through an exact
// integer recurrence, which keeps the a^n-conditioned sums affordable.

using GammaBuilder = std::function<std::vector<MPComplex>()>;

MPComplex prototype_phase_sum(int n, const Rational& a, const GammaBuilder& gamma,
                              const PrecisionPolicy& policy);

MPComplex generalized_phase_sum(const SuperoscSequence& seq, const GammaBuilder& gamma,
                                const PrecisionPolicy& policy);

// Dispatches on seq.prototype; validates the policy against the sequence.
MPComplex phase_sum(const SuperoscSequence& seq, const GammaBuilder& gamma,
                    const PrecisionPolicy& policy);

// Convenience: evaluate with the result rounded to a double complex.
std::complex<double> phase_sum_d(const SuperoscSequence& seq, const GammaBuilder& gamma,
                                 const PrecisionPolicy& policy);

// sum_j C_j(n,a) * term(j, k_j) with exact prototype coefficients; `term` is
// invoked at the working precision. For sums over arbitrary function values
// (shifted test functions, series weights) where no polynomial phase exists.
MPComplex prototype_term_sum(int n, const Rational& a,
                             const std::function<MPComplex(int, const Real&)>& term,
                             const PrecisionPolicy& policy);

}  // namespace superosc
