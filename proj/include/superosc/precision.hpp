#pragma once

#include <boost/multiprecision/mpfr.hpp>
#include <boost/multiprecision/gmp.hpp>

#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>

namespace superosc {

// Arbitrary-precision scalar types. Real carries runtime-variable precision;
// Int/Rational are exact.
using Real = boost::multiprecision::number<boost::multiprecision::mpfr_float_backend<0>,
                                           boost::multiprecision::et_off>;
using Int = boost::multiprecision::mpz_int;
using Rational = boost::multiprecision::mpq_rational;

inline unsigned bits_to_digits10(unsigned bits) {
    return static_cast<unsigned>(bits * 0.30103) + 4;
}

// Sets the working mpfr precision for the lifetime of the object. All Reals
// constructed while it is alive carry at least the requested significand width.
class ScopedPrecision {
  public:
    explicit ScopedPrecision(unsigned bits)
        : saved_(Real::default_precision()) {
        Real::default_precision(bits_to_digits10(bits < 64 ? 64 : bits));
    }
    ~ScopedPrecision() { Real::default_precision(saved_); }
    ScopedPrecision(const ScopedPrecision&) = delete;
    ScopedPrecision& operator=(const ScopedPrecision&) = delete;

  private:
    unsigned saved_;
};

struct MPComplex {
    Real re, im;

    MPComplex() : re(0), im(0) {}
    MPComplex(Real r, Real i) : re(std::move(r)), im(std::move(i)) {}
    explicit MPComplex(const std::complex<double>& z) : re(z.real()), im(z.imag()) {}

    std::complex<double> to_double() const {
        return {static_cast<double>(re), static_cast<double>(im)};
    }

    MPComplex& operator+=(const MPComplex& o) {
        re += o.re;
        im += o.im;
        return *this;
    }
    MPComplex& operator-=(const MPComplex& o) {
        re -= o.re;
        im -= o.im;
        return *this;
    }
    MPComplex& operator*=(const MPComplex& o) {
        Real t = re * o.re - im * o.im;
        im = re * o.im + im * o.re;
        re = std::move(t);
        return *this;
    }
    MPComplex& operator*=(const Real& s) {
        re *= s;
        im *= s;
        return *this;
    }
    friend MPComplex operator+(MPComplex a, const MPComplex& b) { return a += b; }
    friend MPComplex operator-(MPComplex a, const MPComplex& b) { return a -= b; }
    friend MPComplex operator*(MPComplex a, const MPComplex& b) { return a *= b; }
    friend MPComplex operator*(MPComplex a, const Real& s) { return a *= s; }

    Real abs() const { return sqrt(re * re + im * im); }
};

// exp(re + i*im) evaluated at the ambient precision.
inline MPComplex mp_cexp(const Real& re, const Real& im) {
    Real m = exp(re);
    return {m * cos(im), m * sin(im)};
}
inline MPComplex mp_cexp(const MPComplex& z) { return mp_cexp(z.re, z.im); }

// Arithmetic contract for ill-conditioned coefficient sums. A sum with
// condition number kappa = sum|C_j| / |result| loses ~log2(kappa) leading bits
// to cancellation; extended mode must provide those bits plus a 64-bit guard.
// Machine-compensated mode is admissible only while the cancellation fits
// comfortably inside a double (20-bit guard on top of the condition).
struct PrecisionPolicy {
    enum class Mode { MachineCompensated, Extended };

    Mode mode = Mode::MachineCompensated;
    unsigned significand_bits = 53;

    static PrecisionPolicy machine() { return {Mode::MachineCompensated, 53}; }
    static PrecisionPolicy extended(unsigned bits) { return {Mode::Extended, bits}; }

    // Bits needed on the extended path: for the prototype, sum|C_j| = a^n.
    static unsigned required_bits(int n, double a) {
        double amax = a > 1.0 ? a : 1.0;
        return static_cast<unsigned>(std::ceil(n * std::log2(amax))) + 64;
    }
    static PrecisionPolicy auto_for(int n, double a) {
        return extended(required_bits(n, a));
    }

    bool satisfies_condition(double log2_condition) const {
        double l2c = log2_condition > 0 ? log2_condition : 0;
        if (mode == Mode::MachineCompensated) return l2c + 20 <= 53;
        return significand_bits >= static_cast<unsigned>(std::ceil(l2c)) + 64;
    }
};

class precision_error : public std::runtime_error {
  public:
    explicit precision_error(const std::string& what) : std::runtime_error(what) {}
};

inline void enforce_policy(const PrecisionPolicy& policy, int n, double a) {
    double amax = a > 1.0 ? a : 1.0;
    double l2c = n * std::log2(amax);
    if (!policy.satisfies_condition(l2c)) {
        throw precision_error(
            "precision policy violation: binomial sum for n=" + std::to_string(n) +
            ", a=" + std::to_string(a) + " needs " +
            std::to_string(PrecisionPolicy::required_bits(n, a)) +
            " significand bits, policy provides " +
            std::to_string(policy.mode == PrecisionPolicy::Mode::MachineCompensated
                               ? 53u
                               : policy.significand_bits));
    }
}

// Compensated (Kahan) accumulator for complex doubles; used on the
// machine-precision path where term-order determinism matters.
class KahanComplex {
  public:
    void add(std::complex<double> v) {
        add_part(v.real(), sum_re_, c_re_);
        add_part(v.imag(), sum_im_, c_im_);
    }
    std::complex<double> value() const { return {sum_re_, sum_im_}; }

  private:
    static void add_part(double v, double& s, double& c) {
        double y = v - c;
        double t = s + y;
        c = (t - s) - y;
        s = t;
    }
    double sum_re_ = 0, sum_im_ = 0, c_re_ = 0, c_im_ = 0;
};

}  // namespace superosc
