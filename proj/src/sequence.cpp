#include "superosc/sequence.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace superosc {

namespace {

Int binom(int n, int j) {
    Int r;
    mpz_bin_uiui(r.backend().data(), static_cast<unsigned long>(n),
                 static_cast<unsigned long>(j));
    return r;
}

void check_nj(int n, int j) {
    if (n < 1) throw std::domain_error("n must be >= 1 (frequencies 1-2j/n undefined at n=0)");
    if (j < 0 || j > n) throw std::out_of_range("coefficient index j out of [0,n]");
}

}  // namespace

double SuperoscSequence::log2_abs_coeff_sum() const {
    // log-sum-exp over log2|c_j| so that overflowing coefficient views still
    // yield a usable condition estimate
    double lmax = -std::numeric_limits<double>::infinity();
    std::vector<double> l(coeffs.size());
    for (size_t j = 0; j < coeffs.size(); ++j) {
        l[j] = coeffs[j] == 0 ? -std::numeric_limits<double>::infinity()
                              : std::log2(std::abs(coeffs[j]));
        lmax = std::max(lmax, l[j]);
    }
    if (!std::isfinite(lmax)) {
        if (prototype) {
            double am = std::max(std::abs(a), 1.0);
            return n * std::log2(am);
        }
        return 0.0;
    }
    double s = 0;
    for (double lj : l) s += std::exp2(lj - lmax);
    return lmax + std::log2(s);
}

Rational coefficient_exact(int n, int j, const Rational& a) {
    check_nj(n, j);
    Rational ap1 = a + 1, am1 = a - 1;
    Rational r(binom(n, j));
    for (int i = 0; i < n - j; ++i) r *= ap1;
    for (int i = 0; i < j; ++i) r *= am1;
    r /= Rational(Int(1) << n);
    if (j % 2) r = -r;
    return r;
}

double coefficient(int n, int j, double a) {
    check_nj(n, j);
    return static_cast<double>(coefficient_exact(n, j, rational_from_double(a)));
}

std::vector<Rational> prototype_coefficients_exact(int n, const Rational& a) {
    if (n < 1) throw std::domain_error("n must be >= 1");
    std::vector<Rational> c(static_cast<size_t>(n) + 1);
    Rational ap1 = a + 1, am1 = a - 1;
    Rational cur = 1;
    for (int i = 0; i < n; ++i) cur *= ap1;
    cur /= Rational(Int(1) << n);
    c[0] = cur;
    for (int j = 0; j < n; ++j) {
        // C_{j+1} = -C_j * (n-j)/(j+1) * (a-1)/(a+1); at a = -1 the recurrence
        // degenerates, fall back to the closed form
        if (ap1 == 0) {
            c[static_cast<size_t>(j) + 1] = coefficient_exact(n, j + 1, a);
            continue;
        }
        cur *= am1;
        cur *= n - j;
        cur /= ap1;
        cur /= j + 1;
        cur = -cur;
        c[static_cast<size_t>(j) + 1] = cur;
    }
    return c;
}

Rational rational_from_double(double a) {
    if (!std::isfinite(a)) throw std::domain_error("parameter a must be finite");
    Rational r;
    mpq_set_d(r.backend().data(), a);
    return r;
}

Rational rational_from_string(const std::string& s) {
    auto slash = s.find('/');
    if (slash != std::string::npos) {
        Int num(s.substr(0, slash)), den(s.substr(slash + 1));
        if (den == 0) throw std::domain_error("rational with zero denominator");
        return Rational(num, den);
    }
    auto dot = s.find('.');
    auto epos = s.find_first_of("eE");
    if (dot == std::string::npos && epos == std::string::npos) return Rational(Int(s));
    std::string digits = s;
    int exp10 = 0;
    if (epos != std::string::npos) {
        exp10 = std::stoi(s.substr(epos + 1));
        digits = s.substr(0, epos);
        dot = digits.find('.');
    }
    if (dot != std::string::npos) {
        exp10 -= static_cast<int>(digits.size() - dot - 1);
        digits.erase(dot, 1);
    }
    Rational r{Int(digits)};
    Int p10 = 1;
    for (int i = 0; i < std::abs(exp10); ++i) p10 *= 10;
    if (exp10 >= 0) r *= Rational(p10);
    else r /= Rational(p10);
    return r;
}

namespace {

void materialize_views(SuperoscSequence& seq) {
    size_t m = static_cast<size_t>(seq.n) + 1;
    seq.freqs.resize(m);
    seq.coeffs.resize(m);
    if (seq.prototype) {
        // stable double recurrence; overflow to inf at large n*log(a) is fine,
        // the exact paths never read these views
        double a = seq.a;
        for (int j = 0; j <= seq.n; ++j)
            seq.freqs[static_cast<size_t>(j)] = static_cast<double>(seq.n - 2 * j) / seq.n;
        double c = std::pow(0.5 * (a + 1.0), seq.n);
        for (int j = 0; j <= seq.n; ++j) {
            seq.coeffs[static_cast<size_t>(j)] = c;
            if (j < seq.n)
                c *= -(static_cast<double>(seq.n - j) / (j + 1)) * (a - 1.0) / (a + 1.0);
        }
        return;
    }
    ScopedPrecision guard(128);
    Real a_mp = seq.a_exact ? Real(*seq.a_exact) : Real(seq.a);
    for (int j = 0; j <= seq.n; ++j) {
        seq.freqs[static_cast<size_t>(j)] = static_cast<double>(seq.freq_rule(j, seq.n));
        seq.coeffs[static_cast<size_t>(j)] =
            static_cast<double>(seq.coeff_rule(j, seq.n, a_mp));
    }
}

}  // namespace

SuperoscSequence build_prototype(int n, const Rational& a) {
    if (n < 1) throw std::domain_error("build_prototype: n must be >= 1");
    SuperoscSequence seq;
    seq.n = n;
    seq.a = static_cast<double>(a);
    seq.a_exact = a;
    seq.prototype = true;
    seq.freq_rule = [](int j, int nn) { return Real(nn - 2 * j) / nn; };
    Rational a_copy = a;
    seq.coeff_rule = [a_copy](int j, int nn, const Real&) {
        return Real(coefficient_exact(nn, j, a_copy));
    };
    materialize_views(seq);
    return seq;
}

SuperoscSequence build_prototype(int n, double a) {
    return build_prototype(n, rational_from_double(a));
}

SuperoscSequence build_generalized(FreqRule freq_rule, CoeffRule coeff_rule, int n, double a) {
    if (n < 1) throw std::domain_error("build_generalized: n must be >= 1");
    SuperoscSequence seq;
    seq.n = n;
    seq.a = a;
    seq.a_exact = rational_from_double(a);
    seq.prototype = false;
    seq.freq_rule = std::move(freq_rule);
    seq.coeff_rule = std::move(coeff_rule);
    materialize_views(seq);
    return seq;
}

unsigned required_bits_for(const SuperoscSequence& seq) {
    if (seq.prototype) return PrecisionPolicy::required_bits(seq.n, seq.a);
    double l2 = std::max(seq.log2_abs_coeff_sum(), 0.0);
    return static_cast<unsigned>(std::ceil(l2)) + 64;
}

void enforce_policy_for(const PrecisionPolicy& policy, const SuperoscSequence& seq) {
    double l2c = seq.prototype ? seq.n * std::log2(std::max(std::abs(seq.a), 1.0))
                               : seq.log2_abs_coeff_sum();
    if (!policy.satisfies_condition(l2c)) {
        throw precision_error("precision policy violation: sum needs " +
                              std::to_string(required_bits_for(seq)) +
                              " significand bits (extended), policy provides " +
                              std::to_string(policy.mode == PrecisionPolicy::Mode::MachineCompensated
                                                 ? 53u
                                                 : policy.significand_bits));
    }
}

namespace {

// Finite-difference exponential walk over a polynomial exponent z(j) of degree
// d in the summation index: V_{j+1} = V_j*D1_j, D1_{j+1} = D1_j*D2_j, ...,
// with Dd constant. Only d+1 complex exponentials are evaluated in total.
class PolyPhaseWalker {
  public:
    PolyPhaseWalker(int degree, const std::function<MPComplex(int)>& zj) {
        int d = std::max(degree, 0);
        std::vector<MPComplex> table(static_cast<size_t>(d) + 1);
        for (int r = 0; r <= d; ++r) table[static_cast<size_t>(r)] = zj(r);
        for (int lvl = 1; lvl <= d; ++lvl)
            for (int r = d; r >= lvl; --r)
                table[static_cast<size_t>(r)] -= table[static_cast<size_t>(r) - 1];
        value_ = mp_cexp(table[0]);
        diffs_.reserve(static_cast<size_t>(d));
        for (int r = 1; r <= d; ++r) diffs_.push_back(mp_cexp(table[static_cast<size_t>(r)]));
    }

    const MPComplex& value() const { return value_; }

    void step() {
        if (diffs_.empty()) return;
        value_ *= diffs_[0];
        for (size_t r = 0; r + 1 < diffs_.size(); ++r) diffs_[r] *= diffs_[r + 1];
    }

  private:
    MPComplex value_;
    std::vector<MPComplex> diffs_;
};

MPComplex exponent_at(const std::vector<MPComplex>& gamma, int n, int j) {
    Real k = Real(n - 2 * j) / n;
    MPComplex z(Real(0), Real(0));
    for (size_t m = gamma.size(); m-- > 0;) {
        z *= MPComplex(k, Real(0));
        z += gamma[m];
    }
    return z;
}

}  // namespace

MPComplex prototype_phase_sum(int n, const Rational& a, const GammaBuilder& gamma_builder,
                              const PrecisionPolicy& policy) {
    enforce_policy(policy, n, static_cast<double>(a));
    unsigned bits = policy.mode == PrecisionPolicy::Mode::MachineCompensated
                        ? 64
                        : policy.significand_bits;
    ScopedPrecision guard(bits);
    const std::vector<MPComplex> gamma = gamma_builder();

    int degree = static_cast<int>(gamma.size()) - 1;
    PolyPhaseWalker walk(degree, [&](int j) { return exponent_at(gamma, n, j); });

    // Exact integer coefficient recurrence: with a = p/q in lowest terms,
    //   C_j * (2q)^n = (-1)^j binom(n,j) (p+q)^{n-j} (p-q)^j =: Z_j.
    Int p = numerator(a), q = denominator(a);
    Int ppq = p + q, pmq = p - q;
    const bool degenerate = (ppq == 0);  // a = -1
    Int Z = 1;
    if (!degenerate)
        for (int i = 0; i < n; ++i) Z *= ppq;
    Real scale;
    {
        Int qn = 1;
        for (int i = 0; i < n; ++i) qn *= q;
        scale = 1 / Real(Rational(Int(1) << n) * Rational(qn));
    }

    if (degenerate) {
        // a = -1: every coefficient vanishes except C_n = 1
        for (int j = 0; j < n; ++j) walk.step();
        return walk.value();
    }

    MPComplex acc(Real(0), Real(0));
    for (int j = 0; j <= n; ++j) {
        Real cj = Real(Z) * scale;
        MPComplex term = walk.value();
        term *= cj;
        acc += term;
        if (j < n) {
            // Z_{j+1} = -Z_j (n-j)(p-q) / ((j+1)(p+q)); division is exact
            Z *= (n - j);
            Z *= pmq;
            Z = -Z / (Int(j + 1) * ppq);
            walk.step();
        }
    }
    return acc;
}

MPComplex generalized_phase_sum(const SuperoscSequence& seq, const GammaBuilder& gamma_builder,
                                const PrecisionPolicy& policy) {
    enforce_policy_for(policy, seq);
    unsigned bits = policy.mode == PrecisionPolicy::Mode::MachineCompensated
                        ? 64
                        : policy.significand_bits;
    ScopedPrecision guard(bits);
    const std::vector<MPComplex> gamma = gamma_builder();
    Real a_mp = seq.a_exact ? Real(*seq.a_exact) : Real(seq.a);
    MPComplex acc(Real(0), Real(0));
    for (int j = 0; j <= seq.n; ++j) {
        Real k = seq.freq_rule(j, seq.n);
        MPComplex z(Real(0), Real(0));
        for (size_t m = gamma.size(); m-- > 0;) {
            z *= MPComplex(k, Real(0));
            z += gamma[m];
        }
        MPComplex term = mp_cexp(z);
        term *= seq.coeff_rule(j, seq.n, a_mp);
        acc += term;
    }
    return acc;
}

MPComplex prototype_term_sum(int n, const Rational& a,
                             const std::function<MPComplex(int, const Real&)>& term,
                             const PrecisionPolicy& policy) {
    enforce_policy(policy, n, static_cast<double>(a));
    unsigned bits = policy.mode == PrecisionPolicy::Mode::MachineCompensated
                        ? 64
                        : policy.significand_bits;
    ScopedPrecision guard(bits);
    Int p = numerator(a), q = denominator(a);
    Int ppq = p + q, pmq = p - q;
    if (ppq == 0) {
        Real k = Real(-1);
        return term(n, k);  // a = -1: only C_n = 1 survives
    }
    Int Z = 1;
    for (int i = 0; i < n; ++i) Z *= ppq;
    Real scale;
    {
        Int qn = 1;
        for (int i = 0; i < n; ++i) qn *= q;
        scale = 1 / Real(Rational(Int(1) << n) * Rational(qn));
    }
    MPComplex acc(Real(0), Real(0));
    for (int j = 0; j <= n; ++j) {
        Real k = Real(n - 2 * j) / n;
        MPComplex t = term(j, k);
        t *= Real(Z) * scale;
        acc += t;
        if (j < n) {
            Z *= (n - j);
            Z *= pmq;
            Z = -Z / (Int(j + 1) * ppq);
        }
    }
    return acc;
}

namespace {

// Machine-compensated path: double views + Kahan accumulation, ascending j.
MPComplex machine_phase_sum(const SuperoscSequence& seq, const GammaBuilder& gamma_builder) {
    ScopedPrecision guard(64);
    const std::vector<MPComplex> gamma_mp = gamma_builder();
    std::vector<std::complex<double>> gamma(gamma_mp.size());
    for (size_t i = 0; i < gamma.size(); ++i) gamma[i] = gamma_mp[i].to_double();
    KahanComplex acc;
    for (int j = 0; j <= seq.n; ++j) {
        double k = seq.freqs[static_cast<size_t>(j)];
        std::complex<double> z = 0;
        for (size_t m = gamma.size(); m-- > 0;) z = z * k + gamma[m];
        acc.add(seq.coeffs[static_cast<size_t>(j)] * std::exp(z));
    }
    return MPComplex(acc.value());
}

}  // namespace

MPComplex phase_sum(const SuperoscSequence& seq, const GammaBuilder& gamma,
                    const PrecisionPolicy& policy) {
    if (policy.mode == PrecisionPolicy::Mode::MachineCompensated) {
        enforce_policy_for(policy, seq);
        return machine_phase_sum(seq, gamma);
    }
    if (seq.prototype && seq.a_exact)
        return prototype_phase_sum(seq.n, *seq.a_exact, gamma, policy);
    return generalized_phase_sum(seq, gamma, policy);
}

std::complex<double> phase_sum_d(const SuperoscSequence& seq, const GammaBuilder& gamma,
                                 const PrecisionPolicy& policy) {
    return phase_sum(seq, gamma, policy).to_double();
}

}  // namespace superosc
