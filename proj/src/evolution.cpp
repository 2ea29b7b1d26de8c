#include "superosc/evolution.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "superosc/core.hpp"
#include "superosc/quadrature.hpp"

namespace superosc::evolution {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;
constexpr double kCosSingularTol = 1e-8;

cplx expi(double t) { return {std::cos(t), std::sin(t)}; }

// (-i)^p
cplx minus_i_pow(int p) {
    switch (((p % 4) + 4) % 4) {
        case 0: return {1, 0};
        case 1: return {0, -1};
        case 2: return {-1, 0};
        default: return {0, 1};
    }
}

MPComplex mp_i_times(const Real& v) { return {Real(0), v}; }

// (cos t)^{-1/2}, principal branch for negative cosine
cplx cos_pow_minus_half(double t) {
    double c = std::cos(t);
    if (std::abs(c) < kCosSingularTol)
        throw std::domain_error("oscillator law singular: |cos t| < 1e-8");
    if (c > 0) return {1.0 / std::sqrt(c), 0.0};
    return cplx(0, -1) / std::sqrt(-c);
}

}  // namespace

// ----- free ------------------------------------------------------------------

cplx free_evolve(const SuperoscSequence& seq, double x, double t, const PrecisionPolicy& policy) {
    return phase_sum_d(
        seq,
        [x, t] {
            return std::vector<MPComplex>{
                {Real(0), Real(0)}, {Real(0), Real(x)}, {Real(0), -Real(t)}};
        },
        policy);
}

cplx free_limit(double a, double x, double t) { return expi(a * x - a * a * t); }

double z_summand_modulus_sq(double t, double k, double a) {
    return 2.0 - 2.0 * std::cos(t * k * k - a * t * k);
}

ErrorSplit free_error_split(int n, double a, double x, double t, const PrecisionPolicy& policy) {
    ErrorSplit r;
    auto seq = build_prototype(n, a);
    cplx psi = free_evolve(seq, x, t, policy);
    cplx F_shift = core::eval_product(n, a, x - a * t);
    r.Z = psi - F_shift;
    r.W = F_shift - free_limit(a, x, t);
    r.eps1 = std::abs(x - a * t) / n * std::sqrt(1.5 * (a * a - 1.0));
    r.eps2 = std::abs(t) * (a * a * a + a);
    return r;
}

cplx free_zsplit_phase_form(int n, double a, double x, double t, const PrecisionPolicy& policy) {
    enforce_policy(policy, n, a);
    unsigned bits = policy.mode == PrecisionPolicy::Mode::MachineCompensated
                        ? 64
                        : policy.significand_bits;
    ScopedPrecision guard(bits);
    auto coeffs = prototype_coefficients_exact(n, rational_from_double(a));
    Real a_mp(a), x_mp(x), t_mp(t);
    MPComplex acc(Real(0), Real(0));
    for (int j = 0; j <= n; ++j) {
        Real k = Real(n - 2 * j) / n;
        // bracket e^{-i t k^2} - e^{-i a t k} in modulus/phase form
        Real A = -t_mp * k * k, B = -a_mp * t_mp * k;
        Real dre = cos(A) - cos(B), dim = sin(A) - sin(B);
        Real rho = sqrt(dre * dre + dim * dim);
        MPComplex summand(Real(0), Real(0));
        if (rho > 0) {
            Real theta = atan2(dim, dre);
            summand = mp_cexp(Real(0), x_mp * k + theta);
            summand *= rho;
        }
        summand *= Real(coeffs[static_cast<size_t>(j)]);
        acc += summand;
    }
    return acc.to_double();
}

// ----- wave ------------------------------------------------------------------

cplx wave_evolve(const SuperoscSequence& seq, double x, double t, double c,
                 const PrecisionPolicy& policy) {
    auto at = [&](double y) {
        return phase_sum_d(
            seq, [y] { return std::vector<MPComplex>{{Real(0), Real(0)}, {Real(0), Real(y)}}; },
            policy);
    };
    return 0.5 * (at(x - c * t) + at(x + c * t));
}

// ----- modified --------------------------------------------------------------

cplx modified_evolve(const SuperoscSequence& seq, double x, double t, int p,
                     const PrecisionPolicy& policy) {
    if (p < 1) throw std::domain_error("modified_evolve: p must be >= 1");
    const bool even = p % 2 == 0;
    cplx mip = minus_i_pow(p);
    return phase_sum_d(
        seq,
        [x, t, p, even, mip] {
            std::vector<MPComplex> g(static_cast<size_t>(p) + 1, MPComplex(Real(0), Real(0)));
            g[1] = {Real(0), Real(x)};
            // p even: exponent += i t (-i k)^p; p odd: exponent += t (-i k)^p
            MPComplex w(Real(mip.real()), Real(mip.imag()));
            w *= even ? MPComplex(Real(0), Real(t)) : MPComplex(Real(t), Real(0));
            g[static_cast<size_t>(p)] += w;
            return g;
        },
        policy);
}

cplx modified_limit(double a, double x, double t, int p) {
    cplx mia = minus_i_pow(p) * std::pow(a, p);
    cplx factor = p % 2 == 0 ? std::exp(cplx(0, t) * mia) : std::exp(t * mia);
    return factor * expi(a * x);
}

// ----- powered datum ---------------------------------------------------------

cplx powered_datum_evolve(int n, const Rational& a, int l, int p, double x, double t,
                          const PrecisionPolicy& policy) {
    if (l < 1) throw std::domain_error("powered_datum_evolve: l must be >= 1");
    if (p < 1 || p % 2 != 0)
        throw std::domain_error("powered_datum_evolve: p must be a positive even integer");
    int sign = (p / 2) % 2 == 0 ? 1 : -1;  // (-i)^p = (-1)^{p/2} for even p
    return prototype_phase_sum(
               n, a,
               [x, t, l, p, sign] {
                   std::vector<MPComplex> g(static_cast<size_t>(p) * l + 1,
                                            MPComplex(Real(0), Real(0)));
                   g[static_cast<size_t>(l)] = {Real(0), -Real(x)};
                   g[static_cast<size_t>(p) * l] += {Real(0), Real(sign) * Real(t)};
                   return g;
               },
               policy)
        .to_double();
}

cplx powered_datum_limit(double a, int l, int p, double x, double t) {
    int sign = (p / 2) % 2 == 0 ? 1 : -1;
    double al = std::pow(a, l);
    return expi(-al * x) * expi(sign * t * std::pow(a, p * l));
}

// ----- symbol series -----------------------------------------------------------

void SymbolSeries::validate() const {
    if (radius <= 0) throw std::domain_error("SymbolSeries: radius must be > 0");
    if (coeffs.empty()) throw std::domain_error("SymbolSeries: empty coefficient list");
    // Root-test consistency of the declared radius, limsup R |a_p|^{1/p} <= 1.
    // The limsup is estimated from the top quarter of the stored coefficients;
    // short (polynomial) symbols carry no asymptotic information and pass.
    size_t pmax = coeffs.size() - 1;
    if (pmax < 8) return;
    double limsup = 0;
    for (size_t p = (3 * pmax) / 4; p <= pmax; ++p) {
        double m = std::abs(coeffs[p]);
        if (m > 0) limsup = std::max(limsup, std::pow(m, 1.0 / static_cast<double>(p)));
    }
    if (radius * limsup > 1.0 + 1e-9)
        throw std::domain_error("SymbolSeries: declared radius exceeds the root-test estimate");
}

cplx SymbolSeries::eval_truncated(cplx z, int truncation, double* tail_bound) const {
    int P = std::min<int>(truncation, static_cast<int>(coeffs.size()) - 1);
    cplx s = 0;
    for (int p = P; p >= 0; --p) s = s * z + coeffs[static_cast<size_t>(p)];
    if (tail_bound) {
        double q = std::abs(z) / radius;
        if (q >= 1.0) {
            *tail_bound = std::numeric_limits<double>::infinity();
        } else {
            // |a_p| <= radius^{-p} up to the root-test slack
            *tail_bound = std::pow(q, P + 1) / (1.0 - q);
        }
    }
    return s;
}

cplx symbol_evolve(const SuperoscSequence& seq, const SymbolSeries& symbol, double x, double t,
                   int truncation, const PrecisionPolicy& policy,
                   std::optional<double> tail_tol) {
    symbol.validate();
    double kmax = 0;
    for (double k : seq.freqs) kmax = std::max(kmax, std::abs(k));
    if (kmax > symbol.radius + 1e-12)
        throw std::domain_error("symbol_evolve: frequency outside the symbol radius");
    if (tail_tol) {
        double bound = 0;
        symbol.eval_truncated(cplx(0, kmax), truncation, &bound);
        if (!(bound * std::abs(t) <= *tail_tol))
            throw std::runtime_error(
                "symbol_evolve: truncation tail bound " + std::to_string(bound * std::abs(t)) +
                " above tolerance " + std::to_string(*tail_tol));
    }
    int P = std::min<int>(truncation, static_cast<int>(symbol.coeffs.size()) - 1);
    auto coeffs = symbol.coeffs;
    return phase_sum_d(
        seq,
        [x, t, P, coeffs] {
            // exponent i x k + i t G(ik) = i x k + sum_m (i t a_m i^m) k^m
            std::vector<MPComplex> g(static_cast<size_t>(std::max(P, 1)) + 1,
                                     MPComplex(Real(0), Real(0)));
            g[1] = {Real(0), Real(x)};
            MPComplex it(Real(0), Real(t));
            MPComplex ipow(Real(1), Real(0));
            const MPComplex iunit(Real(0), Real(1));
            for (int m = 0; m <= P; ++m) {
                MPComplex am(Real(coeffs[static_cast<size_t>(m)].real()),
                             Real(coeffs[static_cast<size_t>(m)].imag()));
                am *= it;
                am *= ipow;
                g[static_cast<size_t>(m)] += am;
                ipow *= iunit;
            }
            return g;
        },
        policy);
}

cplx symbol_limit(double a, const SymbolSeries& symbol, double x, double t, int truncation) {
    cplx G = symbol.eval_truncated(cplx(0, a), truncation);
    return std::exp(cplx(0, t) * G) * expi(a * x);
}

// ----- heat --------------------------------------------------------------------

cplx heat_evolve(const SuperoscSequence& seq, double x, double t, const PrecisionPolicy& policy) {
    if (t < 0) throw std::domain_error("heat_evolve: backward heat (t < 0) rejected");
    return phase_sum_d(
        seq,
        [x, t] {
            return std::vector<MPComplex>{
                {Real(0), Real(0)}, {Real(0), Real(x)}, {-Real(t), Real(0)}};
        },
        policy);
}

cplx heat_limit(double a, double x, double t) { return std::exp(-a * a * t) * expi(a * x); }

// ----- harmonic oscillator -----------------------------------------------------

cplx ho_plane_wave(double a, double x, double t) {
    cplx pref = cos_pow_minus_half(t);
    double tant = std::tan(t), cost = std::cos(t);
    return pref * std::exp(cplx(0, -0.5 * (x * x + a * a) * tant + a * x / cost));
}

cplx ho_evolve(const SuperoscSequence& seq, double x, double t, const PrecisionPolicy& policy) {
    cplx pref = cos_pow_minus_half(t);
    cplx sum = phase_sum_d(
        seq,
        [x, t] {
            Real ct = cos(Real(t)), tt = tan(Real(t));
            return std::vector<MPComplex>{{Real(0), Real(0)},
                                          {Real(0), Real(x) / ct},
                                          {Real(0), -tt / 2}};
        },
        policy);
    double tant = std::tan(t);
    return pref * std::exp(cplx(0, -0.5 * x * x * tant)) * sum;
}

cplx ho_limit(double a, double x, double t) { return ho_plane_wave(a, x, t); }

cplx ho_powered_evolve(int n, const Rational& a, int p, double x, double t,
                       const PrecisionPolicy& policy) {
    if (p < 2 || p % 2 != 0)
        throw std::domain_error("ho_powered_evolve: p must be a positive even integer");
    cplx pref = cos_pow_minus_half(t);
    int sign = (p / 2) % 2 == 0 ? 1 : -1;  // (-ik)^p = (-1)^{p/2} k^p
    cplx sum = prototype_phase_sum(
                   n, a,
                   [x, t, p, sign] {
                       Real ct = cos(Real(t)), tt = tan(Real(t));
                       std::vector<MPComplex> g(static_cast<size_t>(2 * p) + 1,
                                                MPComplex(Real(0), Real(0)));
                       g[static_cast<size_t>(p)] = {Real(0), Real(sign) * Real(x) / ct};
                       g[static_cast<size_t>(2 * p)] = {Real(0), -tt / 2};
                       return g;
                   },
                   policy)
                   .to_double();
    double tant = std::tan(t);
    return pref * std::exp(cplx(0, -0.5 * x * x * tant)) * sum;
}

cplx ho_powered_limit(double a, int p, double x, double t) {
    cplx pref = cos_pow_minus_half(t);
    double tant = std::tan(t), cost = std::cos(t);
    int sign = (p / 2) % 2 == 0 ? 1 : -1;
    double ap = sign * std::pow(a, p);
    return pref *
           std::exp(cplx(0, -0.5 * (x * x + std::pow(a, 2 * p)) * tant + ap * x / cost));
}

// ----- gaussian packet -----------------------------------------------------------

cplx gaussian_packet(double x, double t, double x0, double k0, double d0) {
    if (d0 <= 0) throw std::domain_error("gaussian_packet: spread must be > 0");
    cplx denom(d0 * d0, 2.0 * t);
    cplx pref = 1.0 / std::sqrt(cplx(1.0, 2.0 * t / (d0 * d0)));
    double xc = x - x0 - 2.0 * k0 * t;
    return pref * std::exp(cplx(0, k0 * x - k0 * k0 * t)) * std::exp(-xc * xc / (2.0 * denom));
}

// ----- driven harmonic oscillator -------------------------------------------------

double driven_I(const DrivenOscillatorConfig& cfg, double t, double tprime) {
    if (!cfg.f) return 0.0;
    auto g = [&](double s) { return cfg.f(s) * std::sin(cfg.omega * (s - tprime)); };
    return quad::adaptive_simpson(g, tprime, t, cfg.quad_tol) / (cfg.m * cfg.omega);
}

double driven_J(const DrivenOscillatorConfig& cfg, double t, double tprime) {
    if (!cfg.f) return 0.0;
    auto outer = [&](double s) {
        auto inner = [&](double sp) { return cfg.f(sp) * std::sin(cfg.omega * (sp - tprime)); };
        double in = quad::adaptive_simpson(inner, tprime, s, cfg.quad_tol);
        return cfg.f(s) * std::sin(cfg.omega * (t - s)) * in;
    };
    double v = quad::adaptive_simpson(outer, tprime, t, cfg.quad_tol);
    return v / (cfg.m * cfg.m * cfg.omega * cfg.omega);
}

namespace {

struct DrivenFrame {
    double theta, sinth, costh, K, beta, Itt, Jtt, Itp;
};

DrivenFrame driven_frame(const DrivenOscillatorConfig& cfg, double t, double tprime) {
    if (cfg.m <= 0 || cfg.omega <= 0 || cfg.hbar <= 0)
        throw std::domain_error("driven oscillator: m, omega, hbar must be > 0");
    DrivenFrame fr;
    fr.theta = cfg.omega * (t - tprime);
    fr.sinth = std::sin(fr.theta);
    fr.costh = std::cos(fr.theta);
    if (std::abs(fr.sinth) < kCosSingularTol || std::abs(fr.costh) < kCosSingularTol)
        throw std::domain_error("driven oscillator: omega (t - t') at a propagator singularity");
    fr.K = cfg.m * cfg.omega / (2.0 * cfg.hbar * fr.sinth);
    fr.beta = cfg.p * fr.sinth / (cfg.m * cfg.omega);
    fr.Itt = driven_I(cfg, t, tprime);
    fr.Itp = driven_I(cfg, tprime, t);
    fr.Jtt = driven_J(cfg, t, tprime);
    return fr;
}

cplx driven_prefactor(const DrivenFrame& fr) {
    if (fr.costh > 0) return {1.0 / std::sqrt(fr.costh), 0.0};
    return cplx(0, -1) / std::sqrt(-fr.costh);
}

}  // namespace

cplx driven_ho_plane_wave(const DrivenOscillatorConfig& cfg, double a, double x, double t,
                          double tprime) {
    DrivenFrame fr = driven_frame(cfg, t, tprime);
    double shifted = x - a * fr.beta - fr.Itp;
    double phase = fr.K * (x * x * fr.costh + 2.0 * x * fr.Itt - 2.0 * fr.Jtt -
                           shifted * shifted / fr.costh);
    return driven_prefactor(fr) * expi(phase);
}

cplx driven_ho_evolve(const DrivenOscillatorConfig& cfg, const SuperoscSequence& seq, double x,
                      double t, double tprime, const PrecisionPolicy& policy) {
    DrivenFrame fr = driven_frame(cfg, t, tprime);
    // quadratic exponent in k: i K [x^2 c + 2 x I - 2 J - (x - k beta - Itp)^2 / c]
    double K = fr.K, c = fr.costh, beta = fr.beta, Itt = fr.Itt, Jtt = fr.Jtt, Itp = fr.Itp;
    cplx sum = phase_sum_d(
        seq,
        [K, c, beta, Itt, Jtt, Itp, x] {
            Real Kr(K), cr(c), br(beta), x_mp(x), Itpr(Itp);
            Real x_sh = x_mp - Itpr;
            Real g0 = Kr * (x_mp * x_mp * cr + 2 * x_mp * Real(Itt) - 2 * Real(Jtt) -
                            x_sh * x_sh / cr);
            Real g1 = Kr * 2 * x_sh * br / cr;
            Real g2 = -Kr * br * br / cr;
            return std::vector<MPComplex>{mp_i_times(g0), mp_i_times(g1), mp_i_times(g2)};
        },
        policy);
    return driven_prefactor(fr) * sum;
}

// ----- formal solutions ------------------------------------------------------------

AProvider a_provider_nu1(cplx a1) {
    return [a1](int m) { return std::pow(a1, m); };
}

int formal_nu1_growth_class(cplx a1, double a, int p) {
    cplx rate = a1 * std::pow(cplx(0, a), p);
    double re = rate.real();
    if (re > 1e-15) return 1;
    if (re < -1e-15) return -1;
    return 0;
}

FormalResult formal_solution(const SuperoscSequence& seq, int r, int nu, int p,
                             const AProvider& A, double x, double t, int max_terms, double tol,
                             const PrecisionPolicy& policy) {
    if (r < 1 || nu < 1 || p < 1) throw std::domain_error("formal_solution: r, nu, p >= 1");
    double kmax = 0;
    for (double k : seq.freqs) kmax = std::max(kmax, std::abs(k));

    // choose the truncation from term magnitudes at |k| = kmax
    std::vector<cplx> Avals;
    int M = -1;
    double tail = std::numeric_limits<double>::infinity();
    {
        double lt = std::log(std::max(std::abs(t), 1e-300));
        double lk = std::log(std::max(kmax, 1e-300));
        double lfact = 0;  // log((r m + r nu - 1)!)
        for (int i = 1; i <= r * nu - 1; ++i) lfact += std::log(i);
        double prev = std::numeric_limits<double>::infinity();
        for (int m = 0; m <= max_terms; ++m) {
            Avals.push_back(A(m));
            double lmag = (r * m + r * nu - 1) * lt + p * m * lk +
                          std::log(std::max(std::abs(Avals.back()), 1e-300)) - lfact;
            double mag = std::exp(lmag);
            if (m > 0 && mag < tol && mag < 0.5 * prev) {
                // geometric tail estimate from the measured ratio
                double q = mag / prev;
                tail = mag * q / (1.0 - q);
                if (tail < tol) {
                    M = m;
                    break;
                }
            }
            prev = mag;
            for (int i = r * m + r * nu; i <= r * (m + 1) + r * nu - 1; ++i)
                lfact += std::log(i);
        }
        if (M < 0)
            throw std::runtime_error(
                "formal_solution: tail not below tolerance within max_terms; achieved bound " +
                std::to_string(tail));
    }

    unsigned bits = policy.mode == PrecisionPolicy::Mode::MachineCompensated
                        ? 64
                        : policy.significand_bits;
    enforce_policy_for(policy, seq);
    ScopedPrecision guard(bits);

    // series coefficients coef_m = t^{r m + r nu - 1} A(m) / (r m + r nu - 1)!
    std::vector<MPComplex> coef(static_cast<size_t>(M) + 1);
    {
        Real tr(t);
        Int fact = 1;
        for (int i = 1; i <= r * nu - 1; ++i) fact *= i;
        Real tpow = pow(tr, r * nu - 1);
        Real tstep = pow(tr, r);
        for (int m = 0; m <= M; ++m) {
            MPComplex am(Real(Avals[static_cast<size_t>(m)].real()),
                         Real(Avals[static_cast<size_t>(m)].imag()));
            am *= tpow / Real(fact);
            coef[static_cast<size_t>(m)] = am;
            if (m < M) {
                tpow *= tstep;
                for (int i = r * m + r * nu; i <= r * (m + 1) + r * nu - 1; ++i) fact *= i;
            }
        }
    }

    Real a_mp = seq.a_exact ? Real(*seq.a_exact) : Real(seq.a);
    MPComplex acc(Real(0), Real(0));
    for (int j = 0; j <= seq.n; ++j) {
        Real k = seq.freq_rule(j, seq.n);
        // q = (i k)^p
        MPComplex q = [&] {
            MPComplex ik(Real(0), k);
            MPComplex v(Real(1), Real(0));
            for (int i = 0; i < p; ++i) v *= ik;
            return v;
        }();
        MPComplex S(Real(0), Real(0));
        for (int m = M; m >= 0; --m) {
            S *= q;
            S += coef[static_cast<size_t>(m)];
        }
        MPComplex mode = mp_cexp(Real(0), k * Real(x));
        mode *= S;
        mode *= seq.coeff_rule(j, seq.n, a_mp);
        acc += mode;
    }
    return {acc.to_double(), tail, M + 1};
}

// ----- periodicity -----------------------------------------------------------------

namespace {

cplx periodic_eval(const SuperoscSequence& seq, PeriodicLaw law, int p, double x, double t,
                   const PrecisionPolicy& policy) {
    switch (law) {
        case PeriodicLaw::Free: return free_evolve(seq, x, t, policy);
        case PeriodicLaw::Heat: return heat_evolve(seq, x, t, policy);
        case PeriodicLaw::ModifiedEven:
        case PeriodicLaw::ModifiedOdd: return modified_evolve(seq, x, t, p, policy);
    }
    throw std::logic_error("unreachable");
}

}  // namespace

std::pair<cplx, cplx> periodicity_witness(const SuperoscSequence& seq, PeriodicLaw law, int p,
                                          double X, double t, double x,
                                          const PrecisionPolicy& policy) {
    for (double k : seq.freqs) {
        double cycles = k * X / (2.0 * kPi);
        double resid = std::abs(k * X - 2.0 * kPi * std::round(cycles));
        if (resid > 1e-12 * (1.0 + std::abs(k * X)))
            throw std::domain_error("periodicity_witness: datum is not X-periodic (k X not in 2 pi Z)");
    }
    return {periodic_eval(seq, law, p, x + X, t, policy),
            periodic_eval(seq, law, p, x, t, policy)};
}

// ----- PDE residuals ----------------------------------------------------------------
// The spatial operator is applied analytically summand-wise (the laws are
// closed forms over exponentials); the time derivative is a second-order
// central difference. Meant for modest n where double sums are exact enough.

namespace {

// direct double-precision mode sum with a per-mode weight factor
cplx mode_sum(const SuperoscSequence& seq, const std::function<cplx(double)>& weight,
              const std::function<cplx(double)>& phase) {
    KahanComplex acc;
    for (int j = 0; j <= seq.n; ++j) {
        double k = seq.freqs[static_cast<size_t>(j)];
        acc.add(seq.coeffs[static_cast<size_t>(j)] * weight(k) * std::exp(phase(k)));
    }
    return acc.value();
}

}  // namespace

double residual_free(const SuperoscSequence& seq, double x, double t, double h,
                     const PrecisionPolicy& policy) {
    cplx dpsi_dt =
        (free_evolve(seq, x, t + h, policy) - free_evolve(seq, x, t - h, policy)) / (2 * h);
    cplx psi_xx = mode_sum(
        seq, [](double k) { return cplx(-k * k, 0); },
        [&](double k) { return cplx(0, k * x - k * k * t); });
    return std::abs(cplx(0, 1) * dpsi_dt + psi_xx);
}

double residual_heat(const SuperoscSequence& seq, double x, double t, double h,
                     const PrecisionPolicy& policy) {
    cplx dpsi_dt =
        (heat_evolve(seq, x, t + h, policy) - heat_evolve(seq, x, t - h, policy)) / (2 * h);
    cplx psi_xx = mode_sum(
        seq, [](double k) { return cplx(-k * k, 0); },
        [&](double k) { return cplx(0, k * x) + cplx(-k * k * t, 0); });
    return std::abs(dpsi_dt - psi_xx);
}

double residual_wave(const SuperoscSequence& seq, double x, double t, double c, double h,
                     const PrecisionPolicy& policy) {
    cplx u_tt = (wave_evolve(seq, x, t + h, c, policy) - 2.0 * wave_evolve(seq, x, t, c, policy) +
                 wave_evolve(seq, x, t - h, c, policy)) /
                (h * h);
    auto uxx_at = [&](double y) {
        return mode_sum(
            seq, [](double k) { return cplx(-k * k, 0); },
            [&](double k) { return cplx(0, k * y); });
    };
    cplx u_xx = 0.5 * (uxx_at(x - c * t) + uxx_at(x + c * t));
    return std::abs(u_tt - c * c * u_xx);
}

double residual_modified(const SuperoscSequence& seq, double x, double t, int p, double h,
                         const PrecisionPolicy& policy) {
    cplx dpsi_dt = (modified_evolve(seq, x, t + h, p, policy) -
                    modified_evolve(seq, x, t - h, p, policy)) /
                   (2 * h);
    const bool even = p % 2 == 0;
    cplx mip = minus_i_pow(p);
    auto phase = [&](double k) {
        cplx w = mip * std::pow(k, p);
        return cplx(0, k * x) + (even ? cplx(0, t) * w : t * w);
    };
    cplx dppsi = mode_sum(
        seq, [&](double k) { return std::pow(cplx(0, k), p); }, phase);
    // p even: i psi_t + psi^{(p)} = 0 ; p odd: psi_t + psi^{(p)} = 0
    return even ? std::abs(cplx(0, 1) * dpsi_dt + dppsi) : std::abs(dpsi_dt + dppsi);
}

double residual_symbol(const SuperoscSequence& seq, const SymbolSeries& symbol, double x,
                       double t, int truncation, double h, const PrecisionPolicy& policy) {
    cplx dpsi_dt = (symbol_evolve(seq, symbol, x, t + h, truncation, policy) -
                    symbol_evolve(seq, symbol, x, t - h, truncation, policy)) /
                   (2 * h);
    cplx Gpsi = mode_sum(
        seq,
        [&](double k) { return symbol.eval_truncated(cplx(0, k), truncation); },
        [&](double k) {
            return cplx(0, k * x) + cplx(0, t) * symbol.eval_truncated(cplx(0, k), truncation);
        });
    // i psi_t = -G psi
    return std::abs(cplx(0, 1) * dpsi_dt + Gpsi);
}

double residual_ho(const SuperoscSequence& seq, double x, double t, double h,
                   const PrecisionPolicy& policy) {
    cplx dpsi_dt =
        (ho_evolve(seq, x, t + h, policy) - ho_evolve(seq, x, t - h, policy)) / (2 * h);
    cplx psi_xx =
        (ho_evolve(seq, x + h, t, policy) - 2.0 * ho_evolve(seq, x, t, policy) +
         ho_evolve(seq, x - h, t, policy)) /
        (h * h);
    cplx psi = ho_evolve(seq, x, t, policy);
    return std::abs(cplx(0, 1) * dpsi_dt - 0.5 * (-psi_xx + x * x * psi));
}

double residual_gaussian(double x, double t, double x0, double k0, double d0, double h) {
    cplx dphi_dt =
        (gaussian_packet(x, t + h, x0, k0, d0) - gaussian_packet(x, t - h, x0, k0, d0)) / (2 * h);
    cplx phi_xx = (gaussian_packet(x + h, t, x0, k0, d0) -
                   2.0 * gaussian_packet(x, t, x0, k0, d0) +
                   gaussian_packet(x - h, t, x0, k0, d0)) /
                  (h * h);
    return std::abs(cplx(0, 1) * dphi_dt + phi_xx);
}

}  // namespace superosc::evolution
