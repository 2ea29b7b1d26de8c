#include "superosc/core.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace superosc::core {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

// golden-section maximization on [lo,hi]
template <typename F>
double golden_max(F f, double lo, double hi, int iters = 80) {
    const double phi = 0.6180339887498948482;
    double a = lo, b = hi;
    double c = b - phi * (b - a), d = a + phi * (b - a);
    double fc = f(c), fd = f(d);
    for (int i = 0; i < iters; ++i) {
        if (fc > fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + phi * (b - a);
            fd = f(d);
        }
    }
    return std::max(f(0.5 * (a + b)), std::max(fc, fd));
}

}  // namespace

std::complex<double> eval_product(int n, double a, double x) {
    if (n < 1) throw std::domain_error("eval_product: n must be >= 1");
    double u = x / n;
    double s = std::sin(u), c = std::cos(u);
    double log_m2 = std::log1p((a * a - 1.0) * s * s);
    double r = std::exp(0.5 * n * log_m2);
    double phase = n * std::atan2(a * s, c);
    return {r * std::cos(phase), r * std::sin(phase)};
}

MPComplex eval_product_mp(int n, const Real& a, const Real& x) {
    Real u = x / n;
    Real s = sin(u), c = cos(u);
    Real m2 = c * c + a * a * s * s;
    Real r = exp(Real(n) / 2 * log(m2));
    Real phase = Real(n) * atan2(a * s, c);
    return {r * cos(phase), r * sin(phase)};
}

std::complex<double> eval_sum(const SuperoscSequence& seq, double x,
                              const PrecisionPolicy& policy) {
    return phase_sum_d(
        seq, [x] { return std::vector<MPComplex>{{Real(0), Real(0)}, {Real(0), Real(x)}}; },
        policy);
}

double error_envelope(int n, double a, double x) {
    if (n < 1) throw std::domain_error("error_envelope: n must be >= 1");
    double u = x / n;
    double c = std::cos(u), s = std::sin(u);
    if (std::abs(c) < 1e-14)
        throw std::domain_error("error_envelope: x/n at the tan singularity pi/2 + k*pi");
    double log_m2 = std::log1p((a * a - 1.0) * s * s);
    double half = 0.5 * n * log_m2;
    if (half > 700.0) return std::numeric_limits<double>::infinity();
    double rho = std::exp(half);
    // branch-consistent phase: n * atan2 recovers n*arctan(a tan(x/n)) modulo
    // n*2*pi*k, which cos() cannot see because n is an integer
    double phase = n * std::atan2(a * s, c) - a * x;
    double e2 = 1.0 + rho * rho - 2.0 * rho * std::cos(phase);
    return std::sqrt(std::max(e2, 0.0));
}

ErrorReport error_report(int n, double a, double x, double M) {
    ErrorReport r;
    r.pointwise = error_envelope(n, a, x);
    r.asymptotic = std::abs(x) / n * std::sqrt(1.5 * (a * a - 1.0));
    r.sup_on_interval = sup_error(n, a, M);
    return r;
}

double weighted_sup_error(int n, double a, double lo, double hi, int k) {
    if (hi <= lo) throw std::domain_error("weighted_sup_error: empty interval");
    auto f = [&](double lam) {
        double w = k == 0 ? 1.0 : std::pow(std::abs(lam), k);
        return w * error_envelope(n, a, lam);
    };
    long cells = std::max(1024L, 32L * static_cast<long>(std::ceil((hi - lo) * 0.5 * n)));
    cells = std::min(cells, 4'000'000L);
    double best = -1, best_x = lo;
    for (long i = 0; i <= cells; ++i) {
        double x = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(cells);
        double v = f(x);
        if (v > best) {
            best = v;
            best_x = x;
        }
    }
    double h = (hi - lo) / static_cast<double>(cells);
    return golden_max(f, std::max(lo, best_x - h), std::min(hi, best_x + h));
}

double sup_error(int n, double a, double M) {
    if (M <= 0) throw std::domain_error("sup_error: M must be > 0");
    if (n <= 2.0 * M / kPi)
        throw std::domain_error("sup_error: continuity condition n > 2M/pi violated");
    // E_n is even in x, scan [0, M]
    return weighted_sup_error(n, a, 0.0, M, 0);
}

std::complex<double> derivative(int n, double a, double x, int order) {
    if (order != 1 && order != 2)
        throw std::invalid_argument("derivative: order must be 1 or 2");
    double u = x / n;
    std::complex<double> g(std::cos(u), a * std::sin(u));
    if (std::abs(g) < 1e-300) throw std::domain_error("derivative: g_n(x) = 0");
    std::complex<double> gp(-std::sin(u) / n, a * std::cos(u) / n);
    std::complex<double> ratio = gp / g;
    std::complex<double> F = eval_product(n, a, x);
    if (order == 1) return static_cast<double>(n) * ratio * F;
    return (-1.0 / n + static_cast<double>(n) * (n - 1.0) * ratio * ratio) * F;
}

namespace {

// i^p as an exact (re,im) sign pair
std::pair<int, int> ipow(int p) {
    switch (((p % 4) + 4) % 4) {
        case 0: return {1, 0};
        case 1: return {0, 1};
        case 2: return {-1, 0};
        default: return {0, -1};
    }
}

}  // namespace

RationalComplex taylor_moment(int n, const Rational& a, int p) {
    if (n < 1) throw std::domain_error("taylor_moment: n must be >= 1");
    if (p < 0) throw std::domain_error("taylor_moment: p must be >= 0");
    auto coeffs = prototype_coefficients_exact(n, a);
    Rational s(0);
    for (int j = 0; j <= n; ++j) {
        Rational k(n - 2 * j, n);
        Rational kp(1);
        for (int i = 0; i < p; ++i) kp *= k;
        s += coeffs[static_cast<size_t>(j)] * kp;
    }
    auto [re, im] = ipow(p);
    return {s * re, s * im};
}

namespace {

void enumerate_compositions(int parts_left, int budget, int odd_count, const Rational& coeff,
                            const std::vector<Rational>& apow, Rational& acc,
                            const std::vector<Int>& factorial) {
    // coeff accumulates p! / (k_1! ... k_i!) progressively via division
    if (parts_left == 1) {
        int k = budget;
        Rational c = coeff / Rational(factorial[static_cast<size_t>(k)]);
        acc += c * apow[static_cast<size_t>(odd_count + (k % 2))];
        return;
    }
    for (int k = 0; k <= budget; ++k) {
        Rational c = coeff / Rational(factorial[static_cast<size_t>(k)]);
        enumerate_compositions(parts_left - 1, budget - k, odd_count + (k % 2), c, apow, acc,
                               factorial);
    }
}

}  // namespace

RationalComplex multinomial_moment(int n, const Rational& a, int p) {
    if (n < 1) throw std::domain_error("multinomial_moment: n must be >= 1");
    if (p < 0) throw std::domain_error("multinomial_moment: p must be >= 0");
    if (n > 8 || p > 8)
        throw std::domain_error(
            "multinomial_moment: enumeration budget n <= 8, p <= 8 exceeded");
    std::vector<Int> factorial(static_cast<size_t>(p) + 1);
    factorial[0] = 1;
    for (int i = 1; i <= p; ++i) factorial[static_cast<size_t>(i)] = factorial[static_cast<size_t>(i) - 1] * i;
    // powers of a up to p (eps <= number of parts with odd k <= p)
    std::vector<Rational> apow(static_cast<size_t>(p) + 1);
    apow[0] = 1;
    for (int i = 1; i <= p; ++i) apow[static_cast<size_t>(i)] = apow[static_cast<size_t>(i) - 1] * a;

    Rational acc(0);
    Rational pfact(factorial[static_cast<size_t>(p)]);
    enumerate_compositions(n, p, 0, pfact, apow, acc, factorial);

    // multiply by (i/n)^p
    Rational np(1);
    for (int i = 0; i < p; ++i) np *= n;
    acc /= np;
    auto [re, im] = ipow(p);
    return {acc * re, acc * im};
}

SuperoscVerdict check_superoscillation(const std::function<SuperoscSequence(int)>& family,
                                       double target_g_of_a, double alpha_bound, double M,
                                       double tol, const std::vector<int>& n_schedule) {
    SuperoscVerdict v;
    if (n_schedule.empty()) {
        v.outcome = SuperoscVerdict::Outcome::Inconclusive;
        v.reason = "empty schedule";
        return v;
    }
    // clause (ii) of the definition first: the target frequency must escape the band
    if (!(std::abs(target_g_of_a) > alpha_bound)) {
        v.outcome = SuperoscVerdict::Outcome::No;
        v.reason = "|g(a)| <= alpha: target frequency inside the band limit";
        return v;
    }
    for (int n : n_schedule) {
        SuperoscSequence seq = family(n);
        // clause (i): band-limited spectrum. The definition is strict (<) but the
        // prototype attains |k_j| = 1 = alpha, so the bound is checked up to 1e-12.
        for (double k : seq.freqs) {
            if (std::abs(k) > alpha_bound + 1e-12) {
                v.outcome = SuperoscVerdict::Outcome::No;
                v.reason = "band limit violated: |k_j| = " + std::to_string(std::abs(k)) +
                           " > alpha = " + std::to_string(alpha_bound) + " at n = " +
                           std::to_string(n);
                return v;
            }
        }
        // measured sup-distance to e^{i g(a) x} over [-M, M] on a fixed grid
        PrecisionPolicy policy = PrecisionPolicy::extended(required_bits_for(seq) + 16);
        const int grid = 257;
        double sup = 0;
        for (int i = 0; i < grid; ++i) {
            double x = -M + 2 * M * static_cast<double>(i) / (grid - 1);
            std::complex<double> y = phase_sum_d(
                seq, [x] { return std::vector<MPComplex>{{Real(0), Real(0)}, {Real(0), Real(x)}}; },
                policy);
            std::complex<double> target = std::exp(std::complex<double>(0, target_g_of_a * x));
            sup = std::max(sup, std::abs(y - target));
        }
        v.sup_errors.push_back(sup);
    }
    bool below = v.sup_errors.back() < tol;
    bool decreasing = true;
    for (size_t i = 1; i < v.sup_errors.size(); ++i)
        if (v.sup_errors[i] > v.sup_errors[i - 1] * 1.001) decreasing = false;
    if (below && decreasing) {
        v.outcome = SuperoscVerdict::Outcome::Yes;
        v.reason = "sup-distance decreases below tol along the schedule";
    } else if (!decreasing && v.sup_errors.back() > 10 * v.sup_errors.front()) {
        v.outcome = SuperoscVerdict::Outcome::No;
        v.reason = "sup-distance diverges along the schedule";
    } else {
        v.outcome = SuperoscVerdict::Outcome::Inconclusive;
        v.reason = below ? "sup-distance below tol but not monotone"
                         : "sup-distance plateaus above tol";
    }
    return v;
}

}  // namespace superosc::core
