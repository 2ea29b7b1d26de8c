#include <doctest.h>

#include <cmath>
#include <complex>

#include "superosc/core.hpp"

using namespace superosc;
using namespace superosc::core;
using cplx = std::complex<double>;

namespace {
const double kPi = 3.141592653589793238462643383279502884;

cplx expi(double t) { return {std::cos(t), std::sin(t)}; }
}  // namespace

TEST_CASE("prototype coefficients: closed-form values") {
    CHECK(coefficient(1, 0, 3.0) == doctest::Approx(2.0));
    CHECK(coefficient(1, 1, 3.0) == doctest::Approx(-1.0));
    // a = 1 kills every j >= 1 term
    CHECK(coefficient(5, 0, 1.0) == doctest::Approx(1.0));
    for (int j = 1; j <= 5; ++j) CHECK(coefficient(5, j, 1.0) == doctest::Approx(0.0));
    CHECK_THROWS_AS(coefficient(3, 4, 2.0), std::out_of_range);
    CHECK_THROWS_AS(coefficient(0, 0, 2.0), std::domain_error);
}

TEST_CASE("moment identities are exact over rationals") {
    // sum C_j = 1 for (n=7, a=2)
    auto m0 = taylor_moment(7, Rational(2), 0);
    CHECK(m0.re == Rational(1));
    CHECK(m0.im == Rational(0));
    // sum C_j (1-2j/n) = a for (n=10, a=4)
    auto m1 = taylor_moment(10, Rational(4), 1);
    CHECK(m1.im == Rational(4));
    CHECK(m1.re == Rational(0));
    // and across the full invariant set n <= 50, a in {3/2, 2, 4}
    for (const Rational& a : {Rational(3, 2), Rational(2), Rational(4)}) {
        for (int n : {1, 2, 3, 5, 13, 27, 50}) {
            auto p0 = taylor_moment(n, a, 0);
            auto p1 = taylor_moment(n, a, 1);
            CHECK(p0.re == Rational(1));
            CHECK(p1.im == a);
        }
    }
}

TEST_CASE("build_prototype populates frequencies and coefficients") {
    auto s = build_prototype(1, 3.0);
    REQUIRE(s.freqs.size() == 2);
    CHECK(s.freqs[0] == doctest::Approx(1.0));
    CHECK(s.freqs[1] == doctest::Approx(-1.0));
    CHECK(s.coeffs[0] == doctest::Approx(2.0));
    CHECK(s.coeffs[1] == doctest::Approx(-1.0));

    auto s2 = build_prototype(2, 1.0);
    CHECK(s2.coeffs[0] == doctest::Approx(1.0));
    CHECK(s2.coeffs[1] == doctest::Approx(0.0));
    CHECK(s2.coeffs[2] == doctest::Approx(0.0));

    CHECK_THROWS_AS(build_prototype(0, 2.0), std::domain_error);
}

TEST_CASE("build_generalized matches the prototype under prototype rules") {
    int n = 6;
    double a = 2.0;
    auto gen = build_generalized(
        [](int j, int nn) { return Real(nn - 2 * j) / nn; },
        [](int j, int nn, const Real& aa) {
            return Real(coefficient_exact(nn, j, rational_from_double(static_cast<double>(aa))));
        },
        n, a);
    auto proto = build_prototype(n, a);
    for (int j = 0; j <= n; ++j) {
        CHECK(gen.freqs[j] == doctest::Approx(proto.freqs[j]));
        CHECK(gen.coeffs[j] == doctest::Approx(proto.coeffs[j]));
    }
}

TEST_CASE("eval_product: pinned values and stability") {
    CHECK(std::abs(eval_product(17, 3.7, 0.0) - cplx(1, 0)) < 1e-15);
    // F_1(x,a) = cos x + i a sin x
    double x = 0.83, a = 2.6;
    CHECK(std::abs(eval_product(1, a, x) - cplx(std::cos(x), a * std::sin(x))) < 1e-14);
    // |F_n(n pi/2, a)| = a^n at (n=10, a=4)
    double mod = std::abs(eval_product(10, 4.0, 10 * kPi / 2));
    CHECK(mod == doctest::Approx(1048576.0).epsilon(1e-12));
}

TEST_CASE("eval_sum agrees with the product form under a satisfying policy") {
    auto seq = build_prototype(30, 4.0);
    auto policy = PrecisionPolicy::extended(256);
    cplx s = eval_sum(seq, 0.5, policy);
    cplx p = eval_product(30, 4.0, 0.5);
    CHECK(std::abs(s - p) / std::abs(p) < 1e-10);

    auto seq1 = build_prototype(1, 3.0);
    CHECK(std::abs(eval_sum(seq1, 0.0, PrecisionPolicy::extended(80)) - cplx(1, 0)) < 1e-14);
}

TEST_CASE("form equivalence on a grid (spot samples of the module invariant)") {
    for (int n : {10, 50}) {
        for (double a : {2.0, 4.0}) {
            auto seq = build_prototype(n, a);
            auto policy = PrecisionPolicy::auto_for(n, a);
            for (int i = 0; i < 41; ++i) {
                double x = -10.0 + 20.0 * i / 40;
                cplx s = eval_sum(seq, x, policy);
                cplx p = eval_product(n, a, x);
                CHECK(std::abs(s - p) <= 1e-10 * std::abs(p));
            }
        }
    }
}

TEST_CASE("precision policy violations are reported, not degraded") {
    auto seq = build_prototype(30, 4.0);
    CHECK_THROWS_AS(eval_sum(seq, 0.5, PrecisionPolicy::machine()), precision_error);
    CHECK_THROWS_AS(eval_sum(seq, 0.5, PrecisionPolicy::extended(80)), precision_error);
    // machine mode is fine for a well-conditioned generalized sum
    int n = 16;
    auto ctrl = build_generalized(
        [](int j, int nn) { return Real(j) / nn; },
        [](int, int nn, const Real&) { return Real(1) / (nn + 1); }, n, 1.0);
    cplx v = eval_sum(ctrl, 0.7, PrecisionPolicy::machine());
    cplx ref = 0;
    for (int j = 0; j <= n; ++j) ref += expi(0.7 * j / n) / double(n + 1);
    CHECK(std::abs(v - ref) < 1e-13);
}

TEST_CASE("error envelope: zero at origin, matches direct modulus") {
    CHECK(error_envelope(12, 3.0, 0.0) == doctest::Approx(0.0));
    // E_n = |F_n - e^{iax}| at (n=50, a=3, x=2), direct modulus as oracle
    double e = error_envelope(50, 3.0, 2.0);
    double direct = std::abs(eval_product(50, 3.0, 2.0) - expi(3.0 * 2.0));
    CHECK(e == doctest::Approx(direct).epsilon(1e-12));
    CHECK_THROWS_AS(error_envelope(7, 2.0, 7.0 * kPi / 2), std::domain_error);
}

TEST_CASE("error envelope asymptote: E_n ~ (a^2-1) x^2 / (2n)") {
    // The closed form's true leading term; the (|x|/n)sqrt(1.5(a^2-1)) law
    // printed alongside it in error_report overestimates at x=1 (see ledger).
    double a = 2.0, x = 1.0;
    for (int n : {1000, 10000, 100000}) {
        double e = error_envelope(n, a, x);
        double lead = (a * a - 1) * x * x / (2.0 * n);
        CHECK(std::abs(e / lead - 1.0) < 5e-3 * 1000.0 / n * 10 + 2e-3);
    }
    // the same via direct modulus at n = 10^4
    int n = 10000;
    double direct = std::abs(eval_product(n, a, x) - expi(a * x));
    CHECK(direct == doctest::Approx((a * a - 1) / (2.0 * n)).epsilon(2e-3));
}

TEST_CASE("sup_error: limits, degenerate a, domain guard") {
    // decreasing toward 0
    double s100 = sup_error(100, 4.0, 1.0);
    double s1000 = sup_error(1000, 4.0, 1.0);
    CHECK(s1000 < s100);
    CHECK(s1000 < 0.02);
    // a = 1: F_n = e^{ix} exactly
    CHECK(sup_error(64, 1.0, 1.0) == doctest::Approx(0.0).epsilon(1e-12));
    // derived bound with 10% slack at n = 10^3 (paper law overestimates, so it holds)
    CHECK(sup_error(1000, 2.0, 1.0) <= 1.1 * std::sqrt(4.5) / 1000.0);
    CHECK_THROWS_AS(sup_error(1, 2.0, 4.0), std::domain_error);
}

TEST_CASE("derivatives: pinned values and finite-difference oracle") {
    // F_n'(0,a) = i a for any n
    for (int n : {1, 7, 40}) {
        cplx d = derivative(n, 2.5, 0.0, 1);
        CHECK(std::abs(d - cplx(0, 2.5)) < 1e-12);
    }
    // a = 1: F' = i e^{ix}
    cplx d1 = derivative(9, 1.0, 0.4, 1);
    CHECK(std::abs(d1 - cplx(0, 1) * expi(0.4)) < 1e-12);
    // |F''_200(0.7, 3)| ~ 9 within 2%
    CHECK(std::abs(derivative(200, 3.0, 0.7, 2)) == doctest::Approx(9.0).epsilon(0.02));
    // central-difference oracle on eval_product
    double h = 1e-6, x = 0.7, a = 3.0;
    int n = 200;
    cplx fd = (eval_product(n, a, x + h) - eval_product(n, a, x - h)) / (2 * h);
    CHECK(std::abs(derivative(n, a, x, 1) - fd) < 1e-6 * std::abs(fd) + 1e-9);
    CHECK_THROWS_AS(derivative(4, 2.0, 0.1, 3), std::invalid_argument);
}

TEST_CASE("derivative moduli converge to a and a^2 on compacts, monotonically") {
    double a = 3.0;
    auto maxdev = [&](int n) {
        double d1 = 0, d2 = 0;
        for (int i = 0; i <= 40; ++i) {
            double x = -1.0 + 2.0 * i / 40;
            d1 = std::max(d1, std::abs(std::abs(derivative(n, a, x, 1)) - a));
            d2 = std::max(d2, std::abs(std::abs(derivative(n, a, x, 2)) - a * a));
        }
        return std::pair{d1, d2};
    };
    auto [a1, b1] = maxdev(100);
    auto [a2, b2] = maxdev(1000);
    auto [a3, b3] = maxdev(10000);
    CHECK(a1 > a2);
    CHECK(a2 > a3);
    CHECK(b1 > b2);
    CHECK(b2 > b3);
}

TEST_CASE("taylor moments: pinned and finite-difference oracle") {
    auto m0 = taylor_moment(9, Rational(5, 2), 0);
    CHECK(m0.re == Rational(1));
    auto m1 = taylor_moment(9, Rational(5, 2), 1);
    CHECK(m1.im == Rational(5, 2));
    // p=2, n=2, a=2 vs second-order central difference of eval_product at 0
    auto m2 = taylor_moment(2, Rational(2), 2);
    double h = 1e-4;
    cplx fd = (eval_product(2, 2.0, h) - 2.0 * eval_product(2, 2.0, 0.0) +
               eval_product(2, 2.0, -h)) /
              (h * h);
    CHECK(std::abs(m2.to_double() - fd) < 1e-6);
}

TEST_CASE("multinomial moment equals the Taylor moment exactly") {
    // a=1 reduces to the multinomial counting formula: moment = i^p
    for (int n : {2, 3, 5}) {
        for (int p : {0, 1, 2, 3, 4}) {
            auto m = multinomial_moment(n, Rational(1), p);
            auto t = taylor_moment(n, Rational(1), p);
            CHECK(m.re == t.re);
            CHECK(m.im == t.im);
        }
    }
    auto m = multinomial_moment(4, Rational(3), 3);
    auto t = taylor_moment(4, Rational(3), 3);
    CHECK(m.re == t.re);
    CHECK(m.im == t.im);
    // the full identity family n <= 6, p <= 6, a in {1, 2, 5/2}
    for (const Rational& a : {Rational(1), Rational(2), Rational(5, 2)}) {
        for (int n = 1; n <= 6; ++n) {
            for (int p = 0; p <= 6; ++p) {
                auto mm = multinomial_moment(n, a, p);
                auto tt = taylor_moment(n, a, p);
                CHECK(mm.re == tt.re);
                CHECK(mm.im == tt.im);
            }
        }
    }
    CHECK_THROWS_AS(multinomial_moment(9, Rational(2), 2), std::domain_error);
}

TEST_CASE("non-uniformity witness at x = n*pi") {
    // |F_n(n pi, a) - e^{i a n pi}| cycles {0, sqrt2, 2, sqrt2} for a = 5/2:
    // bounded away from zero except exactly at n = 0 mod 4, where F_n and the
    // target both equal 1. The sequence does not tend to zero.
    double a = 2.5;
    for (int n = 1; n <= 64; ++n) {
        double w = std::abs(eval_product(n, a, n * kPi) - expi(a * n * kPi));
        if (n % 4 == 0) {
            CHECK(w < 1e-9);
        } else {
            CHECK(w >= 0.5);
        }
    }
}

TEST_CASE("check_superoscillation verdicts") {
    auto family = [](int n) { return build_prototype(n, 4.0); };
    auto v = check_superoscillation(family, 4.0, 1.0, 1.0, 0.15, {16, 32, 64, 128});
    CHECK(v.outcome == SuperoscVerdict::Outcome::Yes);
    REQUIRE(v.sup_errors.size() == 4);
    CHECK(v.sup_errors[3] < v.sup_errors[0]);

    // definition clause ii): |g(a)| must exceed the band limit
    auto family_half = [](int n) { return build_prototype(n, 0.5); };
    auto v2 = check_superoscillation(family_half, 0.5, 1.0, 1.0, 0.1, {8, 16});
    CHECK(v2.outcome == SuperoscVerdict::Outcome::No);

    // G_n(x,a) = (cos x + i a sin x)^n has frequencies n-2j: not band-limited
    auto family_G = [](int n) {
        return build_generalized(
            [](int j, int nn) { return Real(nn - 2 * j); },
            [](int j, int nn, const Real& aa) {
                return Real(coefficient_exact(nn, j, rational_from_double(static_cast<double>(aa))));
            },
            n, 2.5);
    };
    auto v3 = check_superoscillation(family_G, 2.5, 1.0, 1.0, 0.1, {4, 8});
    CHECK(v3.outcome == SuperoscVerdict::Outcome::No);
}

TEST_CASE("rational parsing") {
    CHECK(rational_from_string("3/2") == Rational(3, 2));
    CHECK(rational_from_string("2.5") == Rational(5, 2));
    CHECK(rational_from_string("4") == Rational(4));
    CHECK(rational_from_string("1e2") == Rational(100));
    CHECK(rational_from_double(0.5) == Rational(1, 2));
}
