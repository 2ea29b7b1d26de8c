#include "superosc/quadrature.hpp"

#include <cmath>

namespace superosc::quad {

namespace {

template <typename T>
T simpson(const std::function<T(double)>& f, double a, double m, double b, T fa, T fm, T fb) {
    return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

template <typename T>
T adapt(const std::function<T(double)>& f, double a, double b, double tol, T whole, T fa, T fm,
        T fb, int depth) {
    double m = 0.5 * (a + b);
    double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    T flm = f(lm), frm = f(rm);
    T left = simpson(f, a, lm, m, fa, flm, fm);
    T right = simpson(f, m, rm, b, fm, frm, fb);
    T delta = left + right - whole;
    if (std::abs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
    if (depth <= 0) throw quadrature_error("adaptive Simpson: depth cap before tolerance");
    return adapt(f, a, m, tol / 2, left, fa, flm, fm, depth - 1) +
           adapt(f, m, b, tol / 2, right, fm, frm, fb, depth - 1);
}

template <typename T>
T adaptive(const std::function<T(double)>& f, double a, double b, double abs_tol, int max_depth) {
    if (a == b) return T{};
    T fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
    T whole = simpson(f, a, 0.5 * (a + b), b, fa, fm, fb);
    return adapt(f, a, b, abs_tol, whole, fa, fm, fb, max_depth);
}

template <typename T>
T trapz(const std::function<T(double)>& f, double a, double b, double abs_tol, int max_refine) {
    long n = 32;
    auto eval = [&](long panels) {
        double h = (b - a) / static_cast<double>(panels);
        T s = 0.5 * (f(a) + f(b));
        for (long i = 1; i < panels; ++i) s += f(a + h * static_cast<double>(i));
        return s * h;
    };
    T prev = eval(n);
    for (int r = 0; r < max_refine; ++r) {
        n *= 2;
        T cur = eval(n);
        if (std::abs(cur - prev) < abs_tol) return cur;
        prev = cur;
    }
    throw quadrature_error("trapezoid: refinement budget before tolerance");
}

}  // namespace

double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double abs_tol, int max_depth) {
    return adaptive<double>(f, a, b, abs_tol, max_depth);
}

std::complex<double> adaptive_simpson_c(const std::function<std::complex<double>(double)>& f,
                                        double a, double b, double abs_tol, int max_depth) {
    return adaptive<std::complex<double>>(f, a, b, abs_tol, max_depth);
}

double trapezoid_refined(const std::function<double(double)>& f, double a, double b,
                         double abs_tol, int max_refine) {
    return trapz<double>(f, a, b, abs_tol, max_refine);
}

std::complex<double> trapezoid_refined_c(const std::function<std::complex<double>(double)>& f,
                                         double a, double b, double abs_tol, int max_refine) {
    return trapz<std::complex<double>>(f, a, b, abs_tol, max_refine);
}

}  // namespace superosc::quad
