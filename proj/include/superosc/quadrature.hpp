#pragma once

#include <complex>
#include <functional>
#include <stdexcept>

namespace superosc::quad {

class quadrature_error : public std::runtime_error {
  public:
    explicit quadrature_error(const std::string& w) : std::runtime_error(w) {}
};

// Adaptive Simpson with absolute tolerance; throws quadrature_error when the
// recursion depth cap is hit before the tolerance is met.
double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double abs_tol, int max_depth = 40);

std::complex<double> adaptive_simpson_c(const std::function<std::complex<double>(double)>& f,
                                        double a, double b, double abs_tol, int max_depth = 40);

// Trapezoid on [a,b] with Richardson refinement until |I_{2h} - I_h| < abs_tol
// or the panel budget is exhausted.
double trapezoid_refined(const std::function<double(double)>& f, double a, double b,
                         double abs_tol, int max_refine = 22);

std::complex<double> trapezoid_refined_c(const std::function<std::complex<double>(double)>& f,
                                         double a, double b, double abs_tol, int max_refine = 22);

}  // namespace superosc::quad
