#pragma once

#include <Eigen/Dense>
#include <complex>
#include <optional>
#include <vector>

namespace superosc::quantum {

using cplx = std::complex<double>;
using Vec = Eigen::VectorXcd;
using Mat = Eigen::MatrixXcd;

// Normalized finite-dimensional state vector.
class QuantumState {
  public:
    explicit QuantumState(Vec amplitudes);
    const Vec& vec() const { return v_; }
    int dim() const { return static_cast<int>(v_.size()); }

  private:
    Vec v_;
};

// Hermitian observable with an eigenvalue-grouped spectral decomposition.
class Observable {
  public:
    explicit Observable(Mat m, double hermiticity_tol = 1e-12);
    const Mat& mat() const { return m_; }
    int dim() const { return static_cast<int>(m_.rows()); }

    struct Spectrum {
        std::vector<double> values;      // distinct eigenvalues, ascending
        std::vector<Mat> projectors;     // matching eigenspace projectors
    };
    Spectrum spectrum(double group_tol = 1e-10) const;

  private:
    Mat m_;
};

// A_w = <fin|A|in> / <fin|in>; throws when the overlap vanishes.
cplx weak_value(const Observable& A, const QuantumState& in, const QuantumState& fin);

// A|psi> = <A>|psi> + dA |psi_perp>
struct Decomposition {
    double mean = 0;
    double spread = 0;
    std::optional<QuantumState> perp;  // absent for eigenstates (spread ~ 0)
};
Decomposition orthogonal_decomposition(const Observable& A, const QuantumState& psi);

bool is_unitary(const Mat& U, double tol = 1e-10);
// exp(-i H dt) through the eigendecomposition of Hermitian H
Mat unitary_from_hamiltonian(const Mat& H, double dt);

// ABL conditional probabilities for an ideal intermediate measurement of A,
// with unitary evolution before and after. Index j refers to spectrum().values.
std::vector<double> abl_distribution(const Observable& A, const QuantumState& in,
                                     const QuantumState& fin, const Mat& U_before,
                                     const Mat& U_after, double group_tol = 1e-10);
double abl_probability(const Observable& A, const QuantumState& in, const QuantumState& fin,
                       const Mat& U_before, const Mat& U_after, int j,
                       double group_tol = 1e-10);

// Generalized PPS ensemble term alpha_i <Psi_i| ... |Phi_i>.
struct EnsemblePair {
    cplx alpha;
    QuantumState bra;  // Psi_i
    QuantumState ket;  // Phi_i
};

double strong_prob(const Observable& A, double eigenvalue,
                   const std::vector<EnsemblePair>& ensemble, double group_tol = 1e-10);
cplx generalized_weak_value(const Observable& A, const std::vector<EnsemblePair>& ensemble);

// Product-state weak value <A1 x A2>_w = <A1>_w <A2>_w
cplx product_state_weak_value(const Observable& A1, const Observable& A2,
                              const QuantumState& in1, const QuantumState& in2,
                              const QuantumState& fin1, const QuantumState& fin2);

Mat kron(const Mat& a, const Mat& b);
Vec kron(const Vec& a, const Vec& b);

// ----- pointer distributions -----------------------------------------------------

struct PointerModel {
    double delta = 1.0;  // gaussian spread
    double g0 = 1.0;     // coupling
};

// Single spin-1/2 with the x/y pre/post-selection measuring sigma_xi:
// Prob(P) = N^2 [cos^2(pi/8) e^{-(P-1)^2/D^2} - sin^2(pi/8) e^{-(P+1)^2/D^2}]^2
double pointer_single_unnormalized(double P, double delta);
std::vector<double> pointer_single_distribution(const std::vector<double>& grid, double delta);

// N-spin collective measurement. `Literal` follows the displayed sum verbatim
// (no binomial factors, i >= 1, centers (2N-i)/N); `Binomial` restores the
// binomial weights and eigenvalue centers (N-2i)/N, which is the variant that
// reproduces the published figure (single peak at sqrt(2) for moderate spreads).
enum class EnsembleWeighting { Literal, Binomial };
double pointer_ensemble_unnormalized(double Q, int N, double delta,
                                     EnsembleWeighting w = EnsembleWeighting::Binomial);
std::vector<double> pointer_ensemble_distribution(const std::vector<double>& grid, int N,
                                                  double delta,
                                                  EnsembleWeighting w = EnsembleWeighting::Binomial);

// ----- spin-1/2 helpers ------------------------------------------------------------

Mat sigma_x();
Mat sigma_y();
Mat sigma_z();
QuantumState up_x();
QuantumState down_x();
QuantumState up_y();
QuantumState up_z();

}  // namespace superosc::quantum
