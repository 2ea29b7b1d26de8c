#include "superosc/quantum.hpp"

#include <cmath>
#include <stdexcept>

namespace superosc::quantum {

namespace {
constexpr double kOverlapTol = 1e-12;
}

QuantumState::QuantumState(Vec amplitudes) : v_(std::move(amplitudes)) {
    if (v_.size() < 2) throw std::invalid_argument("QuantumState: dimension must be >= 2");
    double n = v_.norm();
    if (n < 1e-14) throw std::invalid_argument("QuantumState: zero vector");
    v_ /= n;
}

Observable::Observable(Mat m, double hermiticity_tol) : m_(std::move(m)) {
    if (m_.rows() != m_.cols() || m_.rows() < 2)
        throw std::invalid_argument("Observable: square matrix of dimension >= 2 required");
    double dev = (m_ - m_.adjoint()).norm();
    if (dev > hermiticity_tol * std::max(1.0, m_.norm()))
        throw std::invalid_argument("Observable: matrix is not Hermitian within tolerance");
}

Observable::Spectrum Observable::spectrum(double group_tol) const {
    Eigen::SelfAdjointEigenSolver<Mat> es(m_);
    if (es.info() != Eigen::Success)
        throw std::runtime_error("Observable: eigendecomposition failed");
    Spectrum sp;
    const auto& vals = es.eigenvalues();
    const auto& vecs = es.eigenvectors();
    int d = dim();
    int i = 0;
    while (i < d) {
        int j = i;
        while (j + 1 < d && std::abs(vals(j + 1) - vals(i)) <= group_tol) ++j;
        Mat proj = Mat::Zero(d, d);
        double mean = 0;
        for (int c = i; c <= j; ++c) {
            proj += vecs.col(c) * vecs.col(c).adjoint();
            mean += vals(c);
        }
        sp.values.push_back(mean / (j - i + 1));
        sp.projectors.push_back(std::move(proj));
        i = j + 1;
    }
    return sp;
}

cplx weak_value(const Observable& A, const QuantumState& in, const QuantumState& fin) {
    cplx overlap = fin.vec().dot(in.vec());  // <fin|in>
    if (std::abs(overlap) < kOverlapTol)
        throw std::domain_error("weak_value: orthogonal pre/post-selection");
    cplx num = fin.vec().dot(A.mat() * in.vec());
    return num / overlap;
}

Decomposition orthogonal_decomposition(const Observable& A, const QuantumState& psi) {
    Vec Apsi = A.mat() * psi.vec();
    cplx mean_c = psi.vec().dot(Apsi);
    double mean = mean_c.real();
    Vec resid = Apsi - mean * psi.vec();
    double spread = resid.norm();
    Decomposition d;
    d.mean = mean;
    d.spread = spread;
    if (spread >= 1e-12) d.perp = QuantumState(resid / spread);
    return d;
}

bool is_unitary(const Mat& U, double tol) {
    Mat I = Mat::Identity(U.rows(), U.cols());
    return (U.adjoint() * U - I).norm() <= tol;
}

Mat unitary_from_hamiltonian(const Mat& H, double dt) {
    Observable h(H);  // validates hermiticity
    Eigen::SelfAdjointEigenSolver<Mat> es(h.mat());
    Vec phases(es.eigenvalues().size());
    for (int i = 0; i < phases.size(); ++i)
        phases(i) = std::exp(cplx(0, -es.eigenvalues()(i) * dt));
    Mat U = es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
    // reconstruction / unitarity sanity at the contract tolerance
    if (!is_unitary(U, 1e-12 * std::max<double>(1.0, static_cast<double>(U.rows()))))
        throw std::runtime_error("unitary_from_hamiltonian: reconstruction failed");
    return U;
}

std::vector<double> abl_distribution(const Observable& A, const QuantumState& in,
                                     const QuantumState& fin, const Mat& U_before,
                                     const Mat& U_after, double group_tol) {
    if (!is_unitary(U_before, 1e-10) || !is_unitary(U_after, 1e-10))
        throw std::invalid_argument("abl_distribution: evolution operators must be unitary");
    auto sp = A.spectrum(group_tol);
    Vec pre = U_before * in.vec();
    Vec post = U_after.adjoint() * fin.vec();
    std::vector<double> weights(sp.values.size());
    double total = 0;
    for (size_t j = 0; j < sp.projectors.size(); ++j) {
        cplx amp = post.dot(sp.projectors[j] * pre);
        weights[j] = std::norm(amp);
        total += weights[j];
    }
    if (total < 1e-24)
        throw std::domain_error("abl_distribution: post-selection unreachable (all amplitudes vanish)");
    for (double& w : weights) w /= total;
    return weights;
}

double abl_probability(const Observable& A, const QuantumState& in, const QuantumState& fin,
                       const Mat& U_before, const Mat& U_after, int j, double group_tol) {
    auto d = abl_distribution(A, in, fin, U_before, U_after, group_tol);
    if (j < 0 || static_cast<size_t>(j) >= d.size())
        throw std::out_of_range("abl_probability: eigenvalue index out of range");
    return d[static_cast<size_t>(j)];
}

namespace {

cplx ensemble_projector_sum(const Mat& P, const std::vector<EnsemblePair>& ensemble) {
    cplx s = 0;
    for (const auto& e : ensemble) s += e.alpha * e.bra.vec().dot(P * e.ket.vec());
    return s;
}

}  // namespace

double strong_prob(const Observable& A, double eigenvalue,
                   const std::vector<EnsemblePair>& ensemble, double group_tol) {
    if (ensemble.empty()) throw std::invalid_argument("strong_prob: empty ensemble");
    auto sp = A.spectrum(group_tol);
    double num = -1, total = 0;
    for (size_t k = 0; k < sp.values.size(); ++k) {
        double w = std::norm(ensemble_projector_sum(sp.projectors[k], ensemble));
        total += w;
        if (std::abs(sp.values[k] - eigenvalue) <= group_tol) num = w;
    }
    if (num < 0) throw std::domain_error("strong_prob: requested value not in the spectrum");
    if (total < 1e-24) throw std::domain_error("strong_prob: vanishing denominator");
    return num / total;
}

cplx generalized_weak_value(const Observable& A, const std::vector<EnsemblePair>& ensemble) {
    if (ensemble.empty()) throw std::invalid_argument("generalized_weak_value: empty ensemble");
    cplx num = 0, den = 0;
    for (const auto& e : ensemble) {
        num += e.alpha * e.bra.vec().dot(A.mat() * e.ket.vec());
        den += e.alpha * e.bra.vec().dot(e.ket.vec());
    }
    if (std::abs(den) < kOverlapTol)
        throw std::domain_error("generalized_weak_value: vanishing denominator");
    return num / den;
}

cplx product_state_weak_value(const Observable& A1, const Observable& A2,
                              const QuantumState& in1, const QuantumState& in2,
                              const QuantumState& fin1, const QuantumState& fin2) {
    return weak_value(A1, in1, fin1) * weak_value(A2, in2, fin2);
}

Mat kron(const Mat& a, const Mat& b) {
    Mat r(a.rows() * b.rows(), a.cols() * b.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j)
            r.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return r;
}

Vec kron(const Vec& a, const Vec& b) {
    Vec r(a.size() * b.size());
    for (int i = 0; i < a.size(); ++i) r.segment(i * b.size(), b.size()) = a(i) * b;
    return r;
}

// ----- pointer distributions --------------------------------------------------------

double pointer_single_unnormalized(double P, double delta) {
    if (delta <= 0) throw std::domain_error("pointer model: delta must be > 0");
    double c2 = std::cos(3.141592653589793 / 8), s2 = std::sin(3.141592653589793 / 8);
    c2 *= c2;
    s2 *= s2;
    double d2 = delta * delta;
    double v = c2 * std::exp(-(P - 1) * (P - 1) / d2) - s2 * std::exp(-(P + 1) * (P + 1) / d2);
    return v * v;
}

namespace {

std::vector<double> grid_normalize(std::vector<double> v, const std::vector<double>& grid) {
    if (grid.size() < 2) throw std::invalid_argument("pointer grid needs >= 2 points");
    double integral = 0;
    for (size_t i = 0; i + 1 < grid.size(); ++i)
        integral += 0.5 * (v[i] + v[i + 1]) * (grid[i + 1] - grid[i]);
    if (integral <= 0) throw std::domain_error("pointer distribution: zero mass on the grid");
    for (double& x : v) x /= integral;
    return v;
}

}  // namespace

std::vector<double> pointer_single_distribution(const std::vector<double>& grid, double delta) {
    std::vector<double> v(grid.size());
    for (size_t i = 0; i < grid.size(); ++i) v[i] = pointer_single_unnormalized(grid[i], delta);
    return grid_normalize(std::move(v), grid);
}

double pointer_ensemble_unnormalized(double Q, int N, double delta, EnsembleWeighting w) {
    if (N < 1) throw std::domain_error("pointer ensemble: N must be >= 1");
    if (delta <= 0) throw std::domain_error("pointer model: delta must be > 0");
    double c2 = std::cos(3.141592653589793 / 8), s2 = std::sin(3.141592653589793 / 8);
    c2 *= c2;
    s2 *= s2;
    double td2 = 2.0 * delta * delta;
    double sum = 0;
    if (w == EnsembleWeighting::Literal) {
        for (int i = 1; i <= N; ++i) {
            double center = (2.0 * N - i) / N;
            double term = std::pow(c2, N - i) * std::pow(s2, i) *
                          std::exp(-(Q - center) * (Q - center) / td2);
            sum += (i % 2 ? -term : term);
        }
    } else {
        double bin = 1.0;  // binom(N, i)
        for (int i = 0; i <= N; ++i) {
            double center = (N - 2.0 * i) / N;
            double term = bin * std::pow(c2, N - i) * std::pow(s2, i) *
                          std::exp(-(Q - center) * (Q - center) / td2);
            sum += (i % 2 ? -term : term);
            bin = bin * (N - i) / (i + 1);
        }
    }
    return sum * sum;
}

std::vector<double> pointer_ensemble_distribution(const std::vector<double>& grid, int N,
                                                  double delta, EnsembleWeighting w) {
    std::vector<double> v(grid.size());
    for (size_t i = 0; i < grid.size(); ++i)
        v[i] = pointer_ensemble_unnormalized(grid[i], N, delta, w);
    return grid_normalize(std::move(v), grid);
}

// ----- spin helpers -------------------------------------------------------------------

Mat sigma_x() {
    Mat m(2, 2);
    m << 0, 1, 1, 0;
    return m;
}
Mat sigma_y() {
    Mat m(2, 2);
    m << 0, cplx(0, -1), cplx(0, 1), 0;
    return m;
}
Mat sigma_z() {
    Mat m(2, 2);
    m << 1, 0, 0, -1;
    return m;
}

namespace {
QuantumState two(cplx a, cplx b) {
    Vec v(2);
    v << a, b;
    return QuantumState(v);
}
}  // namespace

QuantumState up_x() { return two(1, 1); }
QuantumState down_x() { return two(1, -1); }
QuantumState up_y() { return two(1, cplx(0, 1)); }
QuantumState up_z() { return two(1, 0); }

}  // namespace superosc::quantum
