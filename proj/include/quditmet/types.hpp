// types.hpp — validated value types for a single d-level system
//
// Every type checks its invariants at construction and is immutable
// afterwards, so instances can be shared freely across threads.
// Error conventions: bad dimensions/arguments -> std::invalid_argument,
// bad indices -> std::out_of_range, matrices that fail a state invariant
// (positivity, trace, norm) -> std::domain_error.

#pragma once

#include <Eigen/Dense>

#include <complex>
#include <stdexcept>
#include <utility>
#include <vector>

namespace quditmet {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

// Construction-time tolerances and caps
inline constexpr int kMaxDim = 64;               // dense O(d^3) algebra stays cheap
inline constexpr double kNormTol = 1e-12;        // pure-state norm
inline constexpr double kHermitianTol = 1e-12;
inline constexpr double kTraceTol = 1e-12;
inline constexpr double kPositivityTol = 1e-10;  // eigenvalues >= -kPositivityTol
inline constexpr double kImagTol = 1e-10;        // imaginary residue on expectations
inline constexpr double kSupportTol = 1e-12;     // lambda_i + lambda_j cutoff in spectral sums
inline constexpr double kNodeTol = 1e-12;        // |d<A>/dtheta| below this reports +infinity

inline void check_dim(int d) {
    if (d < 2) throw std::invalid_argument("dimension must be >= 2");
    if (d > kMaxDim) throw std::invalid_argument("dimension exceeds cap of 64");
}

// Eigensystem of a Hermitian matrix: ascending eigenvalues, orthonormal columns.
struct EigenDecomposition {
    Eigen::VectorXd eigenvalues;
    Matrix eigenvectors;

    static EigenDecomposition of(const Matrix& hermitian) {
        Eigen::SelfAdjointEigenSolver<Matrix> solver(hermitian);
        if (solver.info() != Eigen::Success) {
            throw std::runtime_error("eigendecomposition failed");
        }
        return {solver.eigenvalues(), solver.eigenvectors()};
    }

    Matrix reconstruct() const {
        return eigenvectors * eigenvalues.asDiagonal() * eigenvectors.adjoint();
    }
};

// Unit-norm amplitude vector over d levels. Amplitudes are renormalized to
// exact unit norm after the tolerance check so long pulse chains stay stable.
class PureState {
public:
    explicit PureState(Vector amplitudes) : amplitudes_(std::move(amplitudes)) {
        check_dim(static_cast<int>(amplitudes_.size()));
        const double n = amplitudes_.norm();
        if (std::abs(n - 1.0) > kNormTol) {
            throw std::domain_error("pure state is not unit norm");
        }
        amplitudes_ /= n;
    }

    int dim() const { return static_cast<int>(amplitudes_.size()); }
    const Vector& amplitudes() const { return amplitudes_; }
    Complex amplitude(int i) const { return amplitudes_(i); }

private:
    Vector amplitudes_;
};

// d x d Hermitian, unit-trace, positive-semidefinite operator. The stored
// matrix is the Hermitian part of the input; the eigensystem is computed once
// at construction (eigenvalues in [-kPositivityTol, 0) are clamped to 0) and
// reused by the spectral QFI machinery.
class DensityMatrix {
public:
    explicit DensityMatrix(const Matrix& matrix) {
        if (matrix.rows() != matrix.cols()) {
            throw std::invalid_argument("density matrix must be square");
        }
        check_dim(static_cast<int>(matrix.rows()));
        if ((matrix - matrix.adjoint()).cwiseAbs().maxCoeff() > kHermitianTol) {
            throw std::domain_error("density matrix is not Hermitian");
        }
        if (std::abs(matrix.trace().real() - 1.0) > kTraceTol ||
            std::abs(matrix.trace().imag()) > kTraceTol) {
            throw std::domain_error("density matrix trace is not 1");
        }
        matrix_ = 0.5 * (matrix + matrix.adjoint());
        eigen_ = EigenDecomposition::of(matrix_);
        for (Eigen::Index i = 0; i < eigen_.eigenvalues.size(); ++i) {
            double& lambda = eigen_.eigenvalues(i);
            if (lambda < -kPositivityTol) {
                throw std::domain_error("density matrix is not positive semidefinite");
            }
            if (lambda < 0.0) lambda = 0.0;
        }
    }

    static DensityMatrix from_pure(const PureState& psi) {
        return DensityMatrix(psi.amplitudes() * psi.amplitudes().adjoint());
    }

    int dim() const { return static_cast<int>(matrix_.rows()); }
    const Matrix& matrix() const { return matrix_; }
    const EigenDecomposition& eigensystem() const { return eigen_; }
    double purity() const { return (matrix_ * matrix_).trace().real(); }

private:
    Matrix matrix_;
    EigenDecomposition eigen_;
};

// d x d Hermitian matrix used as generator or readout observable.
class HermitianObservable {
public:
    explicit HermitianObservable(const Matrix& matrix) {
        if (matrix.rows() != matrix.cols()) {
            throw std::invalid_argument("observable must be square");
        }
        check_dim(static_cast<int>(matrix.rows()));
        if ((matrix - matrix.adjoint()).cwiseAbs().maxCoeff() > kHermitianTol) {
            throw std::domain_error("observable is not Hermitian");
        }
        matrix_ = 0.5 * (matrix + matrix.adjoint());
    }

    int dim() const { return static_cast<int>(matrix_.rows()); }
    const Matrix& matrix() const { return matrix_; }

private:
    Matrix matrix_;
};

// Rotation on a single pair of levels, identity elsewhere.
// Unitary convention (fixed project-wide):
//   U = exp[-i*(angle/2)*(cos(axis_phase)*X_jk + sin(axis_phase)*Y_jk)]
// with X_jk, Y_jk the Pauli x/y matrices embedded on levels (j, k).
struct GivensPulse {
    int level_j;
    int level_k;
    double angle;       // radians
    double axis_phase;  // radians

    GivensPulse(int j, int k, double angle_, double axis_phase_)
        : level_j(j), level_k(k), angle(angle_), axis_phase(axis_phase_) {
        if (j < 0 || k <= j) throw std::invalid_argument("pulse levels must satisfy 0 <= j < k");
        if (!std::isfinite(angle) || !std::isfinite(axis_phase)) {
            throw std::invalid_argument("pulse angle and axis phase must be finite");
        }
    }
};

// Ordered pulse chain compiling a probe preparation; all pulses fit within dim.
class PulseSequence {
public:
    PulseSequence(int dim, std::vector<GivensPulse> pulses)
        : dim_(dim), pulses_(std::move(pulses)) {
        check_dim(dim_);
        for (const auto& p : pulses_) {
            if (p.level_k >= dim_) {
                throw std::out_of_range("pulse level exceeds sequence dimension");
            }
        }
    }

    int dim() const { return dim_; }
    const std::vector<GivensPulse>& pulses() const { return pulses_; }
    std::size_t size() const { return pulses_.size(); }

private:
    int dim_;
    std::vector<GivensPulse> pulses_;
};

}  // namespace quditmet
