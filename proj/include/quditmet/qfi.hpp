// qfi.hpp — quantum Fisher information via four estimators, SLD construction,
// Cramer-Rao bound, and the resource measures d_eff, N_eff, non-classicality,
// and metrological power.
//
// Generator class for the maximization: collective directions n·J with
// |n| = 1, the normalization under which spin-coherent states sit exactly at
// F = d-1 and pure states satisfy 1 <= d_eff <= d-1.

#pragma once

#include "quditmet/core.hpp"
#include "quditmet/multiqubit.hpp"
#include "quditmet/types.hpp"

#include <Eigen/Dense>

namespace quditmet {

// Unit 3-vector selecting the collective generator n·J.
struct GeneratorDirection {
    Eigen::Vector3d n;

    explicit GeneratorDirection(const Eigen::Vector3d& v) : n(v) {
        if (std::abs(n.norm() - 1.0) > 1e-12) {
            throw std::invalid_argument("generator direction must be unit norm");
        }
    }
};

struct QfiReport {
    double f_q;
    GeneratorDirection direction;
    double d_eff;
    double nonclassicality;
    double metrological_power;
    double crb;  // radians^2 for m measurements; +infinity when f_q = 0
};

// --------------------------------- estimators ---------------------------------

// L solving drho = (rho L + L rho)/2 on the support of rho: in rho's eigenbasis
// L_ij = 2 (drho)_ij / (lambda_i + lambda_j), entries with
// lambda_i + lambda_j <= kSupportTol set to zero.
HermitianObservable sld(const DensityMatrix& rho, const Matrix& drho);

// Tr(rho L^2) with L = sld(rho, -i[G, rho]); clamped at 0.
double qfi_sld(const DensityMatrix& rho, const HermitianObservable& g);

// 2 sum_{i != j} (li - lj)^2/(li + lj) |<i|A|j>|^2 over lambda_i + lambda_j > tol.
double qfi_spectral(const DensityMatrix& rho, const HermitianObservable& a);

// 4 Var(A) for pure states.
double qfi_pure(const PureState& psi, const HermitianObservable& a);

// |d omega / d theta|^2 in the Gell-Mann basis with drho = -i[G, rho].
double qfi_pure_bloch(const PureState& psi, const HermitianObservable& g);

// ------------------------------ generator maximum -----------------------------

struct CollectiveMax {
    double f_max;
    GeneratorDirection direction;
};

// Pure states: 4 lambda_max of the 3x3 spin covariance matrix
// C_ab = <{J_a, J_b}>/2 - <J_a><J_b>, direction = the top eigenvector.
CollectiveMax qfi_max_collective(const PureState& psi);

// Mixed states: maximize qfi_spectral(rho, n·J) over the unit sphere by
// icosphere grid (162 vertices) plus shrinking-cap refinement to 1e-6.
// Near-pure inputs (purity within 1e-12 of 1) take the covariance path.
CollectiveMax qfi_max_collective(const DensityMatrix& rho);

// ------------------------------ resource measures -----------------------------

double d_eff(const PureState& psi);
double d_eff(const DensityMatrix& rho);

// Max over collective directions of F_Q/N for an N-qubit symmetric state.
double n_eff(const SymmetricState& state, int n_qubits);

// qfi_max_collective - (d-1); zero for spin-coherent states, may be negative
// for mixed states.
double nonclassicality(const PureState& psi);
double nonclassicality(const DensityMatrix& rho);

// max(d_eff - 1, 0)
double metrological_power(const PureState& psi);
double metrological_power(const DensityMatrix& rho);

// 1/(m f_q); +infinity when f_q = 0. Requires m >= 1.
double cramer_rao(double f_q, int measurements);

QfiReport qfi_report(const PureState& psi, int measurements = 1);
QfiReport qfi_report(const DensityMatrix& rho, int measurements = 1);

}  // namespace quditmet
