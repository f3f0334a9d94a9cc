// core.hpp — states, operators, Bloch machinery, Givens pulse compiler, and
// unitary evolution for a single d-level system.
//
// Conventions (fixed project-wide, all operators follow them):
//   * J = (d-1)/2 and basis index i carries Jz eigenvalue m = -J + i, so
//     Jz = diag(-J, ..., J) and the phase generator P = diag(0, ..., d-1)
//     satisfies P = Jz + (d-1)/2 * I.
//   * Ladder coefficients sqrt(J(J+1) - m(m+1)); Jx = (J+ + J-)/2,
//     Jy = (J+ - J-)/(2i).
//   * Gell-Mann ordering: symmetric pairs (j<k lexicographic), then
//     antisymmetric pairs, then diagonal generators; for d=2 this is
//     (sigma_x, sigma_y, sigma_z).

#pragma once

#include "quditmet/types.hpp"

#include <Eigen/Dense>

#include <vector>

namespace quditmet {

// ---------------------------- operator builders ------------------------------

// The d^2-1 traceless Hermitian generators of SU(d), Tr(E_a E_b) = 2 delta_ab.
std::vector<HermitianObservable> gell_mann_basis(int d);

struct SpinOperators {
    HermitianObservable jx;
    HermitianObservable jy;
    HermitianObservable jz;
};
SpinOperators spin_operators(int d);

// P = diag(0, 1, ..., d-1)
HermitianObservable phase_generator(int d);

// n·J for a unit direction n (|n| = 1 within 1e-12)
HermitianObservable collective_generator(int d, const Eigen::Vector3d& n);

// ----------------------------- Bloch conversions -----------------------------

// omega_a = Tr(rho E_a)
Eigen::VectorXd bloch_vector(const DensityMatrix& rho);

// rho = I/d + omega·E/2; positivity of the result is checked, not assumed.
DensityMatrix density_from_bloch(int d, const Eigen::VectorXd& omega);

// ----------------------------- state constructors ----------------------------

PureState basis_state(int d, int i);

// (|0> + |d-1>)/sqrt(2)
PureState ghz_like(int d);

// exp(-i*azimuth*Jz) exp(-i*polar*Jy) |0>, the classical baseline
PureState spin_coherent(int d, double polar, double azimuth);

// ---------------------------- pulses and evolution ---------------------------

// Unitary of a single pulse; acts trivially outside span{|j>, |k>}.
Matrix givens_unitary(int d, const GivensPulse& pulse);

struct PreparationTarget {
    enum class Kind { Dicke, Ghz };
    Kind kind;
    int index;  // Dicke level; ignored for Ghz

    static PreparationTarget dicke(int i) { return {Kind::Dicke, i}; }
    static PreparationTarget ghz() { return {Kind::Ghz, 0}; }
};

// Pulse chain taking |0> to the exact target state (unit phases throughout).
PulseSequence compile_preparation(int d, const PreparationTarget& target);

PureState apply_sequence(const PureState& psi, const PulseSequence& seq);

enum class EvolutionSign { Plus, Minus };

// exp(sign * i * theta * G) applied via the eigendecomposition of G.
PureState evolve(const PureState& psi, const HermitianObservable& g, double theta,
                 EvolutionSign sign);
DensityMatrix evolve(const DensityMatrix& rho, const HermitianObservable& g, double theta,
                     EvolutionSign sign);

// ------------------------------- measurements --------------------------------

double expectation(const PureState& psi, const HermitianObservable& a);
double expectation(const DensityMatrix& rho, const HermitianObservable& a);
double variance(const PureState& psi, const HermitianObservable& a);
double variance(const DensityMatrix& rho, const HermitianObservable& a);

// |<a|b>|^2
double fidelity(const PureState& a, const PureState& b);

}  // namespace quditmet
