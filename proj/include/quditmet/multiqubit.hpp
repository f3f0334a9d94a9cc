// multiqubit.hpp — permutationally symmetric N-qubit states and collective
// operators on the full 2^N space, plus the QFI-equality certificate against
// the (N+1)-dimensional qudit computation.
//
// Qubit ordering is big-endian: qubit 0 is the leftmost tensor factor, i.e.
// the most significant bit of the basis index. Collective operators use the
// standard Pauli convention sigma_z = diag(1, -1), so the all-zeros string
// carries Jz = +N/2. A qudit level |i> (Jz eigenvalue i - N/2) therefore maps
// to the Dicke state with N - i excitations; this is the unique assignment
// that intertwines n·J on both sides.

#pragma once

#include "quditmet/types.hpp"

#include <Eigen/Dense>

#include <string>
#include <vector>

namespace quditmet {

class PureState;

inline constexpr int kMaxQubits = 12;

// Unit-norm state on 2^N amplitudes, invariant under adjacent-qubit swaps.
class SymmetricState {
public:
    SymmetricState(int n_qubits, Vector amplitudes);

    int n_qubits() const { return n_qubits_; }
    const Vector& amplitudes() const { return amplitudes_; }

private:
    int n_qubits_;
    Vector amplitudes_;
};

struct CollectiveOperator {
    int n_qubits;
    Eigen::Vector3d direction;
    Matrix matrix;  // sum_n (n·sigma)^(q)/2 on the full 2^N space
};

// Uniform superposition of all C(N, k) strings with k excitations.
SymmetricState dicke_multiqubit(int n_qubits, int excitations);

// (|0...0> + |1...1>)/sqrt(2)
SymmetricState ghz_multiqubit(int n_qubits);

// Isometry taking qudit level |i> to the Dicke state with matching Jz
// eigenvalue (N - i excitations); preserves inner products.
SymmetricState embed_qudit(const PureState& psi);

CollectiveOperator collective_op(int n_qubits, const Eigen::Vector3d& direction);
CollectiveOperator collective_op(int n_qubits, char axis);  // 'x', 'y', 'z'

// Matrix-free application of n·J; scales to the N = 12 cap without building
// the 2^N x 2^N matrix.
Vector apply_collective(int n_qubits, const Eigen::Vector3d& direction, const Vector& amplitudes);

// 4 Var(n·J) for a pure symmetric state, computed matrix-free.
double qfi_pure_symmetric(const SymmetricState& state, const Eigen::Vector3d& direction);

struct EquivalenceCase {
    std::string state_label;
    Eigen::Vector3d direction;
    double qudit_qfi;
    double multiqubit_qfi;
    double residual;
};

struct EquivalenceReport {
    int n_qubits;
    std::vector<EquivalenceCase> cases;
    double max_residual;
    bool pass;
};

// For each direction n, compares qfi_pure(psi, n·J_qudit) against the QFI of
// the embedded state under the collective n·J on N = d-1 qubits.
EquivalenceReport qfi_equivalence_check(const PureState& psi,
                                        const std::vector<Eigen::Vector3d>& directions,
                                        double tol, const std::string& state_label = "state");

}  // namespace quditmet
