#include "quditmet/multiqubit.hpp"

#include "quditmet/core.hpp"
#include "quditmet/qfi.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

namespace quditmet {

namespace {

constexpr Complex kI{0.0, 1.0};

void check_qubits(int n) {
    if (n < 1) throw std::invalid_argument("qubit count must be >= 1");
    if (n > kMaxQubits) throw std::invalid_argument("qubit count exceeds cap of 12");
}

std::size_t space_dim(int n_qubits) { return std::size_t{1} << n_qubits; }

double binomial(int n, int k) {
    double c = 1.0;
    for (int i = 0; i < k; ++i) c = c * (n - i) / (i + 1);
    return c;
}

// big-endian: qubit q lives at bit position n-1-q
unsigned bit_mask(int n_qubits, int qubit) {
    return 1u << (n_qubits - 1 - qubit);
}

}  // namespace

SymmetricState::SymmetricState(int n_qubits, Vector amplitudes)
    : n_qubits_(n_qubits), amplitudes_(std::move(amplitudes)) {
    check_qubits(n_qubits_);
    if (amplitudes_.size() != static_cast<Eigen::Index>(space_dim(n_qubits_))) {
        throw std::invalid_argument("amplitude vector must have length 2^N");
    }
    const double n = amplitudes_.norm();
    if (std::abs(n - 1.0) > kNormTol) {
        throw std::domain_error("symmetric state is not unit norm");
    }
    amplitudes_ /= n;
    // invariance under every adjacent-qubit swap
    for (int q = 0; q + 1 < n_qubits_; ++q) {
        const unsigned high = bit_mask(n_qubits_, q);
        const unsigned low = bit_mask(n_qubits_, q + 1);
        for (unsigned x = 0; x < space_dim(n_qubits_); ++x) {
            const bool a = (x & high) != 0;
            const bool b = (x & low) != 0;
            if (a == b) continue;
            const unsigned swapped = x ^ high ^ low;
            if (std::abs(amplitudes_(x) - amplitudes_(swapped)) > 1e-10) {
                throw std::domain_error("state is not permutationally symmetric");
            }
        }
    }
}

SymmetricState dicke_multiqubit(int n_qubits, int excitations) {
    check_qubits(n_qubits);
    if (excitations < 0 || excitations > n_qubits) {
        throw std::out_of_range("excitation number out of range");
    }
    Vector amps = Vector::Zero(static_cast<Eigen::Index>(space_dim(n_qubits)));
    const double amp = 1.0 / std::sqrt(binomial(n_qubits, excitations));
    for (unsigned x = 0; x < space_dim(n_qubits); ++x) {
        if (std::popcount(x) == excitations) amps(x) = amp;
    }
    return SymmetricState(n_qubits, std::move(amps));
}

SymmetricState ghz_multiqubit(int n_qubits) {
    check_qubits(n_qubits);
    Vector amps = Vector::Zero(static_cast<Eigen::Index>(space_dim(n_qubits)));
    amps(0) = 1.0 / std::sqrt(2.0);
    amps(amps.size() - 1) = amps(0);
    return SymmetricState(n_qubits, std::move(amps));
}

SymmetricState embed_qudit(const PureState& psi) {
    const int n_qubits = psi.dim() - 1;
    if (n_qubits > kMaxQubits) {
        throw std::invalid_argument("qudit dimension exceeds the N+1 = 13 embedding cap");
    }
    Vector amps = Vector::Zero(static_cast<Eigen::Index>(space_dim(n_qubits)));
    // |i> carries Jz = i - N/2, matching the Dicke state with N - i ones.
    for (int i = 0; i < psi.dim(); ++i) {
        const int ones = n_qubits - i;
        const double amp = 1.0 / std::sqrt(binomial(n_qubits, ones));
        for (unsigned x = 0; x < space_dim(n_qubits); ++x) {
            if (std::popcount(x) == ones) amps(x) += psi.amplitude(i) * amp;
        }
    }
    return SymmetricState(n_qubits, std::move(amps));
}

Vector apply_collective(int n_qubits, const Eigen::Vector3d& direction, const Vector& amplitudes) {
    check_qubits(n_qubits);
    if (amplitudes.size() != static_cast<Eigen::Index>(space_dim(n_qubits))) {
        throw std::invalid_argument("amplitude vector must have length 2^N");
    }
    if (std::abs(direction.norm() - 1.0) > 1e-12) {
        throw std::invalid_argument("collective direction must be unit norm");
    }
    const Complex lower{0.5 * direction.x(), -0.5 * direction.y()};  // (nx - i ny)/2
    const Complex raise{0.5 * direction.x(), 0.5 * direction.y()};
    const double half_z = 0.5 * direction.z();
    Vector out = Vector::Zero(amplitudes.size());
    for (int q = 0; q < n_qubits; ++q) {
        const unsigned mask = bit_mask(n_qubits, q);
        for (unsigned x = 0; x < space_dim(n_qubits); ++x) {
            if (x & mask) continue;
            const unsigned y = x | mask;  // |0> component at x, |1> at y
            out(x) += half_z * amplitudes(x) + lower * amplitudes(y);
            out(y) += raise * amplitudes(x) - half_z * amplitudes(y);
        }
    }
    return out;
}

CollectiveOperator collective_op(int n_qubits, const Eigen::Vector3d& direction) {
    check_qubits(n_qubits);
    const auto dim = static_cast<Eigen::Index>(space_dim(n_qubits));
    Matrix m(dim, dim);
    Vector basis = Vector::Zero(dim);
    for (Eigen::Index col = 0; col < dim; ++col) {
        basis(col) = 1.0;
        m.col(col) = apply_collective(n_qubits, direction, basis);
        basis(col) = 0.0;
    }
    return {n_qubits, direction, std::move(m)};
}

CollectiveOperator collective_op(int n_qubits, char axis) {
    switch (axis) {
        case 'x': return collective_op(n_qubits, Eigen::Vector3d::UnitX());
        case 'y': return collective_op(n_qubits, Eigen::Vector3d::UnitY());
        case 'z': return collective_op(n_qubits, Eigen::Vector3d::UnitZ());
        default: throw std::invalid_argument("axis must be one of x, y, z");
    }
}

double qfi_pure_symmetric(const SymmetricState& state, const Eigen::Vector3d& direction) {
    const Vector applied = apply_collective(state.n_qubits(), direction, state.amplitudes());
    const Complex mean = state.amplitudes().dot(applied);
    if (std::abs(mean.imag()) > kImagTol) {
        throw std::runtime_error("collective expectation has non-negligible imaginary part");
    }
    const double var = applied.squaredNorm() - mean.real() * mean.real();
    return 4.0 * (var < 0.0 ? 0.0 : var);
}

EquivalenceReport qfi_equivalence_check(const PureState& psi,
                                        const std::vector<Eigen::Vector3d>& directions,
                                        double tol, const std::string& state_label) {
    const SymmetricState embedded = embed_qudit(psi);
    EquivalenceReport report{embedded.n_qubits(), {}, 0.0, true};
    report.cases.reserve(directions.size());
    for (const auto& n : directions) {
        const double qudit = qfi_pure(psi, collective_generator(psi.dim(), n));
        const double multiqubit = qfi_pure_symmetric(embedded, n);
        const double residual = std::abs(qudit - multiqubit);
        report.cases.push_back({state_label, n, qudit, multiqubit, residual});
        report.max_residual = std::max(report.max_residual, residual);
    }
    report.pass = report.max_residual <= tol;
    return report;
}

}  // namespace quditmet
