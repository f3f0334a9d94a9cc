#include "quditmet/core.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace quditmet {

namespace {

constexpr Complex kI{0.0, 1.0};

double spin_of(int d) { return 0.5 * (d - 1); }

// J+ matrix: (J+)_{i+1,i} = sqrt(J(J+1) - m(m+1)) with m = -J + i
Matrix raising_operator(int d) {
    const double j = spin_of(d);
    Matrix up = Matrix::Zero(d, d);
    for (int i = 0; i + 1 < d; ++i) {
        const double m = -j + i;
        up(i + 1, i) = std::sqrt(j * (j + 1) - m * (m + 1));
    }
    return up;
}

}  // namespace

// ---------------------------- operator builders ------------------------------

std::vector<HermitianObservable> gell_mann_basis(int d) {
    check_dim(d);
    std::vector<HermitianObservable> basis;
    basis.reserve(static_cast<std::size_t>(d) * d - 1);
    // symmetric: |j><k| + |k><j|
    for (int j = 0; j < d; ++j) {
        for (int k = j + 1; k < d; ++k) {
            Matrix e = Matrix::Zero(d, d);
            e(j, k) = 1.0;
            e(k, j) = 1.0;
            basis.emplace_back(e);
        }
    }
    // antisymmetric: -i|j><k| + i|k><j|
    for (int j = 0; j < d; ++j) {
        for (int k = j + 1; k < d; ++k) {
            Matrix e = Matrix::Zero(d, d);
            e(j, k) = -kI;
            e(k, j) = kI;
            basis.emplace_back(e);
        }
    }
    // diagonal: sqrt(2/(l(l+1))) (sum_{j<l} |j><j| - l|l><l|)
    for (int l = 1; l < d; ++l) {
        Matrix e = Matrix::Zero(d, d);
        const double scale = std::sqrt(2.0 / (static_cast<double>(l) * (l + 1)));
        for (int j = 0; j < l; ++j) e(j, j) = scale;
        e(l, l) = -scale * l;
        basis.emplace_back(e);
    }
    return basis;
}

SpinOperators spin_operators(int d) {
    check_dim(d);
    const Matrix up = raising_operator(d);
    const Matrix down = up.adjoint();
    Matrix jz = Matrix::Zero(d, d);
    const double j = spin_of(d);
    for (int i = 0; i < d; ++i) jz(i, i) = -j + i;
    return {HermitianObservable(0.5 * (up + down)),
            HermitianObservable(-0.5 * kI * (up - down)),
            HermitianObservable(jz)};
}

HermitianObservable phase_generator(int d) {
    check_dim(d);
    Matrix p = Matrix::Zero(d, d);
    for (int i = 0; i < d; ++i) p(i, i) = static_cast<double>(i);
    return HermitianObservable(p);
}

HermitianObservable collective_generator(int d, const Eigen::Vector3d& n) {
    if (std::abs(n.norm() - 1.0) > 1e-12) {
        throw std::invalid_argument("generator direction must be unit norm");
    }
    const SpinOperators j = spin_operators(d);
    return HermitianObservable(n.x() * j.jx.matrix() + n.y() * j.jy.matrix() +
                               n.z() * j.jz.matrix());
}

// ----------------------------- Bloch conversions -----------------------------

Eigen::VectorXd bloch_vector(const DensityMatrix& rho) {
    const auto basis = gell_mann_basis(rho.dim());
    Eigen::VectorXd omega(static_cast<Eigen::Index>(basis.size()));
    for (std::size_t a = 0; a < basis.size(); ++a) {
        omega(static_cast<Eigen::Index>(a)) = (rho.matrix() * basis[a].matrix()).trace().real();
    }
    return omega;
}

DensityMatrix density_from_bloch(int d, const Eigen::VectorXd& omega) {
    check_dim(d);
    if (omega.size() != static_cast<Eigen::Index>(d) * d - 1) {
        throw std::invalid_argument("Bloch vector must have length d^2 - 1");
    }
    const auto basis = gell_mann_basis(d);
    Matrix rho = Matrix::Identity(d, d) / static_cast<double>(d);
    for (std::size_t a = 0; a < basis.size(); ++a) {
        rho += 0.5 * omega(static_cast<Eigen::Index>(a)) * basis[a].matrix();
    }
    return DensityMatrix(rho);  // throws domain_error when omega leaves the state body
}

// ----------------------------- state constructors ----------------------------

PureState basis_state(int d, int i) {
    check_dim(d);
    if (i < 0 || i >= d) throw std::out_of_range("basis index out of range");
    Vector amps = Vector::Zero(d);
    amps(i) = 1.0;
    return PureState(std::move(amps));
}

PureState ghz_like(int d) {
    check_dim(d);
    Vector amps = Vector::Zero(d);
    amps(0) = 1.0 / std::sqrt(2.0);
    amps(d - 1) = amps(0);
    return PureState(std::move(amps));
}

PureState spin_coherent(int d, double polar, double azimuth) {
    const SpinOperators j = spin_operators(d);
    PureState tipped = evolve(basis_state(d, 0), j.jy, polar, EvolutionSign::Minus);
    return evolve(tipped, j.jz, azimuth, EvolutionSign::Minus);
}

// ---------------------------- pulses and evolution ---------------------------

Matrix givens_unitary(int d, const GivensPulse& pulse) {
    check_dim(d);
    if (pulse.level_k >= d) throw std::out_of_range("pulse level exceeds dimension");
    const double c = std::cos(0.5 * pulse.angle);
    const double s = std::sin(0.5 * pulse.angle);
    const Complex phase = std::exp(kI * pulse.axis_phase);
    Matrix u = Matrix::Identity(d, d);
    u(pulse.level_j, pulse.level_j) = c;
    u(pulse.level_k, pulse.level_k) = c;
    u(pulse.level_j, pulse.level_k) = -kI * s / phase;
    u(pulse.level_k, pulse.level_j) = -kI * s * phase;
    return u;
}

PulseSequence compile_preparation(int d, const PreparationTarget& target) {
    check_dim(d);
    // A pi pulse on (j, k) with axis phase pi/2 moves |j> -> |k| with unit
    // phase; the pi/2 pulse with the same axis phase splits |0> into
    // (|0> + |1>)/sqrt(2). No phases accumulate anywhere in the chain.
    constexpr double kPi = std::numbers::pi;
    constexpr double kTransferPhase = kPi / 2.0;
    std::vector<GivensPulse> pulses;
    switch (target.kind) {
        case PreparationTarget::Kind::Dicke: {
            if (target.index < 0 || target.index >= d) {
                throw std::out_of_range("Dicke target level out of range");
            }
            for (int i = 0; i < target.index; ++i) {
                pulses.emplace_back(i, i + 1, kPi, kTransferPhase);
            }
            break;
        }
        case PreparationTarget::Kind::Ghz: {
            pulses.emplace_back(0, 1, kPi / 2.0, kTransferPhase);
            for (int i = 1; i + 1 < d; ++i) {
                pulses.emplace_back(i, i + 1, kPi, kTransferPhase);
            }
            break;
        }
    }
    return PulseSequence(d, std::move(pulses));
}

PureState apply_sequence(const PureState& psi, const PulseSequence& seq) {
    if (psi.dim() != seq.dim()) throw std::invalid_argument("state/sequence dimension mismatch");
    Vector amps = psi.amplitudes();
    for (const auto& pulse : seq.pulses()) {
        amps = givens_unitary(seq.dim(), pulse) * amps;
    }
    return PureState(std::move(amps));
}

namespace {

Matrix evolution_unitary(const HermitianObservable& g, double theta, EvolutionSign sign) {
    const auto eig = EigenDecomposition::of(g.matrix());
    const double s = (sign == EvolutionSign::Plus) ? 1.0 : -1.0;
    Vector phases(eig.eigenvalues.size());
    for (Eigen::Index i = 0; i < phases.size(); ++i) {
        phases(i) = std::exp(kI * s * theta * eig.eigenvalues(i));
    }
    return eig.eigenvectors * phases.asDiagonal() * eig.eigenvectors.adjoint();
}

}  // namespace

PureState evolve(const PureState& psi, const HermitianObservable& g, double theta,
                 EvolutionSign sign) {
    if (psi.dim() != g.dim()) throw std::invalid_argument("state/generator dimension mismatch");
    return PureState(evolution_unitary(g, theta, sign) * psi.amplitudes());
}

DensityMatrix evolve(const DensityMatrix& rho, const HermitianObservable& g, double theta,
                     EvolutionSign sign) {
    if (rho.dim() != g.dim()) throw std::invalid_argument("state/generator dimension mismatch");
    const Matrix u = evolution_unitary(g, theta, sign);
    return DensityMatrix(u * rho.matrix() * u.adjoint());
}

// ------------------------------- measurements --------------------------------

namespace {

double real_checked(Complex value) {
    if (std::abs(value.imag()) > kImagTol) {
        throw std::runtime_error("expectation has non-negligible imaginary part");
    }
    return value.real();
}

}  // namespace

double expectation(const PureState& psi, const HermitianObservable& a) {
    if (psi.dim() != a.dim()) throw std::invalid_argument("state/observable dimension mismatch");
    return real_checked(psi.amplitudes().dot(a.matrix() * psi.amplitudes()));
}

double expectation(const DensityMatrix& rho, const HermitianObservable& a) {
    if (rho.dim() != a.dim()) throw std::invalid_argument("state/observable dimension mismatch");
    return real_checked((rho.matrix() * a.matrix()).trace());
}

namespace {

// Var = <A^2> - <A>^2; tiny negatives from rounding clamp to 0.
double clamp_variance(double second_moment, double mean) {
    const double var = second_moment - mean * mean;
    if (var < -1e-12) throw std::runtime_error("variance below rounding tolerance");
    return var < 0.0 ? 0.0 : var;
}

}  // namespace

double variance(const PureState& psi, const HermitianObservable& a) {
    if (psi.dim() != a.dim()) throw std::invalid_argument("state/observable dimension mismatch");
    const Vector applied = a.matrix() * psi.amplitudes();
    const double second = applied.squaredNorm();
    const double mean = real_checked(psi.amplitudes().dot(applied));
    return clamp_variance(second, mean);
}

double variance(const DensityMatrix& rho, const HermitianObservable& a) {
    if (rho.dim() != a.dim()) throw std::invalid_argument("state/observable dimension mismatch");
    const Matrix am = a.matrix();
    const double second = real_checked((rho.matrix() * am * am).trace());
    const double mean = real_checked((rho.matrix() * am).trace());
    return clamp_variance(second, mean);
}

double fidelity(const PureState& a, const PureState& b) {
    if (a.dim() != b.dim()) throw std::invalid_argument("state dimension mismatch");
    return std::norm(a.amplitudes().dot(b.amplitudes()));
}

}  // namespace quditmet
