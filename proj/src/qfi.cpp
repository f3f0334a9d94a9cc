#include "quditmet/qfi.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>
#include <stdexcept>
#include <utility>
#include <vector>

namespace quditmet {

namespace {

constexpr Complex kI{0.0, 1.0};

Matrix commutator_drho(const HermitianObservable& g, const DensityMatrix& rho) {
    return -kI * (g.matrix() * rho.matrix() - rho.matrix() * g.matrix());
}

}  // namespace

// --------------------------------- estimators ---------------------------------

HermitianObservable sld(const DensityMatrix& rho, const Matrix& drho) {
    if (drho.rows() != rho.dim() || drho.cols() != rho.dim()) {
        throw std::invalid_argument("drho dimension mismatch");
    }
    if ((drho - drho.adjoint()).cwiseAbs().maxCoeff() > kHermitianTol) {
        throw std::domain_error("drho is not Hermitian");
    }
    const auto& eig = rho.eigensystem();
    const Matrix d_eigen = eig.eigenvectors.adjoint() * drho * eig.eigenvectors;
    Matrix l_eigen = Matrix::Zero(rho.dim(), rho.dim());
    for (int i = 0; i < rho.dim(); ++i) {
        for (int j = 0; j < rho.dim(); ++j) {
            const double weight = eig.eigenvalues(i) + eig.eigenvalues(j);
            if (weight > kSupportTol) l_eigen(i, j) = 2.0 * d_eigen(i, j) / weight;
        }
    }
    return HermitianObservable(eig.eigenvectors * l_eigen * eig.eigenvectors.adjoint());
}

double qfi_sld(const DensityMatrix& rho, const HermitianObservable& g) {
    if (g.dim() != rho.dim()) throw std::invalid_argument("generator dimension mismatch");
    const HermitianObservable l = sld(rho, commutator_drho(g, rho));
    const double f = (rho.matrix() * l.matrix() * l.matrix()).trace().real();
    return f < 0.0 ? 0.0 : f;
}

double qfi_spectral(const DensityMatrix& rho, const HermitianObservable& a) {
    if (a.dim() != rho.dim()) throw std::invalid_argument("observable dimension mismatch");
    const auto& eig = rho.eigensystem();
    const Matrix a_eigen = eig.eigenvectors.adjoint() * a.matrix() * eig.eigenvectors;
    double f = 0.0;
    for (int i = 0; i < rho.dim(); ++i) {
        for (int j = 0; j < rho.dim(); ++j) {
            if (i == j) continue;
            const double sum = eig.eigenvalues(i) + eig.eigenvalues(j);
            if (sum <= kSupportTol) continue;
            const double diff = eig.eigenvalues(i) - eig.eigenvalues(j);
            f += 2.0 * diff * diff / sum * std::norm(a_eigen(i, j));
        }
    }
    return f < 0.0 ? 0.0 : f;
}

double qfi_pure(const PureState& psi, const HermitianObservable& a) {
    return 4.0 * variance(psi, a);
}

double qfi_pure_bloch(const PureState& psi, const HermitianObservable& g) {
    if (g.dim() != psi.dim()) throw std::invalid_argument("generator dimension mismatch");
    const Matrix rho = psi.amplitudes() * psi.amplitudes().adjoint();
    const Matrix drho = -kI * (g.matrix() * rho - rho * g.matrix());
    const auto basis = gell_mann_basis(psi.dim());
    double f = 0.0;
    for (const auto& e : basis) {
        const double component = (drho * e.matrix()).trace().real();
        f += component * component;
    }
    return f;
}

// ------------------------------ generator maximum -----------------------------

namespace {

// 3x3 spin covariance C_ab = <{J_a, J_b}>/2 - <J_a><J_b> of a pure state.
CollectiveMax covariance_max(int d, const Vector& amplitudes) {
    const SpinOperators ops = spin_operators(d);
    const std::array<const HermitianObservable*, 3> js{&ops.jx, &ops.jy, &ops.jz};
    std::array<Vector, 3> applied;
    Eigen::Vector3d mean;
    for (int a = 0; a < 3; ++a) {
        applied[a] = js[a]->matrix() * amplitudes;
        mean(a) = amplitudes.dot(applied[a]).real();
    }
    Eigen::Matrix3d cov;
    for (int a = 0; a < 3; ++a) {
        for (int b = 0; b < 3; ++b) {
            cov(a, b) = applied[a].dot(applied[b]).real() - mean(a) * mean(b);
        }
    }
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> solver(cov);
    const double f = 4.0 * solver.eigenvalues()(2);
    Eigen::Vector3d n = solver.eigenvectors().col(2);
    n.normalize();
    return {f < 0.0 ? 0.0 : f, GeneratorDirection(n)};
}

// Icosphere with two subdivision rounds: 12 -> 42 -> 162 vertices.
std::vector<Eigen::Vector3d> icosphere_directions() {
    const double phi = (1.0 + std::sqrt(5.0)) / 2.0;
    std::vector<Eigen::Vector3d> verts = {
        {-1, phi, 0}, {1, phi, 0}, {-1, -phi, 0}, {1, -phi, 0},
        {0, -1, phi}, {0, 1, phi}, {0, -1, -phi}, {0, 1, -phi},
        {phi, 0, -1}, {phi, 0, 1}, {-phi, 0, -1}, {-phi, 0, 1}};
    for (auto& v : verts) v.normalize();
    std::vector<std::array<int, 3>> faces = {
        {0, 11, 5}, {0, 5, 1}, {0, 1, 7}, {0, 7, 10}, {0, 10, 11},
        {1, 5, 9}, {5, 11, 4}, {11, 10, 2}, {10, 7, 6}, {7, 1, 8},
        {3, 9, 4}, {3, 4, 2}, {3, 2, 6}, {3, 6, 8}, {3, 8, 9},
        {4, 9, 5}, {2, 4, 11}, {6, 2, 10}, {8, 6, 7}, {9, 8, 1}};
    for (int round = 0; round < 2; ++round) {
        std::map<std::pair<int, int>, int> midpoints;
        auto midpoint = [&](int a, int b) {
            const auto key = std::minmax(a, b);
            auto it = midpoints.find(key);
            if (it != midpoints.end()) return it->second;
            verts.push_back((verts[a] + verts[b]).normalized());
            const int idx = static_cast<int>(verts.size()) - 1;
            midpoints.emplace(key, idx);
            return idx;
        };
        std::vector<std::array<int, 3>> next;
        next.reserve(faces.size() * 4);
        for (const auto& f : faces) {
            const int ab = midpoint(f[0], f[1]);
            const int bc = midpoint(f[1], f[2]);
            const int ca = midpoint(f[2], f[0]);
            next.push_back({f[0], ab, ca});
            next.push_back({f[1], bc, ab});
            next.push_back({f[2], ca, bc});
            next.push_back({ab, bc, ca});
        }
        faces = std::move(next);
    }
    return verts;
}

// Maximize a smooth objective over the unit sphere: coarse icosphere pass,
// then a shrinking-cap local search around the best vertex.
template <typename Objective>
CollectiveMax maximize_on_sphere(const Objective& objective) {
    const auto grid = icosphere_directions();
    Eigen::Vector3d best = grid.front();
    double best_value = objective(best);
    for (const auto& n : grid) {
        const double value = objective(n);
        if (value > best_value) {
            best_value = value;
            best = n;
        }
    }
    const double golden = (1.0 + std::sqrt(5.0)) / 2.0;
    double radius = 0.3;  // roughly the icosphere vertex spacing
    while (radius > 1e-6) {
        // tangent frame at the current best direction
        Eigen::Vector3d seed = std::abs(best.z()) < 0.9 ? Eigen::Vector3d::UnitZ()
                                                        : Eigen::Vector3d::UnitX();
        const Eigen::Vector3d u = best.cross(seed).normalized();
        const Eigen::Vector3d v = best.cross(u).normalized();
        bool moved = false;
        for (int k = 0; k < 8; ++k) {
            const double alpha = k * std::numbers::pi / 4.0;
            const Eigen::Vector3d candidate =
                (best + radius * (std::cos(alpha) * u + std::sin(alpha) * v)).normalized();
            const double value = objective(candidate);
            if (value > best_value) {
                best_value = value;
                best = candidate;
                moved = true;
            }
        }
        if (!moved) radius /= golden;
    }
    return {best_value < 0.0 ? 0.0 : best_value, GeneratorDirection(best)};
}

}  // namespace

CollectiveMax qfi_max_collective(const PureState& psi) {
    return covariance_max(psi.dim(), psi.amplitudes());
}

CollectiveMax qfi_max_collective(const DensityMatrix& rho) {
    if (rho.purity() >= 1.0 - 1e-12) {
        // effectively pure: the top eigenvector carries the whole state
        const auto& eig = rho.eigensystem();
        return covariance_max(rho.dim(), eig.eigenvectors.col(rho.dim() - 1));
    }
    // Precompute spin operators in rho's eigenbasis; each direction then costs
    // one O(d^2) assembly of the spectral sum.
    const auto& eig = rho.eigensystem();
    const SpinOperators ops = spin_operators(rho.dim());
    const Matrix jx = eig.eigenvectors.adjoint() * ops.jx.matrix() * eig.eigenvectors;
    const Matrix jy = eig.eigenvectors.adjoint() * ops.jy.matrix() * eig.eigenvectors;
    const Matrix jz = eig.eigenvectors.adjoint() * ops.jz.matrix() * eig.eigenvectors;
    const auto objective = [&](const Eigen::Vector3d& n) {
        double f = 0.0;
        for (int i = 0; i < rho.dim(); ++i) {
            for (int j = 0; j < rho.dim(); ++j) {
                if (i == j) continue;
                const double sum = eig.eigenvalues(i) + eig.eigenvalues(j);
                if (sum <= kSupportTol) continue;
                const double diff = eig.eigenvalues(i) - eig.eigenvalues(j);
                const Complex element = n.x() * jx(i, j) + n.y() * jy(i, j) + n.z() * jz(i, j);
                f += 2.0 * diff * diff / sum * std::norm(element);
            }
        }
        return f;
    };
    return maximize_on_sphere(objective);
}

// ------------------------------ resource measures -----------------------------

double d_eff(const PureState& psi) { return qfi_max_collective(psi).f_max / (psi.dim() - 1); }

double d_eff(const DensityMatrix& rho) { return qfi_max_collective(rho).f_max / (rho.dim() - 1); }

double n_eff(const SymmetricState& state, int n_qubits) {
    if (state.n_qubits() != n_qubits) {
        throw std::invalid_argument("state does not live on 2^N amplitudes for the given N");
    }
    const std::array<Eigen::Vector3d, 3> axes{Eigen::Vector3d::UnitX(), Eigen::Vector3d::UnitY(),
                                              Eigen::Vector3d::UnitZ()};
    std::array<Vector, 3> applied;
    Eigen::Vector3d mean;
    for (int a = 0; a < 3; ++a) {
        applied[a] = apply_collective(n_qubits, axes[a], state.amplitudes());
        mean(a) = state.amplitudes().dot(applied[a]).real();
    }
    Eigen::Matrix3d cov;
    for (int a = 0; a < 3; ++a) {
        for (int b = 0; b < 3; ++b) {
            cov(a, b) = applied[a].dot(applied[b]).real() - mean(a) * mean(b);
        }
    }
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> solver(cov);
    return 4.0 * std::max(solver.eigenvalues()(2), 0.0) / n_qubits;
}

double nonclassicality(const PureState& psi) {
    return qfi_max_collective(psi).f_max - (psi.dim() - 1);
}

double nonclassicality(const DensityMatrix& rho) {
    return qfi_max_collective(rho).f_max - (rho.dim() - 1);
}

double metrological_power(const PureState& psi) { return std::max(d_eff(psi) - 1.0, 0.0); }

double metrological_power(const DensityMatrix& rho) { return std::max(d_eff(rho) - 1.0, 0.0); }

double cramer_rao(double f_q, int measurements) {
    if (measurements < 1) throw std::invalid_argument("measurement count must be >= 1");
    if (f_q < 0.0) throw std::invalid_argument("QFI must be non-negative");
    if (f_q == 0.0) return std::numeric_limits<double>::infinity();
    return 1.0 / (measurements * f_q);
}

namespace {

QfiReport report_from_max(const CollectiveMax& max, int dim, int measurements) {
    const double deff = max.f_max / (dim - 1);
    return {max.f_max,
            max.direction,
            deff,
            max.f_max - (dim - 1),
            std::max(deff - 1.0, 0.0),
            cramer_rao(max.f_max, measurements)};
}

}  // namespace

QfiReport qfi_report(const PureState& psi, int measurements) {
    return report_from_max(qfi_max_collective(psi), psi.dim(), measurements);
}

QfiReport qfi_report(const DensityMatrix& rho, int measurements) {
    return report_from_max(qfi_max_collective(rho), rho.dim(), measurements);
}

}  // namespace quditmet
