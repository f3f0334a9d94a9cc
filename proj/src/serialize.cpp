#include "quditmet/serialize.hpp"

#include <nlohmann/json.hpp>

#include <cmath>
#include <stdexcept>

namespace quditmet {

namespace {

nlohmann::json interleave(const Vector& v) {
    nlohmann::json out = nlohmann::json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        out.push_back(v(i).real());
        out.push_back(v(i).imag());
    }
    return out;
}

nlohmann::json interleave(const Matrix& m) {
    nlohmann::json out = nlohmann::json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        for (Eigen::Index c = 0; c < m.cols(); ++c) {
            out.push_back(m(r, c).real());
            out.push_back(m(r, c).imag());
        }
    }
    return out;
}

Vector deinterleave_vector(const nlohmann::json& j, int dim) {
    if (!j.is_array() || j.size() != static_cast<std::size_t>(2 * dim)) {
        throw std::invalid_argument("amplitude array must hold 2*dim numbers");
    }
    Vector v(dim);
    for (int i = 0; i < dim; ++i) {
        v(i) = Complex(j[2 * i].get<double>(), j[2 * i + 1].get<double>());
    }
    return v;
}

Matrix deinterleave_matrix(const nlohmann::json& j, int dim) {
    if (!j.is_array() || j.size() != static_cast<std::size_t>(2 * dim * dim)) {
        throw std::invalid_argument("matrix array must hold 2*dim^2 numbers");
    }
    Matrix m(dim, dim);
    std::size_t pos = 0;
    for (int r = 0; r < dim; ++r) {
        for (int c = 0; c < dim; ++c) {
            m(r, c) = Complex(j[pos].get<double>(), j[pos + 1].get<double>());
            pos += 2;
        }
    }
    return m;
}

nlohmann::json json_number(double value) {
    if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
    return value;
}

}  // namespace

nlohmann::json to_json(const PureState& psi) {
    return {{"dim", psi.dim()}, {"amplitudes", interleave(psi.amplitudes())}};
}

nlohmann::json to_json(const DensityMatrix& rho) {
    return {{"dim", rho.dim()}, {"matrix", interleave(rho.matrix())}};
}

nlohmann::json to_json(const HermitianObservable& a) {
    return {{"dim", a.dim()}, {"matrix", interleave(a.matrix())}};
}

PureState pure_state_from_json(const nlohmann::json& j) {
    const int dim = j.at("dim").get<int>();
    check_dim(dim);
    return PureState(deinterleave_vector(j.at("amplitudes"), dim));
}

DensityMatrix density_matrix_from_json(const nlohmann::json& j) {
    const int dim = j.at("dim").get<int>();
    check_dim(dim);
    return DensityMatrix(deinterleave_matrix(j.at("matrix"), dim));
}

HermitianObservable observable_from_json(const nlohmann::json& j) {
    const int dim = j.at("dim").get<int>();
    check_dim(dim);
    return HermitianObservable(deinterleave_matrix(j.at("matrix"), dim));
}

nlohmann::json to_json(const QfiReport& report) {
    return {{"f_q", report.f_q},
            {"direction", {report.direction.n.x(), report.direction.n.y(), report.direction.n.z()}},
            {"d_eff", report.d_eff},
            {"nonclassicality", report.nonclassicality},
            {"metrological_power", report.metrological_power},
            {"crb", json_number(report.crb)}};
}

nlohmann::json to_json(const EquivalenceReport& report) {
    nlohmann::json cases = nlohmann::json::array();
    for (const auto& c : report.cases) {
        cases.push_back({{"state_label", c.state_label},
                         {"direction", {c.direction.x(), c.direction.y(), c.direction.z()}},
                         {"qudit_qfi", c.qudit_qfi},
                         {"multiqubit_qfi", c.multiqubit_qfi},
                         {"residual", c.residual}});
    }
    return {{"n_qubits", report.n_qubits},
            {"cases", std::move(cases)},
            {"max_residual", report.max_residual},
            {"pass", report.pass}};
}

}  // namespace quditmet
