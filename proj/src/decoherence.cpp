#include "quditmet/decoherence.hpp"

#include "quditmet/core.hpp"
#include "quditmet/format.hpp"
#include "quditmet/qfi.hpp"

#include <cmath>
#include <sstream>

namespace quditmet {

DensityMatrix dephase(const DensityMatrix& rho, const DephasingChannel& channel) {
    const double gt = channel.gamma_t();
    const int d = rho.dim();
    Matrix damped = rho.matrix();
    for (int j = 0; j < d; ++j) {
        for (int k = 0; k < d; ++k) {
            const double gap = static_cast<double>(j - k);
            damped(j, k) *= std::exp(-gap * gap * gt);
        }
    }
    return DensityMatrix(damped);
}

DensityMatrix ghz_dephased(int d, const DephasingChannel& channel, double theta) {
    check_dim(d);
    const double damping = std::exp(-std::pow(static_cast<double>(d - 1), 2) * channel.gamma_t());
    const double phase = (d - 1) * theta;
    const Complex coherence =
        0.5 * damping * Complex{std::cos(phase), -std::sin(phase)};  // <0|rho|d-1>
    Matrix rho = Matrix::Zero(d, d);
    rho(0, 0) = 0.5;
    rho(d - 1, d - 1) = 0.5;
    rho(0, d - 1) = coherence;
    rho(d - 1, 0) = std::conj(coherence);
    return DensityMatrix(rho);
}

namespace {

DecayCurve decay_table(std::span<const int> d_list, std::span<const double> gamma_t_list) {
    if (d_list.empty() || gamma_t_list.empty()) {
        throw std::invalid_argument("decay curves need nonempty d and gamma_t lists");
    }
    DecayCurve curve;
    curve.rows.reserve(d_list.size() * gamma_t_list.size());
    for (const int d : d_list) {
        const HermitianObservable p = phase_generator(d);
        for (const double gt : gamma_t_list) {
            if (!(gt >= 0.0)) throw std::invalid_argument("gamma_t must be >= 0");
            const DensityMatrix rho = ghz_dephased(d, DephasingChannel(gt, 1.0), 0.0);
            const double f_q = qfi_spectral(rho, p);
            const double deff = f_q / (d - 1);
            curve.rows.push_back({d, gt, f_q, deff, std::max(deff - 1.0, 0.0)});
        }
    }
    return curve;
}

}  // namespace

DecayCurve qfi_decay_curve(std::span<const int> d_list, std::span<const double> gamma_t_list) {
    return decay_table(d_list, gamma_t_list);
}

DecayCurve power_decay_curve(std::span<const int> d_list, std::span<const double> gamma_t_list) {
    return decay_table(d_list, gamma_t_list);
}

std::string to_csv(const DecayCurve& curve) {
    std::ostringstream out;
    out << "d,gamma_t,f_q,d_eff,metrological_power\n";
    for (const auto& row : curve.rows) {
        out << row.d << ',' << format_number(row.gamma_t) << ',' << format_number(row.f_q) << ','
            << format_number(row.d_eff) << ',' << format_number(row.metrological_power) << '\n';
    }
    return out.str();
}

}  // namespace quditmet
