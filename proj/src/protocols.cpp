#include "quditmet/protocols.hpp"

#include "quditmet/core.hpp"
#include "quditmet/format.hpp"
#include "quditmet/parallel.hpp"
#include "quditmet/qfi.hpp"

#include <nlohmann/json.hpp>

#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace quditmet {

namespace {

constexpr Complex kI{0.0, 1.0};
constexpr double kPi = std::numbers::pi;

}  // namespace

ThetaGrid::ThetaGrid(double start, double stop, int count)
    : start_(start), stop_(stop), count_(count) {
    if (count < 2) throw std::invalid_argument("theta grid needs at least 2 points");
    if (!(start < stop)) throw std::invalid_argument("theta grid must be strictly increasing");
    values_.reserve(static_cast<std::size_t>(count));
    for (int k = 0; k < count; ++k) {
        values_.push_back(start + k * (stop - start) / (count - 1));
    }
}

double error_propagation(double variance, double d_expectation) {
    if (variance < -1e-12) throw std::invalid_argument("variance must be non-negative");
    if (variance < 0.0) variance = 0.0;
    if (std::abs(d_expectation) <= kNodeTol) {
        return std::numeric_limits<double>::infinity();
    }
    return variance / (d_expectation * d_expectation);
}

namespace {

// One protocol step: the state at theta together with the readout moments.
struct Moments {
    double expectation;
    double variance;
};

// Shared sweep driver. `moments(theta)` runs the full pipeline at one theta;
// `analytic_slope(theta)` evaluates the commutator form of d<A>/dtheta.
ProtocolResult sweep(std::string kind, int d, std::optional<int> dicke_index,
                     const ThetaGrid& grid, const ProtocolOptions& options, double qfi_value,
                     const std::function<Moments(double)>& moments,
                     const std::function<double(double)>& analytic_slope) {
    ProtocolResult result{std::move(kind), d,           dicke_index,
                          grid.start(),    grid.stop(), grid.count(),
                          options.derivative_mode,      {}};
    const double crb = cramer_rao(qfi_value, options.measurements);
    result.rows.resize(grid.values().size());
    parallel_for(grid.values().size(), options.workers, [&](std::size_t idx) {
        const double theta = grid.values()[idx];
        const Moments m = moments(theta);
        double slope = 0.0;
        if (options.derivative_mode == DerivativeMode::Analytic) {
            slope = analytic_slope(theta);
        } else {
            const double h = options.fd_step;
            slope = (moments(theta + h).expectation - moments(theta - h).expectation) / (2.0 * h);
        }
        result.rows[idx] = {theta,
                            m.expectation,
                            m.variance,
                            slope,
                            error_propagation(m.variance, slope),
                            qfi_value,
                            crb};
    });
    return result;
}

}  // namespace

ProtocolResult run_dicke_protocol(int d, int i, const ThetaGrid& grid,
                                  const ProtocolOptions& options) {
    if (options.derivative_mode == DerivativeMode::FiniteDifference && !(options.fd_step > 0.0)) {
        throw std::invalid_argument("finite-difference step must be positive");
    }
    const PureState probe = basis_state(d, i);  // throws on bad index
    const SpinOperators ops = spin_operators(d);
    const HermitianObservable readout(ops.jz.matrix() * ops.jz.matrix());
    // d<A>/dtheta for |psi> = exp(-i theta Jx)|i> is <-i[A, Jx]> on the
    // evolved state.
    const HermitianObservable slope_obs(
        -kI * (readout.matrix() * ops.jx.matrix() - ops.jx.matrix() * readout.matrix()));
    const auto moments = [&](double theta) -> Moments {
        const PureState psi = evolve(probe, ops.jx, theta, EvolutionSign::Minus);
        return {expectation(psi, readout), variance(psi, readout)};
    };
    const auto slope = [&](double theta) {
        const PureState psi = evolve(probe, ops.jx, theta, EvolutionSign::Minus);
        return expectation(psi, slope_obs);
    };
    return sweep("dicke", d, i, grid, options, qfi_pure(probe, ops.jx), moments, slope);
}

ProtocolResult run_ghz_protocol(int d, const ThetaGrid& grid, const ProtocolOptions& options) {
    if (options.derivative_mode == DerivativeMode::FiniteDifference && !(options.fd_step > 0.0)) {
        throw std::invalid_argument("finite-difference step must be positive");
    }
    const PureState probe =
        apply_sequence(basis_state(d, 0), compile_preparation(d, PreparationTarget::ghz()));
    const HermitianObservable p = phase_generator(d);
    // Recombination pi pulse moves |d-1> -> |1> with unit phase at axis phase
    // 3pi/2; the same axis phase on the pi/2 mixing pulse closes the
    // interferometer so that theta = 0 recombines to |0> exactly.
    std::vector<GivensPulse> pulses;
    if (d >= 3) pulses.emplace_back(1, d - 1, kPi, 1.5 * kPi);
    pulses.emplace_back(0, 1, 0.5 * kPi, 1.5 * kPi);
    const PulseSequence readout_seq(d, pulses);
    Matrix recombiner = Matrix::Identity(d, d);
    for (const auto& pulse : readout_seq.pulses()) {
        recombiner = givens_unitary(d, pulse) * recombiner;
    }
    // Encoding is exp(+i theta P); pulling the readout pulses back onto the
    // encoded state gives d<P>/dtheta = <i[M'PM, P]> there.
    const Matrix pulled_back = recombiner.adjoint() * p.matrix() * recombiner;
    const HermitianObservable slope_obs(kI *
                                        (pulled_back * p.matrix() - p.matrix() * pulled_back));
    const auto moments = [&](double theta) -> Moments {
        const PureState encoded = evolve(probe, p, theta, EvolutionSign::Plus);
        const PureState final_state = apply_sequence(encoded, readout_seq);
        return {expectation(final_state, p), variance(final_state, p)};
    };
    const auto slope = [&](double theta) {
        const PureState encoded = evolve(probe, p, theta, EvolutionSign::Plus);
        return expectation(encoded, slope_obs);
    };
    return sweep("ghz", d, std::nullopt, grid, options, qfi_pure(probe, p), moments, slope);
}

GhzClosedForm ghz_closed_form(int d, double theta) {
    check_dim(d);
    const double x = (d - 1) * theta;
    const double half = std::sin(0.5 * x);
    const double full = std::sin(x);
    const double slope = 0.5 * (d - 1) * full;  // d<P>/dtheta
    GhzClosedForm form{half * half, 0.25 * full * full, 0.0};
    form.precision_sq = std::abs(slope) <= kNodeTol
                            ? std::numeric_limits<double>::infinity()
                            : 1.0 / (static_cast<double>(d - 1) * (d - 1));
    return form;
}

std::vector<double> jz_view(const ProtocolResult& result, int d) {
    if (result.d != d) throw std::invalid_argument("dimension does not match the result");
    std::vector<double> shifted;
    shifted.reserve(result.rows.size());
    for (const auto& row : result.rows) {
        shifted.push_back(row.expectation - 0.5 * (d - 1));
    }
    return shifted;
}

std::string to_csv(const ProtocolResult& result) {
    std::ostringstream out;
    out << "theta,expectation,variance,d_expectation,precision_sq,qfi,crb\n";
    for (const auto& row : result.rows) {
        out << format_number(row.theta) << ',' << format_number(row.expectation) << ','
            << format_number(row.variance) << ',' << format_number(row.d_expectation) << ','
            << format_number(row.precision_sq) << ',' << format_number(row.qfi) << ','
            << format_number(row.crb) << '\n';
    }
    return out.str();
}

namespace {

nlohmann::json json_number(double value) {
    if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
    return value;
}

}  // namespace

nlohmann::json to_json(const ProtocolResult& result) {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& row : result.rows) {
        rows.push_back({{"theta", row.theta},
                        {"expectation", row.expectation},
                        {"variance", row.variance},
                        {"d_expectation", row.d_expectation},
                        {"precision_sq", json_number(row.precision_sq)},
                        {"qfi", row.qfi},
                        {"crb", json_number(row.crb)}});
    }
    nlohmann::json meta{{"kind", result.kind},
                        {"d", result.d},
                        {"grid",
                         {{"start", result.grid_start},
                          {"stop", result.grid_stop},
                          {"count", result.grid_count}}},
                        {"derivative_mode", result.derivative_mode == DerivativeMode::Analytic
                                                ? "analytic"
                                                : "finite_difference"}};
    meta["i"] = result.dicke_index.has_value() ? nlohmann::json(*result.dicke_index)
                                               : nlohmann::json(nullptr);
    meta["rows"] = std::move(rows);
    return meta;
}

}  // namespace quditmet
