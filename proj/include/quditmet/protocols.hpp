// protocols.hpp — end-to-end simulation of the four-stage estimation scheme
// (prepare, encode, read out, estimate) with error-propagation precision for
// the Dicke-like and GHZ-like probes.
//
// Dicke run: |psi> = exp(-i theta Jx)|i>, readout Jz^2.
// GHZ run:   prepare (|0>+|d-1>)/sqrt(2) by compiled pulses, apply
//            exp(+i theta P), recombine with a pi pulse on (1, d-1), mix with
//            a pi/2 pulse on (0, 1) (both at axis phase 3pi/2), read out P.

#pragma once

#include "quditmet/types.hpp"

#include <nlohmann/json_fwd.hpp>

#include <optional>
#include <string>
#include <vector>

namespace quditmet {

class ThetaGrid {
public:
    ThetaGrid(double start, double stop, int count);

    double start() const { return start_; }
    double stop() const { return stop_; }
    int count() const { return count_; }
    const std::vector<double>& values() const { return values_; }

private:
    double start_;
    double stop_;
    int count_;
    std::vector<double> values_;
};

enum class DerivativeMode { Analytic, FiniteDifference };

struct ProtocolOptions {
    DerivativeMode derivative_mode = DerivativeMode::Analytic;
    double fd_step = 1e-5;
    int measurements = 1;
    int workers = 0;  // 0: QUDITMET_WORKERS env or hardware concurrency
};

struct ProtocolRow {
    double theta;
    double expectation;
    double variance;
    double d_expectation;
    double precision_sq;  // may be +infinity at nodes
    double qfi;
    double crb;
};

struct ProtocolResult {
    std::string kind;  // "dicke" or "ghz"
    int d;
    std::optional<int> dicke_index;
    double grid_start;
    double grid_stop;
    int grid_count;
    DerivativeMode derivative_mode;
    std::vector<ProtocolRow> rows;
};

// variance / slope^2; +infinity when |slope| <= kNodeTol.
double error_propagation(double variance, double d_expectation);

ProtocolResult run_dicke_protocol(int d, int i, const ThetaGrid& grid,
                                  const ProtocolOptions& options = {});

ProtocolResult run_ghz_protocol(int d, const ThetaGrid& grid,
                                const ProtocolOptions& options = {});

struct GhzClosedForm {
    double expectation;   // sin^2((d-1)theta/2)
    double variance;      // sin^2((d-1)theta)/4
    double precision_sq;  // 1/(d-1)^2 off-node, +infinity at nodes
};

GhzClosedForm ghz_closed_form(int d, double theta);

// <Jz> column: subtracts (d-1)/2 from the <P> expectations.
std::vector<double> jz_view(const ProtocolResult& result, int d);

// CSV with header theta,expectation,variance,d_expectation,precision_sq,qfi,crb
std::string to_csv(const ProtocolResult& result);

// JSON with metadata {kind, d, i, grid, derivative_mode} and the row table.
nlohmann::json to_json(const ProtocolResult& result);

}  // namespace quditmet
