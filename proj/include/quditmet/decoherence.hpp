// decoherence.hpp — collective dephasing channel, the dephased GHZ family,
// QFI decay curves, and the metrological-power witness.
//
// The channel damps every matrix element as rho_jk -> rho_jk exp(-(j-k)^2 gt),
// the generator-P collective dephasing; on a GHZ-like state this reduces to a
// single damped coherence with factor exp(-(d-1)^2 gt).

#pragma once

#include "quditmet/types.hpp"

#include <cmath>
#include <span>
#include <string>
#include <vector>

namespace quditmet {

struct DephasingChannel {
    double gamma;  // rate, 1/time
    double t;      // interaction time

    DephasingChannel(double gamma_, double t_) : gamma(gamma_), t(t_) {
        if (!(gamma >= 0.0) || !(t >= 0.0) || !std::isfinite(gamma * t)) {
            throw std::invalid_argument("dephasing requires finite gamma, t >= 0");
        }
    }

    double gamma_t() const { return gamma * t; }
};

DensityMatrix dephase(const DensityMatrix& rho, const DephasingChannel& channel);

// (|0><0| + |d-1><d-1|)/2 plus the damped coherence
// exp(-(d-1)^2 gt) exp(-+i(d-1)theta)/2 on the corners.
DensityMatrix ghz_dephased(int d, const DephasingChannel& channel, double theta);

struct DecayRow {
    int d;
    double gamma_t;
    double f_q;                  // spectral QFI of the dephased GHZ w.r.t. P
    double d_eff;                // f_q / (d-1)
    double metrological_power;   // max(d_eff - 1, 0)
};

struct DecayCurve {
    std::vector<DecayRow> rows;
};

// f_q column per (d, gamma_t); rows ordered d-major, gamma_t-minor.
DecayCurve qfi_decay_curve(std::span<const int> d_list, std::span<const double> gamma_t_list);

// Same table viewed through the power column: d_eff and power derive from the
// protocol generator P, the normalization under which the witness is reported.
DecayCurve power_decay_curve(std::span<const int> d_list, std::span<const double> gamma_t_list);

// CSV with header d,gamma_t,f_q,d_eff,metrological_power
std::string to_csv(const DecayCurve& curve);

}  // namespace quditmet
