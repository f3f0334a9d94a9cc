// serialize.hpp — JSON schemas for run artifacts.
// States and operators serialize as {dim, interleaved [re, im] arrays};
// matrices are row-major. Infinite values encode as the string "inf".

#pragma once

#include "quditmet/multiqubit.hpp"
#include "quditmet/qfi.hpp"
#include "quditmet/types.hpp"

#include <nlohmann/json_fwd.hpp>

namespace quditmet {

nlohmann::json to_json(const PureState& psi);
nlohmann::json to_json(const DensityMatrix& rho);
nlohmann::json to_json(const HermitianObservable& a);

PureState pure_state_from_json(const nlohmann::json& j);
DensityMatrix density_matrix_from_json(const nlohmann::json& j);
HermitianObservable observable_from_json(const nlohmann::json& j);

// Keys: f_q, direction, d_eff, nonclassicality, metrological_power, crb.
nlohmann::json to_json(const QfiReport& report);

// {n_qubits, cases: [{state_label, direction, qudit_qfi, multiqubit_qfi,
//  residual}], max_residual, pass}
nlohmann::json to_json(const EquivalenceReport& report);

}  // namespace quditmet
