// cli.hpp — command-line front end: protocol sweeps, decoherence curves, QFI
// reports, equivalence checks, and figure-data reproduction.
//
// Exit codes: 0 success, 2 usage error, 3 I/O failure, 4 internal invariant
// violation. Outputs are written atomically and are byte-identical across
// repeated runs and worker counts; a manifest.json next to the data files
// lists every file written with its checksum.

#pragma once

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace quditmet::cli {

inline constexpr const char* kToolName = "quditmet";
inline constexpr const char* kToolVersion = "0.1.0";

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct RunConfig {
    std::string command;  // qfi | sweep-dicke | sweep-ghz | decoherence | equivalence | reproduce

    int d = 4;
    std::vector<int> d_list;     // decoherence
    std::optional<int> i;        // Dicke level; defaults to (d-1)/2
    double theta_start = 0.0;
    double theta_stop = 0.0;     // defaulted to pi when unset
    int theta_count = 721;
    std::string derivative_mode = "analytic";  // analytic | finite_difference
    double fd_step = 1e-5;
    int measurements = 1;

    double gamma = 1.0;          // dephasing rate
    std::vector<double> t_list;  // dephasing times

    std::string state = "ghz";   // qfi probe: ghz | dicke | coherent
    double polar = 0.0;
    double azimuth = 0.0;

    int figure = 1;              // reproduce: 1 | 2

    int n_qubits = 4;            // equivalence
    int num_random = 20;
    unsigned seed = 7;
    double tol = 1e-8;

    std::filesystem::path output = ".";  // directory for data files + manifest
    std::string format = "csv";          // csv | json
    int workers = 0;                     // 0: QUDITMET_WORKERS env or hardware
};

// Parses argv (flags override values from --config <file.json>, whose keys
// mirror the RunConfig field names). Throws UsageError on any problem.
RunConfig parse_config(const std::vector<std::string>& argv);

// Executes a validated config; writes data files plus manifest.json.
// Returns the exit code.
int run(const RunConfig& config);

// parse + run + error-to-exit-code mapping; the main() body.
int run_main(int argc, const char* const* argv);

}  // namespace quditmet::cli
