#include "quditmet/cli.hpp"

#include "quditmet/core.hpp"
#include "quditmet/decoherence.hpp"
#include "quditmet/format.hpp"
#include "quditmet/multiqubit.hpp"
#include "quditmet/protocols.hpp"
#include "quditmet/qfi.hpp"
#include "quditmet/serialize.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <chrono>
#include <fstream>
#include <iostream>
#include <numbers>
#include <random>
#include <sstream>

namespace quditmet::cli {

namespace {

using nlohmann::json;

// ------------------------------- config parsing -------------------------------

json load_config_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot open config file " + path.string());
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        throw UsageError("malformed config file: " + std::string(e.what()));
    }
    if (!j.is_object()) throw UsageError("config file must hold a JSON object");
    return j;
}

// CLI flags win over file values: file keys apply only where the option was
// not given on the command line.
template <typename T>
void apply_file_value(const CLI::App& cmd, const json& file, const char* flag, const char* key,
                      T& target) {
    if (!file.contains(key)) return;
    const CLI::Option* opt = cmd.get_option_no_throw(flag);
    if (opt != nullptr && opt->count() > 0) return;
    try {
        target = file.at(key).get<T>();
    } catch (const json::exception&) {
        throw UsageError(std::string("config field '") + key + "' has the wrong type");
    }
}

void validate(RunConfig& config) {
    const auto check_d = [](int d) {
        if (d < 2) throw UsageError("dimension must be >= 2");
        if (d > kMaxDim) throw UsageError("dimension exceeds cap of 64");
    };
    if (config.format != "csv" && config.format != "json") {
        throw UsageError("format must be csv or json");
    }
    if (config.derivative_mode != "analytic" && config.derivative_mode != "finite_difference") {
        throw UsageError("derivative mode must be analytic or finite_difference");
    }
    if (config.theta_stop == 0.0 && config.theta_start == 0.0) {
        config.theta_stop = std::numbers::pi;
    }
    if (config.theta_count < 2) throw UsageError("grid count must be >= 2");
    if (!(config.theta_start < config.theta_stop)) {
        throw UsageError("grid must be strictly increasing");
    }
    if (config.fd_step <= 0.0) throw UsageError("finite-difference step must be positive");
    if (config.measurements < 1) throw UsageError("measurement count must be >= 1");
    if (config.command == "qfi" || config.command == "sweep-dicke" ||
        config.command == "sweep-ghz" || config.command == "equivalence") {
        check_d(config.d);
    }
    if (config.command == "sweep-dicke" || (config.command == "qfi" && config.state == "dicke")) {
        if (!config.i.has_value()) config.i = (config.d - 1) / 2;
        if (*config.i < 0 || *config.i >= config.d) {
            throw UsageError("Dicke level out of range");
        }
    }
    if (config.command == "qfi" && config.state != "ghz" && config.state != "dicke" &&
        config.state != "coherent") {
        throw UsageError("state must be ghz, dicke, or coherent");
    }
    if (config.command == "decoherence") {
        if (config.d_list.empty()) config.d_list = {2, 3, 4, 5, 6, 7, 8};
        for (const int d : config.d_list) check_d(d);
        if (config.t_list.empty()) config.t_list = {0.0, 0.01, 0.1, 0.5};
        if (config.gamma < 0.0) throw UsageError("gamma must be >= 0");
        for (const double t : config.t_list) {
            if (t < 0.0) throw UsageError("times must be >= 0");
        }
    }
    if (config.command == "equivalence") {
        config.n_qubits = config.d - 1;
        if (config.n_qubits > kMaxQubits) throw UsageError("equivalence requires d <= 13");
        if (config.num_random < 0) throw UsageError("random case count must be >= 0");
        if (config.tol <= 0.0) throw UsageError("tolerance must be positive");
    }
    if (config.command == "reproduce" && config.figure != 1 && config.figure != 2) {
        throw UsageError("figure must be 1 or 2");
    }
}

json config_echo(const RunConfig& config) {
    json echo{{"command", config.command},
              {"d", config.d},
              {"theta_start", config.theta_start},
              {"theta_stop", config.theta_stop},
              {"theta_count", config.theta_count},
              {"derivative_mode", config.derivative_mode},
              {"fd_step", config.fd_step},
              {"measurements", config.measurements},
              {"output", config.output.string()},
              {"format", config.format},
              {"workers", config.workers}};
    if (config.i.has_value()) echo["i"] = *config.i;
    if (config.command == "decoherence") {
        echo["d_list"] = config.d_list;
        echo["gamma"] = config.gamma;
        echo["t_list"] = config.t_list;
    }
    if (config.command == "qfi") {
        echo["state"] = config.state;
        echo["polar"] = config.polar;
        echo["azimuth"] = config.azimuth;
    }
    if (config.command == "reproduce") echo["figure"] = config.figure;
    if (config.command == "equivalence") {
        echo["n_qubits"] = config.n_qubits;
        echo["num_random"] = config.num_random;
        echo["seed"] = config.seed;
        echo["tol"] = config.tol;
    }
    return echo;
}

// --------------------------------- run helpers --------------------------------

struct OutputSink {
    std::filesystem::path directory;
    json manifest_outputs = json::array();

    void write(const std::string& name, const std::string& bytes) {
        const auto path = directory / name;
        atomic_write(path, bytes);
        manifest_outputs.push_back(
            {{"path", name}, {"checksum", "fnv1a:" + fnv1a_hex(bytes)}, {"bytes", bytes.size()}});
    }
};

ProtocolOptions protocol_options(const RunConfig& config) {
    ProtocolOptions options;
    options.derivative_mode = config.derivative_mode == "analytic"
                                  ? DerivativeMode::Analytic
                                  : DerivativeMode::FiniteDifference;
    options.fd_step = config.fd_step;
    options.measurements = config.measurements;
    options.workers = config.workers;
    return options;
}

void write_protocol(OutputSink& sink, const RunConfig& config, const std::string& stem,
                    const ProtocolResult& result) {
    if (config.format == "csv") {
        sink.write(stem + ".csv", to_csv(result));
    } else {
        sink.write(stem + ".json", to_json(result).dump(2) + "\n");
    }
}

void run_qfi(const RunConfig& config, OutputSink& sink) {
    const PureState probe = [&] {
        if (config.state == "dicke") return basis_state(config.d, *config.i);
        if (config.state == "coherent") {
            return spin_coherent(config.d, config.polar, config.azimuth);
        }
        return ghz_like(config.d);
    }();
    const QfiReport report = qfi_report(probe, config.measurements);
    sink.write("qfi_report.json", to_json(report).dump(2) + "\n");
}

void run_sweep(const RunConfig& config, OutputSink& sink) {
    const ThetaGrid grid(config.theta_start, config.theta_stop, config.theta_count);
    if (config.command == "sweep-dicke") {
        const auto result = run_dicke_protocol(config.d, *config.i, grid, protocol_options(config));
        write_protocol(sink, config, "dicke_d" + std::to_string(config.d) + "_i" +
                                         std::to_string(*config.i),
                       result);
    } else {
        const auto result = run_ghz_protocol(config.d, grid, protocol_options(config));
        write_protocol(sink, config, "ghz_d" + std::to_string(config.d), result);
    }
}

void run_decoherence(const RunConfig& config, OutputSink& sink) {
    std::vector<double> gamma_t;
    gamma_t.reserve(config.t_list.size());
    for (const double t : config.t_list) gamma_t.push_back(config.gamma * t);
    const DecayCurve curve = power_decay_curve(config.d_list, gamma_t);
    sink.write("decay.csv", to_csv(curve));
}

void run_equivalence(const RunConfig& config, OutputSink& sink) {
    std::mt19937 rng(config.seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    const auto random_direction = [&] {
        Eigen::Vector3d n(gauss(rng), gauss(rng), gauss(rng));
        return Eigen::Vector3d(n.normalized());
    };
    const auto random_state = [&] {
        Vector amps(config.d);
        for (int k = 0; k < config.d; ++k) amps(k) = Complex(gauss(rng), gauss(rng));
        amps /= amps.norm();
        return PureState(std::move(amps));
    };
    std::vector<Eigen::Vector3d> directions = {Eigen::Vector3d::UnitX(), Eigen::Vector3d::UnitY(),
                                               Eigen::Vector3d::UnitZ()};
    for (int k = 0; k < 5; ++k) directions.push_back(random_direction());

    EquivalenceReport merged{config.n_qubits, {}, 0.0, true};
    const auto add_cases = [&](const EquivalenceReport& report) {
        merged.cases.insert(merged.cases.end(), report.cases.begin(), report.cases.end());
        merged.max_residual = std::max(merged.max_residual, report.max_residual);
        merged.pass = merged.pass && report.pass;
    };
    add_cases(qfi_equivalence_check(ghz_like(config.d), directions, config.tol, "ghz"));
    for (int i = 0; i < config.d; ++i) {
        add_cases(qfi_equivalence_check(basis_state(config.d, i), directions, config.tol,
                                        "dicke-" + std::to_string(i)));
    }
    for (int k = 0; k < config.num_random; ++k) {
        add_cases(qfi_equivalence_check(random_state(), directions, config.tol,
                                        "random-" + std::to_string(k)));
    }
    sink.write("equivalence_n" + std::to_string(config.n_qubits) + ".json",
               to_json(merged).dump(2) + "\n");
}

void run_reproduce(const RunConfig& config, OutputSink& sink) {
    const ThetaGrid grid(config.theta_start, config.theta_stop, config.theta_count);
    const ProtocolOptions options = protocol_options(config);
    for (const int d : {4, 8}) {
        if (config.figure == 1) {
            const int level = (d - 1) / 2;
            const auto result = run_dicke_protocol(d, level, grid, options);
            sink.write("fig1_dicke_d" + std::to_string(d) + ".csv", to_csv(result));
        } else {
            const auto result = run_ghz_protocol(d, grid, options);
            sink.write("fig2_ghz_d" + std::to_string(d) + ".csv", to_csv(result));
            const auto shifted = jz_view(result, d);
            std::ostringstream jz;
            jz << "theta,jz_expectation\n";
            for (std::size_t k = 0; k < shifted.size(); ++k) {
                jz << format_number(result.rows[k].theta) << ',' << format_number(shifted[k])
                   << '\n';
            }
            sink.write("fig2_jz_d" + std::to_string(d) + ".csv", jz.str());
        }
    }
}

}  // namespace

RunConfig parse_config(const std::vector<std::string>& argv) {
    RunConfig config;
    std::string config_path;

    CLI::App app{"entanglement-free qudit metrology toolkit"};
    app.set_help_all_flag("--help-all");
    app.add_option("--config", config_path, "JSON config file; flags override its values");

    const auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--output", config.output, "output directory");
        cmd->add_option("--workers", config.workers, "worker threads (0: env/hardware)");
        cmd->add_option("--measurements", config.measurements, "repetitions m in the CRB");
        return cmd;
    };
    const auto add_grid = [&](CLI::App* cmd) {
        cmd->add_option("--theta-start", config.theta_start, "grid start (rad)");
        cmd->add_option("--theta-stop", config.theta_stop, "grid stop (rad, default pi)");
        cmd->add_option("--theta-count", config.theta_count, "grid points");
        cmd->add_option("--derivative-mode", config.derivative_mode,
                        "analytic | finite_difference");
        cmd->add_option("--fd-step", config.fd_step, "central-difference step");
        cmd->add_option("--format", config.format, "csv | json");
    };

    CLI::App* qfi = add_common(app.add_subcommand("qfi", "QFI report for a probe state"));
    qfi->add_option("--d", config.d, "qudit dimension");
    qfi->add_option("--state", config.state, "ghz | dicke | coherent");
    qfi->add_option("--i", config.i, "Dicke level (default (d-1)/2)");
    qfi->add_option("--polar", config.polar, "coherent-state polar angle");
    qfi->add_option("--azimuth", config.azimuth, "coherent-state azimuth");

    CLI::App* dicke = add_common(app.add_subcommand("sweep-dicke", "Dicke-like protocol sweep"));
    dicke->add_option("--d", config.d, "qudit dimension");
    dicke->add_option("--i", config.i, "Dicke level (default (d-1)/2)");
    add_grid(dicke);

    CLI::App* ghz = add_common(app.add_subcommand("sweep-ghz", "GHZ-like protocol sweep"));
    ghz->add_option("--d", config.d, "qudit dimension");
    add_grid(ghz);

    CLI::App* deco = add_common(app.add_subcommand("decoherence", "dephased-GHZ decay curves"));
    deco->add_option("--d-list", config.d_list, "dimensions")->delimiter(',');
    deco->add_option("--gamma", config.gamma, "dephasing rate");
    deco->add_option("--t-list", config.t_list, "interaction times")->delimiter(',');

    CLI::App* equiv =
        add_common(app.add_subcommand("equivalence", "multi-qubit QFI equivalence report"));
    equiv->add_option("--d", config.d, "qudit dimension (N = d-1 qubits)");
    equiv->add_option("--num-random", config.num_random, "random probe states");
    equiv->add_option("--seed", config.seed, "RNG seed");
    equiv->add_option("--tol", config.tol, "pass tolerance");

    CLI::App* repro = add_common(app.add_subcommand("reproduce", "figure-data reproduction"));
    repro->add_option("--figure", config.figure, "1 (Dicke) or 2 (GHZ)");
    add_grid(repro);

    app.require_subcommand(1);

    std::vector<const char*> raw;
    raw.reserve(argv.size());
    for (const auto& arg : argv) raw.push_back(arg.c_str());
    try {
        app.parse(static_cast<int>(raw.size()), raw.data());
    } catch (const CLI::ParseError& e) {
        throw UsageError(e.what());
    }

    CLI::App* active = app.get_subcommands().front();
    config.command = active->get_name();

    if (!config_path.empty()) {
        const json file = load_config_file(config_path);
        if (file.contains("command") && file.at("command").get<std::string>() != config.command) {
            throw UsageError("config file command does not match the subcommand");
        }
        apply_file_value(*active, file, "--d", "d", config.d);
        apply_file_value(*active, file, "--d-list", "d_list", config.d_list);
        if (file.contains("i")) {
            const CLI::Option* opt = active->get_option_no_throw("--i");
            if (opt == nullptr || opt->count() == 0) config.i = file.at("i").get<int>();
        }
        apply_file_value(*active, file, "--theta-start", "theta_start", config.theta_start);
        apply_file_value(*active, file, "--theta-stop", "theta_stop", config.theta_stop);
        apply_file_value(*active, file, "--theta-count", "theta_count", config.theta_count);
        apply_file_value(*active, file, "--derivative-mode", "derivative_mode",
                         config.derivative_mode);
        apply_file_value(*active, file, "--fd-step", "fd_step", config.fd_step);
        apply_file_value(*active, file, "--measurements", "measurements", config.measurements);
        apply_file_value(*active, file, "--gamma", "gamma", config.gamma);
        apply_file_value(*active, file, "--t-list", "t_list", config.t_list);
        apply_file_value(*active, file, "--state", "state", config.state);
        apply_file_value(*active, file, "--polar", "polar", config.polar);
        apply_file_value(*active, file, "--azimuth", "azimuth", config.azimuth);
        apply_file_value(*active, file, "--figure", "figure", config.figure);
        apply_file_value(*active, file, "--num-random", "num_random", config.num_random);
        apply_file_value(*active, file, "--seed", "seed", config.seed);
        apply_file_value(*active, file, "--tol", "tol", config.tol);
        apply_file_value(*active, file, "--format", "format", config.format);
        apply_file_value(*active, file, "--workers", "workers", config.workers);
        if (file.contains("output")) {
            const CLI::Option* opt = active->get_option_no_throw("--output");
            if (opt == nullptr || opt->count() == 0) {
                config.output = file.at("output").get<std::string>();
            }
        }
    }

    validate(config);
    return config;
}

int run(const RunConfig& config) {
    const auto started = std::chrono::steady_clock::now();
    try {
        std::error_code ec;
        std::filesystem::create_directories(config.output, ec);
        if (ec) {
            std::cerr << kToolName << ": cannot create " << config.output << ": " << ec.message()
                      << '\n';
            return 3;
        }
        OutputSink sink{config.output};
        if (config.command == "qfi") {
            run_qfi(config, sink);
        } else if (config.command == "sweep-dicke" || config.command == "sweep-ghz") {
            run_sweep(config, sink);
        } else if (config.command == "decoherence") {
            run_decoherence(config, sink);
        } else if (config.command == "equivalence") {
            run_equivalence(config, sink);
        } else if (config.command == "reproduce") {
            run_reproduce(config, sink);
        } else {
            throw UsageError("unknown command " + config.command);
        }
        const double wall =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
        json manifest{{"tool", kToolName},
                      {"version", kToolVersion},
                      {"config", config_echo(config)},
                      {"outputs", sink.manifest_outputs},
                      {"wall_time_seconds", wall}};
        atomic_write(config.output / "manifest.json", manifest.dump(2) + "\n");
        return 0;
    } catch (const IoError& e) {
        std::cerr << kToolName << ": I/O failure: " << e.what() << '\n';
        return 3;
    } catch (const std::ios_base::failure& e) {
        std::cerr << kToolName << ": I/O failure: " << e.what() << '\n';
        return 3;
    } catch (const std::exception& e) {
        std::cerr << kToolName << ": invariant violation: " << e.what() << '\n';
        return 4;
    }
}

int run_main(int argc, const char* const* argv) {
    std::vector<std::string> args(argv, argv + argc);
    try {
        const RunConfig config = parse_config(args);
        return run(config);
    } catch (const UsageError& e) {
        std::cerr << kToolName << ": " << e.what() << '\n';
        std::cerr << "run '" << kToolName << " --help' for usage\n";
        return 2;
    }
}

}  // namespace quditmet::cli
