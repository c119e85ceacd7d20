// subwave — collective decay analysis of qubit chains coupled to a 1D waveguide
//
// Subcommands: spectrum, evolve, sweep, verify.  Every command that writes
// files also writes a <out>.manifest.json run manifest for reproducibility.

#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "subwave/angle.hpp"
#include "subwave/dynamics.hpp"
#include "subwave/storage.hpp"
#include "subwave/sweep.hpp"
#include "subwave/verify.hpp"

namespace {

constexpr const char* kToolVersion = "1.0.0";

using OrderedJson = nlohmann::ordered_json;

std::string fmt_double(double value) {
    char buffer[40];
    std::snprintf(buffer, sizeof(buffer), "%.17g", value);
    return buffer;
}

std::string iso8601_now() {
    const std::time_t now = std::time(nullptr);
    std::tm utc{};
    gmtime_r(&now, &utc);
    char buffer[32];
    std::strftime(buffer, sizeof(buffer), "%Y-%m-%dT%H:%M:%SZ", &utc);
    return buffer;
}

OrderedJson complex_json(const subwave::Complex& z) {
    return OrderedJson{{"re", z.real()}, {"im", z.imag()}};
}

OrderedJson config_json(const subwave::ChainConfig& config) {
    return OrderedJson{{"n", config.n}, {"theta", config.theta}, {"gamma0", config.gamma0}};
}

struct CommandContext {
    std::string command;
    subwave::ChainConfig config;
    std::map<std::string, std::string> options;
    std::vector<std::string> output_paths;
    bool quiet = false;
};

void write_manifest(const CommandContext& ctx) {
    if (ctx.output_paths.empty()) return;
    OrderedJson manifest;
    manifest["command"] = ctx.command;
    manifest["config"] = config_json(ctx.config);
    manifest["options"] = OrderedJson(ctx.options);
    manifest["output_paths"] = ctx.output_paths;
    manifest["tool_version"] = kToolVersion;
    manifest["timestamp"] = iso8601_now();

    const std::string path = ctx.output_paths.front() + ".manifest.json";
    std::ofstream out(path);
    out << manifest.dump(2) << '\n';
    if (!ctx.quiet) std::cerr << "wrote " << path << '\n';
}

void emit(const CommandContext& ctx, const std::string& out_path, const std::string& content) {
    if (out_path.empty()) {
        std::cout << content;
        return;
    }
    std::ofstream out(out_path);
    if (!out) {
        throw std::runtime_error("cannot open output file: " + out_path);
    }
    out << content;
    if (!ctx.quiet) std::cerr << "wrote " << out_path << '\n';
}

// ---------------------------------------------------------------- spectrum

std::string spectrum_json(const subwave::SpectralDecomposition& decomp) {
    OrderedJson doc;
    doc["config"] = config_json(decomp.config);
    doc["modes"] = OrderedJson::array();
    for (const subwave::DecayMode& mode : decomp.modes) {
        OrderedJson m;
        m["eigenvalue"] = complex_json(mode.eigenvalue);
        m["decay_rate"] = mode.decay_rate;
        m["frequency_shift"] = mode.frequency_shift;
        m["eigenvector"] = OrderedJson::array();
        for (Eigen::Index i = 0; i < mode.eigenvector.size(); ++i) {
            m["eigenvector"].push_back(complex_json(mode.eigenvector(i)));
        }
        m["symmetry"] = subwave::to_string(mode.symmetry);
        doc["modes"].push_back(std::move(m));
    }
    doc["eigenvector_condition"] = decomp.eigenvector_condition;
    return doc.dump(2) + "\n";
}

std::string spectrum_csv(const subwave::SpectralDecomposition& decomp) {
    std::string csv = "mode,eigenvalue_re,eigenvalue_im,decay_rate,frequency_shift,symmetry";
    for (int i = 1; i <= decomp.config.n; ++i) {
        csv += ",ev" + std::to_string(i) + "_re,ev" + std::to_string(i) + "_im";
    }
    csv += '\n';
    for (std::size_t k = 0; k < decomp.modes.size(); ++k) {
        const subwave::DecayMode& mode = decomp.modes[k];
        csv += std::to_string(k) + ',' + fmt_double(mode.eigenvalue.real()) + ',' +
               fmt_double(mode.eigenvalue.imag()) + ',' + fmt_double(mode.decay_rate) + ',' +
               fmt_double(mode.frequency_shift) + ',' + subwave::to_string(mode.symmetry);
        for (Eigen::Index i = 0; i < mode.eigenvector.size(); ++i) {
            csv += ',' + fmt_double(mode.eigenvector(i).real()) + ',' +
                   fmt_double(mode.eigenvector(i).imag());
        }
        csv += '\n';
    }
    return csv;
}

// ------------------------------------------------------------------ evolve

subwave::QubitState parse_state(const std::string& text, const subwave::ChainConfig& config) {
    using subwave::NamedState;
    if (text == "dicke") return subwave::named_state(NamedState::Dicke, config);
    if (text == "alternating") return subwave::named_state(NamedState::Alternating, config);
    if (text == "sym-sub") return subwave::named_state(NamedState::SymSubradiant, config);
    if (text == "antisym-sub")
        return subwave::named_state(NamedState::AntisymSubradiant, config);
    if (text.rfind("single:", 0) == 0) {
        const int qubit = std::stoi(text.substr(7));
        return subwave::named_state(NamedState::Single, config, qubit);
    }
    if (text.rfind("custom:", 0) == 0) {
        std::vector<subwave::Complex> amplitudes;
        std::stringstream body(text.substr(7));
        std::string pair;
        while (std::getline(body, pair, ',')) {
            const auto colon = pair.find(':');
            if (colon == std::string::npos) {
                throw std::invalid_argument("custom state entries must be re:im pairs");
            }
            amplitudes.emplace_back(std::stod(pair.substr(0, colon)),
                                    std::stod(pair.substr(colon + 1)));
        }
        if (static_cast<int>(amplitudes.size()) != config.n) {
            throw std::invalid_argument("custom state must have exactly n amplitudes");
        }
        Eigen::VectorXcd state(config.n);
        for (int i = 0; i < config.n; ++i) state(i) = amplitudes[static_cast<std::size_t>(i)];
        const double norm = state.norm();
        if (norm <= 0.0) {
            throw std::invalid_argument("custom state must be non-zero");
        }
        if (std::abs(norm - 1.0) > 1e-9) {
            std::cerr << "warning: custom state norm " << norm << " != 1, normalizing\n";
            state /= norm;
        }
        return state;
    }
    throw std::invalid_argument("unknown state '" + text + "'");
}

std::string trace_csv(const subwave::EvolutionTrace& trace) {
    const Eigen::Index n = trace.per_qubit_probability.cols();
    std::string csv = "t,p_total";
    for (Eigen::Index j = 1; j <= n; ++j) csv += ",p_" + std::to_string(j);
    csv += '\n';
    for (Eigen::Index row = 0; row < trace.times.size(); ++row) {
        csv += fmt_double(trace.times(row)) + ',' + fmt_double(trace.total_probability(row));
        for (Eigen::Index j = 0; j < n; ++j) {
            csv += ',' + fmt_double(trace.per_qubit_probability(row, j));
        }
        csv += '\n';
    }
    return csv;
}

// ------------------------------------------------------------------- sweep

std::string sweep_csv(const std::vector<subwave::SweepRow>& rows) {
    std::string csv = "theta,min_decay_rate,max_decay_rate,det_abs,protected_max_rate\n";
    for (const subwave::SweepRow& row : rows) {
        csv += fmt_double(row.theta) + ',' + fmt_double(row.min_decay_rate) + ',' +
               fmt_double(row.max_decay_rate) + ',' + fmt_double(row.det_abs) + ',' +
               fmt_double(row.protected_max_rate) + '\n';
    }
    return csv;
}

// ------------------------------------------------------------------ verify

std::string verify_json(const subwave::VerifyOptions& opts,
                        const std::vector<subwave::CheckResult>& results) {
    OrderedJson doc;
    doc["n_max"] = opts.n_max;
    doc["trials"] = opts.trials;
    doc["seed"] = opts.seed;
    doc["checks"] = OrderedJson::array();
    for (const subwave::CheckResult& r : results) {
        // Timing is omitted so seeded reports stay byte-identical.
        doc["checks"].push_back(OrderedJson{{"name", r.name},
                                            {"passed", r.passed},
                                            {"worst_residual", r.worst_residual},
                                            {"tolerance", r.tolerance},
                                            {"detail", r.detail}});
    }
    doc["all_passed"] = subwave::all_passed(results);
    return doc.dump(2) + "\n";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"collective decay modes of qubit chains coupled to a 1D waveguide"};
    app.require_subcommand(1);
    app.fallthrough();

    bool quiet = false;
    std::string out_path;
    std::string format = "json";
    app.add_flag("--quiet", quiet, "suppress informational messages");
    app.add_option("--out", out_path, "output file (stdout when omitted)");
    app.add_option("--format", format, "spectrum output format")
        ->check(CLI::IsMember({"json", "csv"}));

    int n = 0;
    std::string theta_text;
    double gamma0 = 1.0;

    auto* spectrum = app.add_subcommand("spectrum", "decay modes of the coupling matrix");
    spectrum->add_option("--n", n, "qubit count")->required();
    spectrum->add_option("--theta", theta_text, "phase, radians or '<x>pi'")->required();
    spectrum->add_option("--gamma0", gamma0, "single-emitter decay rate")->capture_default_str();

    std::string state_spec = "dicke";
    double tmax = 10.0;
    int samples = 1000;
    std::string method = "both";
    auto* evolve = app.add_subcommand("evolve", "time evolution of a prepared state");
    evolve->add_option("--n", n, "qubit count")->required();
    evolve->add_option("--theta", theta_text, "phase, radians or '<x>pi'")->required();
    evolve->add_option("--gamma0", gamma0, "single-emitter decay rate")->capture_default_str();
    evolve
        ->add_option("--state", state_spec,
                     "dicke|alternating|sym-sub|antisym-sub|single:<j>|custom:<re:im,...>")
        ->required();
    evolve->add_option("--tmax", tmax, "time window in units of 1/gamma0")->capture_default_str();
    evolve->add_option("--samples", samples, "number of sample times")->capture_default_str()
        ->check(CLI::Range(2, 10'000'000));
    evolve->add_option("--method", method, "integration route; 'both' cross-checks")->capture_default_str()
        ->check(CLI::IsMember({"eigen", "ode", "both"}));

    std::string theta_min_text, theta_max_text;
    int steps = 1;
    int parallel = -1;
    auto* sweep = app.add_subcommand("sweep", "spectral summaries over a theta grid");
    sweep->add_option("--n", n, "qubit count")->required();
    sweep->add_option("--theta-min", theta_min_text, "grid start")->required();
    sweep->add_option("--theta-max", theta_max_text, "grid end")->required();
    sweep->add_option("--steps", steps, "number of grid points")->capture_default_str()
        ->check(CLI::PositiveNumber);
    sweep->add_option("--gamma0", gamma0, "single-emitter decay rate")->capture_default_str();
    sweep->add_option("--parallel", parallel,
                      "evaluate grid points on this many threads (0 = all cores)");

    int n_max = 10;
    int trials = 100;
    std::uint64_t seed = 12345;
    bool seed_given = false;
    auto* verify = app.add_subcommand("verify", "run the full verification suite");
    verify->add_option("--n-max", n_max, "largest chain length for randomized checks")->capture_default_str();
    verify->add_option("--trials", trials, "random sample budget")->capture_default_str()
        ->check(CLI::PositiveNumber);
    verify->add_option("--seed", seed, "RNG seed (fallback: SUBWAVE_SEED, then 12345)")
        ->each([&seed_given](const std::string&) { seed_given = true; });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (spectrum->parsed()) {
            const subwave::ChainConfig config{n, subwave::parse_angle(theta_text).radians,
                                              gamma0};
            CommandContext ctx{"spectrum", config, {}, {}, quiet};
            ctx.options = {{"theta", theta_text}, {"format", format}};
            try {
                const auto decomp =
                    subwave::decompose(subwave::build_coupling_matrix(config), config);
                emit(ctx, out_path,
                     format == "json" ? spectrum_json(decomp) : spectrum_csv(decomp));
            } catch (const subwave::NotDiagonalizableError& e) {
                std::cerr << "error: " << e.what()
                          << "\nhint: `evolve --method ode` handles this regime\n";
                return 3;
            }
            if (!out_path.empty()) {
                ctx.output_paths.push_back(out_path);
                write_manifest(ctx);
            }
            return 0;
        }

        if (evolve->parsed()) {
            const subwave::ChainConfig config{n, subwave::parse_angle(theta_text).radians,
                                              gamma0};
            CommandContext ctx{"evolve", config, {}, {}, quiet};
            ctx.options = {{"theta", theta_text},
                           {"state", state_spec},
                           {"tmax", fmt_double(tmax)},
                           {"samples", std::to_string(samples)},
                           {"method", method}};

            const subwave::QubitState state = parse_state(state_spec, config);
            const Eigen::VectorXd times = Eigen::VectorXd::LinSpaced(samples, 0.0, tmax);
            const subwave::CouplingMatrix j = subwave::build_coupling_matrix(config);

            subwave::EvolutionTrace trace;
            try {
                if (method == "eigen") {
                    trace = subwave::evolve_eigen(
                        state, subwave::decompose(j, config), times);
                } else if (method == "ode") {
                    trace = subwave::evolve_ode(state, j, config, times);
                } else {
                    const auto eigen_trace = subwave::evolve_eigen(
                        state, subwave::decompose(j, config), times);
                    trace = subwave::evolve_ode(state, j, config, times);
                    const double deviation = std::max(
                        (eigen_trace.per_qubit_probability - trace.per_qubit_probability)
                            .cwiseAbs()
                            .maxCoeff(),
                        (eigen_trace.total_probability - trace.total_probability)
                            .cwiseAbs()
                            .maxCoeff());
                    std::cerr << "max method deviation: " << fmt_double(deviation) << '\n';
                    if (deviation > 1e-5) {
                        std::cerr << "error: eigen and ode methods disagree\n";
                        return 4;
                    }
                }
            } catch (const subwave::NotDiagonalizableError& e) {
                std::cerr << "error: " << e.what() << "\nhint: rerun with --method ode\n";
                return 3;
            } catch (const subwave::IllConditionedError& e) {
                std::cerr << "error: " << e.what() << "\nhint: rerun with --method ode\n";
                return 3;
            }

            emit(ctx, out_path, trace_csv(trace));
            if (!out_path.empty()) {
                ctx.output_paths.push_back(out_path);
                write_manifest(ctx);
            }
            return 0;
        }

        if (sweep->parsed()) {
            const subwave::Angle lo = subwave::parse_angle(theta_min_text);
            const subwave::Angle hi = subwave::parse_angle(theta_max_text);
            subwave::SweepRequest request;
            request.n = n;
            request.steps = steps;
            request.gamma0 = gamma0;
            request.grid_in_pi_units = lo.pi_suffix && hi.pi_suffix;
            request.theta_min = request.grid_in_pi_units ? lo.pi_multiplier : lo.radians;
            request.theta_max = request.grid_in_pi_units ? hi.pi_multiplier : hi.radians;

            const auto rows = parallel < 0 ? subwave::run_sweep_serial(request)
                                           : subwave::run_sweep(request, parallel);

            CommandContext ctx{"sweep",
                               subwave::ChainConfig{n, lo.radians, gamma0},
                               {{"theta_min", theta_min_text},
                                {"theta_max", theta_max_text},
                                {"steps", std::to_string(steps)},
                                {"parallel", std::to_string(parallel)}},
                               {},
                               quiet};
            emit(ctx, out_path, sweep_csv(rows));
            if (!out_path.empty()) {
                ctx.output_paths.push_back(out_path);
                write_manifest(ctx);
            }
            return 0;
        }

        if (verify->parsed()) {
            if (!seed_given) {
                if (const char* env = std::getenv("SUBWAVE_SEED")) {
                    seed = std::stoull(env);
                }
            }
            const subwave::VerifyOptions opts{n_max, trials, seed};
            const auto results = subwave::run_verification(opts);
            for (const subwave::CheckResult& r : results) {
                if (!quiet) {
                    std::fprintf(stderr, "[%s] %-26s %s (%.2fs)\n",
                                 r.passed ? "PASS" : "FAIL", r.name.c_str(),
                                 r.detail.c_str(), r.seconds);
                }
            }
            CommandContext ctx{"verify",
                               subwave::ChainConfig{n_max, 0.0, 1.0},
                               {{"n_max", std::to_string(n_max)},
                                {"trials", std::to_string(trials)},
                                {"seed", std::to_string(seed)}},
                               {},
                               quiet};
            emit(ctx, out_path, verify_json(opts, results));
            if (!out_path.empty()) {
                ctx.output_paths.push_back(out_path);
                write_manifest(ctx);
            }
            return subwave::all_passed(results) ? 0 : 5;
        }
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
