// unruh-dpt: command-line driver for sweeps, spectra, trajectories and
// symmetry checks of two accelerated two-level detectors.
//
// Exit codes: 0 success, 1 config error, 2 I/O error, 3 numerical failure.

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "unruh/error.hpp"
#include "unruh/serialization.hpp"
#include "unruh/sweep.hpp"

namespace {

using namespace unruh;
using nlohmann::json;

enum Exit { kOk = 0, kConfig = 1, kIo = 2, kNumerical = 3 };

int exit_code_for(ErrorCode code) {
    switch (code) {
        case ErrorCode::io_error: return kIo;
        case ErrorCode::config_error:
        case ErrorCode::invalid_state:
        case ErrorCode::unphysical_state:
        case ErrorCode::domain_error:
        case ErrorCode::no_localized_phase:
        case ErrorCode::complete_positivity_violation:
        case ErrorCode::insufficient_data: return kConfig;
        default: return kNumerical;
    }
}

struct Common {
    double L = 6e-7;
    double omega0 = 1e14;
    double coupling = 1e-3;
    double epsilon_loc = 0.01;
    std::string out;
};

struct CoefficientSource {
    std::optional<double> alpha;
    std::optional<double> A11;
    double B11 = 1.0;
    double f = 1.0;

    DissipationCoefficients resolve(const Common& c) const {
        if (A11) return DissipationCoefficients::with_cooperativity(*A11, B11, f);
        if (!alpha) throw Error(ErrorCode::config_error, "give either --alpha or --A11/--B11/--f");
        return dissipation_coefficients({*alpha, c.L, c.omega0, c.coupling}, RateUnits::gamma0);
    }
};

void add_common(CLI::App* app, Common& c, bool with_physics = true) {
    if (with_physics) {
        app->add_option("--L", c.L, "Proper separation of the atoms (m)")->capture_default_str();
        app->add_option("--omega0", c.omega0, "Zeeman angular frequency (rad/s)")->capture_default_str();
        app->add_option("--coupling", c.coupling, "Dimensionless coupling constant")->capture_default_str();
        app->add_option("--epsilon-loc", c.epsilon_loc, "Localized-phase threshold on 1 - f")
            ->capture_default_str();
    }
    app->add_option("--out", c.out, "Output path (default: stdout)");
}

void add_coefficients(CLI::App* app, CoefficientSource& s) {
    app->add_option("--alpha", s.alpha, "Proper acceleration (m/s^2); derives the coefficients");
    app->add_option("--A11", s.A11, "Single-atom even coefficient (overrides --alpha)");
    app->add_option("--B11", s.B11, "Single-atom odd coefficient")->capture_default_str();
    app->add_option("--f", s.f, "Cooperativity f used with --A11/--B11")->capture_default_str();
}

void write_output(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        std::cout.flush();
        if (!std::cout) throw Error(ErrorCode::io_error, "write to stdout failed");
        return;
    }
    write_file(path, text);
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::io_error, "cannot open '" + path + "'");
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

DensityMatrix load_initial(const std::string& spec) {
    for (const char* name : {"singlet", "triplet0", "product00", "product11", "mixed"})
        if (spec == name) return named_state(spec);
    // A bare word that is not a file is a misspelt state name.
    if (spec.find_first_of("/.") == std::string::npos && !std::filesystem::exists(spec)) return named_state(spec);
    json j;
    try {
        j = json::parse(read_file(spec));
    } catch (const json::parse_error& e) {
        throw Error(ErrorCode::config_error, "'" + spec + "' is not valid JSON: " + e.what());
    }
    try {
        return density_matrix_from_json(j);
    } catch (const Error& e) {
        throw Error(ErrorCode::config_error, std::string("initial state rejected: ") + e.what());
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Dissipative phase transition of two uniformly accelerated detectors"};
    app.require_subcommand(1);

    Common common;

    // sweep
    SweepConfig sweep_cfg;
    std::string sweep_init = "singlet";
    std::string sweep_mode = "branch";
    std::string sweep_format = "csv";
    auto* sweep = app.add_subcommand("sweep", "Steady observables over an acceleration grid");
    add_common(sweep, common);
    sweep->add_option("--alpha-min", sweep_cfg.alpha_min, "Smallest acceleration (m/s^2)")->capture_default_str();
    sweep->add_option("--alpha-max", sweep_cfg.alpha_max, "Largest acceleration (m/s^2)")->capture_default_str();
    sweep->add_option("--points", sweep_cfg.points, "Grid points")->capture_default_str();
    sweep->add_flag("--log,!--linear", sweep_cfg.log_spacing, "Log-spaced grid (default)");
    sweep->add_option("--init", sweep_init, "Named initial state or JSON density-matrix file")
        ->capture_default_str();
    sweep->add_option("--mode", sweep_mode, "branch | finite")
        ->check(CLI::IsMember({"branch", "finite"}))
        ->capture_default_str();
    sweep->add_option("--tau-obs", sweep_cfg.tau_obs, "Observation time in finite mode (1/Gamma0)")
        ->capture_default_str();
    sweep->add_option("--format", sweep_format, "csv | json")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();

    // spectrum
    CoefficientSource spec_src;
    spec_src.A11 = std::nullopt;
    auto* spec = app.add_subcommand("spectrum", "Eigenvalues of the Liouvillian as CSV (p,re,im)");
    add_common(spec, common);
    add_coefficients(spec, spec_src);

    // evolve
    CoefficientSource evo_src;
    std::string evo_init = "singlet";
    EvolveOptions evo_opts;
    auto* evo = app.add_subcommand("evolve", "Integrate the master equation (tau,Mz,Mzz,Mc,purity,Q)");
    add_common(evo, common);
    add_coefficients(evo, evo_src);
    evo->add_option("--init", evo_init, "Named initial state or JSON density-matrix file")->capture_default_str();
    evo->add_option("--tau-max", evo_opts.tau_max, "Final time (1/Gamma0)")->capture_default_str();
    evo->add_option("--dt", evo_opts.dt, "Step (0 = stability policy)")->capture_default_str();
    evo->add_option("--sample-every", evo_opts.sample_every, "Sampling interval (0 = every step)")
        ->capture_default_str();

    // critical
    auto* crit = app.add_subcommand("critical", "Critical acceleration for the given L, omega0");
    add_common(crit, common);

    // classify
    double classify_alpha = 0.0;
    auto* cls = app.add_subcommand("classify", "Phase at one acceleration");
    add_common(cls, common);
    cls->add_option("--alpha", classify_alpha, "Proper acceleration (m/s^2)")->required();

    // symmetry
    CoefficientSource sym_src;
    std::vector<double> kappas{0.1, 1.0, 3.14159265358979323846, 10.0};
    auto* sym = app.add_subcommand("symmetry", "Weak-symmetry residuals as JSON");
    add_common(sym, common);
    add_coefficients(sym, sym_src);
    sym->add_option("--kappa", kappas, "Conjugation parameters")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kOk : kConfig;
    }

    try {
        if (*sweep) {
            sweep_cfg.L = common.L;
            sweep_cfg.omega0 = common.omega0;
            sweep_cfg.coupling = common.coupling;
            sweep_cfg.epsilon_loc = common.epsilon_loc;
            sweep_cfg.mode = sweep_mode == "finite" ? ObservationMode::finite_time : ObservationMode::branch;
            const DensityMatrix rho0 = load_initial(sweep_init);
            sweep_cfg.init_matrix = rho0.matrix();
            const auto rows = run_sweep(sweep_cfg);
            write_output(common.out, sweep_format == "csv" ? to_csv(rows) : to_json(rows).dump(2) + "\n");
        } else if (*spec) {
            const Liouvillian l = build_liouvillian(spec_src.resolve(common));
            write_output(common.out, spectrum_csv(spectrum(l)));
        } else if (*evo) {
            const Liouvillian l = build_liouvillian(evo_src.resolve(common));
            write_output(common.out, trajectory_csv(evolve(l, load_initial(evo_init), evo_opts)));
        } else if (*crit) {
            const PhysicalParams p{0.0, common.L, common.omega0, common.coupling};
            const double alpha_c = critical_acceleration(p, common.epsilon_loc);
            const json j{{"alpha_c", alpha_c},
                         {"epsilon_loc", common.epsilon_loc},
                         {"L", common.L},
                         {"omega0", common.omega0}};
            write_output(common.out, j.dump(2) + "\n");
        } else if (*cls) {
            const PhysicalParams p{classify_alpha, common.L, common.omega0, common.coupling};
            write_output(common.out, to_json(classify_phase(p, common.epsilon_loc)).dump(2) + "\n");
        } else if (*sym) {
            const Liouvillian l = build_liouvillian(sym_src.resolve(common));
            json j = to_json(symmetry_residual(l, kappas));
            j["kappas"] = kappas;
            const CalibrationReport cal = project_consistency(l);
            j["calibration"] = {{"kappa_cal", cal.kappa_cal}, {"sign_b", cal.sign_b}, {"residual", cal.residual}};
            j["dark_states"] = dark_states(l).states.size();
            write_output(common.out, j.dump(2) + "\n");
        }
    } catch (const Error& e) {
        std::cerr << "unruh-dpt: " << e.what() << "\n";
        return exit_code_for(e.code());
    } catch (const std::exception& e) {
        std::cerr << "unruh-dpt: " << e.what() << "\n";
        return kNumerical;
    }
    return kOk;
}
