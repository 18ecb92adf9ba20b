// sweep.hpp: acceleration sweeps, derivative scans and the flat-file
// formats the command-line tool writes.

#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "unruh/symmetry.hpp"

namespace unruh {

enum class ObservationMode { branch, finite_time };
enum class OutputFormat { csv, json };

/// singlet, triplet0, product00, product11, mixed. Throws Error(config_error)
/// for any other name.
DensityMatrix named_state(std::string_view name);

struct SweepConfig {
    double alpha_min = 1e21;
    double alpha_max = 1e25;
    int points = 200;
    bool log_spacing = true;
    double L = 6e-7;
    double omega0 = 1e14;
    double coupling = 1e-3;
    double epsilon_loc = 0.01;
    std::string init = "singlet";
    std::optional<Matrix4> init_matrix;  // overrides `init` when set
    ObservationMode mode = ObservationMode::branch;
    double tau_obs = 10.0;  // units of 1/Gamma0, finite-time mode only

    /// Throws Error(config_error) on an inconsistent grid, bad physical
    /// parameters or an unphysical initial state.
    void validate() const;
    std::vector<double> grid() const;
    DensityMatrix initial_state() const;
    PhysicalParams physical(double alpha) const;
};

struct SweepRow {
    double alpha = 0.0;
    double f = 0.0;
    Phase phase = Phase::thermal;
    double Mz = 0.0;
    double Mzz = 0.0;
    double Mc = 0.0;
    double concurrence = 0.0;
    double gap = 0.0;
    int degeneracy = 0;
};

/// One row per grid point, in ascending alpha.
///
/// Branch mode takes the steady observables from the closed forms: the
/// localized expression seeded with the initial (M_c, M_zz) below threshold,
/// the thermal one above it. The generator used for gap and degeneracy is
/// the phase's idealized one: cooperativity 1 in the localized phase, the
/// actual f in the thermal phase. Finite-time mode integrates the full state
/// to tau_obs with the actual f and reports the observables reached there.
std::vector<SweepRow> run_sweep(const SweepConfig& cfg);

enum class Observable { Mz, Mzz, Mc };

Observable observable_from_string(std::string_view name);
double value_of(const SweepRow& row, Observable o);

struct DerivativeScan {
    std::vector<double> alpha;       // interior grid points
    std::vector<double> derivative;  // central differences dO/dalpha
    std::size_t peak_index = 0;
    double peak_alpha = 0.0;
    double peak_value = 0.0;  // |dO/dalpha| at the peak

    /// Number of separate runs of points with |dO/dalpha| >= rel * peak.
    int peak_count(double rel = 0.5) const;
};

/// Throws Error(insufficient_data) on fewer than 3 rows or an unsorted table.
DerivativeScan derivative_scan(const std::vector<SweepRow>& rows, Observable o);

struct PeakRefinement {
    DerivativeScan coarse;
    DerivativeScan fine;
    double ratio = 0.0;  // fine.peak_value / coarse.peak_value

    /// A jump discontinuity doubles the peak when the grid density doubles;
    /// a smooth curve leaves it unchanged.
    bool divergent() const { return ratio > 1.5; }
};

/// Runs the sweep at cfg.points and 2 * cfg.points and compares the peaks.
PeakRefinement peak_refinement(const SweepConfig& cfg, Observable o);

inline constexpr const char* kSweepHeader = "alpha,f,phase,Mz,Mzz,Mc,concurrence,gap,degeneracy";

std::string to_csv(const std::vector<SweepRow>& rows);
nlohmann::json to_json(const std::vector<SweepRow>& rows);
std::vector<SweepRow> rows_from_json(const nlohmann::json& j);

/// Columns p,re,im with p = 1..16 in ascending real part.
std::string spectrum_csv(const Spectrum& s);

/// Columns tau,Mz,Mzz,Mc,purity,Q.
std::string trajectory_csv(const DensityTrajectory& traj);

/// Writes the text to `path`; throws Error(io_error) on failure.
void write_file(const std::string& path, const std::string& text);

void emit(const std::vector<SweepRow>& rows, OutputFormat format, const std::string& path);

}  // namespace unruh
