#include "unruh/sweep.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <fmt/format.h>

#include "unruh/error.hpp"

namespace unruh {

using nlohmann::json;

DensityMatrix named_state(std::string_view name) {
    if (name == "singlet") return DensityMatrix::singlet();
    if (name == "triplet0") return DensityMatrix::triplet0();
    if (name == "product00") return DensityMatrix::product00();
    if (name == "product11") return DensityMatrix::product11();
    if (name == "mixed") return DensityMatrix::maximally_mixed();
    throw Error(ErrorCode::config_error,
                "unknown initial state '" + std::string(name) +
                    "' (expected singlet, triplet0, product00, product11, mixed or a JSON file)");
}

void SweepConfig::validate() const {
    std::ostringstream os;
    if (!(alpha_min > 0.0) || !(alpha_min < alpha_max))
        os << "need 0 < alpha_min < alpha_max (got " << alpha_min << ", " << alpha_max << "); ";
    if (points < 2) os << "points must be >= 2 (got " << points << "); ";
    if (!(epsilon_loc > 0.0 && epsilon_loc < 1.0)) os << "epsilon_loc must lie in (0, 1); ";
    if (mode == ObservationMode::finite_time && !(tau_obs > 0.0)) os << "tau_obs must be > 0; ";
    if (!os.str().empty()) throw Error(ErrorCode::config_error, os.str());
    physical(alpha_min).validate();
    (void)initial_state();
}

std::vector<double> SweepConfig::grid() const {
    std::vector<double> g(static_cast<std::size_t>(points));
    for (int i = 0; i < points; ++i) {
        const double t = static_cast<double>(i) / (points - 1);
        g[i] = log_spacing ? std::exp(std::log(alpha_min) + t * (std::log(alpha_max) - std::log(alpha_min)))
                           : alpha_min + t * (alpha_max - alpha_min);
    }
    g.front() = alpha_min;
    g.back() = alpha_max;
    return g;
}

DensityMatrix SweepConfig::initial_state() const {
    try {
        return init_matrix ? DensityMatrix::from_matrix(*init_matrix) : named_state(init);
    } catch (const Error& e) {
        if (e.code() == ErrorCode::config_error) throw;
        throw Error(ErrorCode::config_error, std::string("initial state rejected: ") + e.what());
    }
}

PhysicalParams SweepConfig::physical(double alpha) const { return {alpha, L, omega0, coupling}; }

namespace {

SweepRow sweep_point(const SweepConfig& cfg, double alpha, const DensityMatrix& rho0,
                     const Observables& init_obs) {
    const PhysicalParams p = cfg.physical(alpha);
    const DimensionlessParams d = to_dimensionless(p);
    const PhaseClassification cls = classify_phase(p, cfg.epsilon_loc);

    SweepRow row;
    row.alpha = alpha;
    row.f = cls.f;
    row.phase = cls.phase;

    const double A11 = thermal_factor(d.a_tilde);
    const bool branch = cfg.mode == ObservationMode::branch;
    const double f_gen = branch && cls.phase == Phase::localized ? 1.0 : cls.f;
    const Liouvillian l =
        build_liouvillian(DissipationCoefficients::with_cooperativity(A11, 1.0, f_gen));

    if (branch) {
        const BlochState b = steady_closed_form(cls.phase, d.M0, init_obs.Mc(), init_obs.Mzz);
        row.Mz = b.Mz;
        row.Mzz = b.Mzz;
        row.Mc = b.Mc;
        row.concurrence = concurrence_wootters(reconstruct_symmetric(b));
    } else {
        EvolveOptions opts;
        opts.tau_max = cfg.tau_obs;
        opts.sample_every = cfg.tau_obs;
        const DensityTrajectory traj = evolve(l, rho0, opts);
        const DensityMatrix& last = traj.states.back();
        const BlochState b = observables(last).bloch();
        row.Mz = b.Mz;
        row.Mzz = b.Mzz;
        row.Mc = b.Mc;
        row.concurrence = concurrence_wootters(last);
    }
    row.gap = spectrum(l).gap;
    row.degeneracy = steady_states(l).degeneracy;
    return row;
}

}  // namespace

std::vector<SweepRow> run_sweep(const SweepConfig& cfg) {
    cfg.validate();
    const DensityMatrix rho0 = cfg.initial_state();
    const Observables init_obs = observables(rho0);
    std::vector<SweepRow> rows;
    for (double alpha : cfg.grid()) {
        try {
            rows.push_back(sweep_point(cfg, alpha, rho0, init_obs));
        } catch (const Error& e) {
            if (e.code() == ErrorCode::config_error) throw;
            std::ostringstream os;
            os << "at alpha = " << alpha << ": " << e.what();
            throw Error(ErrorCode::numerical_failure, os.str());
        }
    }
    return rows;
}

Observable observable_from_string(std::string_view name) {
    if (name == "Mz") return Observable::Mz;
    if (name == "Mzz") return Observable::Mzz;
    if (name == "Mc") return Observable::Mc;
    throw Error(ErrorCode::config_error, "unknown observable '" + std::string(name) + "'");
}

double value_of(const SweepRow& row, Observable o) {
    switch (o) {
        case Observable::Mz: return row.Mz;
        case Observable::Mzz: return row.Mzz;
        case Observable::Mc: return row.Mc;
    }
    return 0.0;
}

int DerivativeScan::peak_count(double rel) const {
    int runs = 0;
    bool inside = false;
    for (double d : derivative) {
        const bool above = std::abs(d) >= rel * peak_value;
        if (above && !inside) ++runs;
        inside = above;
    }
    return runs;
}

DerivativeScan derivative_scan(const std::vector<SweepRow>& rows, Observable o) {
    if (rows.size() < 3) throw Error(ErrorCode::insufficient_data, "derivative scan needs >= 3 rows");
    for (std::size_t i = 1; i < rows.size(); ++i)
        if (!(rows[i].alpha > rows[i - 1].alpha))
            throw Error(ErrorCode::insufficient_data, "rows must be sorted by strictly increasing alpha");

    DerivativeScan s;
    for (std::size_t i = 1; i + 1 < rows.size(); ++i) {
        s.alpha.push_back(rows[i].alpha);
        s.derivative.push_back((value_of(rows[i + 1], o) - value_of(rows[i - 1], o)) /
                               (rows[i + 1].alpha - rows[i - 1].alpha));
        if (std::abs(s.derivative.back()) > s.peak_value) {
            s.peak_value = std::abs(s.derivative.back());
            s.peak_index = s.alpha.size() - 1;
        }
    }
    s.peak_alpha = s.alpha[s.peak_index];
    return s;
}

PeakRefinement peak_refinement(const SweepConfig& cfg, Observable o) {
    SweepConfig fine = cfg;
    fine.points = 2 * cfg.points;
    PeakRefinement r;
    r.coarse = derivative_scan(run_sweep(cfg), o);
    r.fine = derivative_scan(run_sweep(fine), o);
    r.ratio = r.coarse.peak_value > 0.0 ? r.fine.peak_value / r.coarse.peak_value : 1.0;
    return r;
}

namespace {

std::string num(double x) { return fmt::format("{:.12g}", x); }

}  // namespace

std::string to_csv(const std::vector<SweepRow>& rows) {
    std::string out = std::string(kSweepHeader) + "\n";
    for (const SweepRow& r : rows) {
        out += fmt::format("{},{},{},{},{},{},{},{},{}\n", num(r.alpha), num(r.f), to_string(r.phase),
                           num(r.Mz), num(r.Mzz), num(r.Mc), num(r.concurrence), num(r.gap),
                           r.degeneracy);
    }
    return out;
}

json to_json(const std::vector<SweepRow>& rows) {
    json arr = json::array();
    for (const SweepRow& r : rows) {
        arr.push_back({{"alpha", r.alpha},
                       {"f", r.f},
                       {"phase", to_string(r.phase)},
                       {"Mz", r.Mz},
                       {"Mzz", r.Mzz},
                       {"Mc", r.Mc},
                       {"concurrence", r.concurrence},
                       {"gap", r.gap},
                       {"degeneracy", r.degeneracy}});
    }
    return arr;
}

std::vector<SweepRow> rows_from_json(const json& j) {
    std::vector<SweepRow> rows;
    try {
        for (const json& e : j) {
            SweepRow r;
            r.alpha = e.at("alpha").get<double>();
            r.f = e.at("f").get<double>();
            const std::string phase = e.at("phase").get<std::string>();
            if (phase != "localized" && phase != "thermal")
                throw Error(ErrorCode::config_error, "unknown phase label '" + phase + "'");
            r.phase = phase == "localized" ? Phase::localized : Phase::thermal;
            r.Mz = e.at("Mz").get<double>();
            r.Mzz = e.at("Mzz").get<double>();
            r.Mc = e.at("Mc").get<double>();
            r.concurrence = e.at("concurrence").get<double>();
            r.gap = e.at("gap").get<double>();
            r.degeneracy = e.at("degeneracy").get<int>();
            rows.push_back(r);
        }
    } catch (const json::exception& e) {
        throw Error(ErrorCode::config_error, std::string("malformed sweep table: ") + e.what());
    }
    return rows;
}

std::string spectrum_csv(const Spectrum& s) {
    std::string out = "p,re,im\n";
    for (std::size_t i = 0; i < s.eigenvalues.size(); ++i)
        out += fmt::format("{},{},{}\n", i + 1, num(s.eigenvalues[i].real()), num(s.eigenvalues[i].imag()));
    return out;
}

std::string trajectory_csv(const DensityTrajectory& traj) {
    std::string out = "tau,Mz,Mzz,Mc,purity,Q\n";
    for (std::size_t i = 0; i < traj.states.size(); ++i) {
        const Observables o = observables(traj.states[i]);
        out += fmt::format("{},{},{},{},{},{}\n", num(traj.times[i]), num(o.Mz), num(o.Mzz), num(o.Mc()),
                           num(purity(traj.states[i])), num(o.Mc() + o.Mzz));
    }
    return out;
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::io_error, "cannot open '" + path + "' for writing");
    out << text;
    out.flush();
    if (!out) throw Error(ErrorCode::io_error, "write to '" + path + "' failed");
}

void emit(const std::vector<SweepRow>& rows, OutputFormat format, const std::string& path) {
    write_file(path, format == OutputFormat::csv ? to_csv(rows) : to_json(rows).dump(2) + "\n");
}

}  // namespace unruh
