#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "unruh/error.hpp"
#include "unruh/serialization.hpp"
#include "unruh/sweep.hpp"

namespace py = pybind11;
using namespace unruh;

namespace {

DensityMatrix as_state(const Matrix4& m) { return DensityMatrix::from_matrix(m); }

py::dict bloch_dict(const BlochState& b) {
    py::dict d;
    d["Mz"] = b.Mz;
    d["Mzz"] = b.Mzz;
    d["Mc"] = b.Mc;
    return d;
}

py::dict row_dict(const SweepRow& r) {
    py::dict d;
    d["alpha"] = r.alpha;
    d["f"] = r.f;
    d["phase"] = to_string(r.phase);
    d["Mz"] = r.Mz;
    d["Mzz"] = r.Mzz;
    d["Mc"] = r.Mc;
    d["concurrence"] = r.concurrence;
    d["gap"] = r.gap;
    d["degeneracy"] = r.degeneracy;
    return d;
}

DissipationCoefficients coeffs(double A11, double B11, double f) {
    return DissipationCoefficients::with_cooperativity(A11, B11, f);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Two accelerated detectors: Liouvillian, steady states and sweeps";

    py::register_exception<Error>(m, "UnruhError", PyExc_RuntimeError);

    // two-spin algebra
    m.def("named_state", [](const std::string& name) { return Matrix4(named_state(name).matrix()); },
          py::arg("name"));
    m.def("observables", [](const Matrix4& rho) {
        const Observables o = observables(as_state(rho));
        py::dict d;
        d["Mx"] = o.Mx; d["My"] = o.My; d["Mz"] = o.Mz;
        d["Mxx"] = o.Mxx; d["Myy"] = o.Myy; d["Mzz"] = o.Mzz;
        d["Mxy"] = o.Mxy; d["Myz"] = o.Myz; d["Mzx"] = o.Mzx;
        d["Mc"] = o.Mc();
        return d;
    }, py::arg("rho"));
    m.def("reconstruct_symmetric", [](double Mz, double Mzz, double Mc) {
        return Matrix4(reconstruct_symmetric({Mz, Mzz, Mc}).matrix());
    }, py::arg("Mz"), py::arg("Mzz"), py::arg("Mc"));
    m.def("purity", [](const Matrix4& rho) { return purity(as_state(rho)); }, py::arg("rho"));
    m.def("von_neumann_entropy", [](const Matrix4& rho) { return von_neumann_entropy(as_state(rho)); },
          py::arg("rho"));
    m.def("concurrence_wootters", [](const Matrix4& rho) { return concurrence_wootters(as_state(rho)); },
          py::arg("rho"));
    m.def("concurrence_closed_form", [](double Mz, double Mzz, double Mc) {
        return concurrence_closed_form({Mz, Mzz, Mc});
    }, py::arg("Mz"), py::arg("Mzz"), py::arg("Mc"));

    // vacuum correlations
    m.def("f_factor", py::overload_cast<double, double>(&f_factor), py::arg("a_tilde"), py::arg("ell"));
    m.def("dissipation_coefficients", [](double alpha, double L, double omega0, double coupling) {
        const DissipationCoefficients c = dissipation_coefficients({alpha, L, omega0, coupling});
        py::dict d;
        d["A11"] = c.A11; d["B11"] = c.B11; d["A12"] = c.A12; d["B12"] = c.B12;
        d["zero_temperature_limit"] = c.zero_temperature_limit;
        return d;
    }, py::arg("alpha"), py::arg("L") = 6e-7, py::arg("omega0") = 1e14, py::arg("coupling") = 1e-3);
    m.def("response_closed_form", &response_closed_form, py::arg("a_tilde"), py::arg("ell"),
          py::arg("same_atom"), py::arg("omega_ratio") = 1.0);
    m.def("fourier_transform_oracle", [](double a_tilde, double ell, bool same_atom) {
        return fourier_transform_oracle(a_tilde, ell, same_atom).value;
    }, py::arg("a_tilde"), py::arg("ell"), py::arg("same_atom"));
    m.def("critical_acceleration", [](double L, double omega0, double epsilon_loc) {
        return critical_acceleration({0.0, L, omega0, 1e-3}, epsilon_loc);
    }, py::arg("L") = 6e-7, py::arg("omega0") = 1e14, py::arg("epsilon_loc") = 0.01);
    m.def("classify_phase", [](double alpha, double L, double omega0, double epsilon_loc) {
        return to_json(classify_phase({alpha, L, omega0, 1e-3}, epsilon_loc)).dump();
    }, py::arg("alpha"), py::arg("L") = 6e-7, py::arg("omega0") = 1e14, py::arg("epsilon_loc") = 0.01);

    // Lindblad engine
    m.def("liouvillian", [](double A11, double B11, double f) {
        return Matrix16(build_liouvillian(coeffs(A11, B11, f)).matrix());
    }, py::arg("A11"), py::arg("B11"), py::arg("f"));
    m.def("bloch_system", [](double A11, double B11, double f) {
        const BlochSystem s = bloch_system(coeffs(A11, B11, f));
        return py::make_tuple(s.M, s.b);
    }, py::arg("A11"), py::arg("B11"), py::arg("f"));
    m.def("spectrum", [](double A11, double B11, double f) {
        const Spectrum s = spectrum(build_liouvillian(coeffs(A11, B11, f)));
        return py::make_tuple(s.eigenvalues, s.gap);
    }, py::arg("A11"), py::arg("B11"), py::arg("f"));
    m.def("kernel_dimension", [](double A11, double B11, double f) {
        return steady_states(build_liouvillian(coeffs(A11, B11, f))).degeneracy;
    }, py::arg("A11"), py::arg("B11"), py::arg("f"));
    m.def("calibrate", [](double A11, double B11, double f) {
        const Liouvillian raw = build_liouvillian(build_kossakowski(coeffs(A11, B11, f), 1), std::nullopt, 1.0);
        const CalibrationReport r = project_consistency(raw);
        return py::make_tuple(r.kappa_cal, r.sign_b, r.residual);
    }, py::arg("A11"), py::arg("B11"), py::arg("f"));
    m.def("evolve", [](double A11, double B11, double f, const Matrix4& rho0, double tau_max,
                       double dt, double sample_every) {
        const DensityTrajectory t = evolve(build_liouvillian(coeffs(A11, B11, f)), as_state(rho0),
                                           {tau_max, dt, sample_every});
        std::vector<py::dict> out;
        for (std::size_t i = 0; i < t.states.size(); ++i) {
            py::dict d = bloch_dict(observables(t.states[i]).bloch());
            d["tau"] = t.times[i];
            d["purity"] = purity(t.states[i]);
            out.push_back(d);
        }
        return out;
    }, py::arg("A11"), py::arg("B11"), py::arg("f"), py::arg("rho0"), py::arg("tau_max"),
       py::arg("dt") = 0.0, py::arg("sample_every") = 0.0);
    m.def("steady_closed_form", [](const std::string& phase, double M0, double mc0, double mzz0) {
        if (phase != "localized" && phase != "thermal")
            throw Error(ErrorCode::config_error, "phase must be 'localized' or 'thermal'");
        return bloch_dict(steady_closed_form(phase == "localized" ? Phase::localized : Phase::thermal,
                                             M0, mc0, mzz0));
    }, py::arg("phase"), py::arg("M0"), py::arg("mc0") = 0.0, py::arg("mzz0") = 0.0);

    // symmetry
    m.def("symmetry_residual", [](double A11, double B11, double f, const std::vector<double>& kappas) {
        const SymmetryResidual r = symmetry_residual(build_liouvillian(coeffs(A11, B11, f)), kappas);
        return py::make_tuple(r.residual, r.commutator);
    }, py::arg("A11"), py::arg("B11"), py::arg("f"),
       py::arg("kappas") = std::vector<double>{0.1, 1.0, 3.141592653589793, 10.0});
    m.def("dark_states", [](double A11, double B11, double f) {
        std::vector<Vector4> out;
        for (const DarkState& d : dark_states(build_liouvillian(coeffs(A11, B11, f))).states)
            out.push_back(d.psi);
        return out;
    }, py::arg("A11"), py::arg("B11"), py::arg("f"));

    // sweeps
    m.def("run_sweep", [](double alpha_min, double alpha_max, int points, bool log_spacing,
                          const std::string& init, const std::string& mode, double tau_obs,
                          double L, double omega0, double epsilon_loc) {
        SweepConfig cfg;
        cfg.alpha_min = alpha_min;
        cfg.alpha_max = alpha_max;
        cfg.points = points;
        cfg.log_spacing = log_spacing;
        cfg.init = init;
        cfg.mode = mode == "finite" ? ObservationMode::finite_time : ObservationMode::branch;
        cfg.tau_obs = tau_obs;
        cfg.L = L;
        cfg.omega0 = omega0;
        cfg.epsilon_loc = epsilon_loc;
        std::vector<py::dict> out;
        for (const SweepRow& r : run_sweep(cfg)) out.push_back(row_dict(r));
        return out;
    }, py::arg("alpha_min") = 1e21, py::arg("alpha_max") = 1e25, py::arg("points") = 200,
       py::arg("log_spacing") = true, py::arg("init") = "singlet", py::arg("mode") = "branch",
       py::arg("tau_obs") = 10.0, py::arg("L") = 6e-7, py::arg("omega0") = 1e14,
       py::arg("epsilon_loc") = 0.01);
}
