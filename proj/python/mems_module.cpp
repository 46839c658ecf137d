// Python bindings for the main solver operations. Result structs map to
// plain dicts so the module needs nothing beyond the standard library.

#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "mems/evolution.hpp"
#include "mems/oracles.hpp"
#include "mems/stationary.hpp"

namespace py = pybind11;
using namespace mems;

namespace {

py::dict bound_dict(const BoundEntry& e) {
    py::dict d;
    d["applicable"] = e.applicable;
    d["value"] = e.value;
    d["reason"] = e.note;
    return d;
}

py::dict bounds_dict(const BoundsRecord& b) {
    py::dict d;
    d["mu1"] = b.mu1;
    d["integral_f_phi1"] = b.f_phi1;
    d["sup_sg"] = b.sup_sg;
    d["sup_sg_arg"] = b.sup_sg_arg;
    d["gap_area"] = b.gap_area;
    d["nu_hat"] = b.nu_hat;
    d["lower_nu"] = bound_dict(b.lower_nu);
    d["upper_g0"] = bound_dict(b.upper_g0);
    d["upper_gap_integral"] = bound_dict(b.upper_gap_integral);
    d["pohozaev"] = bound_dict(b.pohozaev);
    return d;
}

const char* status_name(EvolveStatus s) {
    switch (s) {
    case EvolveStatus::Completed: return "completed";
    case EvolveStatus::Touchdown: return "touchdown";
    case EvolveStatus::StepFailure: return "step-failure";
    }
    return "?";
}

} // namespace

PYBIND11_MODULE(pymems, m) {
    m.doc() = "membrane deflection solvers: stationary states, pull-in threshold, "
              "evolution with touchdown detection";

    py::class_<GridDomain>(m, "GridDomain")
        .def_static("interval", &GridDomain::interval, py::arg("length"), py::arg("nodes"))
        .def_static("ball", &GridDomain::ball, py::arg("dim"), py::arg("radius"),
                    py::arg("nodes"))
        .def_property_readonly("size", &GridDomain::size)
        .def_property_readonly("spacing", &GridDomain::spacing)
        .def_property_readonly("volume", &GridDomain::volume)
        .def_property_readonly("nodes", [](const GridDomain& g) { return g.nodes(); })
        .def_property_readonly("weights", [](const GridDomain& g) { return g.weights(); });

    py::class_<NonlinearityProfile>(m, "NonlinearityProfile")
        .def_static("power_gap", &NonlinearityProfile::power_gap, py::arg("exponent"))
        .def_static("exp_gap", &NonlinearityProfile::exp_gap)
        .def_static("constant_one", &NonlinearityProfile::constant_one)
        .def_static("tabulated", &NonlinearityProfile::tabulated, py::arg("s"), py::arg("g"))
        .def("value", &NonlinearityProfile::value)
        .def("slope", &NonlinearityProfile::slope)
        .def_property_readonly("reciprocal_convex", &NonlinearityProfile::reciprocal_convex)
        .def_property_readonly("vanishes_at_contact", &NonlinearityProfile::vanishes_at_contact);

    py::class_<ForcingProfile>(m, "ForcingProfile")
        .def_static("constant", &ForcingProfile::constant, py::arg("amplitude"))
        .def_static("radial_bump", &ForcingProfile::radial_bump, py::arg("amplitude"),
                    py::arg("center"), py::arg("width"))
        .def_static("radial_polynomial", &ForcingProfile::radial_polynomial, py::arg("coeffs"))
        .def("value", &ForcingProfile::value);

    m.def("check_hypotheses",
          [](const NonlinearityProfile& g, const ForcingProfile& f, const GridDomain& dom) {
              py::list out;
              for (const auto& c : check_hypotheses(g, f, dom).checks) {
                  py::dict d;
                  d["id"] = c.id;
                  d["pass"] = c.pass;
                  d["witness"] = c.witness;
                  out.append(d);
              }
              return out;
          });

    m.def("gap_integral", &gap_integral, py::arg("g"), py::arg("v"));
    m.def("sup_s_times_g", [](const NonlinearityProfile& g) {
        const SupSG s = sup_s_times_g(g);
        return py::make_tuple(s.value, s.maximizer);
    });

    m.def("principal_eigenpair", [](const GridDomain& dom) {
        const EigenPair pair = principal_eigenpair(dom);
        py::dict d;
        d["mu"] = pair.mu;
        d["phi"] = pair.phi.values();
        d["residual"] = pair.residual;
        return d;
    });

    m.def("nu_lower_bound", [](const GridDomain& dom, double a_min, double a_max, int steps) {
        const NuEstimate nu = nu_lower_bound(dom, {a_min, a_max, steps});
        py::dict d;
        d["nu_hat"] = nu.nu_hat;
        d["best_dilation"] = nu.best_dilation;
        return d;
    }, py::arg("dom"), py::arg("a_min") = 0.05, py::arg("a_max") = 5.0, py::arg("steps") = 500);

    m.def("minimal_solution",
          [](const GridDomain& dom, const ForcingProfile& f, const NonlinearityProfile& g,
             double lambda) {
              const StationaryResult res = minimal_solution(dom, f, g, lambda);
              py::dict d;
              d["converged"] = res.converged;
              d["iterations"] = res.iterations;
              d["residual"] = res.residual;
              d["monotone"] = res.monotone;
              d["v"] = res.solution.values();
              return d;
          },
          py::arg("dom"), py::arg("f"), py::arg("g"), py::arg("lam"));

    m.def("linearized_eigenvalue",
          [](const GridDomain& dom, const ForcingProfile& f, const NonlinearityProfile& g,
             double lambda, const std::vector<double>& v) {
              Field vf(dom);
              for (int i = 0; i < dom.size(); ++i) vf[i] = v[static_cast<std::size_t>(i)];
              return linearized_eigenvalue(dom, f, g, lambda, vf);
          });

    m.def("lambda_bounds",
          [](const GridDomain& dom, const ForcingProfile& f, const NonlinearityProfile& g) {
              return bounds_dict(lambda_bounds(dom, f, g));
          });

    m.def("pull_in_voltage",
          [](const GridDomain& dom, const ForcingProfile& f, const NonlinearityProfile& g,
             double tol_rel) {
              const PullInEstimate est = pull_in_voltage(dom, f, g, tol_rel);
              py::dict d;
              d["lambda_lo"] = est.lambda_lo;
              d["lambda_hi"] = est.lambda_hi;
              d["probes"] = est.probes;
              d["bounds"] = bounds_dict(est.bounds);
              return d;
          },
          py::arg("dom"), py::arg("f"), py::arg("g"), py::arg("tol_rel") = 1e-4);

    m.def("evolve",
          [](const GridDomain& dom, const ForcingProfile& f, const NonlinearityProfile& g,
             double lambda, double u0, double t_end) {
              const EvolutionTrace tr = evolve(dom, f, g, lambda, u0, t_end);
              py::dict d;
              d["status"] = status_name(tr.status);
              d["final_time"] = tr.final_time;
              d["steps"] = tr.steps;
              d["contact_first_at"] = tr.contact_first_at;
              d["u_final"] = tr.final_state.values();
              py::list t, max_u, energy;
              for (const auto& s : tr.samples) {
                  t.append(s.t);
                  max_u.append(s.max_u);
                  energy.append(s.energy);
              }
              d["t"] = t;
              d["max_u"] = max_u;
              d["energy"] = energy;
              return d;
          },
          py::arg("dom"), py::arg("f"), py::arg("g"), py::arg("lam"), py::arg("u0"),
          py::arg("t_end"));

    m.def("picard_local",
          [](const GridDomain& dom, const ForcingProfile& f, const NonlinearityProfile& g,
             double lambda, double u0, int sweeps) {
              const PicardResult res = picard_local(dom, f, g, lambda, Field(dom, u0), sweeps);
              py::dict d;
              d["t_local"] = res.t_local;
              d["gaps"] = res.gaps;
              d["ceiling_ok"] = res.ceiling_ok;
              return d;
          },
          py::arg("dom"), py::arg("f"), py::arg("g"), py::arg("lam"), py::arg("u0"),
          py::arg("sweeps") = 8);

    m.def("touchdown_bounds",
          [](const GridDomain& dom, const ForcingProfile& f, const NonlinearityProfile& g,
             double lambda, double u0) {
              const TouchdownBoundsReport rep =
                  touchdown_bounds(dom, f, g, lambda, Field(dom, u0));
              py::dict d;
              d["lambda_energy_threshold"] = rep.lambda_energy;
              d["lambda_gap_threshold"] = rep.lambda_gap;
              d["bound_energy"] = bound_dict(rep.bound_energy);
              d["bound_gap"] = bound_dict(rep.bound_gap);
              d["bound_localized"] = bound_dict(rep.bound_localized);
              return d;
          },
          py::arg("dom"), py::arg("f"), py::arg("g"), py::arg("lam"), py::arg("u0") = 0.0);

    m.def("interval_pull_in_reference", &oracles::interval_pull_in, py::arg("p") = 2.0,
          py::arg("length") = 1.0);
}
