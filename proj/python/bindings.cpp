#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "preho/commands.hpp"
#include "preho/errors.hpp"

namespace py = pybind11;
using namespace preho;

namespace {

py::dict objective_dict(const PlanObjective& o) {
    py::dict d;
    d["n_ho"] = o.n_ho;
    d["u_ue"] = o.u_ue;
    d["objective"] = o.objective;
    d["per_ue_handovers"] = o.per_ue_handovers;
    d["per_slot_utility"] = o.per_slot_utility;
    return d;
}

py::dict alloc_dict(const AllocationVector& a) {
    py::dict d;
    d["shares"] = a.shares;
    d["dual"] = a.dual;
    return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "LEO handover planning engine";
    m.attr("__version__") = kVersion;

    static py::exception<Error> error(m, "Error");
    static py::exception<ValidationError> validation_error(m, "ValidationError", error.ptr());
    static py::exception<InfeasibleError> infeasible_error(m, "InfeasibleError", error.ptr());
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const ValidationError& e) {
            py::set_error(validation_error, e.what());
        } catch (const InfeasibleError& e) {
            py::set_error(infeasible_error, e.what());
        } catch (const Error& e) {
            py::set_error(error, e.what());
        }
    });

    py::class_<Scenario>(m, "Scenario")
        .def_readonly("name", &Scenario::name)
        .def_readwrite("gamma", &Scenario::gamma)
        .def_readwrite("min_elevation_deg", &Scenario::min_elevation_deg)
        .def_property_readonly("num_ues", &Scenario::num_ues)
        .def_property_readonly("num_slots", &Scenario::num_slots)
        .def("digest", [](const Scenario& s) { return scenario_digest(s); })
        .def("to_json", [](const Scenario& s) { return scenario_to_json(s).dump(); });

    m.def("load_scenario", [](const std::filesystem::path& p) { return load_scenario(p); }, py::arg("path"));
    m.def("scenario_from_json", [](const std::string& text) {
        return scenario_from_json(nlohmann::json::parse(text, nullptr, true, true));
    });

    py::class_<Pipeline>(m, "Pipeline")
        .def(py::init([](const Scenario& s) { return Pipeline::build(s); }), py::arg("scenario"))
        .def_property_readonly("num_ues", [](const Pipeline& p) { return p.problem.num_ues(); })
        .def_property_readonly("num_slots", [](const Pipeline& p) { return p.problem.num_slots(); })
        .def("candidate_satellites", [](const Pipeline& p) { return p.problem.vis.candidate_satellites(); })
        .def("visible", [](const Pipeline& p, int ue, int slot) {
            std::vector<std::pair<int, double>> out;
            for (const auto& v : p.problem.vis.at(ue, slot)) out.emplace_back(v.sat_id, v.elevation_deg);
            return out;
        })
        .def("dmax", [](const Pipeline& p, int ue, int slot, int sat) { return p.problem.dmax(ue, slot, sat); })
        .def("run", [](const Pipeline& p, const std::string& algorithm, int passes) {
            const auto r = run_algorithm(p, parse_algorithm(algorithm), passes);
            py::dict d = objective_dict(r.objective);
            d["serving"] = r.plan.serving;
            d["trace"] = r.trace;
            return d;
        }, py::arg("algorithm") = "preho", py::arg("passes") = 1)
        .def("evaluate", [](const Pipeline& p, const std::vector<std::vector<int>>& serving) {
            AssociationPlan plan;
            plan.serving = serving;
            return objective_dict(evaluate_plan(p.problem, plan));
        })
        .def("latency", [](const Pipeline& p, const std::vector<std::vector<int>>& serving, const std::string& mech) {
            AssociationPlan plan;
            plan.serving = serving;
            const auto ctx = LatencyContext::from(p.scenario, p.sats);
            return latency_summary_json(latency_cdf(plan, parse_mechanism(mech), ctx)).dump();
        })
        .def("oracle_check", [](const Pipeline& p) {
            const auto r = run_oracle_check(p.problem);
            py::dict d;
            d["passed"] = r.passed();
            d["ue_checks"] = r.ue_checks;
            d["alloc_checks"] = r.alloc_checks;
            d["failures"] = r.failures;
            return d;
        });

    m.def("utility", [](double alpha, double d) { return utility(UtilitySpec{UtilityKind::alpha_fair, alpha}, d); });
    m.def("utility_derivative",
          [](double alpha, double d) { return utility_derivative(UtilitySpec{UtilityKind::alpha_fair, alpha}, d); });
    m.def("allocate_closed_form", [](double alpha, const DmaxMap& d) { return alloc_dict(allocate_closed_form(alpha, d)); });
    m.def("allocate_bisection", [](double alpha, const DmaxMap& d, double epsilon) {
        BisectionParams bp;
        bp.epsilon = epsilon;
        return alloc_dict(allocate_bisection(UtilitySpec{UtilityKind::alpha_fair, alpha}, d, bp));
    }, py::arg("alpha"), py::arg("dmax"), py::arg("epsilon") = 1e-9);
    m.def("elevation_deg", [](std::array<double, 3> ue, std::array<double, 3> sat) {
        return elevation_deg({ue[0], ue[1], ue[2]}, {sat[0], sat[1], sat[2]});
    });
    m.def("dmax_mb", &dmax_mb, py::arg("sinr_linear"), py::arg("bandwidth_hz"), py::arg("slot_duration_s"));

    m.def("cmd_plan", [](const std::string& scenario, const std::vector<std::string>& algorithms, const std::string& out,
                         int passes) {
        PlanCommand c;
        c.scenario = scenario;
        c.algorithms.clear();
        for (const auto& a : algorithms) c.algorithms.push_back(parse_algorithm(a));
        c.out_dir = out;
        c.passes = passes;
        return cmd_plan(c);
    }, py::arg("scenario"), py::arg("algorithms"), py::arg("out"), py::arg("passes") = 1);
    m.def("cmd_latency", [](const std::string& scenario, const std::string& out) {
        LatencyCommand c;
        c.scenario = scenario;
        c.out_dir = out;
        return cmd_latency(c);
    }, py::arg("scenario"), py::arg("out"));
    m.def("cmd_oracle_check", [](const std::string& scenario) {
        OracleCommand c;
        c.scenario = scenario;
        return cmd_oracle_check(c);
    }, py::arg("scenario"));
}
