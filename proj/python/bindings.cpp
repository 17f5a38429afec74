#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "thiele/behaviour.hpp"
#include "thiele/contract.hpp"
#include "thiele/convergence.hpp"
#include "thiele/free_policy.hpp"
#include "thiele/ode.hpp"
#include "thiele/reserves.hpp"
#include "thiele/scenario.hpp"
#include "thiele/simulate.hpp"
#include "thiele/worst_case.hpp"

namespace py = pybind11;
using namespace thiele;

PYBIND11_MODULE(_core, m) {
    m.doc() = "Reserves under surrender and free-policy behaviour: linear and "
              "reserve-dependent Thiele solvers, worst-case (optimal stopping) "
              "valuation and Monte Carlo cross-checks";

    py::register_exception<ConfigError>(m, "ConfigError");
    py::register_exception<NumericalError>(m, "NumericalError");

    py::class_<PaymentPlan>(m, "PaymentPlan")
        .def_static("level", &PaymentPlan::level, py::arg("premium"),
                    py::arg("death_sum"), py::arg("terminal"), py::arg("horizon"))
        .def("without_premiums", &PaymentPlan::without_premiums)
        .def_readonly("terminal_benefit", &PaymentPlan::terminal_benefit)
        .def_readonly("horizon", &PaymentPlan::horizon);

    py::class_<RateCurve>(m, "RateCurve")
        .def(py::init<std::vector<double>, std::vector<double>>(),
             py::arg("breakpoints"), py::arg("rates"))
        .def_static("flat", &RateCurve::flat)
        .def("__call__", &RateCurve::operator())
        .def("integral", &RateCurve::integral, py::arg("a"), py::arg("b"));

    m.def("integrate_rate", &integrate_rate, py::arg("curve"), py::arg("a"),
          py::arg("b"));

    py::class_<MortalityCurve>(m, "MortalityCurve")
        .def(py::init<double, double, double, double>(), py::arg("base"),
             py::arg("log_scale"), py::arg("log_slope"), py::arg("age_offset"))
        .def_static("zero", &MortalityCurve::zero)
        .def("__call__", &MortalityCurve::operator());

    m.def("g82_female", &g82_female);

    py::class_<IntensityModel>(m, "IntensityModel")
        .def_static("exponential", &IntensityModel::exponential, py::arg("psi"),
                    py::arg("theta"))
        .def_static("indicator", &IntensityModel::indicator, py::arg("theta"))
        .def_static("constant", &IntensityModel::constant, py::arg("level"))
        .def_static("zero", &IntensityModel::zero)
        .def("__call__", &IntensityModel::operator(), py::arg("t"), py::arg("gain"))
        .def_property_readonly("gain_dependent", &IntensityModel::gain_dependent);

    py::class_<ReserveGrid>(m, "ReserveGrid")
        .def_readonly("t0", &ReserveGrid::t0)
        .def_readonly("step", &ReserveGrid::step)
        .def_readonly("values", &ReserveGrid::values)
        .def("time", &ReserveGrid::time)
        .def("value_at", &ReserveGrid::value_at)
        .def("__len__", &ReserveGrid::size);

    py::class_<FreePolicyPlan>(m, "FreePolicyPlan")
        .def(py::init([](PaymentPlan base, TimeFunction scaling,
                         IntensityModel as, IntensityModel af, IntensityModel fs) {
                 return FreePolicyPlan{std::move(base), std::move(scaling), as, af,
                                       fs};
             }),
             py::arg("base_plan"), py::arg("scaling"), py::arg("intensity_as"),
             py::arg("intensity_af"), py::arg("intensity_fs"));

    m.def("surrender_value", &surrender_value, py::arg("plan"),
          py::arg("technical_rate"), py::arg("technical_mortality"),
          py::arg("step"));
    m.def("reserve_no_surrender", &reserve_no_surrender, py::arg("plan"),
          py::arg("market_rate"), py::arg("mortality"), py::arg("step"));
    m.def("reserve_with_intensity", &reserve_with_intensity, py::arg("plan"),
          py::arg("market_rate"), py::arg("mortality"), py::arg("surrender_grid"),
          py::arg("nu"), py::arg("step"));

    py::class_<BehaviouralSolution>(m, "BehaviouralSolution")
        .def_readonly("reserve", &BehaviouralSolution::reserve)
        .def_readonly("realized_intensity",
                      &BehaviouralSolution::realized_intensity);

    m.def("solve_reserve_dependent", &solve_reserve_dependent, py::arg("plan"),
          py::arg("market_rate"), py::arg("mortality"), py::arg("surrender_grid"),
          py::arg("model"), py::arg("step"));
    m.def("consistency_check", &consistency_check, py::arg("solution"),
          py::arg("plan"), py::arg("market_rate"), py::arg("mortality"),
          py::arg("surrender_grid"), py::arg("step"));

    py::class_<WorstCaseSolution>(m, "WorstCaseSolution")
        .def_readonly("worst_reserve", &WorstCaseSolution::worst_reserve)
        .def_readonly("latest_optimal", &WorstCaseSolution::latest_optimal)
        .def_readonly("gain_envelope", &WorstCaseSolution::gain_envelope);

    m.def("worst_case_reserve", &worst_case_reserve, py::arg("plan"),
          py::arg("market_rate"), py::arg("mortality"), py::arg("surrender_grid"),
          py::arg("baseline"), py::arg("step"));
    m.def("brute_force_worst_case", &brute_force_worst_case, py::arg("plan"),
          py::arg("market_rate"), py::arg("mortality"), py::arg("surrender_grid"),
          py::arg("baseline"), py::arg("step"));

    m.def("free_policy_reference", &free_policy_reference, py::arg("plan"),
          py::arg("market_rate"), py::arg("mortality"),
          py::arg("free_surrender_grid"), py::arg("nu_fs"), py::arg("step"));
    m.def("active_reserve_with_free_policy", &active_reserve_with_free_policy,
          py::arg("fp"), py::arg("market_rate"), py::arg("mortality"),
          py::arg("surrender_grid"), py::arg("vf_reference"), py::arg("step"));

    py::class_<FreePolicySurface>(m, "FreePolicySurface")
        .def_readonly("conversion_times", &FreePolicySurface::conversion_times)
        .def_readonly("columns", &FreePolicySurface::columns);

    m.def("free_policy_surface", &free_policy_surface, py::arg("fp"),
          py::arg("market_rate"), py::arg("mortality"),
          py::arg("free_surrender_grid"), py::arg("step"),
          py::arg("u_grid_stride"));

    py::class_<SweepFamily>(m, "SweepFamily")
        .def_static("indicator", &SweepFamily::indicator)
        .def_static("exponential", &SweepFamily::exponential, py::arg("psi"))
        .def_static("exponential_scaled", &SweepFamily::exponential_scaled,
                    py::arg("psi_of_theta"));

    py::class_<SweepRow>(m, "SweepRow")
        .def_readonly("theta", &SweepRow::theta)
        .def_readonly("sup_error", &SweepRow::sup_error)
        .def_readonly("error_at_0", &SweepRow::error_at_0);

    m.def("theta_sweep", &theta_sweep, py::arg("plan"), py::arg("market_rate"),
          py::arg("mortality"), py::arg("surrender_grid"), py::arg("family"),
          py::arg("thetas"), py::arg("step"));

    py::class_<ConditionProbe>(m, "ConditionProbe")
        .def_readonly("theta", &ConditionProbe::theta)
        .def_readonly("hbar_neg", &ConditionProbe::hbar_neg)
        .def_readonly("hunder_pos", &ConditionProbe::hunder_pos);

    py::class_<ConditionReport>(m, "ConditionReport")
        .def_readonly("probes", &ConditionReport::probes)
        .def_readonly("vanishes_at_negative_gains",
                      &ConditionReport::vanishes_at_negative_gains)
        .def_readonly("diverges_at_positive_gains",
                      &ConditionReport::diverges_at_positive_gains);

    m.def("condition_check", &condition_check, py::arg("family"),
          py::arg("thetas"));

    py::class_<SimulationConfig>(m, "SimulationConfig")
        .def(py::init([](std::size_t paths, std::uint64_t seed, double time_step) {
                 return SimulationConfig{paths, seed, time_step};
             }),
             py::arg("paths") = 100000, py::arg("seed") = 0,
             py::arg("time_step") = 1.0 / 12.0)
        .def_readwrite("paths", &SimulationConfig::paths)
        .def_readwrite("seed", &SimulationConfig::seed)
        .def_readwrite("time_step", &SimulationConfig::time_step);

    py::class_<Strategy>(m, "Strategy")
        .def_static("from_intensity", &Strategy::from_intensity, py::arg("nu"))
        .def_static("stop_at", &Strategy::stop_at, py::arg("time"));

    py::class_<SimulationResult>(m, "SimulationResult")
        .def_readonly("estimate", &SimulationResult::estimate)
        .def_readonly("standard_error", &SimulationResult::standard_error);

    m.def("simulate_reserve", &simulate_reserve, py::arg("plan"),
          py::arg("market_rate"), py::arg("mortality"), py::arg("surrender_grid"),
          py::arg("strategy"), py::arg("config"),
          py::call_guard<py::gil_scoped_release>());

    py::class_<ScenarioSpec>(m, "ScenarioSpec")
        .def_static("from_json", &ScenarioSpec::from_json_string, py::arg("text"))
        .def_static("load", &ScenarioSpec::load, py::arg("path"))
        .def("to_json", &ScenarioSpec::to_json_string)
        .def("validate", &ScenarioSpec::validate)
        .def_readwrite("name", &ScenarioSpec::name)
        .def_readwrite("step", &ScenarioSpec::step);

    m.def("builtin_scenario", &builtin_scenario, py::arg("name"));
    m.def(
        "run_scenario",
        [](const ScenarioSpec& spec, const std::string& out_dir) {
            return thiele::run(spec, out_dir).files_written;
        },
        py::arg("spec"), py::arg("out_dir"),
        py::call_guard<py::gil_scoped_release>());
    m.def("list_builtins", []() {
        py::dict out;
        const BuiltinCatalog catalog = list_builtins();
        py::list examples;
        for (const auto& e : catalog.examples) {
            examples.append(py::make_tuple(e.name, e.description));
        }
        py::list models;
        for (const auto& e : catalog.models) {
            models.append(py::make_tuple(e.name, e.description));
        }
        out["examples"] = examples;
        out["models"] = models;
        return out;
    });
}
