#include "rydnm/scenario.hpp"
#include "rydnm/sweep.hpp"

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

namespace py = pybind11;

using namespace rydnm;

PYBIND11_MODULE(rydnm, m) {
  m.doc() = "Rydberg dimer + laser-driven detector: Lindblad propagation and "
            "trace-distance non-Markovianity measures";

  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
  py::register_exception<IntegratorAbort>(m, "IntegratorAbortError",
                                          PyExc_RuntimeError);

  py::class_<HilbertLayout>(m, "HilbertLayout")
      .def(py::init<>())
      .def_readwrite("system_dim", &HilbertLayout::system_dim)
      .def_readwrite("detector_dim", &HilbertLayout::detector_dim)
      .def("full_dim", &HilbertLayout::full_dim)
      .def("index", &HilbertLayout::index);

  py::class_<DensityMatrix>(m, "DensityMatrix")
      .def(py::init<ComplexMatrix, std::string>(), py::arg("matrix"),
           py::arg("label") = std::string())
      .def_readwrite("matrix", &DensityMatrix::matrix)
      .def_readwrite("label", &DensityMatrix::label)
      .def("dim", &DensityMatrix::dim)
      .def_static("pure", &DensityMatrix::pure, py::arg("dim"),
                  py::arg("basis_index"), py::arg("label") = std::string());

  py::class_<ToleranceProfile>(m, "ToleranceProfile")
      .def(py::init<>())
      .def_readwrite("hermiticity", &ToleranceProfile::hermiticity)
      .def_readwrite("trace", &ToleranceProfile::trace)
      .def_readwrite("positivity", &ToleranceProfile::positivity);

  py::class_<ValidityReport>(m, "ValidityReport")
      .def_readonly("hermiticity_defect", &ValidityReport::hermiticity_defect)
      .def_readonly("trace_defect", &ValidityReport::trace_defect)
      .def_readonly("min_eigenvalue", &ValidityReport::min_eigenvalue)
      .def_readonly("hermitian_ok", &ValidityReport::hermitian_ok)
      .def_readonly("trace_ok", &ValidityReport::trace_ok)
      .def_readonly("positive_ok", &ValidityReport::positive_ok)
      .def("ok", &ValidityReport::ok);

  m.def("tensor_product", &tensor_product);
  m.def("partial_trace_detector", &partial_trace_detector, py::arg("rho_full"),
        py::arg("layout") = HilbertLayout{});
  m.def("hermitian_eigenvalues", &hermitian_eigenvalues);
  m.def("trace_distance", &trace_distance);
  m.def("trace_distance_two_level", &trace_distance_two_level);
  m.def("validate_density_matrix", &validate_density_matrix, py::arg("rho"),
        py::arg("tolerances") = ToleranceProfile{});

  py::class_<InteractionCoefficients>(m, "InteractionCoefficients")
      .def(py::init<>())
      .def_readwrite("c3_mhz_um3", &InteractionCoefficients::c3_mhz_um3)
      .def_readwrite("c4rp_mhz_um4", &InteractionCoefficients::c4rp_mhz_um4)
      .def_readwrite("c6rs_mhz_um6", &InteractionCoefficients::c6rs_mhz_um6);

  py::class_<Geometry>(m, "Geometry")
      .def(py::init<double, double, double>(), py::arg("r_um"),
           py::arg("rd1_um"), py::arg("rd2_um"))
      .def_readwrite("r_um", &Geometry::r_um)
      .def_readwrite("rd1_um", &Geometry::rd1_um)
      .def_readwrite("rd2_um", &Geometry::rd2_um);

  py::class_<LaserParams>(m, "LaserParams")
      .def(py::init<>())
      .def_readwrite("omega_p_mhz", &LaserParams::omega_p_mhz)
      .def_readwrite("omega_c_mhz", &LaserParams::omega_c_mhz)
      .def_readwrite("delta_p_mhz", &LaserParams::delta_p_mhz)
      .def_readwrite("delta_c_mhz", &LaserParams::delta_c_mhz)
      .def_readwrite("gamma_p_mhz", &LaserParams::gamma_p_mhz);

  py::class_<EffectiveCouplings>(m, "EffectiveCouplings")
      .def(py::init<>())
      .def_readwrite("j", &EffectiveCouplings::j)
      .def_readwrite("u1", &EffectiveCouplings::u1)
      .def_readwrite("u2", &EffectiveCouplings::u2)
      .def("j_mhz", &EffectiveCouplings::j_mhz)
      .def("u1_mhz", &EffectiveCouplings::u1_mhz)
      .def("u2_mhz", &EffectiveCouplings::u2_mhz);

  py::class_<EffectiveModel>(m, "EffectiveModel")
      .def_readonly("hamiltonian", &EffectiveModel::hamiltonian)
      .def_readonly("jump", &EffectiveModel::jump)
      .def_readonly("couplings", &EffectiveModel::couplings)
      .def_readonly("lasers", &EffectiveModel::lasers);

  py::class_<PhysicalScenario>(m, "PhysicalScenario")
      .def(py::init<>())
      .def_readwrite("geometry", &PhysicalScenario::geometry)
      .def_readwrite("coefficients", &PhysicalScenario::coefficients)
      .def_readwrite("j_mhz", &PhysicalScenario::j_mhz)
      .def_readwrite("u1_mhz", &PhysicalScenario::u1_mhz)
      .def_readwrite("u2_mhz", &PhysicalScenario::u2_mhz)
      .def_readwrite("lasers", &PhysicalScenario::lasers);

  m.def("derive_couplings", &derive_couplings, py::arg("geometry"),
        py::arg("coefficients") = InteractionCoefficients{});
  m.def("build_system_hamiltonian", &build_system_hamiltonian);
  m.def("build_detector_hamiltonian", &build_detector_hamiltonian);
  m.def("build_interaction_hamiltonian", &build_interaction_hamiltonian);
  m.def("build_detector_jump", &build_detector_jump);
  m.def("build_full_model", &build_full_model);

  py::enum_<InitialState>(m, "InitialState")
      .value("state1", InitialState::state1)
      .value("state2", InitialState::state2);
  m.def("initial_state", &initial_state, py::arg("which"),
        py::arg("layout") = HilbertLayout{});

  py::class_<IntegratorConfig>(m, "IntegratorConfig")
      .def(py::init<>())
      .def_readwrite("dt_us", &IntegratorConfig::dt_us)
      .def_readwrite("output_stride", &IntegratorConfig::output_stride)
      .def_readwrite("t_max_us", &IntegratorConfig::t_max_us)
      .def_readwrite("tolerances", &IntegratorConfig::tolerances)
      .def_readwrite("enforce_step_limit",
                     &IntegratorConfig::enforce_step_limit);

  py::class_<Trajectory>(m, "Trajectory")
      .def_readonly("times", &Trajectory::times)
      .def_readonly("full_states", &Trajectory::full_states)
      .def_readonly("reduced_states", &Trajectory::reduced_states)
      .def_readonly("pop1", &Trajectory::pop1)
      .def_readonly("pop2", &Trajectory::pop2)
      .def_readonly("pop_e", &Trajectory::pop_e)
      .def_readonly("pop_r", &Trajectory::pop_r)
      .def_readonly("trace_defect", &Trajectory::trace_defect)
      .def("__len__", &Trajectory::size);

  py::class_<DetectorTrajectory>(m, "DetectorTrajectory")
      .def_readonly("times", &DetectorTrajectory::times)
      .def_readonly("states", &DetectorTrajectory::states)
      .def_readonly("pop_g", &DetectorTrajectory::pop_g)
      .def_readonly("pop_e", &DetectorTrajectory::pop_e)
      .def_readonly("pop_r", &DetectorTrajectory::pop_r);

  m.def("lindblad_rhs", &lindblad_rhs, py::arg("rho"), py::arg("hamiltonian"),
        py::arg("jump"));
  m.def("propagate", &propagate, py::arg("rho0"), py::arg("model"),
        py::arg("config"));
  m.def("detector_only_propagate", &detector_only_propagate, py::arg("rho0"),
        py::arg("lasers"), py::arg("r_shift_angular") = 0.0,
        py::arg("config") = IntegratorConfig{});

  py::class_<DistanceSeries>(m, "DistanceSeries")
      .def_readonly("times", &DistanceSeries::times)
      .def_readonly("d_s", &DistanceSeries::d_s)
      .def_readonly("d_full", &DistanceSeries::d_full)
      .def_readonly("sigma_s", &DistanceSeries::sigma_s)
      .def("grid_spacing", &DistanceSeries::grid_spacing);

  py::class_<NMResult>(m, "NMResult")
      .def_readonly("n", &NMResult::n)
      .def_readonly("positive_intervals", &NMResult::positive_intervals)
      .def_readonly("grid_spacing", &NMResult::grid_spacing);

  py::class_<Revival>(m, "Revival")
      .def_readonly("t_us", &Revival::t_us)
      .def_readonly("value", &Revival::value)
      .def_readonly("prominence", &Revival::prominence);

  m.def("distance_series", &distance_series);
  m.def("non_markovianity", &non_markovianity, py::arg("series"),
        py::arg("epsilon") = kNMIncrementEpsilon);
  m.def("detect_revivals", &detect_revivals, py::arg("times"),
        py::arg("values"), py::arg("prominence") = kRevivalProminence);

  py::class_<OutputOptions>(m, "OutputOptions")
      .def(py::init<>())
      .def_readwrite("out_dir", &OutputOptions::out_dir)
      .def_readwrite("write_trajectory", &OutputOptions::write_trajectory)
      .def_readwrite("write_summary", &OutputOptions::write_summary);

  py::class_<ScenarioConfig>(m, "ScenarioConfig")
      .def(py::init<>())
      .def_readwrite("label", &ScenarioConfig::label)
      .def_readwrite("physics", &ScenarioConfig::physics)
      .def_readwrite("integrator", &ScenarioConfig::integrator)
      .def_readwrite("output", &ScenarioConfig::output);

  py::class_<ScenarioSummary>(m, "ScenarioSummary")
      .def_readonly("nm", &ScenarioSummary::nm)
      .def_readonly("revivals", &ScenarioSummary::revivals)
      .def_readonly("final_pop1_rho1", &ScenarioSummary::final_pop1_rho1)
      .def_readonly("final_pop2_rho1", &ScenarioSummary::final_pop2_rho1)
      .def_readonly("final_pop_e_rho1", &ScenarioSummary::final_pop_e_rho1)
      .def_readonly("final_pop_r_rho1", &ScenarioSummary::final_pop_r_rho1)
      .def_readonly("final_pop1_rho2", &ScenarioSummary::final_pop1_rho2)
      .def_readonly("final_pop2_rho2", &ScenarioSummary::final_pop2_rho2)
      .def_readonly("max_trace_defect", &ScenarioSummary::max_trace_defect)
      .def_readonly("max_hermiticity_defect",
                    &ScenarioSummary::max_hermiticity_defect)
      .def_readonly("min_eigenvalue", &ScenarioSummary::min_eigenvalue)
      .def_readonly("pop_conservation_drift",
                    &ScenarioSummary::pop_conservation_drift)
      .def_readonly("d_full_max_increase",
                    &ScenarioSummary::d_full_max_increase);

  py::class_<ScenarioResult>(m, "ScenarioResult")
      .def_readonly("config", &ScenarioResult::config)
      .def_readonly("traj1", &ScenarioResult::traj1)
      .def_readonly("traj2", &ScenarioResult::traj2)
      .def_readonly("distances", &ScenarioResult::distances)
      .def_readonly("summary", &ScenarioResult::summary);

  m.def("preset_names", []() {
    std::vector<std::string> names;
    for (PresetId id : all_preset_ids()) names.emplace_back(preset_name(id));
    return names;
  });
  m.def("preset", [](const std::string& name) {
    return preset(preset_from_name(name));
  });
  m.def("parse_config", &parse_config);
  m.def("config_to_json",
        [](const ScenarioConfig& cfg) { return config_to_json(cfg).dump(2); });
  m.def("summary_to_json", [](const ScenarioSummary& summary) {
    return summary_to_json(summary).dump(2);
  });
  m.def("trajectory_csv", &trajectory_csv);
  m.def("run_scenario", &run_scenario,
        py::call_guard<py::gil_scoped_release>());
  m.def("run_scenario_in_memory", &run_scenario_in_memory,
        py::call_guard<py::gil_scoped_release>());

  py::class_<SweepParameter>(m, "SweepParameter")
      .def(py::init<>())
      .def_readwrite("name", &SweepParameter::name)
      .def_readwrite("min", &SweepParameter::min)
      .def_readwrite("max", &SweepParameter::max)
      .def_readwrite("steps", &SweepParameter::steps);

  py::class_<SweepSpec>(m, "SweepSpec")
      .def(py::init<>())
      .def_readwrite("base", &SweepSpec::base)
      .def_readwrite("parameters", &SweepSpec::parameters);

  py::class_<SweepCell>(m, "SweepCell")
      .def_readonly("index", &SweepCell::index)
      .def_readonly("values", &SweepCell::values)
      .def_readonly("ok", &SweepCell::ok)
      .def_readonly("error", &SweepCell::error)
      .def_readonly("n", &SweepCell::n)
      .def_readonly("half_life_us", &SweepCell::half_life_us)
      .def_readonly("steady_pop1", &SweepCell::steady_pop1);

  m.def("parse_sweep_spec", &parse_sweep_spec);
  m.def("run_sweep", &run_sweep, py::arg("spec"), py::arg("threads") = 0,
        py::call_guard<py::gil_scoped_release>());
  m.def("sweep_csv", &sweep_csv);
  m.def("envelope_half_life", &envelope_half_life);

  m.attr("NM_INCREMENT_EPSILON") = kNMIncrementEpsilon;
  m.attr("REVIVAL_PROMINENCE") = kRevivalProminence;
  m.attr("TWO_PI") = kTwoPi;
}
