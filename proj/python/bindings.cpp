#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>
#include <string>
#include <vector>

#include "aircomp/cli.hpp"
#include "aircomp/error.hpp"
#include "aircomp/evaluation.hpp"
#include "aircomp/validation.hpp"

namespace py = pybind11;
using namespace aircomp;

namespace {

using Array = py::array_t<double, py::array::c_style | py::array::forcecast>;

Array points_to_array(const std::vector<Point>& pts) {
  Array out({static_cast<py::ssize_t>(pts.size()), py::ssize_t{2}});
  auto v = out.mutable_unchecked<2>();
  for (std::size_t j = 0; j < pts.size(); ++j) {
    v(j, 0) = pts[j].x;
    v(j, 1) = pts[j].y;
  }
  return out;
}

std::vector<Point> array_to_points(const Array& a) {
  if (a.ndim() != 2 || a.shape(1) != 2) throw std::invalid_argument("expected an (n, 2) array");
  auto v = a.unchecked<2>();
  std::vector<Point> pts(a.shape(0));
  for (std::size_t j = 0; j < pts.size(); ++j) pts[j] = {v(j, 0), v(j, 1)};
  return pts;
}

std::vector<double> to_vector(const Array& a) {
  if (a.ndim() != 1) throw std::invalid_argument("expected a 1-d array");
  return std::vector<double>(a.data(), a.data() + a.size());
}

Array gains_to_array(const GainMatrix& g) {
  Array out({static_cast<py::ssize_t>(g.sensors()), static_cast<py::ssize_t>(g.stops())});
  auto v = out.mutable_unchecked<2>();
  for (std::size_t i = 0; i < g.sensors(); ++i) {
    for (std::size_t k = 0; k < g.stops(); ++k) v(i, k) = g.g(i, k);
  }
  return out;
}

Trajectory make_trajectory(double altitude, const Array& stops) {
  return Trajectory{altitude, array_to_points(stops)};
}

TargetSpec make_target(const std::vector<double>& weights, const std::vector<int>& exponents) {
  TargetSpec spec{weights, exponents};
  spec.validate();
  return spec;
}

py::dict cell_to_dict(const CellResult& cell) {
  py::dict d;
  d["target"] = cell.target;
  d["axis_value"] = cell.axis_value;
  std::vector<std::string> names;
  for (Policy p : cell.policies) names.emplace_back(policy_name(p));
  d["policies"] = names;
  d["mse"] = cell.mean;
  d["std_err"] = cell.std_err;
  std::vector<double> db;
  for (Policy p : cell.policies) db.push_back(cell.valid ? cell.mse_db(p) : NAN);
  d["mse_db"] = db;
  d["trials_used"] = cell.trials_used;
  d["rejected"] = cell.rejected;
  d["reference"] = cell.reference;
  d["valid"] = cell.valid;
  return d;
}

std::vector<TargetSelector> targets_from_names(const std::vector<std::string>& names) {
  std::vector<TargetSelector> out;
  for (const std::string& n : names) {
    if (n == "config-1" || n == "config-2" || n == "config-3") {
      out.push_back(TargetSelector::from_preset(n.back() - '0'));
    } else {
      throw ConfigError("unknown target '" + n + "'");
    }
  }
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "UAV-assisted over-the-air computation: channel, estimators, Monte Carlo";
  m.attr("__version__") = AIRCOMP_VERSION;

  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
  py::register_exception<NumericError>(m, "NumericError", PyExc_ArithmeticError);

  py::enum_<Policy>(m, "Policy")
      .value("CLOSED_FORM_EQUAL", Policy::kClosedFormEqual)
      .value("HEURISTIC", Policy::kHeuristic)
      .value("HEURISTIC_EQUAL", Policy::kHeuristicEqual)
      .value("BENCHMARK", Policy::kBenchmark)
      .value("GRID_ORACLE", Policy::kGridOracle)
      .def_property_readonly("label", [](Policy p) { return std::string(policy_name(p)); });

  py::class_<SensorField>(m, "SensorField")
      .def_readonly("coverage_radius", &SensorField::coverage_radius)
      .def_property_readonly("positions",
                             [](const SensorField& f) { return points_to_array(f.positions); })
      .def_readonly("reflection", &SensorField::reflection)
      .def_readonly("data_mean", &SensorField::data_mean)
      .def_readonly("data_var", &SensorField::data_var)
      .def("__len__", &SensorField::size);

  m.def("deploy_sensors", &deploy_sensors, py::arg("n"), py::arg("r_cov"), py::arg("zeta"),
        py::arg("data_mean"), py::arg("data_var"), py::arg("seed"));
  m.def(
      "plan_diameter_trajectory",
      [](std::size_t k, double r_cov, double h) {
        return points_to_array(plan_diameter_trajectory(k, r_cov, h).stops);
      },
      py::arg("k"), py::arg("r_cov"), py::arg("h"), "Stops as a (K, 2) array.");
  m.def("max_distance_bound", &max_distance_bound, py::arg("r_cov"), py::arg("h"));

  m.def(
      "effective_gain_matrix",
      [](const SensorField& field, const Array& stops, double h, double g0, double p_watts) {
        return gains_to_array(
            effective_gain_matrix(field, make_trajectory(h, stops), ChannelParams{g0, p_watts}));
      },
      py::arg("field"), py::arg("stops"), py::arg("h"), py::arg("g0") = 0.0275,
      py::arg("p_watts") = 1.0, "(N, K) effective gains g_i(k).");

  m.def(
      "gain_statistics",
      [](const Array& stops, double h, double r_cov, double zeta, double g0, double p_watts) {
        const GainStatistics st = gain_statistics(make_trajectory(h, stops), r_cov,
                                                  ChannelParams{g0, p_watts}, zeta);
        const auto k = static_cast<py::ssize_t>(st.size());
        Array second({k, k});
        std::copy(st.second.begin(), st.second.end(), second.mutable_data());
        py::dict d;
        d["mean"] = st.mean_g;
        d["var"] = st.var_g;
        d["second"] = second;
        return d;
      },
      py::arg("stops"), py::arg("h"), py::arg("r_cov"), py::arg("zeta") = 0.99,
      py::arg("g0") = 0.0275, py::arg("p_watts") = 1.0);

  m.def("gaussian_raw_moment", &gaussian_raw_moment, py::arg("mu"), py::arg("var"), py::arg("v"));
  m.def("gaussian_power_variance", &gaussian_power_variance, py::arg("mu"), py::arg("var"),
        py::arg("v"));

  m.def(
      "beta_heuristic",
      [](const Array& alpha, const std::vector<double>& weights, const std::vector<int>& exponents,
         const std::vector<double>& mean, const std::vector<double>& var, const Array& noise) {
        const TargetSpec spec = make_target(weights, exponents);
        SumGainSamples a{to_vector(alpha), std::vector<double>(alpha.size(), 0.0)};
        return beta_heuristic(a, spec, source_moments(spec, mean, var), to_vector(noise)).values();
      },
      py::arg("alpha"), py::arg("weights"), py::arg("exponents"), py::arg("mean"), py::arg("var"),
      py::arg("noise_var"));
  m.def(
      "beta_heuristic_equal",
      [](const Array& alpha, const std::vector<double>& weights, const std::vector<int>& exponents,
         const std::vector<double>& mean, const std::vector<double>& var, const Array& noise) {
        const TargetSpec spec = make_target(weights, exponents);
        SumGainSamples a{to_vector(alpha), std::vector<double>(alpha.size(), 0.0)};
        return beta_heuristic_equal(a, spec, source_moments(spec, mean, var), to_vector(noise));
      },
      py::arg("alpha"), py::arg("weights"), py::arg("exponents"), py::arg("mean"), py::arg("var"),
      py::arg("noise_var"));
  m.def(
      "beta_benchmark",
      [](std::size_t k, double r_cov, double h, std::size_t n, double zeta, double g0,
         double p_watts) {
        return beta_benchmark(plan_diameter_trajectory(k, r_cov, h), ChannelParams{g0, p_watts},
                              zeta, n)
            .values();
      },
      py::arg("k"), py::arg("r_cov"), py::arg("h"), py::arg("n"), py::arg("zeta") = 0.99,
      py::arg("g0") = 0.0275, py::arg("p_watts") = 1.0);

  m.def(
      "mse_exact_conditional",
      [](const Array& gains, const std::vector<double>& weights, const std::vector<int>& exponents,
         const std::vector<double>& mean, const std::vector<double>& var, const Array& noise,
         const Array& beta) {
        if (gains.ndim() != 2) throw std::invalid_argument("gains must be (N, K)");
        GainMatrix g(gains.shape(0), gains.shape(1));
        auto v = gains.unchecked<2>();
        for (py::ssize_t i = 0; i < gains.shape(0); ++i) {
          for (py::ssize_t k = 0; k < gains.shape(1); ++k) g.set(i, k, 0.0, v(i, k));
        }
        const TargetSpec spec = make_target(weights, exponents);
        return mse_exact(g, spec, source_moments(spec, mean, var), to_vector(noise),
                         BetaVector(to_vector(beta)));
      },
      py::arg("gains"), py::arg("weights"), py::arg("exponents"), py::arg("mean"), py::arg("var"),
      py::arg("noise_var"), py::arg("beta"),
      "E[(d_hat - d*)^2] over data and noise with the gains held fixed.");

  py::class_<ExperimentConfig>(m, "ExperimentConfig")
      .def(py::init<>())
      .def_readwrite("n", &ExperimentConfig::n)
      .def_readwrite("k", &ExperimentConfig::k)
      .def_readwrite("r_cov", &ExperimentConfig::r_cov)
      .def_readwrite("h", &ExperimentConfig::h)
      .def_readwrite("p_watts", &ExperimentConfig::p_watts)
      .def_readwrite("noise_var", &ExperimentConfig::noise_var)
      .def_readwrite("pilot_noise_var", &ExperimentConfig::pilot_noise_var)
      .def_readwrite("zeta", &ExperimentConfig::zeta)
      .def_readwrite("g0", &ExperimentConfig::g0)
      .def_readwrite("data_mean", &ExperimentConfig::data_mean)
      .def_readwrite("data_var", &ExperimentConfig::data_var)
      .def_readwrite("policies", &ExperimentConfig::policies)
      .def_readwrite("trials", &ExperimentConfig::trials)
      .def_readwrite("seed", &ExperimentConfig::seed)
      .def_readwrite("redeploy_per_trial", &ExperimentConfig::redeploy_per_trial)
      .def_readwrite("beta_budget", &ExperimentConfig::beta_budget)
      .def_readwrite("layout", &ExperimentConfig::layout)
      .def_property(
          "targets",
          [](const ExperimentConfig& c) {
            std::vector<std::string> names;
            for (const TargetSelector& t : c.targets) names.push_back(t.name());
            return names;
          },
          [](ExperimentConfig& c, const std::vector<std::string>& names) {
            c.targets = targets_from_names(names);
          })
      .def("validate", &ExperimentConfig::validate)
      .def("__eq__", [](const ExperimentConfig& a, const ExperimentConfig& b) { return a == b; })
      .def("__repr__", [](const ExperimentConfig& c) {
        return "ExperimentConfig(n=" + std::to_string(c.n) + ", k=" + std::to_string(c.k) +
               ", trials=" + std::to_string(c.trials) + ", seed=" + std::to_string(c.seed) + ")";
      });

  m.def(
      "parse_config", [](const std::string& text) { return cli::parse_config(text); },
      py::arg("text"), "Parse the flat key = value grammar on top of the defaults.");
  m.def("render_config", &cli::render_config, py::arg("config"));

  m.def("run_trial", py::overload_cast<const ExperimentConfig&, Policy, std::uint64_t>(&run_trial),
        py::arg("config"), py::arg("policy"), py::arg("trial_seed"));

  m.def(
      "estimate_cell",
      [](const ExperimentConfig& c, const std::string& target, unsigned threads) {
        CellResult cell;
        {
          py::gil_scoped_release release;
          cell = estimate_cell(c, targets_from_names({target}).front(), RunOptions{threads});
        }
        return cell_to_dict(cell);
      },
      py::arg("config"), py::arg("target") = "config-1", py::arg("threads") = 1);

  m.def(
      "sweep",
      [](const ExperimentConfig& c, const std::string& axis, const std::vector<std::size_t>& values,
         unsigned threads) {
        ExperimentResult r;
        const SweepAxis ax = parse_axis(axis);
        {
          py::gil_scoped_release release;
          r = sweep(c, ax, values, RunOptions{threads});
        }
        std::ostringstream csv;
        write_results_csv(csv, r);
        py::list cells;
        for (const CellResult& cell : r.cells) cells.append(cell_to_dict(cell));
        py::dict d;
        d["cells"] = cells;
        d["csv"] = csv.str();
        return d;
      },
      py::arg("config"), py::arg("axis"), py::arg("values"), py::arg("threads") = 1);

  py::class_<CheckResult>(m, "CheckResult")
      .def_readonly("name", &CheckResult::name)
      .def_readonly("passed", &CheckResult::passed)
      .def_readonly("detail", &CheckResult::detail);
  m.def("validate", &run_quick_validation, py::arg("seed") = 1);

  m.def(
      "cli_main",
      [](const std::vector<std::string>& args) {
        std::vector<const char*> argv{"aircomp"};
        for (const std::string& a : args) argv.push_back(a.c_str());
        return cli::main(static_cast<int>(argv.size()), argv.data());
      },
      py::arg("args"), "Run the command-line tool in-process; returns the exit code.");
}
