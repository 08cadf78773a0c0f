// Python bindings for the core operations: eigen machinery, ell-ordering and
// projection, partial KL divergences, Gaussian laws, g* samplers, the
// importance-sampling estimator, the benchmark problems and the experiment
// driver.
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <stdexcept>

#include "hdis/bench.hpp"
#include "hdis/estimator.hpp"
#include "hdis/gstar.hpp"
#include "hdis/problems.hpp"
#include "hdis/projection.hpp"
#include "hdis/special_functions.hpp"

namespace py = pybind11;
using namespace hdis;

namespace {

DenseSym matrix_from_numpy(const py::array_t<double>& a) {
  const auto buf = a.request();
  if (buf.ndim != 2 || buf.shape[0] != buf.shape[1]) {
    throw std::invalid_argument("expected a square 2-d array");
  }
  const auto n = static_cast<std::size_t>(buf.shape[0]);
  auto view = a.unchecked<2>();
  std::vector<double> data(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      data[i * n + j] = view(static_cast<py::ssize_t>(i),
                             static_cast<py::ssize_t>(j));
    }
  }
  return DenseSym::from_data(n, std::move(data));
}

py::array_t<double> matrix_to_numpy(const DenseSym& m) {
  const std::size_t n = m.dim();
  py::array_t<double> out({n, n});
  auto view = out.mutable_unchecked<2>();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      view(static_cast<py::ssize_t>(i), static_cast<py::ssize_t>(j)) = m(i, j);
    }
  }
  return out;
}

py::array_t<double> points_to_numpy(const std::vector<Vec>& pts) {
  const std::size_t m = pts.size();
  const std::size_t n = m == 0 ? 0 : pts.front().size();
  py::array_t<double> out({m, n});
  auto view = out.mutable_unchecked<2>();
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      view(static_cast<py::ssize_t>(i), static_cast<py::ssize_t>(j)) =
          pts[i][j];
    }
  }
  return out;
}

ExperimentConfig config_from_kwargs(const std::string& problem,
                                    const std::vector<int>& dims,
                                    const std::vector<std::string>& strategies,
                                    std::size_t m, std::size_t n, int reps,
                                    std::uint64_t seed, std::size_t pool,
                                    std::uint64_t oracle_samples,
                                    std::size_t k, bool reuse_gstar) {
  ExperimentConfig cfg;
  cfg.problem = problem;
  cfg.dims = dims;
  if (!strategies.empty()) {
    cfg.strategies.clear();
    for (const std::string& s : strategies) {
      cfg.strategies.push_back(strategy_from_string(s));
    }
  }
  cfg.gstar_m = m;
  cfg.is_n = n;
  cfg.reps = reps;
  cfg.seed = seed;
  cfg.pool = pool;
  cfg.oracle_samples = oracle_samples;
  cfg.fixed_k = k;
  cfg.reuse_gstar = reuse_gstar;
  return cfg;
}

}  // namespace

PYBIND11_MODULE(_hdis, m) {
  m.doc() = "Gaussian importance sampling with low-rank covariance projection";

  py::class_<LowRankCovariance>(m, "LowRankCovariance")
      .def(py::init<std::size_t, std::vector<Vec>, std::vector<double>>(),
           py::arg("n"), py::arg("directions"), py::arg("variances"))
      .def_static("identity", &LowRankCovariance::identity, py::arg("n"))
      .def_property_readonly("dim", &LowRankCovariance::dim)
      .def_property_readonly("rank", &LowRankCovariance::rank)
      .def_property_readonly("directions",
                             [](const LowRankCovariance& c) {
                               return points_to_numpy(c.directions());
                             })
      .def_property_readonly(
          "variances",
          [](const LowRankCovariance& c) { return c.variances(); })
      .def("to_dense",
           [](const LowRankCovariance& c) {
             return matrix_to_numpy(lowrank_to_dense(c));
           })
      .def("logdet", &lowrank_logdet)
      .def("inv_quad", &lowrank_inv_quad, py::arg("y"));

  py::class_<GaussianLaw>(m, "GaussianLaw")
      .def(py::init([](const Vec& mean, const py::array_t<double>& cov) {
             return GaussianLaw(mean, matrix_from_numpy(cov));
           }),
           py::arg("mean"), py::arg("cov"))
      .def(py::init<Vec, LowRankCovariance>(), py::arg("mean"),
           py::arg("cov"))
      .def_property_readonly("dim", &GaussianLaw::dim)
      .def_property_readonly("mean", &GaussianLaw::mean)
      .def("log_density", &GaussianLaw::log_density, py::arg("x"))
      .def("likelihood_ratio_log",
           [](const GaussianLaw& g, const Vec& x) {
             return likelihood_ratio_log(g, x);
           },
           py::arg("x"))
      .def("sample",
           [](const GaussianLaw& g, std::size_t count, std::uint64_t seed) {
             RandomStream rng(seed);
             return points_to_numpy(sample_gaussian(g, rng, count));
           },
           py::arg("count"), py::arg("seed"));

  py::class_<TestProblem>(m, "TestProblem")
      .def_readonly("name", &TestProblem::name)
      .def_readonly("dim", &TestProblem::dim)
      .def_property_readonly(
          "is_indicator",
          [](const TestProblem& p) { return p.kind == PhiKind::Indicator; })
      .def("phi", [](const TestProblem& p, const Vec& x) { return p.phi(x); },
           py::arg("x"))
      .def_property_readonly("analytic_integral",
                             [](const TestProblem& p) -> std::optional<double> {
                               if (!p.analytic) return std::nullopt;
                               return p.analytic->integral;
                             })
      .def_property_readonly("analytic_mean",
                             [](const TestProblem& p) -> std::optional<Vec> {
                               if (!p.analytic) return std::nullopt;
                               return p.analytic->m_star;
                             })
      .def_property_readonly(
          "analytic_cov",
          [](const TestProblem& p) -> std::optional<LowRankCovariance> {
            if (!p.analytic) return std::nullopt;
            return p.analytic->sigma_star;
          });

  py::class_<GStarSample>(m, "GStarSample")
      .def_property_readonly(
          "points",
          [](const GStarSample& s) { return points_to_numpy(s.points); })
      .def_readonly("weights", &GStarSample::weights)
      .def_readonly("proposals_used", &GStarSample::proposals_used)
      .def_readonly("pool_ess", &GStarSample::pool_ess);

  m.def("ell", &ell, py::arg("x"));
  m.def("normal_cdf", &normal_cdf, py::arg("x"));
  m.def("normal_quantile", &normal_quantile, py::arg("p"));
  m.def("gamma66_cdf", &gamma66_cdf, py::arg("x"));
  m.def("gamma66_quantile", &gamma66_quantile, py::arg("p"));

  m.def("eigendecompose",
        [](const py::array_t<double>& a) {
          const Spectrum s = sym_eigendecompose(matrix_from_numpy(a));
          std::vector<Vec> dirs;
          for (const Eigenpair& ep : s.pairs) dirs.push_back(ep.direction);
          return py::make_tuple(s.values(), points_to_numpy(dirs));
        },
        py::arg("a"),
        "Eigenvalues (descending) and unit eigenvectors (rows) of a "
        "symmetric matrix");

  m.def("ell_order_values",
        [](const py::array_t<double>& a) {
          const EllOrderedSpectrum o =
              ell_order(sym_eigendecompose(matrix_from_numpy(a)));
          std::vector<Vec> dirs;
          for (const Eigenpair& ep : o.pairs) dirs.push_back(ep.direction);
          return py::make_tuple(o.values(), points_to_numpy(dirs));
        },
        py::arg("a"));

  m.def("choose_k",
        [](const std::vector<double>& ell_ordered_values) {
          return choose_k(ell_ordered_values);
        },
        py::arg("ell_ordered_values"));

  m.def("optimal_projection",
        [](const py::array_t<double>& sigma_star, std::size_t k) {
          const EllOrderedSpectrum o =
              ell_order(sym_eigendecompose(matrix_from_numpy(sigma_star)));
          return optimal_projection(o, k == 0 ? choose_k(o) : k);
        },
        py::arg("sigma_star"), py::arg("k") = 0,
        "Best identity-plus-rank-k covariance for a given target; k = 0 "
        "selects the rank by the largest ell-gap");

  m.def("partial_kl",
        [](const py::array_t<double>& sigma,
           const py::array_t<double>& sigma_star) {
          return partial_kl_dense(matrix_from_numpy(sigma),
                                  matrix_from_numpy(sigma_star));
        },
        py::arg("sigma"), py::arg("sigma_star"));
  m.def("partial_kl_lowrank",
        [](const LowRankCovariance& c, const py::array_t<double>& sigma_star) {
          return partial_kl_lowrank(c, matrix_from_numpy(sigma_star));
        },
        py::arg("cov"), py::arg("sigma_star"));
  m.def("kl_relative_error", &kl_relative_error, py::arg("d_sigma"),
        py::arg("d_star"));

  m.def("make_problem", &make_problem, py::arg("name"), py::arg("n"));
  m.def("problem_names", &problem_names);

  m.def("rejection_sample_gstar",
        [](const TestProblem& p, std::size_t m_count, std::uint64_t seed,
           std::uint64_t budget) {
          RandomStream rng(seed);
          return rejection_sample_gstar(p, m_count, rng, budget);
        },
        py::arg("problem"), py::arg("m"), py::arg("seed"),
        py::arg("budget") = 1000000000ull);
  m.def("sir_sample_gstar",
        [](const TestProblem& p, std::size_t m_count, std::size_t pool,
           std::uint64_t seed) {
          RandomStream rng(seed);
          return sir_sample_gstar(p, m_count, pool, rng);
        },
        py::arg("problem"), py::arg("m"), py::arg("pool"), py::arg("seed"));
  m.def("empirical_mean", &empirical_mean, py::arg("sample"));
  m.def("empirical_cov",
        [](const GStarSample& s) { return matrix_to_numpy(empirical_cov(s)); },
        py::arg("sample"));
  m.def("build_projected_cov",
        [](const py::array_t<double>& sigma_hat,
           const std::vector<Vec>& directions) {
          return build_projected_cov(matrix_from_numpy(sigma_hat), directions);
        },
        py::arg("sigma_hat"), py::arg("directions"));

  m.def("is_estimate",
        [](const TestProblem& p, const GaussianLaw& g, std::size_t n,
           std::uint64_t seed) {
          RandomStream rng(seed);
          return is_estimate(p, g, n, rng);
        },
        py::arg("problem"), py::arg("law"), py::arg("n_samples"),
        py::arg("seed"));
  m.def("crude_mc_estimate",
        [](const TestProblem& p, std::uint64_t n, std::uint64_t seed) {
          RandomStream rng(seed);
          const CrudeMcResult r = crude_mc_estimate(p, n, rng);
          return py::make_tuple(r.estimate, r.standard_error);
        },
        py::arg("problem"), py::arg("n_samples"), py::arg("seed"));

  m.def("run_experiment_csv",
        [](const std::string& problem, const std::vector<int>& dims,
           const std::vector<std::string>& strategies, std::size_t m,
           std::size_t n, int reps, std::uint64_t seed, std::size_t pool,
           std::uint64_t oracle_samples, std::size_t k, bool reuse_gstar) {
          const ExperimentConfig cfg = config_from_kwargs(
              problem, dims, strategies, m, n, reps, seed, pool,
              oracle_samples, k, reuse_gstar);
          return render_report(run_experiment(cfg), ReportFormat::Csv);
        },
        py::arg("problem"), py::arg("dims"),
        py::arg("strategies") = std::vector<std::string>{}, py::arg("M") = 500,
        py::arg("N") = 2000, py::arg("reps") = 50, py::arg("seed") = 1,
        py::arg("pool") = 0, py::arg("oracle_samples") = 10000000ull,
        py::arg("k") = 0, py::arg("reuse_gstar") = false,
        "Run the strategy comparison and return the CSV report");

  m.def("run_dimension_sweep_csv",
        [](const std::string& problem, const std::vector<int>& dims,
           std::size_t m, int reps, std::uint64_t seed,
           std::uint64_t oracle_samples) {
          ExperimentConfig cfg;
          cfg.problem = problem;
          cfg.dims = dims;
          cfg.gstar_m = m;
          cfg.reps = reps;
          cfg.seed = seed;
          cfg.oracle_samples = oracle_samples;
          return render_sweep_csv(run_dimension_sweep(cfg));
        },
        py::arg("problem"), py::arg("dims"), py::arg("M") = 200,
        py::arg("reps") = 50, py::arg("seed") = 1,
        py::arg("oracle_samples") = 10000000ull);
}
