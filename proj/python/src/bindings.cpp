#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "bpo/bounds.hpp"
#include "bpo/core.hpp"
#include "bpo/error.hpp"
#include "bpo/exact.hpp"
#include "bpo/harness.hpp"
#include "bpo/policies.hpp"
#include "bpo/sim.hpp"

namespace py = pybind11;
using namespace bpo;

namespace {

PolicyDescriptor descriptor(const std::string& kind, std::optional<double> delta, std::optional<double> alpha,
                            std::vector<double> bias) {
  PolicyDescriptor d;
  if (kind == "greedy") {
    d.kind = IndexKind::Greedy;
  } else if (kind == "lcb") {
    d.kind = IndexKind::Lcb;
  } else if (kind == "ucb") {
    d.kind = IndexKind::Ucb;
  } else if (kind == "alpha") {
    d.kind = IndexKind::ConstantAlpha;
  } else if (kind == "custom") {
    d.kind = IndexKind::Custom;
  } else {
    throw Error(Errc::ParseError, "unknown policy kind \"" + kind + "\"");
  }
  d.delta = delta;
  d.alpha = alpha;
  d.bias = std::move(bias);
  return d;
}

CorollaryKind corollary(const std::string& kind) {
  if (kind == "greedy") return CorollaryKind::Greedy;
  if (kind == "lcb") return CorollaryKind::Lcb;
  if (kind == "ucb") return CorollaryKind::Ucb;
  throw Error(Errc::ParseError, "unknown corollary kind \"" + kind + "\"");
}

py::dict report_dict(const BoundReport& r) {
  py::list g;
  for (const auto& s : r.g_star) {
    g.append(py::dict(py::arg("rank") = s.rank, py::arg("eta") = s.eta, py::arg("value") = s.value));
  }
  return py::dict(py::arg("method") = r.method, py::arg("regret_bound") = r.regret_bound,
                  py::arg("rank_cdf_bound") = r.rank_cdf_bound, py::arg("g_star") = g);
}

py::dict sim_dict(const SimResult& r) {
  return py::dict(py::arg("mean_regret") = r.mean_regret, py::arg("std_error") = r.std_error,
                  py::arg("pick_counts") = r.pick_counts, py::arg("rank_cdf") = r.rank_cdf, py::arg("reps") = r.reps);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Offline best-arm selection from logged Gaussian bandit data: bounds, exact regret, simulation.";

  static py::exception<Error> numerical_error(m, "NumericalError", PyExc_ArithmeticError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      if (is_validation_error(e.code())) {
        PyErr_SetString(PyExc_ValueError, e.what());
      } else {
        py::set_error(numerical_error, e.what());
      }
    }
  });

  py::class_<BanditInstance>(m, "Instance")
      .def(py::init([](std::vector<double> means, std::vector<double> counts, bool strict) {
             return validate_instance(std::move(means), std::move(counts), strict);
           }),
           py::arg("means"), py::arg("counts"), py::arg("strict") = true)
      .def_property_readonly("means", &BanditInstance::means)
      .def_property_readonly("counts", &BanditInstance::counts)
      .def_property_readonly("arms", &BanditInstance::arms)
      .def("__repr__", [](const BanditInstance& i) { return "<Instance k=" + std::to_string(i.arms()) + ">"; });

  m.def("beta_delta", &beta_delta, py::arg("k"), py::arg("delta"));

  m.def(
      "policy_bias",
      [](const std::string& kind, const std::vector<double>& counts, std::optional<double> delta,
         std::optional<double> alpha, std::vector<double> bias) {
        return make_index_policy(descriptor(kind, delta, alpha, std::move(bias)), counts).bias;
      },
      py::arg("kind"), py::arg("counts"), py::arg("delta") = py::none(), py::arg("alpha") = py::none(),
      py::arg("bias") = std::vector<double>{}, "Bias vector of an index policy for the given counts.");

  m.def(
      "select_arm",
      [](const std::vector<double>& bias, std::vector<double> emp_means, std::vector<double> counts) {
        return select_arm(IndexPolicy{bias}, make_stats(std::move(emp_means), std::move(counts))).value();
      },
      py::arg("bias"), py::arg("emp_means"), py::arg("counts"), "One-based arm chosen by the index rule.");

  m.def(
      "exact_pick_probabilities",
      [](const BanditInstance& inst, const std::vector<double>& bias) {
        const auto d = exact_pick_probabilities(inst, IndexPolicy{bias});
        return py::dict(py::arg("probs") = d.probs, py::arg("regret") = d.regret,
                        py::arg("rank_cdf") = rank_cdf_from_probs(inst, d.probs));
      },
      py::arg("instance"), py::arg("bias"));

  m.def(
      "exact_regret", [](const BanditInstance& inst, const std::vector<double>& bias) {
        return exact_regret(inst, IndexPolicy{bias});
      },
      py::arg("instance"), py::arg("bias"));

  m.def(
      "regret_bound", [](const BanditInstance& inst, const std::vector<double>& bias) {
        return report_dict(regret_bound_general(inst, bias));
      },
      py::arg("instance"), py::arg("bias"));

  m.def(
      "regret_bound_simplified",
      [](const BanditInstance& inst, const std::vector<double>& bias, double delta) {
        return regret_bound_simplified(inst, bias, delta);
      },
      py::arg("instance"), py::arg("bias"), py::arg("delta"));

  m.def(
      "regret_bound_corollary",
      [](const std::string& kind, const BanditInstance& inst, double delta) {
        return regret_bound_corollary(corollary(kind), inst, delta);
      },
      py::arg("kind"), py::arg("instance"), py::arg("delta"));

  m.def(
      "minimax_upper",
      [](const std::vector<double>& counts) {
        const auto r = minimax_upper(counts);
        return py::make_tuple(r.delta_star, r.bound);
      },
      py::arg("counts"), "(delta_star, bound)");

  m.def(
      "minimax_lower_shape",
      [](const std::vector<double>& counts, double constant) { return minimax_lower_shape(counts, constant); },
      py::arg("counts"), py::arg("constant") = 1.0);

  m.def(
      "lcb_dominance",
      [](std::size_t k, std::size_t m, double delta, const std::vector<double>& means) {
        const auto d = lcb_dominance(k, m, delta, means);
        return py::dict(py::arg("fraction_exact") = d.fraction_exact, py::arg("bound") = d.bound,
                        py::arg("subsets") = d.subsets, py::arg("ucb_better") = d.ucb_better,
                        py::arg("ucb_subset") = d.ucb_subset);
      },
      py::arg("k"), py::arg("m"), py::arg("delta"), py::arg("means"));

  m.def(
      "hard_pair_log_ratio",
      [](double n1, double n2, double beta) { return hard_pair_ratio(make_hard_pair(n1, n2), beta).log_ratio; },
      py::arg("n1"), py::arg("n2"), py::arg("beta"));

  m.def(
      "ratio_lower_bound_log", [](double n_min, double beta) { return ratio_lower_bound_beta(n_min, beta).log_value; },
      py::arg("n_min"), py::arg("beta"));

  m.def("prior_delta", &prior_delta, py::arg("n"), py::arg("m"));

  m.def(
      "simulate",
      [](const BanditInstance& inst, const std::vector<double>& bias, std::size_t reps, std::uint64_t seed,
         std::size_t threads) {
        SimResult r;
        {
          py::gil_scoped_release release;
          r = mc_regret(inst, IndexPolicy{bias}, {reps, seed, threads});
        }
        return sim_dict(r);
      },
      py::arg("instance"), py::arg("bias"), py::arg("reps"), py::arg("seed") = 0, py::arg("threads") = 1);

  m.def(
      "hundred_arm_instance",
      [](const std::string& name, double total_n) {
        return harness::gen_hundred_arm(harness::parse_hundred_arm(name), total_n);
      },
      py::arg("name"), py::arg("total_n"));
}
