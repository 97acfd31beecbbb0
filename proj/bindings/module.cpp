// Copyright 2026 The Tailrisk Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "tailrisk/distributions.hpp"
#include "tailrisk/risk_measures.hpp"
#include "tailrisk/tail_dependence.hpp"
#include "tailrisk/tail_estimators.hpp"
#include "tailrisk/threshold_selection.hpp"
#include "tailrisk/validation.hpp"

namespace py = pybind11;
using namespace tailrisk;

namespace {

Sample make_sample(const std::vector<double>& values) { return Sample(values); }

BivariateSample make_bivariate(const std::vector<std::pair<double, double>>& pairs) {
  std::vector<std::array<double, 2>> p(pairs.size());
  for (std::size_t i = 0; i < pairs.size(); ++i) p[i] = {pairs[i].first, pairs[i].second};
  return BivariateSample(std::move(p));
}

}  // namespace

PYBIND11_MODULE(_tailrisk, mod) {
  mod.doc() = "Generalized Pareto tail analysis: estimation, threshold selection, "
              "Monte-Carlo qq bands, reinsurance premiums, tail dependence";

  py::register_exception<Error>(mod, "TailriskError", PyExc_RuntimeError);

  // -- samples ---------------------------------------------------------------
  py::class_<Sample>(mod, "Sample")
      .def(py::init(&make_sample), py::arg("values"))
      .def("__len__", &Sample::size)
      .def("values", &Sample::values)
      .def("__getitem__",
           [](const Sample& s, std::size_t i) {
             if (i >= s.size()) throw py::index_error();
             return s[i];
           });

  // -- distributions ------------------------------------------------------------
  py::class_<GpdParams>(mod, "GpdParams")
      .def(py::init<double, double>(), py::arg("gamma"), py::arg("sigma"))
      .def_readonly("gamma", &GpdParams::gamma)
      .def_readonly("sigma", &GpdParams::sigma);

  mod.def("gpd_cdf", &gpd_cdf, py::arg("x"), py::arg("params"));
  mod.def("gpd_quantile", &gpd_quantile, py::arg("q"), py::arg("params"));
  mod.def("psi", &psi, py::arg("t"), py::arg("gamma"));

  py::enum_<Family>(mod, "Family")
      .value("Frechet", Family::Frechet)
      .value("LogDisturbedPareto", Family::LogDisturbedPareto)
      .value("ExactPareto", Family::ExactPareto)
      .value("ExactGpd", Family::ExactGpd)
      .value("UnitExponential", Family::UnitExponential);

  mod.def(
      "sample",
      [](Family family, double gamma, std::size_t n, std::uint64_t seed) {
        return sample(SyntheticSpec{family, gamma, n, seed});
      },
      py::arg("family"), py::arg("gamma"), py::arg("n"), py::arg("seed") = 0);

  // -- tail estimators -----------------------------------------------------------
  py::class_<TailView>(mod, "TailView")
      .def_readonly("k", &TailView::k)
      .def_readonly("n", &TailView::n)
      .def_readonly("order_stats", &TailView::order_stats)
      .def("threshold", &TailView::threshold)
      .def("quantile", &TailView::quantile, py::arg("t"));

  mod.def("tail_view", &tail_view, py::arg("sample"), py::arg("k"));
  mod.def("hill", py::overload_cast<const TailView&>(&hill), py::arg("view"));
  mod.def(
      "hill",
      [](const Sample& s, std::size_t k) { return hill(tail_view(s, k)); },
      py::arg("sample"), py::arg("k"));
  mod.def("m_nk", py::overload_cast<const TailView&>(&m_nk), py::arg("view"));
  mod.def("asymptotic_cov", [](double gamma) {
    const auto c = asymptotic_cov(gamma);
    return std::vector<std::vector<double>>{{c[0][0], c[0][1]}, {c[1][0], c[1][1]}};
  });

  py::class_<GpdFit>(mod, "GpdFit")
      .def_readonly("gamma_hat", &GpdFit::gamma_hat)
      .def_readonly("sigma_hat", &GpdFit::sigma_hat)
      .def_readonly("k", &GpdFit::k)
      .def_readonly("n", &GpdFit::n)
      .def_readonly("threshold", &GpdFit::threshold)
      .def_readonly("loglik", &GpdFit::loglik);

  mod.def("gpd_ml_fit", py::overload_cast<const TailView&>(&gpd_ml_fit), py::arg("view"));
  mod.def(
      "gpd_ml_fit",
      [](const Sample& s, std::size_t k) { return gpd_ml_fit(tail_view(s, k)); },
      py::arg("sample"), py::arg("k"));

  py::enum_<TailEstimator>(mod, "TailEstimator")
      .value("Hill", TailEstimator::Hill)
      .value("GpdMl", TailEstimator::GpdMl);

  py::class_<EstimatorTrace>(mod, "EstimatorTrace")
      .def_readonly("ks", &EstimatorTrace::ks)
      .def_readonly("estimates", &EstimatorTrace::estimates);

  mod.def("trace", &trace, py::arg("sample"), py::arg("estimator"), py::arg("k_min"),
          py::arg("k_max"));

  // -- threshold selection -----------------------------------------------------------
  py::class_<SequentialConfig>(mod, "SequentialConfig")
      .def(py::init<>())
      .def_readwrite("r_factor", &SequentialConfig::r_factor)
      .def_readwrite("xi", &SequentialConfig::xi)
      .def_readwrite("lambda_", &SequentialConfig::lambda);

  py::class_<SequentialSelection>(mod, "SequentialSelection")
      .def_readonly("k", &SequentialSelection::k)
      .def_readonly("pilot_gamma", &SequentialSelection::pilot_gamma)
      .def_readonly("r", &SequentialSelection::r)
      .def_readonly("rho", &SequentialSelection::rho)
      .def_readonly("rho_fallback", &SequentialSelection::rho_fallback)
      .def_readonly("kbar_r", &SequentialSelection::kbar_r)
      .def_readonly("kbar_r_xi", &SequentialSelection::kbar_r_xi);

  mod.def("select_k_sequential", &select_k_sequential, py::arg("sample"),
          py::arg("config") = SequentialConfig{});

  py::class_<BootstrapConfig>(mod, "BootstrapConfig")
      .def(py::init<>())
      .def_readwrite("epsilon", &BootstrapConfig::epsilon)
      .def_readwrite("n1_candidates", &BootstrapConfig::n1_candidates)
      .def_readwrite("replicates", &BootstrapConfig::replicates)
      .def_readwrite("seed", &BootstrapConfig::seed);

  py::class_<BootstrapSelection>(mod, "BootstrapSelection")
      .def_readonly("k", &BootstrapSelection::k)
      .def_readonly("n1", &BootstrapSelection::n1)
      .def_readonly("n2", &BootstrapSelection::n2)
      .def_readonly("k0_n1", &BootstrapSelection::k0_n1)
      .def_readonly("k0_n2", &BootstrapSelection::k0_n2)
      .def_readonly("q_ratio", &BootstrapSelection::q_ratio);

  mod.def("select_k_bootstrap", &select_k_bootstrap, py::arg("sample"), py::arg("config"));

  mod.def(
      "kbar",
      [](const Sample& s, double r) {
        const auto res = kbar(s, r);
        return std::make_pair(res.k, res.found);
      },
      py::arg("sample"), py::arg("r"));

  // -- validation ----------------------------------------------------------------
  py::class_<SignedMeasure>(mod, "SignedMeasure")
      .def_static("hill_tail", &SignedMeasure::hill_tail, py::arg("gamma"))
      .def_static("hill_scale", &SignedMeasure::hill_scale, py::arg("gamma"))
      .def_static("general", &SignedMeasure::general, py::arg("density"), py::arg("atoms"));

  py::class_<WeightFunction>(mod, "WeightFunction")
      .def_static("plain_power", &WeightFunction::plain_power, py::arg("eps"))
      .def_static("sigma_normalized", &WeightFunction::sigma_normalized, py::arg("a"))
      .def_static("custom", &WeightFunction::custom, py::arg("fn"))
      .def("__call__", &WeightFunction::operator(), py::arg("t"));

  py::class_<HillMoments>(mod, "HillMoments")
      .def_readonly("mean_coeffs", &HillMoments::mean_coeffs)
      .def_readonly("variance", &HillMoments::variance);

  mod.def("hill_integral_moments", &hill_integral_moments, py::arg("m"));
  mod.def("simulate_sup_distribution", &simulate_sup_distribution, py::arg("gamma"),
          py::arg("nu"), py::arg("h"), py::arg("m"), py::arg("n_sims"), py::arg("seed"));
  mod.def("critical_value", &critical_value, py::arg("sorted_sups"), py::arg("alpha"));

  py::class_<BandResult>(mod, "BandResult")
      .def_readonly("t", &BandResult::t)
      .def_readonly("x", &BandResult::x)
      .def_readonly("y", &BandResult::y)
      .def_readonly("center", &BandResult::center)
      .def_readonly("lower", &BandResult::lower)
      .def_readonly("upper", &BandResult::upper)
      .def_readonly("slope", &BandResult::slope)
      .def_readonly("c_alpha", &BandResult::c_alpha)
      .def_readonly("alpha", &BandResult::alpha)
      .def_readonly("k", &BandResult::k)
      .def_readonly("threshold", &BandResult::threshold)
      .def_readonly("all_inside", &BandResult::all_inside);

  mod.def("qq_band", &qq_band, py::arg("sample"), py::arg("k"), py::arg("h"),
          py::arg("alpha"), py::arg("m") = 1000, py::arg("n_sims") = 10000,
          py::arg("seed") = 12345);
  mod.def("gpd_band", &gpd_band, py::arg("sample"), py::arg("fit"), py::arg("nu_T"),
          py::arg("nu_S"), py::arg("alpha"), py::arg("m") = 1000,
          py::arg("n_sims") = 10000, py::arg("seed") = 12345);

  // -- risk measures ---------------------------------------------------------------
  py::class_<XlContract>(mod, "XlContract")
      .def(py::init<double, double>(), py::arg("retention"), py::arg("cover"))
      .def_readonly("retention", &XlContract::retention)
      .def_readonly("cover", &XlContract::cover);

  py::class_<CiBounds>(mod, "CiBounds")
      .def_readonly("lower", &CiBounds::lower)
      .def_readonly("upper", &CiBounds::upper)
      .def_readonly("alpha", &CiBounds::alpha);

  py::class_<PremiumEstimate>(mod, "PremiumEstimate")
      .def_readonly("value", &PremiumEstimate::value)
      .def_readonly("k", &PremiumEstimate::k)
      .def_readonly("n", &PremiumEstimate::n)
      .def_readonly("gamma_hat", &PremiumEstimate::gamma_hat)
      .def_readonly("sigma_hat", &PremiumEstimate::sigma_hat)
      .def_readonly("threshold", &PremiumEstimate::threshold)
      .def_readonly("retention", &PremiumEstimate::retention)
      .def_readonly("cover", &PremiumEstimate::cover)
      .def_readonly("retention_below_threshold",
                    &PremiumEstimate::retention_below_threshold);

  mod.def("xl_premium", &xl_premium, py::arg("sample"), py::arg("k"), py::arg("contract"));
  mod.def("xl_premium_with_params", &xl_premium_with_params, py::arg("gamma"),
          py::arg("sigma"), py::arg("threshold"), py::arg("k"), py::arg("n"),
          py::arg("contract"));
  mod.def("premium_ci", &premium_ci, py::arg("estimate"), py::arg("alpha"));
  mod.def("var_estimate", &var_estimate, py::arg("sample"), py::arg("k"), py::arg("alpha"));
  mod.def("var_estimate_with_params", &var_estimate_with_params, py::arg("gamma"),
          py::arg("sigma"), py::arg("threshold"), py::arg("k"), py::arg("n"),
          py::arg("alpha"));

  // -- tail dependence ----------------------------------------------------------------
  py::class_<BivariateSample>(mod, "BivariateSample")
      .def(py::init(&make_bivariate), py::arg("pairs"))
      .def("__len__", [](const BivariateSample& b) { return b.pairs.size(); });

  py::class_<RankTransformed>(mod, "RankTransformed")
      .def_readonly("y", &RankTransformed::y)
      .def_readonly("t", &RankTransformed::t);

  mod.def("rank_transform", &rank_transform, py::arg("sample"));

  py::class_<TailDepFit>(mod, "TailDepFit")
      .def_readonly("eta_hat", &TailDepFit::eta_hat)
      .def_readonly("k", &TailDepFit::k)
      .def_readonly("ci", &TailDepFit::ci)
      .def_readonly("model_violation", &TailDepFit::model_violation);

  mod.def("eta_fit", &eta_fit, py::arg("sample"), py::arg("k"), py::arg("estimator"),
          py::arg("alpha") = 0.05);
  mod.def("d_estimate",
          py::overload_cast<const BivariateSample&, std::size_t, double, double>(&d_estimate),
          py::arg("sample"), py::arg("m"), py::arg("y1"), py::arg("y2"));
  mod.def("d_extend", &d_extend, py::arg("d_boundary"), py::arg("eta"), py::arg("y1"),
          py::arg("y2"));

  py::class_<DProfile>(mod, "DProfile")
      .def_readonly("x", &DProfile::x)
      .def_readonly("d", &DProfile::d)
      .def_readonly("lower", &DProfile::lower)
      .def_readonly("upper", &DProfile::upper)
      .def_readonly("m", &DProfile::m);

  mod.def("d_profile", &d_profile, py::arg("sample"), py::arg("m"), py::arg("grid"),
          py::arg("alpha") = 0.05);

#ifdef VERSION_INFO
#define TR_STR2(x) #x
#define TR_STR(x) TR_STR2(x)
  mod.attr("__version__") = TR_STR(VERSION_INFO);
#else
  mod.attr("__version__") = "dev";
#endif
}
