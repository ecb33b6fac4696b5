#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "noma/baselines.hpp"
#include "noma/channel.hpp"
#include "noma/config.hpp"
#include "noma/harness.hpp"
#include "noma/oracle.hpp"
#include "noma/oups.hpp"
#include "noma/rate.hpp"
#include "noma/uspa.hpp"

namespace py = pybind11;
using namespace noma;

namespace {

EffectiveWeights to_weights(std::vector<double> w) { return EffectiveWeights{std::move(w)}; }

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "NOMA downlink user selection, power allocation and scheduling";
  m.attr("__version__") = NOMA_VERSION;

  auto config_error = py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
  (void)config_error;
  py::register_exception<NumericalError>(m, "NumericalError", PyExc_ArithmeticError);

  py::class_<UserProfile>(m, "UserProfile")
      .def(py::init([](std::size_t id, double weight, double min_avg_rate, double distance_m,
                       double noise_power) {
             return UserProfile{id, weight, min_avg_rate, distance_m, noise_power};
           }),
           py::arg("id"), py::arg("weight") = 1.0, py::arg("min_avg_rate") = 0.0,
           py::arg("distance_m") = 100.0, py::arg("noise_power") = dbm_to_watts(-104.0))
      .def_readwrite("id", &UserProfile::id)
      .def_readwrite("weight", &UserProfile::weight)
      .def_readwrite("min_avg_rate", &UserProfile::min_avg_rate)
      .def_readwrite("distance_m", &UserProfile::distance_m)
      .def_readwrite("noise_power", &UserProfile::noise_power)
      .def("__repr__", [](const UserProfile& u) {
        return "UserProfile(id=" + std::to_string(u.id) + ", distance_m=" + format_double(u.distance_m) + ")";
      });

  py::class_<FadingParams>(m, "FadingParams")
      .def(py::init<>())
      .def_readwrite("pathloss_const_db", &FadingParams::pathloss_const_db)
      .def_readwrite("pathloss_slope_db", &FadingParams::pathloss_slope_db)
      .def_readwrite("shadowing_sigma_db", &FadingParams::shadowing_sigma_db)
      .def_readwrite("rng_seed", &FadingParams::rng_seed)
      .def_readwrite("shadowing_per_slot", &FadingParams::shadowing_per_slot);

  py::class_<ChannelState>(m, "ChannelState")
      .def_readonly("slot", &ChannelState::slot)
      .def_readonly("gain_sq", &ChannelState::gain_sq)
      .def_readonly("ncr", &ChannelState::ncr)
      .def("__len__", &ChannelState::size);

  m.def("channel_from_ncr", [](std::vector<double> ncr, std::int64_t slot) { return channel_from_ncr(ncr, slot); },
        py::arg("ncr"), py::arg("slot") = 1);
  m.def("make_channel_state",
        [](std::int64_t slot, std::vector<double> gain_sq, std::vector<double> noise) {
          return make_channel_state(slot, std::move(gain_sq), noise);
        },
        py::arg("slot"), py::arg("gain_sq"), py::arg("noise"));
  m.def("pathloss_db", &pathloss_db, py::arg("distance_m"), py::arg("params") = FadingParams{});

  py::class_<ChannelProcess>(m, "ChannelProcess")
      .def(py::init<std::vector<UserProfile>, FadingParams, std::uint64_t>(), py::arg("users"),
           py::arg("params") = FadingParams{}, py::arg("trial") = 0)
      .def("next", &ChannelProcess::next)
      .def_property_readonly("large_scale", [](const ChannelProcess& p) {
        auto s = p.large_scale();
        return std::vector<double>(s.begin(), s.end());
      });

  py::class_<Allocation>(m, "Allocation")
      .def(py::init([](std::vector<double> powers, std::optional<std::vector<bool>> selected) {
             Allocation a{std::move(powers), {}};
             if (selected) {
               a.selected = std::move(*selected);
             } else {
               select_by_power(a);
             }
             check_allocation(a);
             return a;
           }),
           py::arg("powers"), py::arg("selected") = py::none())
      .def_readonly("powers", &Allocation::powers)
      .def_readonly("selected", &Allocation::selected)
      .def_property_readonly("selected_ids", &Allocation::selected_ids)
      .def_property_readonly("total_power", &Allocation::total_power)
      .def("__len__", &Allocation::size);

  m.def("sic_order", &sic_order, py::arg("channel"));
  m.def("rates", &rates, py::arg("allocation"), py::arg("channel"));
  m.def("weighted_sum", [](std::vector<double> r, std::vector<double> w) { return weighted_sum(r, w); },
        py::arg("rates"), py::arg("weights"));

  py::class_<PowerSplit>(m, "PowerSplit")
      .def_readonly("last_sic", &PowerSplit::last_sic)
      .def_readonly("companion", &PowerSplit::companion);

  py::class_<PairDecision>(m, "PairDecision")
      .def_readonly("last_sic", &PairDecision::last_sic)
      .def_readonly("companion", &PairDecision::companion)
      .def_readonly("p_last", &PairDecision::p_last)
      .def_readonly("p_companion", &PairDecision::p_companion)
      .def_readonly("wsr", &PairDecision::wsr);

  m.def("two_user_split", &two_user_split, py::arg("ncr_last"), py::arg("ncr_companion"), py::arg("w_last"),
        py::arg("w_companion"), py::arg("p_max"));
  m.def("companion",
        [](std::vector<std::size_t> order, std::size_t position, std::vector<double> w) {
          return companion(order, position, to_weights(std::move(w)));
        },
        py::arg("order"), py::arg("position"), py::arg("weights"));
  m.def("uspa_decide",
        [](const ChannelState& c, std::vector<double> w, double p) { return uspa_decide(c, to_weights(std::move(w)), p); },
        py::arg("channel"), py::arg("weights"), py::arg("p_max"));
  m.def("uspa_allocate",
        [](const ChannelState& c, std::vector<double> w, double p) {
          return uspa_allocate(c, to_weights(std::move(w)), p);
        },
        py::arg("channel"), py::arg("weights"), py::arg("p_max"));
  m.def("oma_allocate",
        [](const ChannelState& c, std::vector<double> w, double p) {
          return oma_allocate(c, to_weights(std::move(w)), p);
        },
        py::arg("channel"), py::arg("weights"), py::arg("p_max"));

  m.def("two_user_objective", &two_user_objective, py::arg("p_last"), py::arg("ncr_last"),
        py::arg("ncr_companion"), py::arg("w_last"), py::arg("w_companion"), py::arg("p_max"));
  m.def("golden_two_user", &golden_two_user, py::arg("ncr_last"), py::arg("ncr_companion"), py::arg("w_last"),
        py::arg("w_companion"), py::arg("p_max"));

  py::class_<GridSpec>(m, "GridSpec")
      .def(py::init([](int resolution, int max_subset_size) { return GridSpec{resolution, max_subset_size}; }),
           py::arg("resolution") = 1001, py::arg("max_subset_size") = 3)
      .def_readwrite("resolution", &GridSpec::resolution)
      .def_readwrite("max_subset_size", &GridSpec::max_subset_size);

  py::class_<GridResult>(m, "GridResult")
      .def_readonly("allocation", &GridResult::allocation)
      .def_readonly("wsr", &GridResult::wsr);

  m.def("grid_q2",
        [](const ChannelState& c, std::vector<double> w, double p, const GridSpec& spec) {
          return grid_q2(c, to_weights(std::move(w)), p, spec);
        },
        py::arg("channel"), py::arg("weights"), py::arg("p_max"), py::arg("spec") = GridSpec{});

  py::class_<DualState>(m, "DualState")
      .def_static("initial", &DualState::initial, py::arg("n"))
      .def_readwrite("lam", &DualState::lambda)
      .def_readwrite("t", &DualState::t)
      .def_readwrite("cum_rate", &DualState::cum_rate)
      .def_readwrite("avg_rate", &DualState::avg_rate);

  m.def("effective_weights",
        [](const std::vector<UserProfile>& users, const DualState& dual) {
          return effective_weights(users, dual).values;
        },
        py::arg("users"), py::arg("dual"));
  m.def("dual_update",
        [](const DualState& dual, std::vector<double> realized, std::vector<double> requirements, double zeta) {
          return dual_update(dual, realized, requirements, zeta);
        },
        py::arg("dual"), py::arg("realized"), py::arg("requirements"), py::arg("zeta"));

  py::enum_<AllocatorKind>(m, "AllocatorKind")
      .value("uspa", AllocatorKind::uspa)
      .value("oracle", AllocatorKind::oracle)
      .value("oma", AllocatorKind::oma);

  py::class_<ScenarioConfig>(m, "ScenarioConfig")
      .def_static("qos_scenario", &ScenarioConfig::qos_scenario)
      .def_static("gap_scenario", &ScenarioConfig::gap_scenario)
      .def_readwrite("users", &ScenarioConfig::users)
      .def_readwrite("p_max", &ScenarioConfig::p_max)
      .def_readwrite("fading", &ScenarioConfig::fading)
      .def_readwrite("slots", &ScenarioConfig::slots)
      .def_readwrite("trials", &ScenarioConfig::trials)
      .def_readwrite("allocator", &ScenarioConfig::allocator)
      .def_readwrite("grid", &ScenarioConfig::grid)
      .def_property(
          "seed", [](const ScenarioConfig& c) { return c.fading.rng_seed; },
          [](ScenarioConfig& c, std::uint64_t s) { c.fading.rng_seed = s; })
      .def("validate", [](const ScenarioConfig& c) { validate(c); })
      .def("to_text", [](const ScenarioConfig& c) { return to_config_text(c); })
      .def("hash", [](const ScenarioConfig& c) { return config_hash(c); });

  m.def("parse_config", &parse_config, py::arg("text"));
  m.def("load_config", &load_config, py::arg("path"));

  py::class_<Checkpoint>(m, "Checkpoint")
      .def_readonly("t", &Checkpoint::t)
      .def_readonly("avg_rate", &Checkpoint::avg_rate)
      .def_readonly("lam", &Checkpoint::lambda)
      .def_readonly("avg_wsr", &Checkpoint::avg_wsr);

  py::class_<Summary>(m, "Summary")
      .def_readonly("slots", &Summary::slots)
      .def_readonly("avg_wsr", &Summary::avg_wsr)
      .def_readonly("avg_rate", &Summary::avg_rate)
      .def_readonly("qos_slack", &Summary::qos_slack)
      .def_readonly("lam", &Summary::lambda)
      .def_readonly("median_call_ns", &Summary::median_call_ns)
      .def_readonly("checkpoints", &Summary::checkpoints);

  m.def("run",
        [](const ScenarioConfig& config, AllocatorKind kind, std::uint64_t trial, bool measure_time) {
          RunOptions options;
          options.trial = trial;
          options.measure_time = measure_time;
          py::gil_scoped_release release;
          return run(config, make_allocator(kind, config.grid), options);
        },
        py::arg("config"), py::arg("allocator") = AllocatorKind::uspa, py::arg("trial") = 0,
        py::arg("measure_time") = false);

  py::class_<GapRow>(m, "GapRow")
      .def_readonly("trial", &GapRow::trial)
      .def_readonly("wsr_uspa", &GapRow::wsr_uspa)
      .def_readonly("wsr_oracle", &GapRow::wsr_oracle)
      .def_readonly("n_sel_uspa", &GapRow::n_sel_uspa)
      .def_readonly("n_sel_oracle", &GapRow::n_sel_oracle);

  py::class_<GapReport>(m, "GapReport")
      .def_readonly("rows", &GapReport::rows)
      .def_readonly("mean_abs_gap", &GapReport::mean_abs_gap)
      .def_readonly("mean_rel_gap", &GapReport::mean_rel_gap)
      .def_readonly("selected_hist_uspa", &GapReport::selected_hist_uspa)
      .def_readonly("selected_hist_oracle", &GapReport::selected_hist_oracle)
      .def_readonly("time_ratio", &GapReport::time_ratio);

  m.def("run_gap_study",
        [](const ScenarioConfig& config, std::int64_t trials, unsigned threads, bool measure_time) {
          GapOptions options{threads == 0 ? worker_threads() : threads, measure_time};
          py::gil_scoped_release release;
          return run_gap_study(config, trials, options);
        },
        py::arg("config"), py::arg("trials"), py::arg("threads") = 0, py::arg("measure_time") = false);

  py::class_<VariantResult>(m, "VariantResult")
      .def_readonly("kind", &VariantResult::kind)
      .def_readonly("summary", &VariantResult::summary);

  m.def("run_oups_study",
        [](const ScenarioConfig& config, std::optional<std::vector<AllocatorKind>> variants, unsigned threads,
           bool measure_time) {
          OupsOptions options;
          options.threads = threads == 0 ? worker_threads() : threads;
          options.measure_time = measure_time;
          if (variants) options.variants = *variants;
          py::gil_scoped_release release;
          return run_oups_study(config, options);
        },
        py::arg("config"), py::arg("variants") = py::none(), py::arg("threads") = 0,
        py::arg("measure_time") = false);
}
