#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "rdpp/commands.hpp"
#include "rdpp/config.hpp"
#include "rdpp/errors.hpp"
#include "rdpp/integrate.hpp"
#include "rdpp/model.hpp"
#include "rdpp/montecarlo.hpp"
#include "rdpp/report.hpp"
#include "rdpp/verify.hpp"

namespace py = pybind11;
using namespace rdpp;

namespace {

py::dict report_dict(const TheoremReport& r) {
    py::dict d;
    d["theorem_id"] = std::string(to_string(r.theorem_id));
    d["verdict"] = std::string(to_string(r.verdict));
    d["fingerprint"] = r.fingerprint;
    py::dict bounds, estimates;
    for (const auto& b : r.bounds) bounds[py::str(b.name)] = b.value;
    for (const auto& e : r.estimates) estimates[py::str(e.name)] = py::make_tuple(e.value, e.ci_low, e.ci_high);
    d["bounds"] = bounds;
    d["estimates"] = estimates;
    py::list offenses;
    for (const auto& o : r.offenses) {
        py::dict od;
        od["check"] = o.check;
        od["time"] = o.time;
        od["bound"] = o.bound;
        od["estimate"] = o.estimate;
        od["ci_low"] = o.ci_low;
        od["ci_high"] = o.ci_high;
        offenses.append(od);
    }
    d["offenses"] = offenses;
    d["notes"] = r.notes;
    d["n_paths"] = r.n_paths;
    d["n_blowups"] = r.n_blowups;
    if (r.tail_window) d["tail_window"] = py::make_tuple(r.tail_window->t_lo, r.tail_window->t_hi);
    else d["tail_window"] = py::none();
    d["runtime_seconds"] = r.runtime_seconds;
    return d;
}

}  // namespace

PYBIND11_MODULE(_rdpp, m) {
    m.doc() = "Stochastic ratio-dependent predator-prey model: simulation and theorem checks";

    py::register_exception<Error>(m, "Error");

    py::enum_<Scheme>(m, "Scheme")
        .value("EULER_MARUYAMA_LOG", Scheme::EulerMaruyamaLog)
        .value("MILSTEIN_LOG", Scheme::MilsteinLog)
        .value("RK4_DETERMINISTIC", Scheme::Rk4Deterministic);
    py::enum_<Mode>(m, "Mode")
        .value("FULL", Mode::Full)
        .value("PREY_ABSENT", Mode::PreyAbsent)
        .value("PREDATOR_ABSENT", Mode::PredatorAbsent);

    py::class_<CoefficientFn>(m, "CoefficientFn")
        .def_static("constant", &CoefficientFn::constant, py::arg("value"))
        .def_static("piecewise", &CoefficientFn::piecewise, py::arg("breakpoints"), py::arg("values"))
        .def_static("sinusoidal", &CoefficientFn::sinusoidal, py::arg("mean"), py::arg("amplitude"),
                    py::arg("period"), py::arg("phase") = 0.0)
        .def("__call__", &CoefficientFn::operator(), py::arg("t"))
        .def_property_readonly("inf", &CoefficientFn::declared_inf)
        .def_property_readonly("sup", &CoefficientFn::declared_sup);

    py::class_<CoefficientSet>(m, "CoefficientSet")
        .def_static("constants", &CoefficientSet::constants, py::arg("a1"), py::arg("a2"), py::arg("b1"),
                    py::arg("b2"), py::arg("c1"), py::arg("c2"), py::arg("e"), py::arg("sigma1"),
                    py::arg("sigma2") = 0.0, py::arg("rho1"), py::arg("rho2") = 0.0)
        .def("set", [](CoefficientSet& c, const std::string& name, const CoefficientFn& f) {
            for (std::size_t i = 0; i < CoefficientSet::names.size(); ++i)
                if (CoefficientSet::names[i] == name) {
                    c[i] = f;
                    return;
                }
            throw Error(ErrorCode::PreconditionViolated, "unknown coefficient " + name);
        })
        .def("get", [](const CoefficientSet& c, const std::string& name) {
            for (std::size_t i = 0; i < CoefficientSet::names.size(); ++i)
                if (CoefficientSet::names[i] == name) return c[i];
            throw Error(ErrorCode::PreconditionViolated, "unknown coefficient " + name);
        });

    py::class_<SimConfig>(m, "SimConfig")
        .def(py::init<>())
        .def_readwrite("t_end", &SimConfig::t_end)
        .def_readwrite("dt", &SimConfig::dt)
        .def_readwrite("save_every", &SimConfig::save_every)
        .def_readwrite("x0", &SimConfig::x0)
        .def_readwrite("y0", &SimConfig::y0)
        .def_readwrite("scheme", &SimConfig::scheme)
        .def_readwrite("mode", &SimConfig::mode)
        .def_readwrite("blowup_guard", &SimConfig::blowup_guard)
        .def("n_saves", &SimConfig::n_saves);

    py::class_<PathRecord>(m, "PathRecord")
        .def_readonly("times", &PathRecord::times)
        .def_readonly("xs", &PathRecord::xs)
        .def_readonly("ys", &PathRecord::ys)
        .def_readonly("blew_up", &PathRecord::blew_up)
        .def_readonly("blowup_time", &PathRecord::blowup_time)
        .def_readonly("path_index", &PathRecord::path_index);

    py::class_<Theorem2Constants>(m, "Theorem2Constants")
        .def_readonly("d1", &Theorem2Constants::d1)
        .def_readonly("d2", &Theorem2Constants::d2)
        .def_readonly("theta", &Theorem2Constants::theta)
        .def_readonly("lambda1", &Theorem2Constants::lambda1)
        .def_readonly("lambda2", &Theorem2Constants::lambda2)
        .def("envelope", &Theorem2Constants::envelope, py::arg("t"));

    m.def("classify_hypothesis", [](const CoefficientSet& c) { return std::string(to_string(classify_hypothesis(c))); });
    m.def("validate_coefficients", [](const CoefficientSet& c) {
        std::vector<std::string> out;
        for (const auto& v : validate_coefficients(c).violations) out.push_back(v.coefficient + ": " + v.message);
        return out;
    });
    m.def("theorem2_constants", &theorem2_constants, py::arg("c"), py::arg("theta1"), py::arg("theta2"),
          py::arg("x0"), py::arg("y0"));
    m.def("predator_extinction_rate", &predator_extinction_rate);
    m.def("prey_solo_criterion", [](const CoefficientSet& c) {
        const auto r = prey_solo_criterion(c);
        return py::make_tuple(r.value, std::string(to_string(r.regime)));
    });
    m.def("gbm_oracle_moment", &gbm_oracle_moment, py::arg("a1"), py::arg("sigma1"), py::arg("x0"),
          py::arg("theta"), py::arg("t"));

    m.def("simulate_path",
          [](const SimConfig& cfg, const CoefficientSet& c, std::uint64_t seed, std::uint64_t path_index) {
              py::gil_scoped_release release;
              return simulate_path(cfg, c, BrownianDriver(seed, path_index, cfg.dt));
          },
          py::arg("cfg"), py::arg("c"), py::arg("seed") = 0, py::arg("path_index") = 0);

    m.def("ensemble_moment",
          [](const SimConfig& cfg, const CoefficientSet& c, std::int64_t n_paths, double theta1, double theta2,
             std::uint64_t seed, unsigned threads, bool allow_degenerate) {
              EnsembleSummary s;
              {
                  py::gil_scoped_release release;
                  s = run_ensemble(cfg, c, n_paths, {Functional::moment(theta1, theta2)},
                                   {.master_seed = seed, .threads = threads, .allow_degenerate = allow_degenerate});
              }
              py::dict d;
              std::vector<double> mean, se, lo, hi;
              for (std::size_t i = 0; i < s.times.size(); ++i) {
                  const auto e = estimate_at(s, 0, i);
                  mean.push_back(e.point_estimate);
                  se.push_back(e.standard_error);
                  lo.push_back(e.ci_low);
                  hi.push_back(e.ci_high);
              }
              d["t"] = s.times;
              d["mean"] = mean;
              d["se"] = se;
              d["ci_low"] = lo;
              d["ci_high"] = hi;
              d["n_blowups"] = s.n_blowups;
              return d;
          },
          py::arg("cfg"), py::arg("c"), py::arg("n_paths"), py::arg("theta1") = 1.0, py::arg("theta2") = 1.0,
          py::arg("seed") = 0, py::arg("threads") = 0, py::arg("allow_degenerate") = false);

    m.def("strong_order",
          [](const SimConfig& cfg, const CoefficientSet& c, std::int64_t n_paths, double dt_coarse, int levels,
             std::uint64_t seed) {
              StrongOrderResult r;
              {
                  py::gil_scoped_release release;
                  r = estimate_strong_order(cfg, c, n_paths, dt_coarse, levels, seed, 0);
              }
              std::vector<std::pair<double, double>> rows;
              for (const auto& l : r.levels) rows.emplace_back(l.dt, l.strong_error);
              return py::make_tuple(r.order, rows);
          },
          py::arg("cfg"), py::arg("c"), py::arg("n_paths"), py::arg("dt_coarse") = 1.0 / 64, py::arg("levels") = 4,
          py::arg("seed") = 0);

    m.def("parse_config", [](const std::string& text) { return emit_config(parse_config(text)); },
          "Validate config text and return its canonical form");
    m.def("fingerprint", [](const std::string& text) { return parse_config(text).fingerprint(); });

    m.def("verify",
          [](const std::string& config_text, const std::string& theorem_id, std::optional<std::int64_t> paths,
             std::optional<std::uint64_t> seed, unsigned threads) {
              const auto id = parse_theorem_id(theorem_id);
              if (!id) throw Error(ErrorCode::PreconditionViolated, "unknown theorem id " + theorem_id);
              RunManifest mf = parse_config(config_text);
              if (paths) mf.n_paths = *paths;
              if (seed) mf.master_seed = *seed;
              mf.threads = threads;
              TheoremReport r;
              {
                  py::gil_scoped_release release;
                  r = run_harness(mf, *id);
              }
              return report_dict(r);
          },
          py::arg("config_text"), py::arg("theorem_id"), py::arg("paths") = py::none(), py::arg("seed") = py::none(),
          py::arg("threads") = 0);

    m.attr("__version__") = std::string(kArtifactVersion);
}
