#include <sstream>
#include <string>

#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "tspcaf/anneal.hpp"
#include "tspcaf/bench.hpp"
#include "tspcaf/caf.hpp"
#include "tspcaf/error.hpp"
#include "tspcaf/exact.hpp"
#include "tspcaf/instance.hpp"
#include "tspcaf/lp_export.hpp"
#include "tspcaf/tsplib.hpp"

namespace py = pybind11;
using namespace tspcaf;

PYBIND11_MODULE(_core, m) {
  m.doc() = "Cost-based arc filtering and exact/heuristic TSP solvers";

  static py::exception<Error> error(m, "TspcafError", PyExc_ValueError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::set_error(error, e.what());
    }
  });

  py::enum_<DistanceRounding>(m, "DistanceRounding")
      .value("NONE", DistanceRounding::None)
      .value("NEAREST", DistanceRounding::Nearest);
  py::enum_<SolveStatus>(m, "SolveStatus")
      .value("OPTIMAL", SolveStatus::Optimal)
      .value("INFEASIBLE", SolveStatus::Infeasible)
      .value("TIME_LIMIT", SolveStatus::TimeLimit);
  py::enum_<Engine>(m, "Engine")
      .value("HELD_KARP", Engine::HeldKarp)
      .value("BRANCH_BOUND", Engine::BranchBound);
  py::enum_<SubtourMode>(m, "SubtourMode")
      .value("ENUMERATE", SubtourMode::Enumerate)
      .value("OMIT", SubtourMode::Omit);

  py::class_<RawTsplibFile>(m, "RawTsplibFile")
      .def_readonly("name", &RawTsplibFile::name)
      .def_readonly("dimension", &RawTsplibFile::dimension)
      .def_readonly("ids", &RawTsplibFile::ids)
      .def_property_readonly("coords",
                             [](const RawTsplibFile& f) {
                               std::vector<std::pair<double, double>> out;
                               for (const auto& p : f.coords) out.emplace_back(p.x, p.y);
                               return out;
                             })
      .def_readonly("warnings", &RawTsplibFile::warnings);

  m.def("parse_tsplib", [](const std::string& text) {
    std::istringstream in(text);
    return parse_tsplib(in);
  }, py::arg("text"));
  m.def("load_tsplib", &load_tsplib, py::arg("path"));
  m.def("take_prefix", &take_prefix, py::arg("file"), py::arg("n"),
        py::arg("rounding") = DistanceRounding::None);
  m.def("euclidean_cost", [](std::pair<double, double> p, std::pair<double, double> q) {
    return euclidean_cost({p.first, p.second}, {q.first, q.second});
  });

  py::class_<Instance>(m, "Instance")
      .def_static("from_points",
                  [](const std::vector<std::pair<double, double>>& pts, DistanceRounding r) {
                    std::vector<Point> points;
                    for (const auto& [x, y] : pts) points.push_back({x, y});
                    return Instance::from_points(std::move(points), r);
                  },
                  py::arg("points"), py::arg("rounding") = DistanceRounding::None)
      .def_property_readonly("n", &Instance::size)
      .def("__len__", &Instance::size)
      .def("cost", &Instance::cost)
      .def_property_readonly("max_cost", &Instance::max_cost);

  py::class_<ArcSet>(m, "ArcSet")
      .def(py::init<int>())
      .def_static("complete", &ArcSet::complete)
      .def("insert", &ArcSet::insert)
      .def("erase", &ArcSet::erase)
      .def("contains", &ArcSet::contains)
      .def_property_readonly("n", &ArcSet::vertex_count)
      .def("__len__", &ArcSet::size)
      .def("arcs", [](const ArcSet& a) {
        std::vector<std::pair<int, int>> out;
        for (const auto& arc : a.arcs()) out.emplace_back(arc.from, arc.to);
        return out;
      });

  py::class_<Tour>(m, "Tour")
      .def(py::init([](std::vector<int> order, double cost) { return Tour{std::move(order), cost}; }),
           py::arg("order"), py::arg("cost"))
      .def_readwrite("order", &Tour::order)
      .def_readwrite("cost", &Tour::cost);

  m.def("complete_arcs", &complete_arcs);
  m.def("count_variables", &count_variables);
  m.def("reduction_gap_percent", &reduction_gap_percent);
  m.def("tour_cost", [](const Instance& inst, const std::vector<int>& order) {
    return tour_cost(inst, order);
  });
  m.def("tour_uses_only", &tour_uses_only);

  py::class_<CafResult>(m, "CafResult")
      .def_readonly("arcs", &CafResult::arcs)
      .def_readonly("k", &CafResult::k)
      .def_readonly("selected", &CafResult::selected);
  py::class_<DiracCertificate>(m, "DiracCertificate")
      .def_readonly("min_degree", &DiracCertificate::min_degree)
      .def_readonly("hamiltonicity_guaranteed", &DiracCertificate::hamiltonicity_guaranteed);
  m.def("k_of", &k_of);
  m.def("caf_filter", &caf_filter, py::arg("instance"), py::arg("k_override") = std::nullopt);
  m.def("dirac_certificate", &dirac_certificate);

  py::class_<SolveResult>(m, "SolveResult")
      .def_readonly("tour", &SolveResult::tour)
      .def_readonly("status", &SolveResult::status)
      .def_readonly("best_bound", &SolveResult::best_bound)
      .def_readonly("objective", &SolveResult::objective)
      .def_readonly("elapsed", &SolveResult::elapsed)
      .def_readonly("engine", &SolveResult::engine)
      .def_readonly("nodes", &SolveResult::nodes);
  const auto options = [](double time_limit) {
    SolveOptions o;
    o.time_limit = time_limit;
    return o;
  };
  m.def("held_karp", [options](const Instance& i, const ArcSet& a, double t) {
    py::gil_scoped_release release;
    return held_karp(i, a, options(t));
  }, py::arg("instance"), py::arg("arcs"), py::arg("time_limit") = kDefaultTimeLimit);
  m.def("branch_and_bound", [options](const Instance& i, const ArcSet& a, double t) {
    py::gil_scoped_release release;
    return branch_and_bound(i, a, options(t));
  }, py::arg("instance"), py::arg("arcs"), py::arg("time_limit") = kDefaultTimeLimit);
  m.def("find_subtours", [](const std::vector<std::pair<int, int>>& chosen, int n) {
    ArcSelection sel;
    for (const auto& [i, j] : chosen) sel.chosen.push_back({i, j});
    return find_subtours(sel, n);
  }, py::arg("chosen"), py::arg("n"));
  m.def("validate_tour", &validate_tour);

  py::class_<AnnealParams>(m, "AnnealParams")
      .def_static("defaults_for", &AnnealParams::defaults_for)
      .def_readwrite("max_time", &AnnealParams::max_time)
      .def_readwrite("initial_temperature", &AnnealParams::initial_temperature)
      .def_readwrite("final_temperature_ratio", &AnnealParams::final_temperature_ratio)
      .def_readwrite("cooling_rate", &AnnealParams::cooling_rate)
      .def_readwrite("moves_per_temperature", &AnnealParams::moves_per_temperature)
      .def_readwrite("seed", &AnnealParams::seed)
      .def_readwrite("big_m", &AnnealParams::big_m)
      .def_readwrite("max_moves", &AnnealParams::max_moves);
  py::class_<AnnealResult>(m, "AnnealResult")
      .def_readonly("tour", &AnnealResult::tour)
      .def_readonly("feasible_in_arcs", &AnnealResult::feasible_in_arcs)
      .def_readonly("penalized_cost", &AnnealResult::penalized_cost)
      .def_readonly("elapsed", &AnnealResult::elapsed);
  py::class_<TrialStats>(m, "TrialStats")
      .def_readonly("n", &TrialStats::n)
      .def_readonly("of_opt", &TrialStats::of_opt)
      .def_readonly("of_avg", &TrialStats::of_avg)
      .def_readonly("of_std", &TrialStats::of_std)
      .def_readonly("gap_percent", &TrialStats::gap_percent)
      .def_readonly("pct_solved", &TrialStats::pct_solved)
      .def_readonly("time_avg", &TrialStats::time_avg)
      .def_readonly("time_std", &TrialStats::time_std)
      .def_readonly("solve_time_avg", &TrialStats::solve_time_avg)
      .def_readonly("solve_time_std", &TrialStats::solve_time_std);
  m.def("anneal_solve", [](const Instance& i, const ArcSet& a, const AnnealParams& p) {
    py::gil_scoped_release release;
    return anneal_solve(i, a, p);
  });
  m.def("run_trials", [](const Instance& i, const ArcSet& a, const AnnealParams& p, int runs,
                         double of_opt) {
    py::gil_scoped_release release;
    return run_trials(i, a, p, runs, of_opt);
  }, py::arg("instance"), py::arg("arcs"), py::arg("params"), py::arg("num_runs"), py::arg("of_opt"));

  py::class_<ExportedModel>(m, "ExportedModel")
      .def_readonly("num_variables", &ExportedModel::num_variables)
      .def_readonly("num_degree_constraints", &ExportedModel::num_degree_constraints)
      .def_readonly("num_subtour_constraints", &ExportedModel::num_subtour_constraints)
      .def_readonly("body", &ExportedModel::body)
      .def("meta_line", &ExportedModel::meta_line);
  m.def("export_ilp", &export_ilp, py::arg("instance"), py::arg("arcs"),
        py::arg("mode") = SubtourMode::Enumerate, py::arg("n_max") = kDefaultEnumerateMax);
  m.def("model_stats", [](const std::string& body) {
    const ModelStats s = model_stats(body);
    return py::make_tuple(s.variables, s.degree_constraints, s.subtour_constraints);
  });

  m.def("table2", [](const std::filesystem::path& path, int first, int last) {
    ExperimentConfig config;
    config.instance_path = path;
    config.n_range = {first, last};
    std::vector<py::tuple> rows;
    for (const auto& r : run_table2(load_tsplib(path), config)) {
      rows.push_back(py::make_tuple(r.n, r.vars_without, r.vars_with, r.gap_percent));
    }
    return rows;
  }, py::arg("path"), py::arg("first"), py::arg("last"));

  m.attr("__version__") = std::string(kVersion);
}
