#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "tgr/chase.hpp"
#include "tgr/datalog_opt.hpp"
#include "tgr/errors.hpp"
#include "tgr/generate.hpp"
#include "tgr/linear_tg.hpp"
#include "tgr/parse.hpp"
#include "tgr/run.hpp"

namespace py = pybind11;
using namespace tgr;

namespace {

// JSON crosses the boundary as text and is decoded by Python's json module.
py::object to_py(const nlohmann::ordered_json& j) {
  return py::module_::import("json").attr("loads")(j.dump());
}

py::tuple fact_tuple(const Atom& a) {
  py::tuple t(a.args.size() + 1);
  t[0] = std::string(a.predicate.name());
  for (std::size_t i = 0; i < a.args.size(); ++i) t[i + 1] = a.args[i].to_string();
  return t;
}

py::dict outcome_dict(const RunOutcome& o) {
  py::dict d;
  d["result"] = o.result;
  d["triggers"] = o.triggers;
  d["metrics"] = to_py(o.metrics);
  d["graph"] = o.graph ? py::cast(*o.graph) : py::none();
  return d;
}

RunSpec make_spec(const std::string& mode, const std::string& variant, bool use_min, bool use_exec,
                  std::size_t cap) {
  RunSpec spec;
  spec.mode = parse_mode(mode);
  spec.variant = parse_chase_variant(variant);
  spec.use_min = use_min;
  spec.use_exec = use_exec;
  spec.cap = cap;
  return spec;
}

}  // namespace

PYBIND11_MODULE(_tgreason, m) {
  m.doc() = "Trigger-graph guided materialization";

  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
  py::register_exception<UnsupportedProgram>(m, "UnsupportedProgram", PyExc_ValueError);
  py::register_exception<CapExceeded>(m, "CapExceeded", PyExc_RuntimeError);
  py::register_exception<RewritingError>(m, "RewritingError", PyExc_RuntimeError);

  py::class_<Program>(m, "Program")
      .def_property_readonly("rule_ids",
                             [](const Program& p) {
                               std::vector<std::string> ids;
                               for (const auto& r : p.rules()) ids.push_back(r.id);
                               return ids;
                             })
      .def("is_linear", &Program::is_linear)
      .def("is_datalog", &Program::is_datalog)
      .def("__len__", [](const Program& p) { return p.rules().size(); })
      .def("__str__", &Program::to_string);

  py::class_<Instance>(m, "Instance")
      .def(py::init<>())
      .def("__len__", &Instance::size)
      .def("has_nulls", &Instance::has_nulls)
      .def("facts",
           [](const Instance& i) {
             py::list out;
             for (const auto& a : i.sorted()) out.append(fact_tuple(a));
             return out;
           },
           "Facts in canonical order as (predicate, arg, ...) tuples.")
      .def("to_tsv", [](const Instance& i) { return format_facts(i); })
      .def("__eq__", [](const Instance& a, const Instance& b) { return a == b; })
      .def("__str__", &Instance::to_string);

  py::class_<ExecutionGraph>(m, "ExecutionGraph")
      .def("node_count", &ExecutionGraph::node_count)
      .def("edge_count", &ExecutionGraph::edge_count)
      .def("depth", &ExecutionGraph::depth)
      .def("to_json", [](const ExecutionGraph& g) { return to_py(eg_to_json(g)); });

  m.def("parse_program", &parse_program, py::arg("text"));
  m.def("parse_facts", &parse_facts, py::arg("text"), py::arg("program"));
  m.def("format_facts", py::overload_cast<const Instance&>(&format_facts), py::arg("instance"));
  m.def("equivalent", &equivalent, py::arg("a"), py::arg("b"), "Homomorphic equivalence.");

  m.def(
      "chase",
      [](const Program& p, const Instance& base, const std::string& variant, std::size_t round_cap) {
        ChaseConfig cfg;
        cfg.variant = parse_chase_variant(variant);
        cfg.round_cap = round_cap;
        const ChaseResult r = chase(p, base, cfg);
        return py::make_tuple(r.final_instance, to_py(nlohmann::ordered_json::parse(chase_metrics_json(r))));
      },
      py::arg("program"), py::arg("base"), py::arg("variant") = "restricted", py::arg("round_cap") = 64,
      "Returns (instance, metrics).");

  m.def(
      "tgraph_linear",
      [](const Program& p, std::size_t round_cap) {
        ChaseConfig cfg;
        cfg.variant = ChaseVariant::Equivalent;
        cfg.round_cap = round_cap;
        return tgraph_linear(p, cfg);
      },
      py::arg("program"), py::arg("round_cap") = 64);
  m.def(
      "min_linear", [](const ExecutionGraph& g, const Program& p) { return min_linear(g, p); }, py::arg("graph"),
      py::arg("program"));
  m.def(
      "min_datalog", [](const ExecutionGraph& g, const Program& p) { return min_datalog(g, p); }, py::arg("graph"),
      py::arg("program"));
  m.def(
      "materialize", [](const ExecutionGraph& g, const Instance& base) { return materialize(g, base).union_all(); },
      py::arg("graph"), py::arg("base"));

  m.def(
      "tg_mat",
      [](const Program& p, const Instance& base, bool use_min, bool use_exec, std::size_t cap) {
        TgMatOptions opts;
        opts.use_min = use_min;
        opts.use_exec = use_exec;
        opts.cap = cap;
        TgMatResult r = tg_mat(p, base, opts);
        return py::make_tuple(std::move(r.final_instance), std::move(r.graph), to_py(tgmat_metrics_json(r.metrics)));
      },
      py::arg("program"), py::arg("base"), py::arg("use_min") = true, py::arg("use_exec") = true,
      py::arg("cap") = 64, "Returns (instance, graph, metrics).");

  m.def(
      "execute",
      [](const Program& p, const Instance& base, const std::string& mode, const std::string& variant, bool use_min,
         bool use_exec, std::size_t cap) {
        return outcome_dict(execute(make_spec(mode, variant, use_min, use_exec, cap), p, base));
      },
      py::arg("program"), py::arg("base"), py::arg("mode") = "chase", py::arg("variant") = "restricted",
      py::arg("use_min") = true, py::arg("use_exec") = true, py::arg("cap") = 64,
      "Runs one engine: chase, full-eg, tg-linear or tgmat.");

  m.def(
      "compare",
      [](const Program& p, const Instance& base, const std::string& mode_a, const std::string& mode_b,
         const std::string& variant, bool use_min, bool use_exec, std::size_t cap) {
        const RunOutcome a = execute(make_spec(mode_a, variant, use_min, use_exec, cap), p, base);
        const RunOutcome b = execute(make_spec(mode_b, variant, use_min, use_exec, cap), p, base);
        return to_py(compare_outcomes(a, b).to_json());
      },
      py::arg("program"), py::arg("base"), py::arg("mode_a") = "chase", py::arg("mode_b") = "tgmat",
      py::arg("variant") = "restricted", py::arg("use_min") = true, py::arg("use_exec") = true, py::arg("cap") = 64);

  m.def(
      "generate_corpus",
      [](std::uint64_t seed, const std::string& family, std::size_t count) {
        py::list out;
        for (auto& kb : generate_corpus(seed, parse_family(family), count)) {
          out.append(py::make_tuple(kb.name, std::move(kb.program), std::move(kb.base)));
        }
        return out;
      },
      py::arg("seed"), py::arg("family"), py::arg("count"), "List of (name, program, base).");
}
