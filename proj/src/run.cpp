#include "tgr/run.hpp"

#include <fstream>
#include <sstream>

#include "tgr/datalog_opt.hpp"
#include "tgr/errors.hpp"
#include "tgr/linear_tg.hpp"
#include "tgr/normalize.hpp"
#include "tgr/parse.hpp"

namespace tgr {

namespace {

std::string read_file(const std::filesystem::path& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot read " + path.string());
  std::ostringstream s;
  s << f.rdbuf();
  return s.str();
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write " + path.string());
  f << text;
}

std::pair<Program, Instance> load(const RunSpec& spec) {
  Program program = parse_program(read_file(spec.program));
  Instance base = spec.facts.empty() ? Instance{} : parse_facts(read_file(spec.facts), program);
  return {std::move(program), std::move(base)};
}

template <typename F>
int guarded(std::ostream& err, F&& body) {
  try {
    return body();
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << '\n';
    return kExitParse;
  } catch (const UnsupportedProgram& e) {
    err << "unsupported program: " << e.what() << '\n';
    return kExitMismatch;
  } catch (const CapExceeded& e) {
    err << "cap exceeded: " << e.what() << '\n';
    return kExitCap;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitOther;
  }
}

}  // namespace

Mode parse_mode(std::string_view name) {
  if (name == "chase") return Mode::Chase;
  if (name == "full-eg") return Mode::FullEg;
  if (name == "tg-linear") return Mode::TgLinear;
  if (name == "tgmat") return Mode::TgMat;
  throw std::invalid_argument("unknown mode: " + std::string(name));
}

std::string to_string(Mode m) {
  switch (m) {
    case Mode::Chase:
      return "chase";
    case Mode::FullEg:
      return "full-eg";
    case Mode::TgLinear:
      return "tg-linear";
    case Mode::TgMat:
      return "tgmat";
  }
  return "?";
}

void check_mode(Mode mode, const Program& program) {
  if (mode == Mode::TgLinear && !program.is_linear()) {
    throw UnsupportedProgram("mode tg-linear requires every rule body to be a single atom");
  }
  if (mode == Mode::TgMat && !program.is_datalog()) {
    throw UnsupportedProgram("mode tgmat requires a Datalog program");
  }
}

RunOutcome execute(const RunSpec& spec, const Program& program, const Instance& base) {
  check_mode(spec.mode, program);
  RunOutcome out;
  switch (spec.mode) {
    case Mode::Chase: {
      ChaseConfig cfg;
      cfg.variant = spec.variant;
      cfg.round_cap = spec.cap;
      const ChaseResult r = chase(program, base, cfg);
      out.result = r.final_instance;
      out.triggers = r.triggers_computed;
      out.metrics = nlohmann::ordered_json::parse(chase_metrics_json(r));
      break;
    }
    case Mode::FullEg: {
      const Program normalized = normalize_program(program);
      FullEgRun r = expand_until_fixpoint(normalized, base, spec.cap);
      out.result = normalized.strip_internal(r.snapshots.back());
      out.triggers = r.triggers;
      out.metrics["levels"] = r.levels;
      out.metrics["triggers"] = r.triggers;
      out.metrics["eg_nodes"] = r.graph.node_count();
      out.metrics["eg_edges"] = r.graph.edge_count();
      out.metrics["facts_derived"] = out.result.size() - base.size();
      out.graph = std::move(r.graph);
      break;
    }
    case Mode::TgLinear: {
      ChaseConfig cfg;
      cfg.variant = ChaseVariant::Equivalent;
      cfg.round_cap = spec.cap;
      ExecutionGraph g = tgraph_linear(program, cfg);
      MinLinearStats min_stats;
      if (spec.use_min) g = min_linear(g, program, &min_stats);
      NullFactory nulls;
      MaterializeStats stats;
      out.result = materialize(g, base, nulls, &stats).union_all();
      out.triggers = stats.triggers;
      out.metrics["triggers"] = stats.triggers;
      out.metrics["tg_nodes"] = g.node_count();
      out.metrics["tg_edges"] = g.edge_count();
      out.metrics["nodes_removed"] = min_stats.removed;
      out.metrics["facts_derived"] = out.result.size() - base.size();
      out.graph = std::move(g);
      break;
    }
    case Mode::TgMat: {
      TgMatOptions opts;
      opts.use_min = spec.use_min;
      opts.use_exec = spec.use_exec;
      opts.cap = spec.cap;
      TgMatResult r = tg_mat(program, base, opts);
      out.result = std::move(r.final_instance);
      out.triggers = r.metrics.triggers;
      out.metrics = tgmat_metrics_json(r.metrics);
      out.graph = std::move(r.graph);
      break;
    }
  }
  return out;
}

int run(const RunSpec& spec, std::ostream& err) {
  return guarded(err, [&] {
    const auto [program, base] = load(spec);
    const RunOutcome outcome = execute(spec, program, base);
    if (spec.out) write_file(*spec.out, format_facts(outcome.result));
    if (spec.metrics) write_file(*spec.metrics, outcome.metrics.dump(2) + "\n");
    if (spec.graph) {
      if (!outcome.graph) throw std::invalid_argument("mode " + to_string(spec.mode) + " builds no graph");
      write_file(*spec.graph, eg_to_json(*outcome.graph).dump(2) + "\n");
    }
    return static_cast<int>(kExitOk);
  });
}

nlohmann::ordered_json CompareReport::to_json() const {
  nlohmann::ordered_json j;
  j["verdict"] = verdict;
  j["triggers_a"] = triggers_a;
  j["triggers_b"] = triggers_b;
  j["trigger_delta"] = static_cast<long long>(triggers_b) - static_cast<long long>(triggers_a);
  return j;
}

CompareReport compare_outcomes(const RunOutcome& a, const RunOutcome& b) {
  CompareReport report;
  report.triggers_a = a.triggers;
  report.triggers_b = b.triggers;
  // Null names are not comparable across runs, so results with nulls are
  // only compared up to homomorphic equivalence.
  const bool nulls = a.result.has_nulls() || b.result.has_nulls();
  if (!nulls && a.result == b.result) {
    report.verdict = "set-equal";
  } else if (equivalent(a.result, b.result)) {
    report.verdict = "hom-equivalent";
  } else {
    report.verdict = "different";
  }
  return report;
}

int compare(const RunSpec& a, const RunSpec& b, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const auto [pa, ba] = load(a);
    const auto [pb, bb] = load(b);
    const CompareReport report = compare_outcomes(execute(a, pa, ba), execute(b, pb, bb));
    out << report.to_json().dump(2) << '\n';
    return static_cast<int>(report.equivalent() ? kExitOk : kExitMismatch);
  });
}

}  // namespace tgr
