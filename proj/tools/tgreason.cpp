#include <iostream>

#include "CLI11.hpp"
#include "tgr/generate.hpp"
#include "tgr/run.hpp"

namespace {

struct Flags {
  std::string mode = "chase";
  std::string variant = "restricted";
  bool no_min = false;
  bool no_exec = false;
  std::size_t cap = 64;
  std::uint64_t seed = 0;
  std::string program;
  std::string facts;
};

void add_common(CLI::App* cmd, Flags& f) {
  cmd->add_option("--program", f.program, "rule file")->required();
  cmd->add_option("--facts", f.facts, "TSV fact file");
  cmd->add_option("--variant", f.variant, "chase variant")
      ->check(CLI::IsMember({"restricted", "skolem", "equivalent"}));
  cmd->add_flag("--no-min", f.no_min, "skip graph minimization");
  cmd->add_flag("--no-exec-opt", f.no_exec, "plain node execution in tgmat");
  cmd->add_option("--cap", f.cap, "round or level cap")->check(CLI::PositiveNumber);
  cmd->add_option("--seed", f.seed, "random seed");
}

tgr::RunSpec to_spec(const Flags& f, const std::string& mode) {
  tgr::RunSpec spec;
  spec.mode = tgr::parse_mode(mode);
  spec.variant = tgr::parse_chase_variant(f.variant);
  spec.use_min = !f.no_min;
  spec.use_exec = !f.no_exec;
  spec.cap = f.cap;
  spec.seed = f.seed;
  spec.program = f.program;
  spec.facts = f.facts;
  return spec;
}

const std::vector<std::string> kModes{"chase", "full-eg", "tg-linear", "tgmat"};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Trigger-graph guided materialization"};
  app.require_subcommand(1);

  Flags run_flags;
  std::string out, metrics, graph;
  auto* run = app.add_subcommand("run", "materialize a knowledge base");
  add_common(run, run_flags);
  run->add_option("--mode", run_flags.mode, "engine")->check(CLI::IsMember(kModes));
  run->add_option("--out", out, "materialized facts (TSV)");
  run->add_option("--metrics", metrics, "metrics (JSON)");
  run->add_option("--graph", graph, "execution graph (JSON)");

  Flags cmp_flags;
  std::string mode_a = "chase", mode_b = "tgmat";
  auto* cmp = app.add_subcommand("compare", "run two engines and compare their results");
  add_common(cmp, cmp_flags);
  cmp->add_option("--mode-a", mode_a, "first engine")->check(CLI::IsMember(kModes));
  cmp->add_option("--mode-b", mode_b, "second engine")->check(CLI::IsMember(kModes));

  std::string family, out_dir;
  std::uint64_t gen_seed = 1;
  std::size_t count = 10;
  auto* gen = app.add_subcommand("generate", "write a random corpus of knowledge bases");
  gen->add_option("--family", family, "KB family")
      ->required()
      ->check(CLI::IsMember({"linear-fes", "datalog", "cyclic-datalog"}));
  gen->add_option("--seed", gen_seed, "random seed");
  gen->add_option("--count", count, "number of KBs");
  gen->add_option("--out-dir", out_dir, "output directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  if (run->parsed()) {
    tgr::RunSpec spec = to_spec(run_flags, run_flags.mode);
    if (!out.empty()) spec.out = out;
    if (!metrics.empty()) spec.metrics = metrics;
    if (!graph.empty()) spec.graph = graph;
    return tgr::run(spec, std::cerr);
  }
  if (cmp->parsed()) {
    return tgr::compare(to_spec(cmp_flags, mode_a), to_spec(cmp_flags, mode_b), std::cout, std::cerr);
  }
  try {
    const auto corpus = tgr::generate_corpus(gen_seed, tgr::parse_family(family), count);
    for (const auto& path : tgr::write_corpus(corpus, out_dir)) std::cout << path.string() << '\n';
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return tgr::kExitOther;
  }
  return tgr::kExitOk;
}
