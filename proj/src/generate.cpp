#include "tgr/generate.hpp"

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <random>
#include <sstream>
#include <stdexcept>

#include "tgr/chase.hpp"
#include "tgr/errors.hpp"
#include "tgr/parse.hpp"

namespace tgr {

namespace {

struct Pred {
  std::string name;
  std::size_t arity;
};

class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}
  std::size_t pick(std::size_t n) { return static_cast<std::size_t>(rng_() % n); }
  bool coin(std::size_t one_in) { return pick(one_in) == 0; }

 private:
  std::mt19937_64 rng_;
};

Term var(const std::string& prefix, std::size_t i) { return Term::variable(prefix + std::to_string(i)); }

Term constant(Gen& gen, std::size_t domain) { return Term::constant("a" + std::to_string(gen.pick(domain))); }

// Body atom over `p` drawing variables from a pool of `pool` names, so
// repeated variables occur.
Atom body_atom(Gen& gen, const Pred& p, std::size_t pool) {
  std::vector<Term> args;
  for (std::size_t i = 0; i < p.arity; ++i) args.push_back(var("X", gen.pick(pool)));
  return Atom(p.name, std::move(args));
}

std::vector<Term> variables_of(const std::vector<Atom>& body) {
  std::vector<Term> out;
  for (const auto& a : body)
    for (Term t : a.args)
      if (std::find(out.begin(), out.end(), t) == out.end()) out.push_back(t);
  return out;
}

Atom datalog_head(Gen& gen, const Pred& p, const std::vector<Atom>& body) {
  const auto vars = variables_of(body);
  std::vector<Term> args;
  for (std::size_t i = 0; i < p.arity; ++i) args.push_back(vars[gen.pick(vars.size())]);
  return Atom(p.name, std::move(args));
}

void add_facts(Gen& gen, Instance& base, const Pred& p, std::size_t n, std::size_t domain) {
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<Term> args;
    for (std::size_t j = 0; j < p.arity; ++j) args.push_back(constant(gen, domain));
    base.insert(Atom(p.name, std::move(args)));
  }
}

bool used(const Program& program, const Pred& p) {
  const auto info = program.predicate(Symbol(p.name));
  return info.has_value();
}

GeneratedKb linear_fes(Gen& gen) {
  const std::size_t levels = 3 + gen.pick(2);
  std::vector<std::vector<Pred>> preds(levels);
  for (std::size_t l = 0; l < levels; ++l) {
    const std::size_t n = 1 + gen.pick(2);
    for (std::size_t i = 0; i < n; ++i) {
      preds[l].push_back({(l == 0 ? "e" : "l" + std::to_string(l) + "p") + std::to_string(i), 1 + gen.pick(3)});
    }
  }
  Program program;
  const std::size_t rules = 2 + gen.pick(5);
  for (std::size_t r = 0; r < rules; ++r) {
    // The body sits below the top level, so an existential head exists.
    const std::size_t bl = r == 0 ? 0 : gen.pick(levels - 1);
    const Pred& bp = preds[bl][gen.pick(preds[bl].size())];
    const bool existential = gen.coin(2);
    const std::size_t low = existential ? bl + 1 : std::max<std::size_t>(1, bl);
    const std::size_t hl = low + gen.pick(levels - low);
    const Pred& hp = preds[hl][gen.pick(preds[hl].size())];
    std::vector<Atom> body{body_atom(gen, bp, bp.arity)};
    Atom head = datalog_head(gen, hp, body);
    if (existential) {
      const std::size_t forced = gen.pick(hp.arity);
      for (std::size_t i = 0; i < hp.arity; ++i)
        if (i == forced || gen.coin(3)) head.args[i] = var("Z", i);
    }
    program.add_rule({"r" + std::to_string(r + 1), std::move(body), std::move(head)});
  }
  Instance base;
  for (const auto& p : preds[0])
    if (used(program, p)) add_facts(gen, base, p, 1 + gen.pick(3), 4);
  return {"", std::move(program), std::move(base)};
}

Program datalog_program(Gen& gen, std::vector<Pred>& edb) {
  const std::size_t ne = 1 + gen.pick(2), ni = 1 + gen.pick(3);
  std::vector<Pred> idb;
  for (std::size_t i = 0; i < ne; ++i) edb.push_back({"e" + std::to_string(i), 1 + gen.pick(2)});
  for (std::size_t i = 0; i < ni; ++i) idb.push_back({"p" + std::to_string(i), 1 + gen.pick(3)});
  // Heads are fixed first so intensional bodies only use derived
  // predicates and stay homogeneous.
  const std::size_t rules = 2 + gen.pick(5);
  std::vector<std::size_t> heads;
  std::vector<Pred> derived;
  for (std::size_t r = 0; r < rules; ++r) {
    heads.push_back(gen.pick(idb.size()));
    const Pred& h = idb[heads.back()];
    if (std::none_of(derived.begin(), derived.end(), [&](const Pred& d) { return d.name == h.name; })) {
      derived.push_back(h);
    }
  }
  Program program;
  for (std::size_t r = 0; r < rules; ++r) {
    const bool extensional = r == 0 || gen.coin(2);
    const auto& from = extensional ? edb : derived;
    std::vector<Atom> body;
    const std::size_t atoms = 1 + gen.pick(2);
    for (std::size_t i = 0; i < atoms; ++i) {
      Atom a = body_atom(gen, from[gen.pick(from.size())], 3);
      if (std::find(body.begin(), body.end(), a) == body.end()) body.push_back(std::move(a));
    }
    Atom head = datalog_head(gen, idb[heads[r]], body);
    program.add_rule({"r" + std::to_string(r + 1), std::move(body), std::move(head)});
  }
  return program;
}

GeneratedKb datalog(Gen& gen) {
  std::vector<Pred> edb;
  Program program = datalog_program(gen, edb);
  std::vector<Pred> in_use;
  for (const auto& p : edb)
    if (used(program, p)) in_use.push_back(p);
  Instance base;
  const std::size_t facts = 1 + gen.pick(8);
  for (std::size_t i = 0; i < facts; ++i) add_facts(gen, base, in_use[gen.pick(in_use.size())], 1, 4);
  return {"", std::move(program), std::move(base)};
}

GeneratedKb cyclic_datalog(Gen& gen) {
  GeneratedKb kb = datalog(gen);
  const Term x = Term::variable("X"), y = Term::variable("Y");
  kb.program.add_rule({"f1", {Atom("ec", {x, y})}, Atom("R", {x, y})});
  kb.program.add_rule({"f2", {Atom("R", {x, y})}, Atom("T", {y, x, y})});
  kb.program.add_rule({"f3", {Atom("T", {y, x, y})}, Atom("R", {x, y})});
  add_facts(gen, kb.base, {"ec", 2}, 2 + gen.pick(5), 5);
  return kb;
}

bool terminates(const GeneratedKb& kb) {
  ChaseConfig cfg;
  cfg.variant = ChaseVariant::Equivalent;
  cfg.round_cap = 32;
  try {
    chase(kb.program, kb.base, cfg);
    return true;
  } catch (const CapExceeded&) {
    return false;
  }
}

}  // namespace

Family parse_family(std::string_view name) {
  if (name == "linear-fes") return Family::LinearFes;
  if (name == "datalog") return Family::Datalog;
  if (name == "cyclic-datalog") return Family::CyclicDatalog;
  throw std::invalid_argument("unknown family: " + std::string(name));
}

std::string to_string(Family f) {
  switch (f) {
    case Family::LinearFes:
      return "linear-fes";
    case Family::Datalog:
      return "datalog";
    case Family::CyclicDatalog:
      return "cyclic-datalog";
  }
  return "?";
}

std::vector<GeneratedKb> generate_corpus(std::uint64_t seed, Family family, std::size_t count) {
  Gen gen(seed);
  std::vector<GeneratedKb> out;
  while (out.size() < count) {
    GeneratedKb kb;
    switch (family) {
      case Family::LinearFes:
        kb = linear_fes(gen);
        if (!terminates(kb)) continue;
        break;
      case Family::Datalog:
        kb = datalog(gen);
        break;
      case Family::CyclicDatalog:
        kb = cyclic_datalog(gen);
        break;
    }
    std::ostringstream name;
    name << to_string(family) << '-' << seed << '-' << std::setw(4) << std::setfill('0') << out.size();
    kb.name = name.str();
    out.push_back(std::move(kb));
  }
  return out;
}

std::vector<std::filesystem::path> write_corpus(const std::vector<GeneratedKb>& corpus,
                                                const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  std::vector<std::filesystem::path> written;
  auto write = [&](const std::filesystem::path& path, const std::string& text) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write " + path.string());
    f << text;
    written.push_back(path);
  };
  for (const auto& kb : corpus) {
    write(dir / (kb.name + ".rules"), kb.program.to_string());
    write(dir / (kb.name + ".tsv"), format_facts(kb.base));
  }
  return written;
}

}  // namespace tgr
