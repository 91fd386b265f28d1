// Command-line surface: analyses on model files, random generation,
// benchmarking, DOT export, and workspace management of semirings and
// stored models.
//
// Exit codes: 0 = analysis completed with a verdict; 2 = parse or
// validation error; 3 = budget exhausted or interrupted; 4 = capability
// mismatch.

#include <CLI11.hpp>

#include "wca/bench.hpp"
#include "wca/builtins.hpp"
#include "wca/construct.hpp"
#include "wca/cts.hpp"
#include "wca/errors.hpp"
#include "wca/model_io.hpp"
#include "wca/random_gen.hpp"
#include "wca/tokens.hpp"
#include "wca/wa.hpp"
#include "wca/workspace.hpp"

#include <atomic>
#include <csignal>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>

namespace {

std::atomic<bool> g_cancel{false};

void on_interrupt(int) { g_cancel.store(true, std::memory_order_relaxed); }

constexpr int kExitOk = 0;
constexpr int kExitParse = 2;
constexpr int kExitBudget = 3;
constexpr int kExitCapability = 4;

struct Session {
  std::string workspace_dir = "workspace";
  std::unique_ptr<wca::Workspace> ws;
  wca::Registry bare;

  // Workspace directory is only created when a command mutates it; pure
  // analyses on builtin semirings need no directory at all.
  const wca::Registry& registry() {
    if (ws) return ws->registry();
    if (std::filesystem::exists(std::filesystem::path(workspace_dir) /
                                "manifest.json")) {
      ws = std::make_unique<wca::Workspace>(workspace_dir);
      return ws->registry();
    }
    return bare;
  }

  wca::Workspace& workspace() {
    if (!ws) ws = std::make_unique<wca::Workspace>(workspace_dir);
    return *ws;
  }
};

std::vector<wca::Value> parse_vector(const wca::Semiring& sr,
                                     const std::string& text,
                                     std::size_t expect) {
  std::vector<wca::Value> out;
  for (const auto& tok : wca::split_top_level(text, ','))
    out.push_back(sr.parse(std::string{wca::trim(tok)}));
  if (out.size() != expect)
    throw wca::Error("vector has " + std::to_string(out.size()) +
                     " entries, the automaton has " + std::to_string(expect) +
                     " states");
  return out;
}

const wca::WeightedAutomaton& need_wa(const wca::Model& m) {
  if (!m.is_wa())
    throw wca::Error("this analysis needs a weighted automaton model");
  return *m.wa;
}

const wca::Cts& need_cts(const wca::Model& m) {
  if (m.is_wa())
    throw wca::Error("this analysis needs a conditional transition system");
  return *m.cts;
}

std::string format_set(const wca::Poset& p, const wca::DenseBitset& s) {
  std::string out = "{";
  bool first = true;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (!s.test(i)) continue;
    if (!first) out += ",";
    out += p.names()[i];
    first = false;
  }
  return out + "}";
}

int run_equiv_complete(Session& s, const std::string& path,
                       std::uint64_t budget_limit) {
  wca::Model m = wca::parse_model_file(path, s.registry());
  const auto& wa = need_wa(m);
  wca::Budget budget;
  budget.limit = budget_limit;
  budget.cancel = &g_cancel;
  auto report = wca::equiv_complete(wa, budget);
  bool done = report.status == wca::EquivalenceReport::Status::Completed;
  std::cout << "status: " << (done ? "completed" : "budget exhausted")
            << "\n";
  std::cout << "words explored: " << report.words_explored << "\n";
  std::cout << "basis size: " << report.basis.size() << "\n";
  std::cout << "basis words:";
  constexpr std::size_t kMaxListed = 12;
  for (std::size_t i = 0; i < report.basis.size() && i < kMaxListed; ++i)
    std::cout << " " << wca::render_word(wa, report.basis[i].word);
  if (report.basis.size() > kMaxListed)
    std::cout << " ... (" << report.basis.size() - kMaxListed << " more)";
  std::cout << "\n";
  if (!done)
    std::cout << "partition so far (separations are definite, merges are "
                 "not):\n";
  std::cout << "partition:";
  for (const auto& cls : report.partition) {
    std::cout << " {";
    for (std::size_t i = 0; i < cls.size(); ++i)
      std::cout << (i ? "," : "") << wa.states[cls[i]];
    std::cout << "}";
  }
  std::cout << "\n";
  return done ? kExitOk : kExitBudget;
}

int run_equiv_upto(Session& s, const std::string& path,
                   const std::string& left, const std::string& right,
                   std::uint64_t budget_limit) {
  wca::Model m = wca::parse_model_file(path, s.registry());
  const auto& wa = need_wa(m);
  auto u = parse_vector(*wa.sr, left, wa.states.size());
  auto v = parse_vector(*wa.sr, right, wa.states.size());
  wca::Budget budget;
  budget.limit = budget_limit;
  budget.cancel = &g_cancel;
  auto report = wca::equiv_upto(wa, u, v, budget);
  using Status = wca::EquivUptoResult::Status;
  if (report.status == Status::Equivalent) {
    std::cout << "verdict: EQUIVALENT\n";
  } else if (report.status == Status::NotEquivalent) {
    std::cout << "verdict: NOT EQUIVALENT\n";
    std::cout << "witness: " << wca::render_word(wa, report.witness) << "\n";
    std::cout << "left weight: " << wa.sr->format(report.left_weight) << "\n";
    std::cout << "right weight: " << wa.sr->format(report.right_weight)
              << "\n";
  } else {
    std::cout << "verdict: budget exhausted\n";
  }
  std::cout << "pairs processed: " << report.pairs_processed
            << ", pruned: " << report.pairs_pruned << "\n";
  return report.status == Status::BudgetExhausted ? kExitBudget : kExitOk;
}

int run_universality(Session& s, const std::string& path,
                     const std::string& initial, std::uint64_t threshold,
                     std::uint64_t budget_limit) {
  wca::Model m = wca::parse_model_file(path, s.registry());
  const auto& wa = need_wa(m);
  auto u = parse_vector(*wa.sr, initial, wa.states.size());
  wca::Budget budget;
  budget.limit = budget_limit;
  budget.cancel = &g_cancel;
  auto report = wca::universality(wa, u, threshold, budget);
  using Status = wca::UniversalityResult::Status;
  if (report.status == Status::Universal) {
    std::cout << "verdict: UNIVERSAL (every word stays <= " << threshold
              << ")\n";
  } else if (report.status == Status::NotUniversal) {
    std::cout << "verdict: NOT UNIVERSAL\n";
    std::cout << "witness: " << wca::render_word(wa, report.witness) << "\n";
  } else {
    std::cout << "verdict: budget exhausted\n";
  }
  std::cout << "vectors explored: " << report.vectors_explored
            << ", kept: " << report.vectors_kept << "\n";
  return report.status == Status::BudgetExhausted ? kExitBudget : kExitOk;
}

int run_cts_bisim(Session& s, const std::string& path,
                  const std::string& backend) {
  wca::Model m = wca::parse_model_file(path, s.registry());
  const auto& cts = need_cts(m);
  auto kind = backend == "bdd" ? wca::CtsBackend::Bdd
                               : wca::CtsBackend::Downset;
  auto report = wca::cts_bisimilarity(cts, kind);
  std::cout << "iterations: " << report.iterations << "\n";
  if (kind == wca::CtsBackend::Bdd)
    std::cout << "bdd nodes: " << report.bdd_nodes << "\n";
  for (std::size_t x = 0; x < cts.state_count(); ++x)
    for (std::size_t y = x; y < cts.state_count(); ++y)
      std::cout << "R(" << cts.states[x] << "," << cts.states[y]
                << ") = " << format_set(*cts.conditions, report.entry(x, y))
                << "\n";
  return kExitOk;
}

int run_gen_random(Session& s, const std::string& semiring,
                   std::size_t states, std::size_t symbols, double p_tr,
                   std::uint64_t seed, const std::string& out_path) {
  wca::RandomSpec spec;
  spec.states = states;
  spec.alphabet_size = symbols;
  spec.transition_probability = p_tr;
  spec.seed = seed;
  wca::Model m;
  m.semiring_name = semiring;
  m.wa = wca::gen_random(spec, s.registry().resolve(semiring));
  std::string text = wca::print_model(m);
  if (out_path.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(out_path);
    if (!out) throw wca::Error("cannot write '" + out_path + "'");
    out << text;
  }
  return kExitOk;
}

int run_bench(Session& s, const std::string& semiring,
              const std::string& states_csv, double p_tr, std::size_t runs,
              const std::string& percentiles_csv, double timeout_ms,
              std::uint64_t seed, std::uint64_t budget) {
  wca::BenchConfig cfg;
  cfg.state_counts.clear();
  for (const auto& tok : wca::split_top_level(states_csv, ','))
    cfg.state_counts.push_back(std::stoull(std::string{wca::trim(tok)}));
  cfg.transition_probability = p_tr;
  cfg.runs = runs;
  cfg.percentiles.clear();
  for (const auto& tok : wca::split_top_level(percentiles_csv, ','))
    cfg.percentiles.push_back(std::stoi(std::string{wca::trim(tok)}));
  cfg.timeout_ms = timeout_ms;
  cfg.seed = seed;
  cfg.budget = budget;
  auto report = wca::bench(s.registry().resolve(semiring), semiring, cfg);
  std::cout << wca::format_bench_table(report);
  return kExitOk;
}

wca::Poset parse_poset_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw wca::Error("cannot open poset file '" + path + "'");
  std::vector<std::string> elements;
  std::vector<std::pair<std::string, std::string>> le;
  std::string raw;
  std::size_t no = 0;
  while (std::getline(in, raw)) {
    ++no;
    auto hash = raw.find('#');
    if (hash != std::string::npos) raw.erase(hash);
    std::string line{wca::trim(raw)};
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string head;
    ls >> head;
    if (head == "@conditions") {
      std::string rest;
      std::getline(ls, rest);
      for (const auto& tok : wca::split_top_level(rest, ','))
        elements.push_back(std::string{wca::trim(tok)});
    } else if (head == "@le") {
      std::string a, b;
      if (!(ls >> a >> b))
        throw wca::ParseError(no, "@le needs: lesser greater");
      le.emplace_back(a, b);
    } else {
      throw wca::ParseError(no, "unknown directive " + head);
    }
  }
  if (elements.empty()) throw wca::ParseError(0, "missing @conditions");
  return wca::Poset(std::move(elements), le);
}

}  // namespace

int main(int argc, char** argv) {
  std::signal(SIGINT, on_interrupt);
  Session session;

  CLI::App app{"Weighted-automata and conditional-transition-system "
               "analyses over pluggable semirings"};
  app.require_subcommand(1);
  app.add_option("--workspace", session.workspace_dir,
                 "workspace directory (default: ./workspace)");

  std::string model_path, left, right, initial, backend = "downset";
  std::string semiring = "rational", states_csv = "10,15,20";
  std::string percentiles_csv = "50,90,95", out_path, name, file_or_left;
  std::string product_right;
  std::uint64_t budget = 100000, threshold = 0, seed = 1, modulus = 0;
  std::size_t states = 3, symbols = 2, runs = 100;
  double p_tr = 0.5, timeout_ms = 0;
  std::uint64_t bench_budget = 10000000;

  auto* ec = app.add_subcommand("equiv-complete",
                                "all-pairs language equivalence");
  ec->add_option("model", model_path)->required();
  ec->add_option("--budget", budget, "exploration step budget");

  auto* eu = app.add_subcommand(
      "equiv-upto", "language equivalence of two weight vectors");
  eu->add_option("model", model_path)->required();
  eu->add_option("--left", left, "comma-separated weight vector")->required();
  eu->add_option("--right", right, "comma-separated weight vector")
      ->required();
  eu->add_option("--budget", budget, "exploration step budget");

  auto* un = app.add_subcommand("universality",
                                "tropical threshold universality");
  un->add_option("model", model_path)->required();
  un->add_option("--initial", initial, "comma-separated initial vector")
      ->required();
  un->add_option("--threshold", threshold, "weight bound T")->required();
  un->add_option("--budget", budget, "exploration step budget");

  auto* cb = app.add_subcommand("cts-bisim", "conditional bisimilarity");
  cb->add_option("model", model_path)->required();
  cb->add_option("--backend", backend, "downset | bdd")
      ->check(CLI::IsMember({"downset", "bdd"}));

  auto* gr = app.add_subcommand("gen-random", "generate a random automaton");
  gr->add_option("--semiring", semiring, "semiring name");
  gr->add_option("--states", states, "state count");
  gr->add_option("--symbols", symbols, "alphabet size");
  gr->add_option("--ptr", p_tr, "transition probability");
  gr->add_option("--seed", seed, "random seed");
  gr->add_option("-o,--out", out_path, "output file (default stdout)");

  auto* be = app.add_subcommand("bench",
                                "percentile benchmark of equiv-complete");
  be->add_option("--semiring", semiring, "semiring name");
  be->add_option("--states", states_csv, "comma-separated state counts");
  be->add_option("--ptr", p_tr, "transition probability");
  be->add_option("--runs", runs, "automata per configuration");
  be->add_option("--percentiles", percentiles_csv, "percentile list");
  be->add_option("--timeout-ms", timeout_ms, "per-run timeout, 0 = none");
  be->add_option("--seed", seed, "random seed");
  be->add_option("--budget", bench_budget, "per-run step budget");

  auto* xd = app.add_subcommand("export-dot", "GraphViz text for a model");
  xd->add_option("model", model_path)->required();

  auto* sr_cmd = app.add_subcommand("semiring", "manage defined semirings");
  sr_cmd->require_subcommand(1);
  auto* sr_list = sr_cmd->add_subcommand("list", "list available semirings");
  auto* sr_zmod =
      sr_cmd->add_subcommand("define-zmod", "define integers modulo q");
  sr_zmod->add_option("name", name)->required();
  sr_zmod->add_option("modulus", modulus)->required();
  auto* sr_lat = sr_cmd->add_subcommand(
      "define-lattice", "define a downset lattice from a poset file");
  sr_lat->add_option("name", name)->required();
  sr_lat->add_option("poset-file", file_or_left)->required();
  auto* sr_prod =
      sr_cmd->add_subcommand("define-product", "define a direct product");
  sr_prod->add_option("name", name)->required();
  sr_prod->add_option("left", file_or_left)->required();
  sr_prod->add_option("right", product_right)->required();
  auto* sr_del = sr_cmd->add_subcommand("delete", "delete a defined semiring");
  sr_del->add_option("name", name)->required();

  auto* mo_cmd = app.add_subcommand("model", "manage stored models");
  mo_cmd->require_subcommand(1);
  auto* mo_add = mo_cmd->add_subcommand("add", "validate and store a model");
  mo_add->add_option("name", name)->required();
  mo_add->add_option("file", file_or_left)->required();
  auto* mo_list = mo_cmd->add_subcommand("list", "list stored models");
  auto* mo_rm = mo_cmd->add_subcommand("remove", "remove a stored model");
  mo_rm->add_option("name", name)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitOk : kExitParse;
  }

  try {
    if (ec->parsed()) return run_equiv_complete(session, model_path, budget);
    if (eu->parsed())
      return run_equiv_upto(session, model_path, left, right, budget);
    if (un->parsed())
      return run_universality(session, model_path, initial, threshold, budget);
    if (cb->parsed()) return run_cts_bisim(session, model_path, backend);
    if (gr->parsed())
      return run_gen_random(session, semiring, states, symbols, p_tr, seed,
                            out_path);
    if (be->parsed())
      return run_bench(session, semiring, states_csv, p_tr, runs,
                       percentiles_csv, timeout_ms, seed, bench_budget);
    if (xd->parsed()) {
      wca::Model m = wca::parse_model_file(model_path, session.registry());
      std::cout << wca::export_dot(m);
      return kExitOk;
    }
    if (sr_list->parsed()) {
      std::cout << "built-in: rational, boolean, tropical-nat, integer\n";
      std::cout << "parametric: zmod(q), latticez(lo,hi), "
                   "product(left,right)\n";
      const auto& defs = session.registry().definitions();
      if (!defs.empty()) {
        std::cout << "defined:\n";
        for (const auto& [n, d] : defs) {
          std::cout << "  " << n << " = ";
          if (d.kind == "zmod") {
            std::cout << "zmod(" << d.modulus << ")";
          } else if (d.kind == "poset-lattice") {
            std::cout << "poset-lattice over " << d.poset->size()
                      << " conditions";
          } else {
            std::cout << "product(" << d.left << "," << d.right << ")";
          }
          std::cout << "\n";
        }
      }
      return kExitOk;
    }
    if (sr_zmod->parsed()) {
      session.workspace().define_zmod(name, modulus);
      std::cout << "defined " << name << " = zmod(" << modulus << ")\n";
      return kExitOk;
    }
    if (sr_lat->parsed()) {
      session.workspace().define_lattice(name, parse_poset_file(file_or_left));
      std::cout << "defined " << name << " as a downset lattice\n";
      return kExitOk;
    }
    if (sr_prod->parsed()) {
      session.workspace().define_product(name, file_or_left, product_right);
      std::cout << "defined " << name << " = product(" << file_or_left << ","
                << product_right << ")\n";
      return kExitOk;
    }
    if (sr_del->parsed()) {
      session.workspace().delete_semiring(name);
      std::cout << "deleted " << name << "\n";
      return kExitOk;
    }
    if (mo_add->parsed()) {
      session.workspace().add_model(name, file_or_left);
      std::cout << "stored "
                << session.workspace().model_path(name).string() << "\n";
      return kExitOk;
    }
    if (mo_list->parsed()) {
      for (const auto& m : session.workspace().models())
        std::cout << m.name << "\t"
                  << (session.workspace().dir() / m.file).string() << "\t"
                  << (m.semiring.empty() ? "(inline conditions)" : m.semiring)
                  << "\n";
      return kExitOk;
    }
    if (mo_rm->parsed()) {
      session.workspace().remove_model(name);
      std::cout << "removed " << name << "\n";
      return kExitOk;
    }
  } catch (const wca::CapabilityMismatch& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitCapability;
  } catch (const wca::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitParse;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitParse;
  }
  return kExitParse;
}
