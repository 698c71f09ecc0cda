// stratlat: command-line workbench for stratified lattices.
//
// Subcommands: check, represent, lfp, solve, wfs, enumerate.
// Exit codes: 0 ok, 1 property violated (a machine-readable witness is
// printed), 2 input error.  Output depends only on the input files and
// flags; STRATLAT_COLOR=1 adds ANSI markers to the pass/fail column.

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <numeric>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "stratlat/enumerate.hpp"
#include "stratlat/errors.hpp"
#include "stratlat/fixpoint.hpp"
#include "stratlat/inverse_limit.hpp"
#include "stratlat/json_io.hpp"
#include "stratlat/lp.hpp"
#include "stratlat/stratified.hpp"

namespace {

using namespace stratlat;

bool color_enabled() {
  const char* v = std::getenv("STRATLAT_COLOR");
  return v != nullptr && std::string(v) == "1";
}

std::string mark_ok() { return color_enabled() ? "\x1b[32mok\x1b[0m" : "ok"; }
std::string mark_fail() {
  return color_enabled() ? "\x1b[31mFAIL\x1b[0m" : "FAIL";
}

void emit_witness(const Json& w) {
  Json wrapper;
  wrapper["witness"] = w;
  std::cout << wrapper.dump() << "\n";
}

std::string witness_labels(const FiniteLattice& L,
                           const std::vector<int>& witness) {
  std::string out = "(";
  for (size_t i = 0; i < witness.size(); ++i) {
    if (i) out += ", ";
    out += L.label(witness[i]);
  }
  return out + ")";
}

Json axiom_result_json(const FiniteLattice& L, const AxiomResult& r) {
  Json j;
  j["axiom"] = r.name;
  j["ok"] = r.ok;
  if (r.alpha >= 0) j["alpha"] = r.alpha;
  if (r.beta >= 0) j["beta"] = r.beta;
  Json elems = Json::array();
  for (int x : r.witness) elems.push_back(L.label(x));
  j["elements"] = std::move(elems);
  if (!r.detail.empty()) j["detail"] = r.detail;
  return j;
}

// --- check ------------------------------------------------------------

int run_check(const std::string& path, const std::string& suite_name,
              bool as_json) {
  StratifiedPtr S = stratified_from_json(load_json_file(path));
  AxiomSuite suite;
  if (suite_name == "model")
    suite = AxiomSuite::Model;
  else if (suite_name == "strong")
    suite = AxiomSuite::Strong;
  else if (suite_name == "symmetric")
    suite = AxiomSuite::Symmetric;
  else if (suite_name == "dual")
    suite = AxiomSuite::Dual;
  else
    suite = AxiomSuite::B;

  std::vector<AxiomResult> results;
  if (suite == AxiomSuite::B) {
    // The B route needs a model to extract the restriction family from.
    if (!passes(*S, AxiomSuite::Model)) {
      std::cerr << "error: the B suite applies to models only and the input "
                   "fails the base axioms\n";
      return 2;
    }
    results = b_axiomatization_round_trip(*S);
  } else {
    results = check_axioms(*S, suite);
  }
  Classification cls = classify(*S);

  const FiniteLattice& L = S->lattice();
  if (as_json) {
    Json j;
    j["suite"] = suite_name;
    j["results"] = Json::array();
    for (const AxiomResult& r : results)
      j["results"].push_back(axiom_result_json(L, r));
    j["pass"] = all_ok(results);
    j["classification"] = cls.name();
    std::cout << dump_canonical(j);
  } else {
    for (const AxiomResult& r : results) {
      std::cout << r.name << "\t" << (r.ok ? mark_ok() : mark_fail());
      if (!r.ok) {
        std::cout << "\talpha=" << r.alpha;
        if (r.beta >= 0) std::cout << " beta=" << r.beta;
        std::cout << " witness=" << witness_labels(L, r.witness);
        if (!r.detail.empty()) std::cout << "  " << r.detail;
      }
      std::cout << "\n";
    }
    std::cout << "suite " << suite_name << ": "
              << (all_ok(results) ? "pass" : "fail") << "\n";
    std::cout << "classification: " << cls.name() << "\n";
  }

  if (all_ok(results)) return 0;
  for (const AxiomResult& r : results)
    if (!r.ok) {
      emit_witness(axiom_result_json(L, r));
      break;
    }
  return 1;
}

// --- represent --------------------------------------------------------

int run_represent(const std::string& path, bool as_json) {
  StratifiedPtr S = stratified_from_json(load_json_file(path));
  RepresentationCheck rep = representation_isomorphism(*S);

  const FiniteLattice& L = S->lattice();
  const FiniteLattice& LM = rep.limit.model->lattice();
  if (as_json) {
    Json j = system_to_json(rep.system);
    j["isomorphism"] = Json::object();
    for (int i : [&] {
           std::vector<int> order(L.size());
           std::iota(order.begin(), order.end(), 0);
           std::sort(order.begin(), order.end(), [&](int a, int b) {
             return L.label(a) < L.label(b);
           });
           return order;
         }())
      j["isomorphism"][L.label(i)] = LM.label(rep.forward[i]);
    std::cout << dump_canonical(j);
    return 0;
  }

  std::cout << "tower: " << rep.system.levels.size() << " levels\n";
  for (size_t a = 0; a < rep.system.levels.size(); ++a) {
    const FiniteLattice& level = *rep.system.levels[a];
    std::cout << "  level " << a << ": " << level.size() << " elements:";
    std::vector<std::string> names;
    for (int x = 0; x < level.size(); ++x) names.push_back(level.label(x));
    std::sort(names.begin(), names.end());
    for (const std::string& n : names) std::cout << " " << n;
    std::cout << "\n";
  }
  for (size_t a = 0; a < rep.system.steps.size(); ++a) {
    const LatticeMap& m = rep.system.steps[a];
    std::cout << "map " << (a + 1) << " -> " << a << ":";
    std::vector<int> order(m.source->size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int x, int y) {
      return m.source->label(x) < m.source->label(y);
    });
    for (int x : order)
      std::cout << " " << m.source->label(x) << "|->" << m.target->label(m(x));
    std::cout << "\n";
  }
  std::cout << "isomorphism:\n";
  std::vector<int> order(L.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](int a, int b) { return L.label(a) < L.label(b); });
  for (int i : order)
    std::cout << "  " << L.label(i) << " |-> " << LM.label(rep.forward[i])
              << "\n";
  std::cout << "representation: verified\n";
  return 0;
}

// --- lfp --------------------------------------------------------------

int run_lfp(const std::string& model_path, const std::string& fn_path,
            bool as_json) {
  StratifiedPtr S = stratified_from_json(load_json_file(model_path));
  EndoFunction f = endo_from_json(load_json_file(fn_path), S);

  MonotoneCheck mc = weak_monotonicity_check(f);
  const FiniteLattice& L = S->lattice();
  if (!mc.ok) {
    std::cerr << "error: function is not weakly monotone: at level "
              << mc.alpha << ", " << L.label(mc.witness.first)
              << " below " << L.label(mc.witness.second)
              << " but the images are not\n";
    return 2;
  }

  LfpResult r = stratified_lfp_trace(f);
  LevelFamily fam = level_components(f);

  bool is_fixed = f(r.value) == r.value;
  bool is_least = true;
  for (int z = 0; z < L.size() && is_least; ++z)
    if (lex_leq(*S, f.table[z], z) && !lex_leq(*S, r.value, z))
      is_least = false;

  if (as_json) {
    Json j;
    j["value"] = L.label(r.value);
    j["levels"] = Json::array();
    for (const LevelTrace& t : r.levels) {
      Json lvl;
      lvl["alpha"] = t.alpha;
      lvl["start"] = L.label(t.start);
      lvl["iterates"] = Json::array();
      for (int x : t.iterates) lvl["iterates"].push_back(L.label(x));
      lvl["value"] = L.label(t.value);
      j["levels"].push_back(std::move(lvl));
    }
    j["fixed_point"] = is_fixed;
    j["least_prefixed"] = is_least;
    j["level_components"] = {{"conditionally_monotone",
                              fam.conditionally_monotone},
                             {"compatible", fam.compatible},
                             {"reassembles", fam.reassembles}};
    std::cout << dump_canonical(j);
  } else {
    for (const LevelTrace& t : r.levels) {
      std::cout << "level " << t.alpha << ": start=" << L.label(t.start);
      for (int x : t.iterates) std::cout << " -> " << L.label(x);
      std::cout << "  [y_" << t.alpha << " = " << L.label(t.value) << "]\n";
    }
    std::cout << "least fixed point: " << L.label(r.value) << "\n";
    std::cout << "fixed point " << (is_fixed ? mark_ok() : mark_fail())
              << ", least pre-fixed "
              << (is_least ? mark_ok() : mark_fail())
              << ", level components "
              << ((fam.conditionally_monotone && fam.compatible &&
                   fam.reassembles)
                      ? mark_ok()
                      : mark_fail())
              << "\n";
  }

  if (is_fixed && is_least) return 0;
  Json w;
  w["value"] = L.label(r.value);
  w["fixed_point"] = is_fixed;
  w["least_prefixed"] = is_least;
  emit_witness(w);
  return 1;
}

// --- solve / wfs ------------------------------------------------------

Program parse_program_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SchemaError("cannot open \"" + path + "\"");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_program(buf.str());
}

int run_solve(const std::string& path, bool as_json, bool trace,
              bool diff_wfs) {
  Program P = parse_program_file(path);
  SolveResult r = rw_minimum_model(P);

  std::vector<int> order(P.atom_count());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](int a, int b) { return P.atoms[a] < P.atoms[b]; });

  if (as_json) {
    std::cout << dump_canonical(solve_to_json(P, r));
  } else {
    for (int z : order) {
      std::cout << P.atoms[z] << " = " << r.values[z].to_string() << "  ("
                << to_string(collapse3(r.values[z])) << ")";
      if (r.level_of[z] >= 0) std::cout << "  level " << r.level_of[z];
      std::cout << "\n";
    }
    if (trace) {
      for (size_t alpha = 0; alpha < r.frozen_at.size(); ++alpha) {
        std::cout << "level " << alpha << ": froze";
        if (r.frozen_at[alpha].empty()) std::cout << " nothing";
        std::vector<std::string> names;
        for (int z : r.frozen_at[alpha]) names.push_back(P.atoms[z]);
        std::sort(names.begin(), names.end());
        for (const std::string& n : names) std::cout << " " << n;
        std::cout << "\n";
      }
      if (r.zero_level >= 0)
        std::cout << "level " << r.zero_level
                  << ": remaining atoms settled to 0\n";
    }
  }

  if (!diff_wfs) return 0;

  std::vector<Truth3> oracle = wfs_oracle(P);
  std::vector<Truth3> ours = collapse3(r.values);
  for (int z : order) {
    if (ours[z] != oracle[z]) {
      std::cout << "wfs mismatch on " << P.atoms[z] << ": solver "
                << to_string(ours[z]) << ", oracle " << to_string(oracle[z])
                << "\n";
      Json w;
      w["atom"] = P.atoms[z];
      w["solver"] = to_string(ours[z]);
      w["oracle"] = to_string(oracle[z]);
      emit_witness(w);
      return 1;
    }
  }
  if (!as_json) std::cout << "wfs agreement: " << mark_ok() << "\n";
  return 0;
}

int run_wfs(const std::string& path, bool as_json) {
  Program P = parse_program_file(path);
  std::vector<Truth3> vals = wfs_oracle(P);

  std::vector<int> order(P.atom_count());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](int a, int b) { return P.atoms[a] < P.atoms[b]; });

  if (as_json) {
    Json j;
    j["atoms"] = Json::object();
    for (int z : order) j["atoms"][P.atoms[z]] = to_string(vals[z]);
    std::cout << dump_canonical(j);
  } else {
    for (int z : order)
      std::cout << P.atoms[z] << " = " << to_string(vals[z]) << "\n";
  }
  return 0;
}

// --- enumerate ----------------------------------------------------------

int run_enumerate(int max_elems, int depth, std::optional<uint64_t> seed,
                  std::optional<int> count) {
  std::vector<std::string> lines;
  for (int n = 1; n <= max_elems; ++n)
    for (const LatticePtr& lat : enumerate_lattices(n))
      for (const StratifiedPtr& S : enumerate_stratifications(lat, depth))
        lines.push_back(stratified_to_json(*S).dump());

  if (count && static_cast<size_t>(*count) < lines.size()) {
    // Sample without replacement, then keep the original order so the
    // stream stays a subsequence of the full enumeration.
    std::vector<size_t> idx(lines.size());
    std::iota(idx.begin(), idx.end(), size_t{0});
    std::mt19937_64 gen(*seed);
    std::shuffle(idx.begin(), idx.end(), gen);
    idx.resize(static_cast<size_t>(*count));
    std::sort(idx.begin(), idx.end());
    std::vector<std::string> sampled;
    for (size_t i : idx) sampled.push_back(std::move(lines[i]));
    lines = std::move(sampled);
  }
  for (const std::string& line : lines) std::cout << line << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"workbench for stratified complete lattices"};
  app.require_subcommand(1);

  // check
  std::string check_path, suite = "model";
  bool check_json = false;
  CLI::App* check = app.add_subcommand(
      "check", "run an axiom suite against a stratified lattice");
  check->add_option("path", check_path, "stratified lattice JSON")
      ->required();
  check->add_option("--suite", suite, "model|strong|symmetric|dual|B")
      ->check(CLI::IsMember({"model", "strong", "symmetric", "dual", "B"}));
  check->add_flag("--json", check_json, "machine-readable report");

  // represent
  std::string rep_path;
  bool rep_json = false;
  CLI::App* rep = app.add_subcommand(
      "represent", "decompose a model and verify the limit isomorphism");
  rep->add_option("path", rep_path, "stratified lattice JSON")->required();
  rep->add_flag("--json", rep_json, "machine-readable report");

  // lfp
  std::string lfp_model, lfp_fn;
  bool lfp_json = false;
  CLI::App* lfp = app.add_subcommand(
      "lfp", "stratified least fixed point of a weakly monotone function");
  lfp->add_option("model", lfp_model, "stratified lattice JSON")->required();
  lfp->add_option("fn", lfp_fn, "function JSON")->required();
  lfp->add_flag("--json", lfp_json, "machine-readable report");

  // solve
  std::string solve_path;
  bool solve_json = false, solve_trace = false, solve_diff = false;
  CLI::App* solve = app.add_subcommand(
      "solve", "infinite-valued minimum model of a logic program");
  solve->add_option("path", solve_path, "program in .lp text form")
      ->required();
  solve->add_flag("--json", solve_json, "emit the solve JSON document");
  solve->add_flag("--trace", solve_trace, "print the per-level freeze trace");
  solve->add_flag("--diff-wfs", solve_diff,
                  "compare against the well-founded oracle, exit 1 on "
                  "mismatch");

  // wfs
  std::string wfs_path;
  bool wfs_json = false;
  CLI::App* wfs = app.add_subcommand(
      "wfs", "well-founded semantics of a logic program");
  wfs->add_option("path", wfs_path, "program in .lp text form")->required();
  wfs->add_flag("--json", wfs_json, "machine-readable report");

  // enumerate
  int en_max = 4, en_depth = 1;
  std::optional<uint64_t> en_seed;
  std::optional<int> en_count;
  CLI::App* en = app.add_subcommand(
      "enumerate", "emit stratified lattices as JSON lines");
  en->add_option("--max-elems", en_max, "largest lattice size to include")
      ->check(CLI::Range(1, 6));
  en->add_option("--depth", en_depth, "stored depth of every stratification")
      ->check(CLI::Range(0, 3));
  CLI::Option* seed_opt =
      en->add_option("--seed", en_seed, "seed for subsampling");
  CLI::Option* count_opt =
      en->add_option("--count", en_count, "subsample to this many lines")
          ->check(CLI::PositiveNumber);
  count_opt->needs(seed_opt);
  seed_opt->needs(count_opt);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (check->parsed()) return run_check(check_path, suite, check_json);
    if (rep->parsed()) return run_represent(rep_path, rep_json);
    if (lfp->parsed()) return run_lfp(lfp_model, lfp_fn, lfp_json);
    if (solve->parsed())
      return run_solve(solve_path, solve_json, solve_trace, solve_diff);
    if (wfs->parsed()) return run_wfs(wfs_path, wfs_json);
    if (en->parsed()) return run_enumerate(en_max, en_depth, en_seed, en_count);
  } catch (const InternalError& e) {
    // Theorem-level postcondition failed: a bug, not a user error.
    std::cerr << "internal error: " << e.what() << "\n";
    Json w;
    w["error"] = "internal";
    w["message"] = e.what();
    emit_witness(w);
    return 1;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
