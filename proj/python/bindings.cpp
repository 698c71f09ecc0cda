// Python bindings: the main operations, JSON strings in and out so the
// documented schemas are the only interface.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <algorithm>
#include <numeric>
#include <string>
#include <vector>

#include "stratlat/enumerate.hpp"
#include "stratlat/errors.hpp"
#include "stratlat/fixpoint.hpp"
#include "stratlat/inverse_limit.hpp"
#include "stratlat/json_io.hpp"
#include "stratlat/lp.hpp"
#include "stratlat/stratified.hpp"

namespace py = pybind11;
using namespace stratlat;

namespace {

StratifiedPtr model_from_text(const std::string& text) {
  return stratified_from_json(Json::parse(text));
}

AxiomSuite suite_from_name(const std::string& name) {
  if (name == "model") return AxiomSuite::Model;
  if (name == "strong") return AxiomSuite::Strong;
  if (name == "symmetric") return AxiomSuite::Symmetric;
  if (name == "dual") return AxiomSuite::Dual;
  if (name == "strong-dual") return AxiomSuite::StrongDual;
  if (name == "B") return AxiomSuite::B;
  throw SchemaError("unknown suite \"" + name + "\"");
}

Json results_to_json(const FiniteLattice& L,
                     const std::vector<AxiomResult>& results) {
  Json arr = Json::array();
  for (const AxiomResult& r : results) {
    Json j;
    j["axiom"] = r.name;
    j["ok"] = r.ok;
    if (r.alpha >= 0) j["alpha"] = r.alpha;
    if (r.beta >= 0) j["beta"] = r.beta;
    Json elems = Json::array();
    for (int x : r.witness) elems.push_back(L.label(x));
    j["elements"] = std::move(elems);
    if (!r.detail.empty()) j["detail"] = r.detail;
    arr.push_back(std::move(j));
  }
  return arr;
}

int index_by_label(const FiniteLattice& L, const std::string& label) {
  int idx = L.index_of(label);
  if (idx < 0) throw SchemaError("unknown element \"" + label + "\"");
  return idx;
}

}  // namespace

PYBIND11_MODULE(stratlat, m) {
  m.doc() =
      "Workbench for finite stratified complete lattices: axiom checks, "
      "inverse-limit representation, stratified fixed points, and an "
      "infinite-valued logic program solver.";

  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
  py::register_exception<SchemaError>(m, "SchemaError", PyExc_ValueError);
  py::register_exception<NotAModelError>(m, "NotAModelError",
                                         PyExc_ValueError);
  py::register_exception<NotWeaklyMonotoneError>(m, "NotWeaklyMonotoneError",
                                                 PyExc_ValueError);
  py::register_exception<InternalError>(m, "InternalError",
                                        PyExc_RuntimeError);

  m.def(
      "classify",
      [](const std::string& model_json) {
        return classify(*model_from_text(model_json)).name();
      },
      py::arg("model_json"),
      "Most specific class of the stratified lattice: not-model, model, "
      "strong, symmetric, or strong-symmetric.");

  m.def(
      "check",
      [](const std::string& model_json, const std::string& suite) {
        StratifiedPtr S = model_from_text(model_json);
        std::vector<AxiomResult> results =
            check_axioms(*S, suite_from_name(suite));
        Json j;
        j["suite"] = suite;
        j["results"] = results_to_json(S->lattice(), results);
        j["pass"] = all_ok(results);
        return j.dump();
      },
      py::arg("model_json"), py::arg("suite") = "model",
      "Run one axiom suite; returns a JSON report string.");

  m.def(
      "represent",
      [](const std::string& model_json) {
        StratifiedPtr S = model_from_text(model_json);
        RepresentationCheck rep = representation_isomorphism(*S);
        Json j = system_to_json(rep.system);
        const FiniteLattice& L = S->lattice();
        const FiniteLattice& LM = rep.limit.model->lattice();
        j["isomorphism"] = Json::object();
        std::vector<int> order(L.size());
        std::iota(order.begin(), order.end(), 0);
        std::sort(order.begin(), order.end(), [&](int a, int b) {
          return L.label(a) < L.label(b);
        });
        for (int i : order)
          j["isomorphism"][L.label(i)] = LM.label(rep.forward[i]);
        return j.dump();
      },
      py::arg("model_json"),
      "Decompose a model into its restriction tower, rebuild the limit, "
      "verify the isomorphism; returns the system JSON with the "
      "isomorphism table.");

  m.def(
      "lex_leq",
      [](const std::string& model_json, const std::string& x,
         const std::string& y) {
        StratifiedPtr S = model_from_text(model_json);
        const FiniteLattice& L = S->lattice();
        return lex_leq(*S, index_by_label(L, x), index_by_label(L, y));
      },
      py::arg("model_json"), py::arg("x"), py::arg("y"),
      "The derived order between two elements, by label.");

  m.def(
      "lex_sup",
      [](const std::string& model_json,
         const std::vector<std::string>& labels) {
        StratifiedPtr S = model_from_text(model_json);
        const FiniteLattice& L = S->lattice();
        Mask xs = 0;
        for (const std::string& l : labels)
          xs |= Mask{1} << index_by_label(L, l);
        return L.label(lex_sup(*S, xs));
      },
      py::arg("model_json"), py::arg("labels"),
      "Supremum in the derived order of a set of elements, by label.");

  m.def(
      "lex_inf",
      [](const std::string& model_json,
         const std::vector<std::string>& labels) {
        StratifiedPtr S = model_from_text(model_json);
        const FiniteLattice& L = S->lattice();
        Mask xs = 0;
        for (const std::string& l : labels)
          xs |= Mask{1} << index_by_label(L, l);
        return L.label(lex_inf(*S, xs));
      },
      py::arg("model_json"), py::arg("labels"),
      "Infimum in the derived order of a set of elements, by label.");

  m.def(
      "lfp",
      [](const std::string& model_json, const std::string& fn_json) {
        StratifiedPtr S = model_from_text(model_json);
        EndoFunction f = endo_from_json(Json::parse(fn_json), S);
        LfpResult r = stratified_lfp_trace(f);
        const FiniteLattice& L = S->lattice();
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
        return j.dump();
      },
      py::arg("model_json"), py::arg("fn_json"),
      "Stratified least fixed point of a weakly monotone function; "
      "returns the value and per-level trace as JSON.");

  m.def(
      "solve",
      [](const std::string& program_text) {
        Program P = parse_program(program_text);
        return solve_to_json(P, rw_minimum_model(P)).dump();
      },
      py::arg("program_text"),
      "Infinite-valued minimum model of a logic program; returns the "
      "solve JSON document.");

  m.def(
      "wfs",
      [](const std::string& program_text) {
        Program P = parse_program(program_text);
        std::vector<Truth3> vals = wfs_oracle(P);
        Json j = Json::object();
        for (int z = 0; z < P.atom_count(); ++z)
          j[P.atoms[z]] = to_string(vals[z]);
        return j.dump();
      },
      py::arg("program_text"),
      "Well-founded semantics oracle; returns {atom: true|false|undef}.");

  m.def(
      "enumerate_models",
      [](int max_elems, int depth) {
        std::vector<std::string> lines;
        for (int n = 1; n <= max_elems; ++n)
          for (const LatticePtr& lat : enumerate_lattices(n))
            for (const StratifiedPtr& S :
                 enumerate_stratifications(lat, depth))
              lines.push_back(stratified_to_json(*S).dump());
        return lines;
      },
      py::arg("max_elems"), py::arg("depth"),
      "Every stratified lattice up to max_elems elements at the given "
      "stored depth, one JSON string each.");
}
