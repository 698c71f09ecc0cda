#ifndef STRATLAT_JSON_IO_HPP
#define STRATLAT_JSON_IO_HPP

#include <string>
#include <vector>

#include <json.hpp>

#include "stratlat/fixpoint.hpp"
#include "stratlat/inverse_limit.hpp"
#include "stratlat/lp.hpp"
#include "stratlat/stratified.hpp"

namespace stratlat {

// Insertion-ordered JSON so canonical dumps are reproducible.
using Json = nlohmann::ordered_json;

// Lattices: {"elements":[...], "leq":[[a,b],...]}.  Readers accept any
// generating set of pairs and close it; writers emit elements sorted by
// label and the full reflexive closure in lexicographic order.
Json lattice_to_json(const FiniteLattice& L);
LatticePtr lattice_from_json(const Json& j);

// Stratified lattices: the lattice block plus
// "preorders":[{"alpha":0,"pairs":[[a,b],...],"include_leq":bool},...]
// and "depth".  Canonical output lists closed relations, include_leq
// false.
Json stratified_to_json(const StratifiedLattice& S);
StratifiedPtr stratified_from_json(const Json& j);

// Functions: {"map":{"elem":"elem",...}}, total on the domain.
Json function_to_json(const LatticeMap& m);
std::vector<int> table_from_json(const Json& j, const FiniteLattice& domain,
                                 const FiniteLattice& codomain);
EndoFunction endo_from_json(const Json& j, const StratifiedPtr& model);

// Towers: {"tower":[lattice,...],
//          "maps":[{"from":a,"to":a-1,"table":{...}},...]}.
Json system_to_json(const InverseSystem& sys);
InverseSystem system_from_json(const Json& j);

// Solver output: atoms sorted by name, then the freeze trace.
Json solve_to_json(const Program& P, const SolveResult& r);

// Wraps file access and JSON parsing; parse failures carry line/column.
Json load_json_file(const std::string& path);
std::string dump_canonical(const Json& j);

}  // namespace stratlat

#endif  // STRATLAT_JSON_IO_HPP
