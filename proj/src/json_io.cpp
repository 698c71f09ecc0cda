#include "stratlat/json_io.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <numeric>
#include <sstream>

#include "stratlat/errors.hpp"

namespace stratlat {

namespace {

[[noreturn]] void schema_fail(const std::string& what) {
  throw SchemaError(what);
}

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key))
    schema_fail(std::string("missing field \"") + key + "\"");
  return j.at(key);
}

std::string label_at(const Json& j, const char* context) {
  if (!j.is_string())
    schema_fail(std::string(context) + " must be a string");
  return j.get<std::string>();
}

int index_of_label(const FiniteLattice& L, const std::string& label,
                   const char* context) {
  int idx = L.index_of(label);
  if (idx < 0)
    schema_fail(std::string(context) + " names unknown element \"" + label +
                "\"");
  return idx;
}

std::vector<std::pair<int, int>> pairs_from_json(const Json& arr,
                                                 const FiniteLattice& L,
                                                 const char* context) {
  if (!arr.is_array())
    schema_fail(std::string(context) + " must be an array of pairs");
  std::vector<std::pair<int, int>> out;
  for (const Json& p : arr) {
    if (!p.is_array() || p.size() != 2)
      schema_fail(std::string(context) + " entries must be [a, b] pairs");
    out.emplace_back(index_of_label(L, label_at(p[0], context), context),
                     index_of_label(L, label_at(p[1], context), context));
  }
  return out;
}

// Indices sorted so labels come out in lexicographic order.
std::vector<int> label_order(const FiniteLattice& L) {
  std::vector<int> order(L.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](int a, int b) { return L.label(a) < L.label(b); });
  return order;
}

}  // namespace

Json lattice_to_json(const FiniteLattice& L) {
  std::vector<int> order = label_order(L);
  Json j;
  j["elements"] = Json::array();
  for (int i : order) j["elements"].push_back(L.label(i));
  j["leq"] = Json::array();
  for (int a : order)
    for (int b : order)
      if (L.leq(a, b)) j["leq"].push_back({L.label(a), L.label(b)});
  return j;
}

LatticePtr lattice_from_json(const Json& j) {
  const Json& elems = field(j, "elements");
  if (!elems.is_array() || elems.empty())
    schema_fail("\"elements\" must be a non-empty array");
  std::vector<std::string> labels;
  for (const Json& e : elems) labels.push_back(label_at(e, "element"));
  if (static_cast<int>(labels.size()) > FiniteLattice::kMaxElements)
    schema_fail("more than 64 elements");
  for (size_t i = 0; i < labels.size(); ++i)
    for (size_t k = i + 1; k < labels.size(); ++k)
      if (labels[i] == labels[k])
        schema_fail("duplicate element \"" + labels[i] + "\"");

  const Json& leq = field(j, "leq");
  if (!leq.is_array()) schema_fail("\"leq\" must be an array of pairs");
  std::vector<std::pair<std::string, std::string>> pairs;
  for (const Json& p : leq) {
    if (!p.is_array() || p.size() != 2)
      schema_fail("\"leq\" entries must be [a, b] pairs");
    pairs.emplace_back(label_at(p[0], "leq pair"), label_at(p[1], "leq pair"));
  }
  return FiniteLattice::make_by_label(std::move(labels), pairs);
}

Json stratified_to_json(const StratifiedLattice& S) {
  const FiniteLattice& L = S.lattice();
  Json j = lattice_to_json(L);
  std::vector<int> order = label_order(L);
  j["preorders"] = Json::array();
  for (int alpha = 0; alpha < S.depth(); ++alpha) {
    Json level;
    level["alpha"] = alpha;
    level["pairs"] = Json::array();
    for (int a : order)
      for (int b : order)
        if (S.below_at(alpha, a, b))
          level["pairs"].push_back({L.label(a), L.label(b)});
    level["include_leq"] = false;
    j["preorders"].push_back(std::move(level));
  }
  j["depth"] = S.depth();
  return j;
}

StratifiedPtr stratified_from_json(const Json& j) {
  LatticePtr lat = lattice_from_json(j);
  const Json& pre = field(j, "preorders");
  if (!pre.is_array()) schema_fail("\"preorders\" must be an array");
  const Json& depth = field(j, "depth");
  if (!depth.is_number_integer() ||
      depth.get<int>() != static_cast<int>(pre.size()))
    schema_fail("\"depth\" must equal the number of preorders");

  std::vector<std::vector<Mask>> rows;
  int expected_alpha = 0;
  for (const Json& level : pre) {
    if (field(level, "alpha") != Json(expected_alpha))
      schema_fail("preorders must list alpha 0.." +
                  std::to_string(static_cast<int>(pre.size()) - 1) +
                  " in order");
    bool include_leq = false;
    if (level.contains("include_leq")) {
      if (!level.at("include_leq").is_boolean())
        schema_fail("\"include_leq\" must be a boolean");
      include_leq = level.at("include_leq").get<bool>();
    }
    rows.push_back(StratifiedLattice::level_from_pairs(
        lat, pairs_from_json(field(level, "pairs"), *lat, "preorder pair"),
        include_leq));
    ++expected_alpha;
  }
  return StratifiedLattice::make(std::move(lat), std::move(rows));
}

Json function_to_json(const LatticeMap& m) {
  Json j;
  j["map"] = Json::object();
  for (int i : label_order(*m.source))
    j["map"][m.source->label(i)] = m.target->label(m(i));
  return j;
}

std::vector<int> table_from_json(const Json& j, const FiniteLattice& domain,
                                 const FiniteLattice& codomain) {
  const Json& map = field(j, "map");
  if (!map.is_object()) schema_fail("\"map\" must be an object");
  std::vector<int> table(domain.size(), -1);
  for (const auto& [key, value] : map.items()) {
    int src = index_of_label(domain, key, "map key");
    if (table[src] != -1) schema_fail("element \"" + key + "\" mapped twice");
    table[src] =
        index_of_label(codomain, label_at(value, "map value"), "map value");
  }
  for (int x = 0; x < domain.size(); ++x)
    if (table[x] == -1)
      schema_fail("map misses element \"" + domain.label(x) + "\"");
  return table;
}

EndoFunction endo_from_json(const Json& j, const StratifiedPtr& model) {
  EndoFunction f;
  f.model = model;
  f.table = table_from_json(j, model->lattice(), model->lattice());
  return f;
}

Json system_to_json(const InverseSystem& sys) {
  Json j;
  j["tower"] = Json::array();
  for (const LatticePtr& lat : sys.levels) j["tower"].push_back(lattice_to_json(*lat));
  j["maps"] = Json::array();
  for (size_t a = 0; a < sys.steps.size(); ++a) {
    Json m;
    m["from"] = static_cast<int>(a) + 1;
    m["to"] = static_cast<int>(a);
    m["table"] = function_to_json(sys.steps[a])["map"];
    j["maps"].push_back(std::move(m));
  }
  return j;
}

InverseSystem system_from_json(const Json& j) {
  const Json& tower = field(j, "tower");
  if (!tower.is_array() || tower.empty())
    schema_fail("\"tower\" must be a non-empty array of lattices");
  std::vector<LatticePtr> levels;
  for (const Json& lat : tower) levels.push_back(lattice_from_json(lat));

  const Json& maps = field(j, "maps");
  if (!maps.is_array()) schema_fail("\"maps\" must be an array");
  std::vector<ConnectingMap> cms;
  for (const Json& m : maps) {
    const Json& from = field(m, "from");
    const Json& to = field(m, "to");
    if (!from.is_number_integer() || !to.is_number_integer())
      schema_fail("map endpoints must be integers");
    ConnectingMap cm;
    cm.from = from.get<int>();
    cm.to = to.get<int>();
    if (cm.from < 0 || cm.from >= static_cast<int>(levels.size()) ||
        cm.to < 0 || cm.to >= static_cast<int>(levels.size()))
      schema_fail("map endpoints outside the tower");
    cm.map.source = levels[cm.from];
    cm.map.target = levels[cm.to];
    Json wrapper;
    wrapper["map"] = field(m, "table");
    cm.map.table =
        table_from_json(wrapper, *levels[cm.from], *levels[cm.to]);
    cms.push_back(std::move(cm));
  }
  return validate_system(std::move(levels), cms);
}

Json solve_to_json(const Program& P, const SolveResult& r) {
  std::vector<int> order(P.atom_count());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](int a, int b) { return P.atoms[a] < P.atoms[b]; });

  Json j;
  j["atoms"] = Json::object();
  for (int z : order) {
    Json entry;
    entry["value"] = r.values[z].to_string();
    entry["collapsed"] = to_string(collapse3(r.values[z]));
    if (r.level_of[z] >= 0)
      entry["level"] = r.level_of[z];
    else
      entry["level"] = nullptr;
    j["atoms"][P.atoms[z]] = std::move(entry);
  }
  j["levels"] = Json::array();
  for (size_t alpha = 0; alpha < r.frozen_at.size(); ++alpha) {
    Json level;
    level["alpha"] = static_cast<int>(alpha);
    level["frozen"] = Json::array();
    std::vector<std::string> names;
    for (int z : r.frozen_at[alpha]) names.push_back(P.atoms[z]);
    std::sort(names.begin(), names.end());
    for (const std::string& name : names) level["frozen"].push_back(name);
    j["levels"].push_back(std::move(level));
  }
  if (r.zero_level >= 0)
    j["zero_level"] = r.zero_level;
  else
    j["zero_level"] = nullptr;
  return j;
}

Json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SchemaError("cannot open \"" + path + "\"");
  std::stringstream buf;
  buf << in.rdbuf();
  const std::string text = buf.str();
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    // Recover line/column from the byte offset the parser reports.
    int line = 1, col = 1;
    for (size_t i = 0; i < text.size() && i + 1 < e.byte; ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw ParseError("invalid JSON in \"" + path + "\": " + e.what(), line,
                     col);
  }
}

std::string dump_canonical(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace stratlat
