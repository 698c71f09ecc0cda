#include "stratlat/lp.hpp"

#include <algorithm>
#include <cctype>
#include <random>

#include "stratlat/errors.hpp"

namespace stratlat {

std::string TruthValue::to_string() const {
  switch (kind) {
    case Kind::False:
      return "F_" + std::to_string(level);
    case Kind::Zero:
      return "0";
    default:
      return "T_" + std::to_string(level);
  }
}

TruthValue negate(TruthValue v) {
  switch (v.kind) {
    case TruthValue::Kind::False:
      return TruthValue::t(v.level + 1);
    case TruthValue::Kind::Zero:
      return TruthValue::zero();
    default:
      return TruthValue::f(v.level + 1);
  }
}

TruthValue value_restrict(TruthValue v, int alpha) {
  if (v.kind != TruthValue::Kind::Zero && v.level <= alpha) return v;
  return TruthValue::f(alpha + 1);
}

bool tv_below_at(TruthValue x, TruthValue y, int alpha) {
  if (x == y) return true;
  auto in_tail = [alpha](TruthValue v) {
    return v.kind == TruthValue::Kind::Zero || v.level >= alpha;
  };
  if (!in_tail(x) || !in_tail(y)) return false;
  if (x == TruthValue::t(alpha) && y != TruthValue::t(alpha)) return false;
  if (y == TruthValue::f(alpha) && x != TruthValue::f(alpha)) return false;
  return true;
}

int Program::index_of(std::string_view name) const {
  for (size_t i = 0; i < atoms.size(); ++i)
    if (atoms[i] == name) return static_cast<int>(i);
  return -1;
}

namespace {

struct Scanner {
  const std::string& s;
  size_t i = 0;
  int line = 1;
  int col = 1;

  void advance() {
    if (s[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
    ++i;
  }

  void skip() {
    while (i < s.size()) {
      char c = s[i];
      if (c == '%') {
        while (i < s.size() && s[i] != '\n') advance();
      } else if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
        advance();
      } else {
        break;
      }
    }
  }

  bool at_end() {
    skip();
    return i >= s.size();
  }

  char peek() const { return i < s.size() ? s[i] : '\0'; }

  [[noreturn]] void fail(const std::string& what) {
    throw ParseError(what + " at line " + std::to_string(line) + ", column " +
                         std::to_string(col),
                     line, col);
  }

  std::string expect_ident(const char* what) {
    skip();
    char c = peek();
    if (!(std::isalpha(static_cast<unsigned char>(c)) || c == '_'))
      fail(std::string("expected ") + what);
    std::string out;
    while (i < s.size()) {
      c = s[i];
      if (std::isalnum(static_cast<unsigned char>(c)) || c == '_') {
        out.push_back(c);
        advance();
      } else {
        break;
      }
    }
    return out;
  }

  void expect_char(char c, const char* what) {
    skip();
    if (peek() != c) fail(std::string("expected ") + what);
    advance();
  }

  bool consume_char(char c) {
    skip();
    if (peek() != c) return false;
    advance();
    return true;
  }
};

int register_atom(Program& P, const std::string& name) {
  int idx = P.index_of(name);
  if (idx >= 0) return idx;
  P.atoms.push_back(name);
  return P.atom_count() - 1;
}

}  // namespace

Program parse_program(const std::string& text) {
  Program P;
  Scanner sc{text};
  while (!sc.at_end()) {
    Rule rule;
    rule.head = register_atom(P, sc.expect_ident("an atom name"));
    sc.skip();
    if (sc.peek() == ':') {
      sc.expect_char(':', "':-'");
      sc.expect_char('-', "':-'");
      while (true) {
        Literal lit;
        std::string name = sc.expect_ident("an atom name");
        if (name == "not") {
          lit.positive = false;
          name = sc.expect_ident("an atom name after 'not'");
        }
        lit.atom = register_atom(P, name);
        rule.body.push_back(lit);
        if (!sc.consume_char(',')) break;
      }
    }
    sc.expect_char('.', "'.'");
    P.rules.push_back(std::move(rule));
  }
  return P;
}

Interpretation tp_step(const Program& P, const Interpretation& I) {
  if (static_cast<int>(I.size()) != P.atom_count())
    throw PreconditionError("interpretation does not cover the atom set");
  Interpretation J(P.atom_count(), TruthValue::f(0));
  for (const Rule& r : P.rules) {
    TruthValue body = TruthValue::t(0);  // empty conjunction
    for (const Literal& l : r.body) {
      TruthValue v = l.positive ? I[l.atom] : negate(I[l.atom]);
      body = std::min(body, v);
    }
    J[r.head] = std::max(J[r.head], body);
  }
  return J;
}

bool interp_below_at(const Interpretation& I, const Interpretation& J,
                     int alpha) {
  if (I.size() != J.size())
    throw PreconditionError("interpretations over different atom sets");
  for (size_t z = 0; z < I.size(); ++z)
    if (!tv_below_at(I[z], J[z], alpha)) return false;
  return true;
}

bool interp_lex_leq(const Interpretation& I, const Interpretation& J) {
  if (I == J) return true;
  int max_level = 0;
  for (const auto& v : {I, J})
    for (const TruthValue& t : v)
      if (t.kind != TruthValue::Kind::Zero) max_level = std::max(max_level, t.level);
  for (int alpha = 0; alpha <= max_level + 1; ++alpha)
    if (interp_below_at(I, J, alpha) && !interp_below_at(J, I, alpha))
      return true;
  return false;
}

namespace {

// Sampling parameters for the lexicographic-minimality spot check; the
// seed is a fixed constant so runs are reproducible.
constexpr int kMinimalitySamples = 64;
constexpr std::uint64_t kMinimalitySeed = 0x1f5eedu;

}  // namespace

SolveResult rw_minimum_model(const Program& P) {
  const int k = P.atom_count();
  SolveResult out;
  out.values.assign(k, TruthValue::f(0));
  out.level_of.assign(k, -1);
  std::vector<bool> frozen(k, false);
  int remaining = k;

  for (int alpha = 0; remaining > 0; ++alpha) {
    // Every level that continues must freeze an atom, so the loop ends
    // within one level per atom plus the final all-zero level.
    if (alpha > k)
      throw InternalError("depth cap exceeded at level " +
                          std::to_string(alpha));

    Interpretation u = out.values;
    for (int z = 0; z < k; ++z)
      if (!frozen[z]) u[z] = TruthValue::f(alpha);

    bool converged = false;
    for (int it = 0; it <= 2 * k + 4; ++it) {
      Interpretation next = tp_step(P, u);
      for (int z = 0; z < k; ++z) next[z] = value_restrict(next[z], alpha);
      for (int z = 0; z < k; ++z)
        if (frozen[z] && next[z] != u[z])
          throw InternalError("frozen atom " + P.atoms[z] +
                              " moved at level " + std::to_string(alpha));
      if (next == u) {
        converged = true;
        break;
      }
      u = std::move(next);
    }
    if (!converged)
      throw InternalError("level " + std::to_string(alpha) +
                          " iteration did not converge");

    out.frozen_at.emplace_back();
    int froze = 0;
    for (int z = 0; z < k; ++z) {
      if (frozen[z]) continue;
      if (u[z] != TruthValue::f(alpha) && u[z] != TruthValue::f(alpha + 1) &&
          u[z] != TruthValue::t(alpha))
        throw InternalError("atom " + P.atoms[z] +
                            " left its level sublattice at level " +
                            std::to_string(alpha));
      out.values[z] = u[z];
      if (u[z] == TruthValue::f(alpha) || u[z] == TruthValue::t(alpha)) {
        frozen[z] = true;
        out.level_of[z] = alpha;
        out.frozen_at.back().push_back(z);
        ++froze;
        --remaining;
      }
    }
    if (froze == 0) {
      for (int z = 0; z < k; ++z)
        if (!frozen[z]) {
          out.values[z] = TruthValue::zero();
          out.level_of[z] = -1;
        }
      out.zero_level = alpha;
      remaining = 0;
    }
  }

  if (tp_step(P, out.values) != out.values)
    throw InternalError("solver result is not a fixed point of the step "
                        "operator");
  if (k > 0) {
    std::vector<TruthValue> pool;
    for (int l = 0; l <= k + 1; ++l) pool.push_back(TruthValue::f(l));
    pool.push_back(TruthValue::zero());
    for (int l = k + 1; l >= 0; --l) pool.push_back(TruthValue::t(l));
    std::mt19937_64 gen(kMinimalitySeed);
    std::uniform_int_distribution<size_t> pick(0, pool.size() - 1);
    for (int s = 0; s < kMinimalitySamples; ++s) {
      Interpretation J(k);
      for (int z = 0; z < k; ++z) J[z] = pool[pick(gen)];
      if (interp_lex_leq(tp_step(P, J), J) &&
          !interp_lex_leq(out.values, J))
        throw InternalError("solver result is not lexicographically least "
                            "below a sampled pre-fixed interpretation");
    }
  }
  return out;
}

std::string to_string(Truth3 v) {
  switch (v) {
    case Truth3::False:
      return "false";
    case Truth3::Undef:
      return "undef";
    default:
      return "true";
  }
}

Truth3 collapse3(TruthValue v) {
  switch (v.kind) {
    case TruthValue::Kind::False:
      return Truth3::False;
    case TruthValue::Kind::Zero:
      return Truth3::Undef;
    default:
      return Truth3::True;
  }
}

std::vector<Truth3> collapse3(const Interpretation& I) {
  std::vector<Truth3> out;
  out.reserve(I.size());
  for (TruthValue v : I) out.push_back(collapse3(v));
  return out;
}

LatticePtr make_v_chain(int depth) {
  if (depth < 0) throw PreconditionError("negative chain depth");
  std::vector<std::string> labels;
  for (int l = 0; l < depth; ++l) labels.push_back(TruthValue::f(l).to_string());
  labels.push_back("0");
  for (int l = depth - 1; l >= 0; --l)
    labels.push_back(TruthValue::t(l).to_string());
  std::vector<std::pair<int, int>> pairs;
  for (size_t i = 0; i + 1 < labels.size(); ++i)
    pairs.emplace_back(static_cast<int>(i), static_cast<int>(i) + 1);
  return FiniteLattice::make(std::move(labels), pairs);
}

int VModel::index_of(const Interpretation& I) const {
  for (size_t i = 0; i < tuples.size(); ++i)
    if (tuples[i] == I) return static_cast<int>(i);
  return -1;
}

VModel make_v_model(const std::vector<std::string>& atoms, int depth) {
  const int k = static_cast<int>(atoms.size());
  const int m = 2 * depth + 1;
  long long n = 1;
  for (int z = 0; z < k; ++z) {
    n *= m;
    if (n > FiniteLattice::kMaxElements)
      throw StateSpaceError("truth-product over " + std::to_string(k) +
                            " atoms at depth " + std::to_string(depth) +
                            " exceeds the element cap");
  }

  std::vector<TruthValue> chain;
  for (int l = 0; l < depth; ++l) chain.push_back(TruthValue::f(l));
  chain.push_back(TruthValue::zero());
  for (int l = depth - 1; l >= 0; --l) chain.push_back(TruthValue::t(l));

  VModel vm;
  vm.depth = depth;
  vm.atoms = atoms;
  std::vector<std::string> labels;
  std::vector<int> digits(k, 0);
  for (long long e = 0; e < n; ++e) {
    Interpretation t(k);
    std::string label = "(";
    for (int z = 0; z < k; ++z) {
      t[z] = chain[digits[z]];
      if (z > 0) label += ",";
      label += t[z].to_string();
    }
    label += ")";
    vm.tuples.push_back(std::move(t));
    labels.push_back(std::move(label));
    for (int z = k - 1; z >= 0; --z) {  // first atom is the most significant
      if (++digits[z] < m) break;
      digits[z] = 0;
    }
  }

  std::vector<std::pair<int, int>> pairs;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      bool le = true;
      for (int z = 0; z < k && le; ++z)
        le = vm.tuples[i][z] <= vm.tuples[j][z];
      if (le) pairs.emplace_back(i, j);
    }
  LatticePtr lat = FiniteLattice::make(std::move(labels), pairs);

  std::vector<std::vector<Mask>> rows(depth, std::vector<Mask>(n, 0));
  for (int alpha = 0; alpha < depth; ++alpha)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        bool rel = true;
        for (int z = 0; z < k && rel; ++z)
          rel = tv_below_at(vm.tuples[i][z], vm.tuples[j][z], alpha);
        if (rel) rows[alpha][i] |= bit(j);
      }
  vm.model = StratifiedLattice::make(lat, std::move(rows));
  return vm;
}

TruthValue truncate_value(TruthValue v, int depth) {
  if (v.kind != TruthValue::Kind::Zero && v.level < depth) return v;
  return TruthValue::zero();
}

EndoFunction materialize_tp(const Program& P, const VModel& vm) {
  if (vm.atoms != P.atoms)
    throw PreconditionError("model atoms do not match the program");
  EndoFunction f;
  f.model = vm.model;
  for (const Interpretation& t : vm.tuples) {
    Interpretation J = tp_step(P, t);
    for (TruthValue& v : J) v = truncate_value(v, vm.depth);
    int idx = vm.index_of(J);
    if (idx < 0)
      throw InternalError("truncated step left the product model");
    f.table.push_back(idx);
  }
  return f;
}

bool verify_fp_weak_monotone(const Program& P, int depth) {
  if (P.atom_count() > 2 || depth > 2)
    throw StateSpaceError("weak-monotonicity materialization is limited to "
                          "2 atoms and depth 2");
  VModel vm = make_v_model(P.atoms, depth);
  return is_weakly_monotone(materialize_tp(P, vm));
}

}  // namespace stratlat
