#pragma once

// Test-only helpers: canonical renaming, random generators and oracles that
// do not share code paths with the library algorithms they check.

#include <map>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include <strucres/strucres.hpp>

namespace strucres::testing {

inline const char* kNat = "nat(0).\nnat(s(X)) :- nat(X).\n";
inline const char* kFrom = "from(X, scons(X, Y)) :- from(s(X), Y).\n";
inline const char* kBad = "bad(X) :- bad(X).\n";
inline const char* kConn =
    "conn(X, X).\n"
    "conn(X, Y) :- edge(X, Z), conn(Z, Y).\n"
    "edge(a, b).\n"
    "conn(b, c).\n";

inline Program program(const char* text) { return parse_program(text).program; }
inline Term term(const char* text) { return parse_term(text); }
inline Clause query(const char* text) { return parse_query(text); }

/// Renames variables by order of first occurrence across `ts`. Existential
/// variables keep their identity unless `all` is set.
class Canon {
 public:
  explicit Canon(bool all = false) : all_(all) {}
  Term operator()(const Term& t) {
    if (t.is_var()) {
      const Variable& v = t.variable();
      if (v.is_existential() && !all_) return t;
      auto it = names_.find(v);
      if (it == names_.end()) it = names_.emplace(v, "V" + std::to_string(names_.size())).first;
      return Term::var(it->second);
    }
    std::vector<Term> args;
    for (const auto& a : t.args()) args.push_back((*this)(a));
    return Term::app(t.functor(), std::move(args));
  }
  Clause operator()(const Clause& c) {
    Clause out;
    if (c.head) out.head = (*this)(*c.head);
    for (const auto& b : c.body) out.body.push_back((*this)(b));
    return out;
  }

 private:
  bool all_;
  std::map<Variable, std::string> names_;
};

inline Term canonical(const Term& t) { return Canon(true)(t); }
inline Clause canonical(const Clause& c) { return Canon(true)(c); }

inline bool alpha_equal(const Term& a, const Term& b) { return canonical(a) == canonical(b); }
inline bool alpha_equal(const Clause& a, const Clause& b) { return canonical(a) == canonical(b); }

/// Substitutions compared through the images of `vars`, up to renaming.
inline bool alpha_equal_on(const Substitution& a, const Substitution& b, const std::vector<Variable>& vars) {
  std::vector<Term> ia, ib;
  for (const auto& v : vars) {
    ia.push_back(a.apply(Term::var(v)));
    ib.push_back(b.apply(Term::var(v)));
  }
  return alpha_equal(Term::app("t", ia), Term::app("t", ib));
}

/// Node-by-node text of a rewriting tree after canonical renaming of ordinary
/// variables; serials are already positional.
inline std::vector<std::pair<Address, std::string>> canonical_nodes(const RewritingTree& t) {
  Canon canon;
  std::vector<std::pair<Address, std::string>> out;
  for (const auto& [w, n] : t.nodes()) {
    std::string text;
    if (auto a = std::get_if<AndNode>(&n)) text = "and " + canon(a->term).str();
    else if (auto c = std::get_if<OrClause>(&n)) text = "or " + canon(c->instance).str();
    else if (auto v = std::get_if<OrVar>(&n)) text = "var " + v->id.str() + "@" + v->id.address().str();
    else text = "cut";
    out.emplace_back(w, text);
  }
  return out;
}

// Independent unifier: triangular bindings resolved by walking, with the
// occurs check done on walked terms. Shares nothing with mgu.
class TriangularUnifier {
 public:
  bool unify(const Term& a, const Term& b) {
    Term x = walk(a), y = walk(b);
    if (x.is_var() && y.is_var() && x.variable() == y.variable()) return true;
    if (x.is_var()) return extend(x.variable(), y);
    if (y.is_var()) return extend(y.variable(), x);
    if (x.functor() != y.functor() || x.arity() != y.arity()) return false;
    for (std::size_t i = 0; i < x.arity(); ++i)
      if (!unify(x.args()[i], y.args()[i])) return false;
    return true;
  }
  Term resolve(const Term& t) const {
    Term w = walk(t);
    if (w.is_var()) return w;
    std::vector<Term> args;
    for (const auto& a : w.args()) args.push_back(resolve(a));
    return Term::app(w.functor(), std::move(args));
  }

 private:
  Term walk(Term t) const {
    while (t.is_var()) {
      auto it = bindings_.find(t.variable());
      if (it == bindings_.end()) break;
      t = it->second;
    }
    return t;
  }
  bool occurs(const Variable& v, const Term& t) const {
    Term w = walk(t);
    if (w.is_var()) return w.variable() == v;
    for (const auto& a : w.args())
      if (occurs(v, a)) return true;
    return false;
  }
  bool extend(const Variable& v, const Term& t) {
    if (occurs(v, t)) return false;
    bindings_.emplace(v, t);
    return true;
  }
  std::map<Variable, Term> bindings_;
};

inline bool oracle_unifiable(const Term& a, const Term& b) { return TriangularUnifier().unify(a, b); }

/// Brute-force matcher existence: bind each pattern variable to the subterm
/// found at its first occurrence address in the target, then compare.
inline bool oracle_matches(const Term& pattern, const Term& target) {
  std::map<Variable, Term> chosen;
  bool ok = true;
  for (const auto& [w, label] : pattern.node_map()) {
    Term p = pattern.subtree_at(w);
    if (!target.contains_address(w)) return false;
    if (p.is_var()) {
      chosen.emplace(p.variable(), target.subtree_at(w));
    } else {
      Term u = target.subtree_at(w);
      if (u.is_var() || u.functor() != p.functor() || u.arity() != p.arity()) ok = false;
    }
  }
  if (!ok) return false;
  Substitution s;
  for (const auto& [v, t] : chosen) s.bind(v, t);
  return s.apply(pattern) == target;
}

/// Random first-order terms over a small fixed signature.
class TermGen {
 public:
  explicit TermGen(std::uint32_t seed, std::vector<std::string> vars = {"X", "Y", "Z"}) : rng_(seed), vars_(std::move(vars)) {}

  std::mt19937& rng() { return rng_; }
  std::size_t below(std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng_); }
  bool coin(double p = 0.5) { return std::bernoulli_distribution(p)(rng_); }

  Term var() { return Term::var(vars_[below(vars_.size())]); }

  /// Chance that a leaf is a variable rather than a constant.
  void set_var_bias(double p) { var_bias_ = p; }

  Term term(std::size_t depth) {
    if (depth == 0 || coin(0.35)) {
      if (coin(var_bias_)) return var();
      return Term::app(below(2) ? "a" : "b");
    }
    switch (below(3)) {
      case 0: return Term::app("f", {term(depth - 1)});
      case 1: return Term::app("g", {term(depth - 1)});
      default: return Term::app("h", {term(depth - 1), term(depth - 1)});
    }
  }

  Term ground(std::size_t depth) {
    if (depth == 0 || coin(0.35)) return Term::app(below(2) ? "a" : "b");
    switch (below(3)) {
      case 0: return Term::app("f", {ground(depth - 1)});
      case 1: return Term::app("g", {ground(depth - 1)});
      default: return Term::app("h", {ground(depth - 1), ground(depth - 1)});
    }
  }

  /// Atoms over p/1 and q/2 with argument terms of depth < max_depth.
  Term atom(std::size_t max_depth) {
    std::size_t d = max_depth > 0 ? max_depth - 1 : 0;
    if (coin()) return Term::app("p", {term(d)});
    return Term::app("q", {term(d), term(d)});
  }

  Program program(std::size_t max_clauses, std::size_t max_depth) {
    std::vector<Clause> cs;
    std::size_t n = 1 + below(max_clauses);
    for (std::size_t i = 0; i < n; ++i) {
      Clause c = Clause::fact(atom(max_depth));
      std::size_t body = below(3);
      for (std::size_t j = 0; j < body; ++j) c.body.push_back(atom(max_depth));
      cs.push_back(std::move(c));
    }
    return Program(std::move(cs));
  }

  /// Idempotent substitution over at most `n` of `domain`, with range terms
  /// drawn over `range_vars` (never mentioning a bound variable).
  Substitution idempotent(const std::vector<Variable>& domain, const std::vector<Variable>& range_vars,
                          std::size_t n, std::size_t at_least = 0) {
    std::vector<Variable> dom = domain;
    std::shuffle(dom.begin(), dom.end(), rng_);
    dom.resize(std::min(dom.size(), at_least + below(n - at_least + 1)));
    std::vector<Variable> free;
    for (const auto& v : range_vars)
      if (std::find(dom.begin(), dom.end(), v) == dom.end()) free.push_back(v);
    Substitution s;
    for (const auto& v : dom) s.bind(v, range_term(free, 2));
    return s;
  }

 private:
  Term range_term(const std::vector<Variable>& free, std::size_t depth) {
    if (depth == 0 || coin(0.4)) {
      if (!free.empty() && coin(0.5)) return Term::var(free[below(free.size())]);
      return Term::app(below(2) ? "a" : "b");
    }
    if (coin()) return Term::app("f", {range_term(free, depth - 1)});
    return Term::app("h", {range_term(free, depth - 1), range_term(free, depth - 1)});
  }

  std::mt19937 rng_;
  std::vector<std::string> vars_;
  double var_bias_ = 0.5;
};

/// Variables appearing anywhere in the labels of a rewriting tree.
inline std::vector<Variable> tree_variables(const RewritingTree& t) {
  std::vector<Variable> out;
  auto add = [&](const Term& x) {
    for (const auto& v : x.variables())
      if (std::find(out.begin(), out.end(), v) == out.end()) out.push_back(v);
  };
  for (const auto& [w, n] : t.nodes()) {
    if (auto a = std::get_if<AndNode>(&n)) add(a->term);
    if (auto c = std::get_if<OrClause>(&n)) {
      if (c->instance.head) add(*c->instance.head);
      for (const auto& b : c->instance.body) add(b);
    }
  }
  return out;
}

}  // namespace strucres::testing
