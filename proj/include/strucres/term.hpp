#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <map>
#include <memory>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "address.hpp"

namespace strucres {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class AddressError : public Error {
 public:
  explicit AddressError(const Address& a) : Error("address not in domain: " + a.str()) {}
};

/// A first-order variable. Named and Fresh variables make up the universe of
/// ordinary variables; Existential ones are reserved for body-only clause
/// variables renamed at a rewriting-tree address (`site`) and body position
/// (`slot`, 1-based). The two universes never share identifiers.
struct Variable {
  enum class Universe : std::uint8_t { Named, Fresh, Existential };

  Universe universe = Universe::Named;
  std::string name;
  std::uint64_t serial = 0;
  Address site;
  std::uint32_t slot = 0;

  static Variable named(std::string n) { return {Universe::Named, std::move(n), 0, {}, 0}; }
  static Variable fresh(std::uint64_t s) { return {Universe::Fresh, {}, s, {}, 0}; }
  static Variable existential(Address at, std::uint32_t k) {
    return {Universe::Existential, {}, 0, std::move(at), k};
  }

  bool is_existential() const { return universe == Universe::Existential; }

  /// Printable name; always lexes back as a variable.
  std::string str() const {
    switch (universe) {
      case Universe::Named: return name;
      case Universe::Fresh: return "_G" + std::to_string(serial);
      case Universe::Existential: {
        std::string s = "_E" + std::to_string(slot);
        if (!site.empty()) s += "_" + site.joined("_");
        return s;
      }
    }
    return name;
  }

  friend bool operator==(const Variable&, const Variable&) = default;
  friend std::strong_ordering operator<=>(const Variable&, const Variable&) = default;
};

struct Symbol {
  std::string name;
  std::size_t arity = 0;
  friend bool operator==(const Symbol&, const Symbol&) = default;
};

/// Name-keyed symbol table. A name has exactly one arity.
class Signature {
 public:
  /// Returns false if `name` is already present with another arity.
  bool add(const std::string& name, std::size_t arity) {
    auto [it, inserted] = arities_.emplace(name, arity);
    return inserted || it->second == arity;
  }
  bool contains(const std::string& name) const { return arities_.count(name) != 0; }
  std::size_t arity(const std::string& name) const { return arities_.at(name); }
  std::size_t size() const { return arities_.size(); }
  bool empty() const { return arities_.empty(); }
  std::vector<Symbol> symbols() const {
    std::vector<Symbol> out;
    for (const auto& [n, a] : arities_) out.push_back({n, a});
    return out;
  }

 private:
  std::map<std::string, std::size_t> arities_;
};

/// Immutable finite first-order term. Shares structure on copy; equality is
/// structural.
class Term {
 public:
  static Term var(Variable v) {
    auto n = std::make_shared<Node>();
    n->is_var = true;
    n->variable = std::move(v);
    return Term(std::move(n));
  }
  static Term var(const std::string& name) { return var(Variable::named(name)); }

  static Term app(std::string functor, std::vector<Term> args = {}) {
    auto n = std::make_shared<Node>();
    n->functor = std::move(functor);
    n->args = std::move(args);
    return Term(std::move(n));
  }

  bool is_var() const { return node_->is_var; }
  const Variable& variable() const { return node_->variable; }
  const std::string& functor() const { return node_->functor; }
  const std::vector<Term>& args() const { return node_->args; }
  std::size_t arity() const { return node_->args.size(); }
  bool is_ground() const { return variables().empty(); }

  /// Label printed for the node itself: the functor, or the variable name.
  std::string label() const { return is_var() ? variable().str() : functor(); }

  Term subtree_at(const Address& w) const {
    const Term* t = this;
    for (std::uint32_t step : w.steps()) {
      if (t->is_var() || step >= t->arity()) throw AddressError(w);
      t = &t->args()[step];
    }
    return *t;
  }

  bool contains_address(const Address& w) const {
    const Term* t = this;
    for (std::uint32_t step : w.steps()) {
      if (t->is_var() || step >= t->arity()) return false;
      t = &t->args()[step];
    }
    return true;
  }

  /// Address-indexed view of the term: every node address with its label.
  std::map<Address, std::string> node_map() const {
    std::map<Address, std::string> out;
    collect_nodes(Address::root(), out);
    return out;
  }

  std::size_t size() const {
    std::size_t n = 1;
    for (const auto& a : args()) n += a.size();
    return n;
  }

  /// Length of the longest address; a leaf has depth 0.
  std::size_t depth() const {
    std::size_t d = 0;
    for (const auto& a : args()) d = std::max(d, a.depth() + 1);
    return d;
  }

  /// Variables in order of first occurrence (pre-order, left to right).
  std::vector<Variable> variables() const {
    std::vector<Variable> out;
    collect_vars(out);
    return out;
  }

  bool occurs(const Variable& v) const {
    if (is_var()) return variable() == v;
    for (const auto& a : args())
      if (a.occurs(v)) return true;
    return false;
  }

  /// Canonical text, e.g. `from(X, scons(X, Y))`.
  std::string str() const {
    std::string out;
    write(out);
    return out;
  }

  friend bool operator==(const Term& a, const Term& b) {
    if (a.node_ == b.node_) return true;
    if (a.is_var() != b.is_var()) return false;
    if (a.is_var()) return a.variable() == b.variable();
    if (a.functor() != b.functor() || a.arity() != b.arity()) return false;
    for (std::size_t i = 0; i < a.arity(); ++i)
      if (!(a.args()[i] == b.args()[i])) return false;
    return true;
  }

  friend std::strong_ordering operator<=>(const Term& a, const Term& b) {
    if (a.node_ == b.node_) return std::strong_ordering::equal;
    if (a.is_var() != b.is_var()) return a.is_var() ? std::strong_ordering::less : std::strong_ordering::greater;
    if (a.is_var()) return a.variable() <=> b.variable();
    if (auto c = a.functor() <=> b.functor(); c != 0) return c;
    if (auto c = a.arity() <=> b.arity(); c != 0) return c;
    for (std::size_t i = 0; i < a.arity(); ++i)
      if (auto c = a.args()[i] <=> b.args()[i]; c != 0) return c;
    return std::strong_ordering::equal;
  }

 private:
  struct Node {
    bool is_var = false;
    Variable variable;
    std::string functor;
    std::vector<Term> args;
  };

  explicit Term(std::shared_ptr<const Node> n) : node_(std::move(n)) {}

  void collect_nodes(const Address& at, std::map<Address, std::string>& out) const {
    out.emplace(at, label());
    for (std::uint32_t i = 0; i < arity(); ++i) args()[i].collect_nodes(at.child(i), out);
  }

  void collect_vars(std::vector<Variable>& out) const {
    if (is_var()) {
      if (std::find(out.begin(), out.end(), variable()) == out.end()) out.push_back(variable());
      return;
    }
    for (const auto& a : args()) a.collect_vars(out);
  }

  void write(std::string& out) const {
    if (is_var()) {
      out += variable().str();
      return;
    }
    out += functor();
    if (args().empty()) return;
    out += '(';
    for (std::size_t i = 0; i < arity(); ++i) {
      if (i) out += ", ";
      args()[i].write(out);
    }
    out += ')';
  }

  std::shared_ptr<const Node> node_;
};

/// Arity law: the number of children at every node matches the signature.
inline bool respects_signature(const Term& t, const Signature& sig) {
  if (t.is_var()) return true;
  if (!sig.contains(t.functor()) || sig.arity(t.functor()) != t.arity()) return false;
  for (const auto& a : t.args())
    if (!respects_signature(a, sig)) return false;
  return true;
}

/// Monotone source of fresh ordinary variables for one run.
class FreshContext {
 public:
  explicit FreshContext(std::uint64_t next = 1) : next_(next) {}

  Variable fresh() { return Variable::fresh(next_++); }
  std::uint64_t peek() const { return next_; }

  /// Moves the counter past every fresh variable occurring in `t`.
  void avoid(const Term& t) {
    for (const auto& v : t.variables())
      if (v.universe == Variable::Universe::Fresh) next_ = std::max(next_, v.serial + 1);
  }

 private:
  std::uint64_t next_;
};

}  // namespace strucres
