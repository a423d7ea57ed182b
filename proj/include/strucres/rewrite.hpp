#pragma once

#include <algorithm>
#include <cassert>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <variant>
#include <vector>

#include "program.hpp"
#include "substitution.hpp"
#include "unify.hpp"

namespace strucres {

/// Identity of a rewriting-tree variable: the and-node it hangs under and the
/// clause it stands for. The serial is its 1-based position when all
/// variables of the tree are ordered by (parent, clause).
struct RewVarId {
  std::size_t serial = 0;
  Address parent;
  std::size_t clause = 0;

  Address address() const { return parent.child(static_cast<std::uint32_t>(clause)); }
  std::string str() const { return "X" + std::to_string(serial); }

  friend bool operator==(const RewVarId&, const RewVarId&) = default;
};

struct AndNode {
  Term term;
  friend bool operator==(const AndNode&, const AndNode&) = default;
};

/// A clause instance. `clause_index` is empty for the root.
struct OrClause {
  Clause instance;
  std::optional<std::size_t> clause_index;
  friend bool operator==(const OrClause&, const OrClause&) = default;
};

struct OrVar {
  RewVarId id;
  friend bool operator==(const OrVar&, const OrVar&) = default;
};

/// Stands in for a subtree cut at the fuel bound.
struct Truncated {
  friend bool operator==(const Truncated&, const Truncated&) = default;
};

using RewNode = std::variant<AndNode, OrClause, OrVar, Truncated>;

/// A rewriting tree, materialized down to depth `fuel`. And-nodes sit at odd
/// address lengths, or-nodes (clauses and variables) at even ones.
class RewritingTree {
 public:
  using NodeMap = std::map<Address, RewNode>;

  const NodeMap& nodes() const { return nodes_; }
  const Program& program() const { return *program_; }
  const std::shared_ptr<const Program>& program_ptr() const { return program_; }
  const Clause& root_clause() const { return root_clause_; }
  const Substitution& sigma() const { return sigma_; }
  std::size_t fuel() const { return fuel_; }
  bool truncated() const { return truncated_; }
  std::size_t size() const { return nodes_.size(); }

  bool contains(const Address& w) const { return nodes_.count(w) != 0; }
  const RewNode& at(const Address& w) const {
    auto it = nodes_.find(w);
    if (it == nodes_.end()) throw AddressError(w);
    return it->second;
  }

  /// The instantiated root clause σ(C).
  const Clause& root() const { return std::get<OrClause>(nodes_.at(Address::root())).instance; }

  std::vector<Address> children(const Address& w) const {
    std::vector<Address> out;
    for (std::uint32_t i = 0;; ++i) {
      Address c = w.child(i);
      if (!contains(c)) break;
      out.push_back(std::move(c));
    }
    return out;
  }

  /// Every rewriting-tree variable, ordered by (parent, clause). Position k
  /// in this list holds the variable with serial k + 1.
  std::vector<RewVarId> candidate_vars() const {
    std::vector<RewVarId> out;
    for (const auto& [w, n] : nodes_)
      if (auto v = std::get_if<OrVar>(&n)) out.push_back(v->id);
    std::sort(out.begin(), out.end(), [](const RewVarId& a, const RewVarId& b) { return a.serial < b.serial; });
    return out;
  }

  std::size_t arity() const { return candidate_vars().size(); }

  std::optional<RewVarId> find_var(std::size_t serial) const {
    for (const auto& [w, n] : nodes_)
      if (auto v = std::get_if<OrVar>(&n); v && v->id.serial == serial) return v->id;
    return std::nullopt;
  }

  /// Node-for-node equality; the accumulated substitution is not compared.
  bool same_shape_and_labels(const RewritingTree& other) const {
    return nodes_ == other.nodes_ && truncated_ == other.truncated_;
  }

  friend bool operator==(const RewritingTree& a, const RewritingTree& b) {
    return a.nodes_ == b.nodes_ && a.truncated_ == b.truncated_ && a.fuel_ == b.fuel_ && a.sigma_ == b.sigma_ &&
           a.root_clause_ == b.root_clause_ && *a.program_ == *b.program_;
  }

 private:
  friend class detail_rew_access;
  RewritingTree() = default;

  NodeMap nodes_;
  std::shared_ptr<const Program> program_;
  Clause root_clause_;
  Substitution sigma_;
  std::size_t fuel_ = 0;
  bool truncated_ = false;
};

class detail_rew_access {
 public:
  static RewritingTree make(std::shared_ptr<const Program> p, Clause c, Substitution s, std::size_t fuel) {
    RewritingTree t;
    t.program_ = std::move(p);
    t.root_clause_ = std::move(c);
    t.sigma_ = std::move(s);
    t.fuel_ = fuel;
    return t;
  }
  static RewritingTree::NodeMap& nodes(RewritingTree& t) { return t.nodes_; }
  static void set_truncated(RewritingTree& t, bool v) { t.truncated_ = v; }
};

namespace detail {

// Seeds a fresh-name source past every fresh variable already in play, so the
// renamed clause cannot capture anything in `t` or `sigma`.
inline FreshContext fresh_above(const Term& t, const Substitution& sigma) {
  FreshContext ctx;
  ctx.avoid(t);
  avoid(ctx, sigma);
  return ctx;
}

class RewBuilder {
 public:
  RewBuilder(const Program& program, const Substitution& sigma, std::size_t fuel, RewritingTree::NodeMap& out)
      : program_(program), sigma_(sigma), fuel_(fuel), out_(out) {}

  bool truncated() const { return truncated_; }
  void mark_truncated() { truncated_ = true; }

  // `instance` already carries the accumulated substitution.
  void or_clause(const Address& at, Clause instance, std::optional<std::size_t> index) {
    if (at.length() >= fuel_ && !instance.body.empty()) {
      cut(at);
      return;
    }
    auto body = instance.body;
    out_.insert_or_assign(at, OrClause{std::move(instance), index});
    for (std::uint32_t j = 0; j < body.size(); ++j) and_node(at.child(j), body[j]);
  }

  void and_node(const Address& at, const Term& t) {
    if (at.length() >= fuel_ && !program_.empty()) {
      cut(at);
      return;
    }
    out_.insert_or_assign(at, AndNode{t});
    for (std::uint32_t i = 0; i < program_.size(); ++i) or_child(at, t, i);
  }

  // Child i of the and-node at `parent` labelled `t`: the matching clause
  // instance, or a variable when the head does not match.
  void or_child(const Address& parent, const Term& t, std::uint32_t i) {
    Address at = parent.child(i);
    auto ctx = fresh_above(t, sigma_);
    Clause renamed = rename_apart(program_[i], ctx, at);
    if (auto theta = mgm(*renamed.head, t)) {
      or_clause(at, apply(sigma_, apply(*theta, renamed)), i);
    } else {
      out_.insert_or_assign(at, OrVar{RewVarId{0, parent, i}});
    }
  }

 private:
  void cut(const Address& at) {
    out_.insert_or_assign(at, Truncated{});
    truncated_ = true;
  }

  const Program& program_;
  const Substitution& sigma_;
  std::size_t fuel_;
  RewritingTree::NodeMap& out_;
  bool truncated_ = false;
};

// Serials follow (parent, clause) order.
inline void number_variables(RewritingTree::NodeMap& nodes) {
  std::vector<OrVar*> vars;
  for (auto& [w, n] : nodes)
    if (auto v = std::get_if<OrVar>(&n)) vars.push_back(v);
  std::sort(vars.begin(), vars.end(), [](const OrVar* a, const OrVar* b) {
    if (a->id.parent != b->id.parent) return a->id.parent < b->id.parent;
    return a->id.clause < b->id.clause;
  });
  for (std::size_t k = 0; k < vars.size(); ++k) vars[k]->id.serial = k + 1;
}

}  // namespace detail

/// Builds the rewriting tree for clause `c` under the idempotent
/// substitution `sigma`, cut off at address length `fuel`.
inline RewritingTree rew(std::shared_ptr<const Program> program, const Clause& c, const Substitution& sigma,
                         std::size_t fuel) {
  assert(fuel >= 1);
  assert(sigma.is_idempotent());
  auto tree = detail_rew_access::make(program, c, sigma, fuel);
  auto& nodes = detail_rew_access::nodes(tree);
  detail::RewBuilder builder(*program, sigma, fuel, nodes);
  builder.or_clause(Address::root(), apply(sigma, c), std::nullopt);
  detail::number_variables(nodes);
  detail_rew_access::set_truncated(tree, builder.truncated());
  return tree;
}

inline RewritingTree rew(const Program& program, const Clause& c, const Substitution& sigma, std::size_t fuel) {
  return rew(std::make_shared<const Program>(program), c, sigma, fuel);
}

/// Applies a first-order substitution to a rewriting tree. Labels are
/// instantiated pointwise; a variable whose clause head now matches its
/// parent term is replaced by the rewriting tree grown from that clause.
inline RewritingTree tier2_subst(const Substitution& theta, const RewritingTree& tree) {
  Substitution combined = compose(theta, tree.sigma());
  auto out = detail_rew_access::make(tree.program_ptr(), tree.root_clause(), combined, tree.fuel());
  auto& nodes = detail_rew_access::nodes(out);
  detail::RewBuilder builder(tree.program(), combined, tree.fuel(), nodes);
  for (const auto& [w, n] : tree.nodes()) {
    if (auto a = std::get_if<AndNode>(&n)) {
      nodes.insert_or_assign(w, AndNode{theta.apply(a->term)});
    } else if (auto c = std::get_if<OrClause>(&n)) {
      nodes.insert_or_assign(w, OrClause{apply(theta, c->instance), c->clause_index});
    } else if (std::holds_alternative<Truncated>(n)) {
      nodes.insert_or_assign(w, Truncated{});
      builder.mark_truncated();
    } else {
      const auto& id = std::get<OrVar>(n).id;
      Term parent = theta.apply(std::get<AndNode>(tree.at(id.parent)).term);
      auto ctx = detail::fresh_above(parent, combined);
      Clause renamed = rename_apart(tree.program()[id.clause], ctx, w);
      if (auto matcher = mgm(*renamed.head, parent)) {
        builder.or_clause(w, apply(combined, apply(*matcher, renamed)), id.clause);
      } else {
        nodes.insert_or_assign(w, n);
      }
    }
  }
  detail::number_variables(nodes);
  detail_rew_access::set_truncated(out, builder.truncated());
  return out;
}

struct Transition {
  RewritingTree tree;
  Substitution resolvent;
};

class UnknownVariableError : public Error {
 public:
  explicit UnknownVariableError(const RewVarId& id)
      : Error("no rewriting-tree variable " + id.str() + " at " + id.address().str()) {}
};

/// The tree transition at variable `x`: unify the head of the variable's
/// clause with its parent term and rebuild the tree under the extended
/// substitution. Empty when the resolvent is null.
inline std::optional<Transition> transition(const RewritingTree& tree, const RewVarId& x) {
  auto it = tree.nodes().find(x.address());
  if (it == tree.nodes().end() || !std::holds_alternative<OrVar>(it->second)) throw UnknownVariableError(x);
  const Term& parent = std::get<AndNode>(tree.at(x.parent)).term;
  auto ctx = detail::fresh_above(parent, tree.sigma());
  for (const auto& v : tree.root_clause().variables()) ctx.avoid(Term::var(v));
  Clause renamed = rename_apart(tree.program()[x.clause], ctx);
  auto resolvent = mgu(*renamed.head, parent);
  if (!resolvent) return std::nullopt;
  // a matcher here would have produced a clause node during construction
  assert(!mgm(*renamed.head, parent));
  Substitution next = compose(*resolvent, tree.sigma());
  assert(next.is_idempotent());
  return Transition{rew(tree.program_ptr(), tree.root_clause(), next, tree.fuel()), std::move(*resolvent)};
}

inline std::optional<Transition> transition(const Program& program, const RewritingTree& tree, const RewVarId& x) {
  assert(program == tree.program());
  (void)program;
  return transition(tree, x);
}

namespace detail {

inline bool succeeds(const RewritingTree& t, const Address& w, std::set<Address>* witness) {
  const RewNode& n = t.at(w);
  if (auto c = std::get_if<OrClause>(&n)) {
    std::set<Address> local;
    for (std::uint32_t j = 0; j < c->instance.body.size(); ++j)
      if (!succeeds(t, w.child(j), witness ? &local : nullptr)) return false;
    if (witness) {
      witness->insert(w);
      witness->insert(local.begin(), local.end());
    }
    return true;
  }
  if (std::holds_alternative<AndNode>(n)) {
    for (const auto& c : t.children(w)) {
      std::set<Address> local;
      if (succeeds(t, c, witness ? &local : nullptr)) {
        if (witness) {
          witness->insert(w);
          witness->insert(local.begin(), local.end());
        }
        return true;
      }
    }
    return false;
  }
  return false;
}

}  // namespace detail

/// And/or success: a clause node succeeds when all its body atoms do, an
/// atom succeeds when one of its clause children does; variables and cut
/// subtrees never succeed.
inline bool is_success(const RewritingTree& t) { return detail::succeeds(t, Address::root(), nullptr); }

/// Addresses of the proof found by is_success, taking the first succeeding
/// clause at every atom. Empty when the tree is not a success.
inline std::set<Address> success_witness(const RewritingTree& t) {
  std::set<Address> w;
  if (!detail::succeeds(t, Address::root(), &w)) return {};
  return w;
}

enum class Productivity { FiniteWithinBound, ExceedsBound };

inline const char* to_string(Productivity p) {
  return p == Productivity::FiniteWithinBound ? "FiniteWithinBound" : "ExceedsBound";
}

/// Bounded check of observational productivity for one clause: whether its
/// rewriting tree closes before address length `fuel`.
inline Productivity productivity_probe(const Program& p, const Clause& c, std::size_t fuel) {
  return rew(p, c, Substitution::identity(), fuel).truncated() ? Productivity::ExceedsBound
                                                               : Productivity::FiniteWithinBound;
}

}  // namespace strucres
