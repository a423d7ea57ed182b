#pragma once

#include <deque>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "rewrite.hpp"

namespace strucres {

struct Limits {
  std::size_t fuel = 32;        // rewriting-tree depth bound
  std::size_t max_depth = 64;   // transitions along one derivation
  std::size_t max_nodes = 10000;  // transitions computed in total
};

enum class Strategy { DFS, BFS, IterativeDeepening };

/// One step of an S-derivation: the variable a transition was taken at and
/// the external resolvent it produced.
struct Step {
  RewVarId via;
  Substitution resolvent;
  friend bool operator==(const Step&, const Step&) = default;
};

struct DerivationNode {
  std::optional<RewritingTree> tree;  // empty: null resolvent
  std::optional<Step> incoming;
  Substitution accumulated;
  bool frontier = false;  // has variables but was not expanded within limits

  bool dead() const { return !tree.has_value(); }
};

/// A finite fragment of the derivation tree. Child i of a node is the
/// transition at the node's i-th candidate variable.
struct DerivationTree {
  std::map<Address, DerivationNode> nodes;

  const DerivationNode& at(const Address& w) const {
    auto it = nodes.find(w);
    if (it == nodes.end()) throw AddressError(w);
    return it->second;
  }
  const DerivationNode& root() const { return at(Address::root()); }
  std::size_t size() const { return nodes.size(); }

  std::vector<Address> children(const Address& w) const {
    std::vector<Address> out;
    for (std::uint32_t i = 0; nodes.count(w.child(i)); ++i) out.push_back(w.child(i));
    return out;
  }

  bool has_frontier() const {
    for (const auto& [w, n] : nodes)
      if (n.frontier) return true;
    return false;
  }
};

/// Materializes der(P, C) breadth-first. A node is expanded only if it lies
/// above `max_depth` and all its children fit within `max_nodes`; otherwise it
/// is left as a frontier node.
inline DerivationTree der_expand(std::shared_ptr<const Program> program, const Clause& c, const Limits& limits) {
  DerivationTree d;
  DerivationNode root;
  root.tree = rew(program, c, Substitution::identity(), limits.fuel);
  d.nodes.emplace(Address::root(), std::move(root));
  std::deque<Address> queue{Address::root()};
  while (!queue.empty()) {
    Address w = std::move(queue.front());
    queue.pop_front();
    DerivationNode& node = d.nodes.at(w);
    auto vars = node.tree->candidate_vars();
    if (vars.empty()) continue;
    if (w.length() >= limits.max_depth || d.nodes.size() + vars.size() > limits.max_nodes) {
      node.frontier = true;
      continue;
    }
    const RewritingTree parent_tree = *node.tree;
    const Substitution parent_sigma = node.accumulated;
    for (std::uint32_t i = 0; i < vars.size(); ++i) {
      DerivationNode child;
      if (auto tr = transition(parent_tree, vars[i])) {
        child.accumulated = compose(tr->resolvent, parent_sigma);
        child.incoming = Step{vars[i], tr->resolvent};
        child.tree = std::move(tr->tree);
        queue.push_back(w.child(i));
      } else {
        child.incoming = Step{vars[i], {}};
        child.accumulated = parent_sigma;
      }
      d.nodes.emplace(w.child(i), std::move(child));
    }
  }
  return d;
}

inline DerivationTree der_expand(const Program& program, const Clause& c, const Limits& limits) {
  return der_expand(std::make_shared<const Program>(program), c, limits);
}

struct Answer {
  Substitution bindings;  // restricted to the query's variables
  RewritingTree witness;
  std::vector<Step> trace;
};

/// Re-applies a trace of transitions from the root tree of `c`. Empty if any
/// step hits a null resolvent.
inline std::optional<RewritingTree> replay(std::shared_ptr<const Program> program, const Clause& c,
                                           const std::vector<Step>& trace, std::size_t fuel) {
  RewritingTree t = rew(std::move(program), c, Substitution::identity(), fuel);
  for (const auto& step : trace) {
    auto tr = transition(t, step.via);
    if (!tr) return std::nullopt;
    t = std::move(tr->tree);
  }
  return t;
}

enum class SearchStatus {
  Searching,      // more answers may follow
  Complete,       // the whole search space was explored; no more answers
  LimitExhausted  // some part of the space was cut by a limit
};

struct SolveOptions {
  /// Skip transitions at variables whose parent atom already has a
  /// succeeding clause child.
  bool skip_settled_atoms = false;
  /// Emit each answer once, comparing instantiated queries up to renaming.
  bool deduplicate = true;
};

namespace detail {

/// Renders `t` with variables renamed by order of first occurrence.
inline std::string canonical_text(const Term& t) {
  Substitution r;
  std::uint64_t k = 0;
  for (const auto& v : t.variables()) r.bind(v, Term::var(Variable::fresh(++k)));
  return r.apply(t).str();
}

inline std::string canonical_text(const std::vector<Term>& ts) { return canonical_text(Term::app("", ts)); }

}  // namespace detail

/// Lazy enumeration of S-resolution answers in strategy order.
class Solver {
 public:
  Solver(std::shared_ptr<const Program> program, Clause goal, Strategy strategy, Limits limits,
         SolveOptions options = {})
      : program_(std::move(program)), goal_(std::move(goal)), strategy_(strategy), limits_(limits), options_(options) {
    if (!goal_.is_goal()) throw Error("solve expects a goal clause");
    auto vs = goal_.variables();
    query_vars_ = std::set<Variable>(vs.begin(), vs.end());
  }

  Solver(const Program& program, Clause goal, Strategy strategy, Limits limits, SolveOptions options = {})
      : Solver(std::make_shared<const Program>(program), std::move(goal), strategy, limits, options) {}

  std::optional<Answer> next() {
    while (true) {
      if (!ready_.empty()) {
        Answer a = std::move(ready_.front());
        ready_.pop_front();
        return a;
      }
      if (done_) return std::nullopt;
      step();
    }
  }

  std::vector<Answer> take(std::size_t n) {
    std::vector<Answer> out;
    while (out.size() < n) {
      auto a = next();
      if (!a) break;
      out.push_back(std::move(*a));
    }
    return out;
  }

  SearchStatus status() const {
    if (!done_ || !ready_.empty()) return SearchStatus::Searching;
    return limited_ ? SearchStatus::LimitExhausted : SearchStatus::Complete;
  }

  std::size_t transitions() const { return transitions_; }

 private:
  struct Node {
    RewritingTree tree;
    Substitution accumulated;
    std::vector<Step> trace;
  };
  struct Frame {
    Node node;
    std::vector<RewVarId> vars;
    std::size_t next = 0;
  };

  std::size_t depth(const Node& n) const { return n.trace.size(); }

  // One unit of search work; may queue answers or finish the search.
  void step() {
    if (!started_) {
      started_ = true;
      start_round();
      return;
    }
    switch (strategy_) {
      case Strategy::BFS: bfs_step(); break;
      case Strategy::DFS:
      case Strategy::IterativeDeepening: dfs_step(); break;
    }
  }

  void start_round() {
    Node root{rew(program_, goal_, Substitution::identity(), limits_.fuel), {}, {}};
    if (strategy_ == Strategy::BFS) {
      if (admit(root, true)) queue_.push_back(std::move(root));
    } else {
      if (admit(root, strategy_ != Strategy::IterativeDeepening || round_ == 0)) push(std::move(root));
    }
    if (stack_.empty() && queue_.empty()) finish_round();
  }

  std::size_t bound() const {
    return strategy_ == Strategy::IterativeDeepening ? round_ : limits_.max_depth;
  }

  // Records a visited node. Returns true when it should be expanded further.
  bool admit(Node& n, bool may_emit) {
    if (is_success(n.tree)) {
      if (may_emit) emit(n);
      return false;
    }
    if (n.tree.truncated()) limited_ = true;
    return true;
  }

  void emit(Node& n) {
    Substitution bindings = restrict(n.accumulated, query_vars_);
    if (options_.deduplicate) {
      std::vector<Term> inst;
      for (const auto& b : goal_.body) inst.push_back(bindings.apply(b));
      if (!seen_.insert(detail::canonical_text(inst)).second) return;
    }
    ready_.push_back(Answer{std::move(bindings), n.tree, n.trace});
  }

  std::vector<RewVarId> expandable_vars(const RewritingTree& t) const {
    auto vars = t.candidate_vars();
    if (!options_.skip_settled_atoms) return vars;
    std::vector<RewVarId> out;
    for (const auto& v : vars) {
      bool settled = false;
      for (const auto& c : t.children(v.parent)) {
        if (!std::holds_alternative<OrClause>(t.at(c))) continue;
        if (subtree_succeeds(t, c)) {
          settled = true;
          break;
        }
      }
      if (!settled) out.push_back(v);
    }
    return out;
  }

  static bool subtree_succeeds(const RewritingTree& t, const Address& w) {
    const auto* c = std::get_if<OrClause>(&t.at(w));
    if (!c) return false;
    for (std::uint32_t j = 0; j < c->instance.body.size(); ++j) {
      bool any = false;
      for (const auto& k : t.children(w.child(j)))
        if (subtree_succeeds(t, k)) {
          any = true;
          break;
        }
      if (!any) return false;
    }
    return true;
  }

  void push(Node n) {
    auto vars = expandable_vars(n.tree);
    stack_.push_back(Frame{std::move(n), std::move(vars), 0});
  }

  std::optional<Node> child_of(const Node& parent, const RewVarId& x) {
    ++transitions_;
    auto tr = transition(parent.tree, x);
    if (!tr) return std::nullopt;
    Node child{std::move(tr->tree), compose(tr->resolvent, parent.accumulated), parent.trace};
    child.trace.push_back(Step{x, std::move(tr->resolvent)});
    return child;
  }

  bool budget_left() {
    if (transitions_ < limits_.max_nodes) return true;
    limited_ = true;
    return false;
  }

  void dfs_step() {
    if (stack_.empty()) {
      finish_round();
      return;
    }
    Frame& top = stack_.back();
    if (top.next >= top.vars.size()) {
      stack_.pop_back();
      return;
    }
    if (depth(top.node) >= bound()) {
      if (bound() >= limits_.max_depth) limited_ = true;
      else cut_by_bound_ = true;
      stack_.pop_back();
      return;
    }
    if (!budget_left()) {
      stack_.clear();
      finish_round();
      return;
    }
    RewVarId x = top.vars[top.next++];
    auto child = child_of(top.node, x);
    if (!child) return;
    bool at_bound = strategy_ != Strategy::IterativeDeepening || depth(*child) == bound();
    if (admit(*child, at_bound)) push(std::move(*child));
  }

  void bfs_step() {
    if (queue_.empty()) {
      finish_round();
      return;
    }
    Node n = std::move(queue_.front());
    queue_.pop_front();
    auto vars = expandable_vars(n.tree);
    if (vars.empty()) return;
    if (depth(n) >= limits_.max_depth) {
      limited_ = true;
      return;
    }
    for (const auto& x : vars) {
      if (!budget_left()) {
        queue_.clear();
        return;
      }
      auto child = child_of(n, x);
      if (child && admit(*child, true)) queue_.push_back(std::move(*child));
    }
  }

  void finish_round() {
    if (strategy_ == Strategy::IterativeDeepening && cut_by_bound_ && round_ < limits_.max_depth &&
        transitions_ < limits_.max_nodes) {
      ++round_;
      cut_by_bound_ = false;
      start_round();
      return;
    }
    if (strategy_ == Strategy::IterativeDeepening && cut_by_bound_) limited_ = true;
    done_ = true;
  }

  std::shared_ptr<const Program> program_;
  Clause goal_;
  Strategy strategy_;
  Limits limits_;
  SolveOptions options_;
  std::set<Variable> query_vars_;

  bool started_ = false;
  bool done_ = false;
  bool limited_ = false;
  bool cut_by_bound_ = false;
  std::size_t round_ = 0;
  std::size_t transitions_ = 0;
  std::vector<Frame> stack_;
  std::deque<Node> queue_;
  std::deque<Answer> ready_;
  std::set<std::string> seen_;
};

inline Solver solve(std::shared_ptr<const Program> program, const Clause& goal, Strategy strategy,
                    const Limits& limits = {}, SolveOptions options = {}) {
  return Solver(std::move(program), goal, strategy, limits, options);
}

inline Solver solve(const Program& program, const Clause& goal, Strategy strategy, const Limits& limits = {},
                    SolveOptions options = {}) {
  return Solver(program, goal, strategy, limits, options);
}

struct Observation {
  std::vector<Term> terms;
  bool died = false;
};

/// Follows one S-derivation, always taking the first variable (in serial
/// order) with a non-null resolvent, and records the instantiated query atom
/// at each tree: first the root tree, then after every transition, until
/// `count` observations are collected.
inline Observation observe_prefix(std::shared_ptr<const Program> program, const Clause& goal, std::size_t count,
                                  std::size_t fuel = 32) {
  Observation out;
  if (goal.body.empty() || count == 0) return out;
  if (goal.body.size() != 1) throw Error("observe_prefix expects a goal with a single atom");
  RewritingTree t = rew(std::move(program), goal, Substitution::identity(), fuel);
  out.terms.push_back(t.sigma().apply(goal.body[0]));
  while (out.terms.size() < count) {
    std::optional<Transition> taken;
    for (const auto& x : t.candidate_vars())
      if ((taken = transition(t, x))) break;
    if (!taken) {
      out.died = true;
      break;
    }
    t = std::move(taken->tree);
    out.terms.push_back(t.sigma().apply(goal.body[0]));
  }
  return out;
}

inline Observation observe_prefix(const Program& program, const Clause& goal, std::size_t count,
                                  std::size_t fuel = 32) {
  return observe_prefix(std::make_shared<const Program>(program), goal, count, fuel);
}

}  // namespace strucres
