#pragma once

#include <cassert>
#include <map>
#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "program.hpp"
#include "substitution.hpp"
#include "term.hpp"

namespace strucres {

enum class UnifyFailure { None, Clash, OccursCheck };

struct UnifyOutcome {
  std::optional<Substitution> unifier;
  UnifyFailure failure = UnifyFailure::None;
  explicit operator bool() const { return unifier.has_value(); }
};

namespace detail {

// Replaces v by t in every binding's range, keeping the accumulated
// substitution in solved form.
inline void eliminate(Substitution& solved, const Variable& v, const Term& t) {
  Substitution single({{v, t}});
  Substitution next;
  for (const auto& [x, u] : solved.bindings()) next.bind(x, single.apply(u));
  next.bind(v, t);
  solved = std::move(next);
}

inline std::optional<Substitution> match(const Term& pattern, const Term& target, bool occurs_check) {
  // Identity bindings are tracked here too; Substitution would drop them.
  std::map<Variable, Term> bound;
  std::vector<std::pair<Term, Term>> work{{pattern, target}};
  while (!work.empty()) {
    auto [p, t] = std::move(work.back());
    work.pop_back();
    if (p.is_var()) {
      auto it = bound.find(p.variable());
      if (it != bound.end()) {
        if (!(it->second == t)) return std::nullopt;
        continue;
      }
      bool identity = t.is_var() && t.variable() == p.variable();
      if (occurs_check && !identity && t.occurs(p.variable())) return std::nullopt;
      bound.emplace(p.variable(), t);
      continue;
    }
    if (t.is_var() || p.functor() != t.functor() || p.arity() != t.arity()) return std::nullopt;
    for (std::size_t i = p.arity(); i-- > 0;) work.emplace_back(p.args()[i], t.args()[i]);
  }
  Substitution theta;
  for (const auto& [v, t] : bound) theta.bind(v, t);
  return theta;
}

}  // namespace detail

/// Robinson unification with occurs check. The result is idempotent.
inline UnifyOutcome mgu_explain(const Term& t, const Term& u) {
  Substitution solved;
  std::vector<std::pair<Term, Term>> work{{t, u}};
  while (!work.empty()) {
    auto [a, b] = std::move(work.back());
    work.pop_back();
    a = solved.apply(a);
    b = solved.apply(b);
    if (a == b) continue;
    if (!a.is_var() && b.is_var()) std::swap(a, b);
    if (a.is_var()) {
      if (b.occurs(a.variable())) return {std::nullopt, UnifyFailure::OccursCheck};
      detail::eliminate(solved, a.variable(), b);
      continue;
    }
    if (a.functor() != b.functor() || a.arity() != b.arity()) return {std::nullopt, UnifyFailure::Clash};
    for (std::size_t i = a.arity(); i-- > 0;) work.emplace_back(a.args()[i], b.args()[i]);
  }
  assert(solved.apply(t) == solved.apply(u));
  assert(solved.is_idempotent());
  return {std::move(solved), UnifyFailure::None};
}

inline std::optional<Substitution> mgu(const Term& t, const Term& u) { return mgu_explain(t, u).unifier; }

/// Most general matcher: θ with θ(pattern) = target, binding only pattern
/// variables. Target variables are treated as constants.
inline std::optional<Substitution> mgm(const Term& pattern, const Term& target) {
  auto theta = detail::match(pattern, target, true);
  assert(!theta || theta->apply(pattern) == target);
  return theta;
}

/// Renames the clause apart. Head variables, and every other variable that is
/// not existential, get fresh names from `ctx`. Existential variables become
/// the existential variable (at, k) for body-order slot k when an address is
/// given, and fresh ordinary variables otherwise.
inline Clause rename_apart(const Clause& c, FreshContext& ctx, const std::optional<Address>& at = std::nullopt) {
  auto existentials = existential_vars(c);
  Substitution renaming;
  for (const auto& v : c.variables()) {
    auto it = std::find(existentials.begin(), existentials.end(), v);
    if (it != existentials.end() && at) {
      auto slot = static_cast<std::uint32_t>(it - existentials.begin()) + 1;
      renaming.bind(v, Term::var(Variable::existential(*at, slot)));
    } else {
      renaming.bind(v, Term::var(ctx.fresh()));
    }
  }
  return apply(renaming, c);
}

/// True iff some δ has δ(general(X)) = specific(X) for every probe variable.
inline bool is_more_general(const Substitution& general, const Substitution& specific,
                            const std::set<Variable>& probe) {
  std::vector<Term> lhs, rhs;
  for (const auto& v : probe) {
    lhs.push_back(general.apply(Term::var(v)));
    rhs.push_back(specific.apply(Term::var(v)));
  }
  return detail::match(Term::app("", std::move(lhs)), Term::app("", std::move(rhs)), false).has_value();
}

}  // namespace strucres
