#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "term.hpp"

namespace strucres {

/// Finite-support map from variables to terms. Identity bindings are never
/// stored, so the support is exactly the key set.
class Substitution {
 public:
  using Map = std::map<Variable, Term>;

  Substitution() = default;
  explicit Substitution(const std::vector<std::pair<Variable, Term>>& bindings) {
    for (const auto& [v, t] : bindings) bind(v, t);
  }

  static Substitution identity() { return {}; }

  /// Sets `v ↦ t`, overwriting any earlier binding. Binding a variable to
  /// itself removes it from the support.
  void bind(const Variable& v, const Term& t) {
    if (t.is_var() && t.variable() == v) {
      map_.erase(v);
      return;
    }
    map_.insert_or_assign(v, t);
  }

  bool empty() const { return map_.empty(); }
  bool is_identity() const { return map_.empty(); }
  std::size_t size() const { return map_.size(); }
  const Map& bindings() const { return map_; }
  bool binds(const Variable& v) const { return map_.count(v) != 0; }

  std::optional<Term> lookup(const Variable& v) const {
    auto it = map_.find(v);
    if (it == map_.end()) return std::nullopt;
    return it->second;
  }

  std::set<Variable> support() const {
    std::set<Variable> out;
    for (const auto& [v, t] : map_) out.insert(v);
    return out;
  }

  /// Variables occurring in the range of the support.
  std::set<Variable> range_variables() const {
    std::set<Variable> out;
    for (const auto& [v, t] : map_)
      for (const auto& u : t.variables()) out.insert(u);
    return out;
  }

  /// One simultaneous pass; bound variables are replaced once, never chased.
  Term apply(const Term& t) const {
    if (map_.empty()) return t;
    if (t.is_var()) {
      auto it = map_.find(t.variable());
      return it == map_.end() ? t : it->second;
    }
    if (t.arity() == 0) return t;
    std::vector<Term> args;
    args.reserve(t.arity());
    bool changed = false;
    for (const auto& a : t.args()) {
      args.push_back(apply(a));
      changed = changed || !(args.back() == a);
    }
    return changed ? Term::app(t.functor(), std::move(args)) : t;
  }

  Term operator()(const Term& t) const { return apply(t); }

  /// Applying twice equals applying once: no range variable is in the support.
  bool is_idempotent() const {
    for (const auto& v : range_variables())
      if (binds(v)) return false;
    return true;
  }

  std::string str() const {
    std::string out = "{";
    bool first = true;
    for (const auto& [v, t] : map_) {
      if (!first) out += ", ";
      first = false;
      out += v.str() + " \xE2\x86\xA6 " + t.str();
    }
    return out + "}";
  }

  friend bool operator==(const Substitution&, const Substitution&) = default;

 private:
  Map map_;
};

/// Juxtaposition `second ∘ first`: the result applied to t equals
/// second(first(t)).
inline Substitution compose(const Substitution& second, const Substitution& first) {
  Substitution out;
  for (const auto& [v, t] : first.bindings()) out.bind(v, second.apply(t));
  for (const auto& [v, t] : second.bindings())
    if (!first.binds(v)) out.bind(v, t);
  return out;
}

/// Agrees with `s` on `keep` and is the identity elsewhere.
inline Substitution restrict(const Substitution& s, const std::set<Variable>& keep) {
  Substitution out;
  for (const auto& [v, t] : s.bindings())
    if (keep.count(v)) out.bind(v, t);
  return out;
}

inline void avoid(FreshContext& ctx, const Substitution& s) {
  for (const auto& [v, t] : s.bindings()) {
    ctx.avoid(Term::var(v));
    ctx.avoid(t);
  }
}

}  // namespace strucres
