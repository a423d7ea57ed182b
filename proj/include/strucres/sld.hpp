#pragma once

#include <memory>
#include <optional>
#include <set>
#include <vector>

#include "program.hpp"
#include "unify.hpp"

namespace strucres {

struct SldLimits {
  std::size_t max_steps = 10000;
};

struct SldAnswer {
  Substitution bindings;  // restricted to the query's variables
  std::size_t steps = 0;  // resolution steps taken so far in this run
};

enum class SldStatus { Searching, Complete, StepsExhausted };

/// Plain SLD resolution: leftmost atom, clauses tried in index order, depth
/// first with chronological backtracking. A step is one successful
/// resolution against a clause.
class SldSolver {
 public:
  SldSolver(std::shared_ptr<const Program> program, const Clause& goal, SldLimits limits = {})
      : program_(std::move(program)), limits_(limits) {
    if (!goal.is_goal()) throw Error("SLD resolution expects a goal clause");
    auto vs = goal.variables();
    query_vars_ = std::set<Variable>(vs.begin(), vs.end());
    for (const auto& b : goal.body) ctx_.avoid(b);
    stack_.push_back(Frame{goal.body, {}, 0});
  }

  SldSolver(const Program& program, const Clause& goal, SldLimits limits = {})
      : SldSolver(std::make_shared<const Program>(program), goal, limits) {}

  std::optional<SldAnswer> next() {
    while (!stack_.empty()) {
      Frame& top = stack_.back();
      if (top.goals.empty()) {
        SldAnswer a{restrict(top.sigma, query_vars_), steps_};
        stack_.pop_back();
        return a;
      }
      if (top.next_clause >= program_->size()) {
        stack_.pop_back();
        continue;
      }
      if (steps_ >= limits_.max_steps) {
        exhausted_ = true;
        stack_.clear();
        break;
      }
      const Clause renamed = rename_apart((*program_)[top.next_clause++], ctx_);
      auto unifier = mgu(*renamed.head, top.goals.front());
      if (!unifier) continue;
      ++steps_;
      Frame child;
      for (const auto& b : renamed.body) child.goals.push_back(unifier->apply(b));
      for (std::size_t i = 1; i < top.goals.size(); ++i) child.goals.push_back(unifier->apply(top.goals[i]));
      child.sigma = compose(*unifier, top.sigma);
      stack_.push_back(std::move(child));
    }
    return std::nullopt;
  }

  SldStatus status() const {
    if (!stack_.empty()) return SldStatus::Searching;
    return exhausted_ ? SldStatus::StepsExhausted : SldStatus::Complete;
  }

  std::size_t steps() const { return steps_; }

 private:
  struct Frame {
    std::vector<Term> goals;
    Substitution sigma;
    std::size_t next_clause = 0;
  };

  std::shared_ptr<const Program> program_;
  SldLimits limits_;
  std::set<Variable> query_vars_;
  FreshContext ctx_;
  std::vector<Frame> stack_;
  std::size_t steps_ = 0;
  bool exhausted_ = false;
};

inline SldSolver sld_solve(const Program& program, const Clause& goal, SldLimits limits = {}) {
  return SldSolver(program, goal, limits);
}

}  // namespace strucres
