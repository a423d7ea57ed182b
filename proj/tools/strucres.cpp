// strucres: command-line front end for the structural-resolution engine.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include <strucres/strucres.hpp>

namespace {

const CLI::Range kPositive(std::size_t{1}, std::numeric_limits<std::size_t>::max(), "POSITIVE");

using namespace strucres;

constexpr int kExitAnswers = 0;
constexpr int kExitNo = 1;
constexpr int kExitUnknown = 2;
constexpr int kExitExceeds = 3;
constexpr int kExitUsage = 64;
constexpr int kExitDataErr = 65;
constexpr int kExitNoInput = 66;

struct Options {
  std::string program_file;
  std::vector<std::string> queries;
  std::string engine = "s";
  std::size_t fuel = 32;
  std::size_t max_depth = 64;
  std::size_t max_steps = 10000;
  bool all_answers = false;
  std::string render = "dot";
  std::string strategy = "dfs";
  std::vector<std::size_t> transitions;
  bool derivation = false;
};

class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

ParsedProgram load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open program file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_program(buf.str());
}

Strategy strategy_of(const std::string& s) {
  if (s == "bfs") return Strategy::BFS;
  if (s == "iddfs") return Strategy::IterativeDeepening;
  return Strategy::DFS;
}

/// "X = 0, Y = s(0)" in the order the variables appear in the query.
std::string format_answer(const Clause& query, const Substitution& bindings) {
  std::string out;
  for (const auto& v : query.variables()) {
    auto t = bindings.lookup(v);
    if (!t) continue;
    if (!out.empty()) out += ", ";
    out += v.str() + " = " + t->str();
  }
  return out.empty() ? "true" : out;
}

int cmd_solve(const Options& o) {
  auto program = std::make_shared<const Program>(load(o.program_file).program);
  Clause query = parse_query(o.queries.front());
  std::size_t found = 0;
  bool limited = false;
  if (o.engine == "sld") {
    SldSolver solver(program, query, SldLimits{o.max_steps});
    while (auto a = solver.next()) {
      std::cout << format_answer(query, a->bindings) << "\n";
      if (++found && !o.all_answers) break;
    }
    limited = solver.status() == SldStatus::StepsExhausted;
  } else {
    Solver solver(program, query, strategy_of(o.strategy), Limits{o.fuel, o.max_depth, o.max_steps});
    while (auto a = solver.next()) {
      std::cout << format_answer(query, a->bindings) << "\n";
      if (++found && !o.all_answers) break;
    }
    limited = solver.status() == SearchStatus::LimitExhausted;
  }
  if (found > 0) return kExitAnswers;
  if (limited) {
    std::cout << "unknown (limits exhausted)\n";
    return kExitUnknown;
  }
  std::cout << "no\n";
  return kExitNo;
}

int cmd_render(const Options& o) {
  auto program = std::make_shared<const Program>(load(o.program_file).program);
  Clause query = parse_query(o.queries.front());
  bool ascii = o.render == "ascii";
  if (o.derivation) {
    auto d = der_expand(program, query, Limits{o.fuel, o.max_depth, o.max_steps});
    std::cout << to_dot(d);
    return 0;
  }
  RewritingTree tree = rew(program, query, Substitution::identity(), o.fuel);
  for (std::size_t serial : o.transitions) {
    auto x = tree.find_var(serial);
    if (!x) {
      std::cerr << "error: the tree has no variable X" << serial << "\n";
      return kExitUsage;
    }
    auto next = transition(tree, *x);
    if (!next) {
      std::cout << (ascii ? empty_tree_ascii() : empty_tree_dot());
      return 0;
    }
    tree = std::move(next->tree);
  }
  std::cout << (ascii ? to_ascii(tree) : to_dot(tree));
  return 0;
}

int cmd_productivity(const Options& o) {
  auto parsed = load(o.program_file);
  bool all_finite = true;
  for (const auto& q : o.queries) {
    Clause query = parse_query(q);
    auto verdict = productivity_probe(parsed.program, query, o.fuel);
    all_finite = all_finite && verdict == Productivity::FiniteWithinBound;
    std::cout << query.str() << " " << to_string(verdict) << " (fuel " << o.fuel << ")\n";
  }
  return all_finite ? kExitAnswers : kExitExceeds;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Structural resolution for logic programs"};
  app.require_subcommand(1);
  Options o;

  auto common = [&](CLI::App* sub) {
    sub->add_option("-p,--program", o.program_file, "program file")->required();
    sub->add_option("-q,--query", o.queries, "query, e.g. \"?- nat(s(X)).\"")->required();
    sub->add_option("--fuel", o.fuel, "rewriting-tree depth bound")->check(kPositive);
  };

  auto* solve_cmd = app.add_subcommand("solve", "answer a query");
  common(solve_cmd);
  solve_cmd->add_option("--engine", o.engine, "s (structural) or sld")->check(CLI::IsMember({"s", "sld"}));
  solve_cmd->add_option("--max-depth", o.max_depth, "transitions along one derivation")->check(kPositive);
  solve_cmd->add_option("--max-steps", o.max_steps, "total transitions (s) or resolution steps (sld)")
      ->check(kPositive);
  solve_cmd->add_flag("--all-answers", o.all_answers, "print every answer, not just the first");
  solve_cmd->add_option("--strategy", o.strategy, "dfs, bfs or iddfs")->check(CLI::IsMember({"dfs", "bfs", "iddfs"}));

  auto* render_cmd = app.add_subcommand("render", "draw the rewriting tree of a query");
  common(render_cmd);
  render_cmd->add_option("--render", o.render, "dot or ascii")->check(CLI::IsMember({"dot", "ascii"}));
  render_cmd->add_option("--transition", o.transitions, "take the transition at variable Xk first (repeatable)");
  render_cmd->add_flag("--derivation", o.derivation, "draw the derivation tree instead (DOT)");
  render_cmd->add_option("--max-depth", o.max_depth, "derivation depth")->check(kPositive);
  render_cmd->add_option("--max-steps", o.max_steps, "derivation nodes")->check(kPositive);

  auto* prod_cmd = app.add_subcommand("productivity", "bounded observational-productivity check");
  common(prod_cmd);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (solve_cmd->parsed()) {
      if (o.queries.size() != 1) {
        std::cerr << "solve takes exactly one query\n";
        return kExitUsage;
      }
      return cmd_solve(o);
    }
    if (render_cmd->parsed()) {
      if (o.queries.size() != 1) {
        std::cerr << "render takes exactly one query\n";
        return kExitUsage;
      }
      return cmd_render(o);
    }
    return cmd_productivity(o);
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNoInput;
  } catch (const strucres::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitDataErr;
  }
}
