#pragma once

#include <cctype>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "substitution.hpp"
#include "term.hpp"

namespace strucres {

/// `head :- body` or, when `head` is empty, the goal clause `?- body`.
/// Viewed as a depth-1 tree: the head at the root and body atom j at child j.
struct Clause {
  std::optional<Term> head;
  std::vector<Term> body;

  static Clause goal(std::vector<Term> body) { return {std::nullopt, std::move(body)}; }
  static Clause fact(Term head) { return {std::move(head), {}}; }
  static Clause rule(Term head, std::vector<Term> body) { return {std::move(head), std::move(body)}; }

  bool is_goal() const { return !head.has_value(); }
  bool is_empty_goal() const { return is_goal() && body.empty(); }
  std::size_t arity() const { return body.size() + 1; }

  /// Variables in order of first occurrence, head first.
  std::vector<Variable> variables() const {
    std::vector<Variable> out;
    auto add = [&](const Term& t) {
      for (const auto& v : t.variables())
        if (std::find(out.begin(), out.end(), v) == out.end()) out.push_back(v);
    };
    if (head) add(*head);
    for (const auto& b : body) add(b);
    return out;
  }

  std::string str() const {
    std::string out;
    if (is_goal()) {
      out = "?-";
      if (!body.empty()) out += " ";
    } else {
      out = head->str();
      if (!body.empty()) out += " :- ";
    }
    for (std::size_t i = 0; i < body.size(); ++i) {
      if (i) out += ", ";
      out += body[i].str();
    }
    return out + ".";
  }

  friend bool operator==(const Clause&, const Clause&) = default;
};

inline Clause apply(const Substitution& s, const Clause& c) {
  Clause out;
  if (c.head) out.head = s.apply(*c.head);
  out.body.reserve(c.body.size());
  for (const auto& b : c.body) out.body.push_back(s.apply(b));
  return out;
}

/// Body variables that do not occur in the head, by first occurrence. Their
/// position in this list is the slot k used when renaming them apart.
inline std::vector<Variable> existential_vars(const Clause& c) {
  std::vector<Variable> out;
  for (const auto& b : c.body)
    for (const auto& v : b.variables()) {
      if (c.head && c.head->occurs(v)) continue;
      if (std::find(out.begin(), out.end(), v) == out.end()) out.push_back(v);
    }
  return out;
}

/// Ordered clause list indexed from 0. Goal clauses are rejected.
class Program {
 public:
  Program() = default;
  explicit Program(std::vector<Clause> clauses) : clauses_(std::move(clauses)) {
    for (const auto& c : clauses_)
      if (c.is_goal()) throw Error("a program cannot contain a goal clause");
  }

  std::size_t size() const { return clauses_.size(); }
  bool empty() const { return clauses_.empty(); }
  const Clause& operator[](std::size_t i) const { return clauses_.at(i); }
  const std::vector<Clause>& clauses() const { return clauses_; }

  std::string str() const {
    std::string out;
    for (const auto& c : clauses_) out += c.str() + "\n";
    return out;
  }

  friend bool operator==(const Program&, const Program&) = default;

 private:
  std::vector<Clause> clauses_;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line, std::size_t column)
      : Error(std::to_string(line) + ":" + std::to_string(column) + ": " + what), line_(line), column_(column) {}
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_, column_;
};

class ArityError : public Error {
 public:
  ArityError(const std::string& functor, std::size_t first, std::size_t second)
      : Error("functor '" + functor + "' used with arity " + std::to_string(first) + " and " + std::to_string(second)),
        functor_(functor) {}
  const std::string& functor() const { return functor_; }

 private:
  std::string functor_;
};

struct ParsedProgram {
  Program program;
  Signature signature;
};

namespace detail {

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  std::vector<Clause> clauses() {
    std::vector<Clause> out;
    skip_space();
    while (!at_end()) {
      out.push_back(clause());
      skip_space();
    }
    return out;
  }

  Clause query() {
    skip_space();
    expect("?-");
    Clause c = Clause::goal({});
    skip_space();
    if (at_end() || peek() == '.') {
      if (!at_end()) ++pos_;
    } else {
      c.body = atoms();
      skip_space();
      if (!at_end()) expect(".");
    }
    skip_space();
    if (!at_end()) fail("unexpected text after query");
    return c;
  }

  Term single_term() {
    skip_space();
    Term t = term();
    skip_space();
    if (!at_end()) fail("unexpected text after term");
    return t;
  }

  const Signature& signature() const { return sig_; }

 private:
  Clause clause() {
    anonymous_ = 0;
    if (lookahead("?-")) fail("queries are not allowed in a program");
    Term head = atom();
    skip_space();
    std::vector<Term> body;
    if (lookahead(":-")) {
      pos_ += 2;
      body = atoms();
      skip_space();
    }
    expect(".");
    return Clause::rule(std::move(head), std::move(body));
  }

  std::vector<Term> atoms() {
    std::vector<Term> out;
    out.push_back(atom());
    skip_space();
    while (!at_end() && peek() == ',') {
      ++pos_;
      out.push_back(atom());
      skip_space();
    }
    return out;
  }

  Term atom() {
    skip_space();
    if (!at_end() && is_var_start(peek())) fail("expected an atom, found a variable");
    return term();
  }

  Term term() {
    skip_space();
    if (at_end()) fail("unexpected end of input");
    char ch = peek();
    if (ch == '[') return bracket();
    if (is_var_start(ch)) {
      std::string name = identifier();
      if (name == "_") name = "_" + std::to_string(++anonymous_);
      return Term::var(name);
    }
    if (!is_functor_start(ch)) fail(std::string("unexpected character '") + ch + "'");
    std::string name = identifier();
    std::vector<Term> args;
    skip_space();
    if (!at_end() && peek() == '(') {
      ++pos_;
      args.push_back(term());
      skip_space();
      while (!at_end() && peek() == ',') {
        ++pos_;
        args.push_back(term());
        skip_space();
      }
      expect(")");
    }
    if (!sig_.add(name, args.size())) throw ArityError(name, sig_.arity(name), args.size());
    return Term::app(std::move(name), std::move(args));
  }

  // [t, u] abbreviates scons(t, u); no other bracket form is accepted.
  Term bracket() {
    std::size_t start = pos_;
    ++pos_;
    std::vector<Term> items;
    skip_space();
    if (!at_end() && peek() == ']') fail_at("empty brackets are not supported", start);
    items.push_back(term());
    skip_space();
    while (!at_end() && peek() == ',') {
      ++pos_;
      items.push_back(term());
      skip_space();
    }
    expect("]");
    if (items.size() != 2) fail_at("brackets must hold exactly two terms: [head, tail]", start);
    if (!sig_.add("scons", 2)) throw ArityError("scons", sig_.arity("scons"), 2);
    return Term::app("scons", std::move(items));
  }

  std::string identifier() {
    std::size_t start = pos_;
    while (!at_end() && (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_' || peek() == '\'')) ++pos_;
    return std::string(text_.substr(start, pos_ - start));
  }

  static bool is_var_start(char c) { return std::isupper(static_cast<unsigned char>(c)) || c == '_'; }
  static bool is_functor_start(char c) {
    return std::islower(static_cast<unsigned char>(c)) || std::isdigit(static_cast<unsigned char>(c));
  }

  void skip_space() {
    while (!at_end()) {
      char c = peek();
      if (std::isspace(static_cast<unsigned char>(c))) {
        ++pos_;
      } else if (c == '%') {
        while (!at_end() && peek() != '\n') ++pos_;
      } else {
        break;
      }
    }
  }

  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return text_[pos_]; }
  bool lookahead(std::string_view s) const { return text_.substr(pos_, s.size()) == s; }

  void expect(std::string_view s) {
    skip_space();
    if (!lookahead(s)) fail("expected '" + std::string(s) + "'");
    pos_ += s.size();
  }

  std::size_t line_at(std::size_t p) const {
    std::size_t line = 1;
    for (std::size_t i = 0; i < p && i < text_.size(); ++i)
      if (text_[i] == '\n') ++line;
    return line;
  }
  std::size_t column_at(std::size_t p) const {
    std::size_t col = 1;
    for (std::size_t i = 0; i < p && i < text_.size(); ++i) col = text_[i] == '\n' ? 1 : col + 1;
    return col;
  }

  [[noreturn]] void fail(const std::string& what) const { fail_at(what, pos_); }
  [[noreturn]] void fail_at(const std::string& what, std::size_t p) const {
    throw ParseError(what, line_at(p), column_at(p));
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t anonymous_ = 0;
  Signature sig_;
};

}  // namespace detail

/// Parses clauses in source order; clause i of the result is the i-th clause
/// in the text. The signature is inferred from functor occurrences.
inline ParsedProgram parse_program(std::string_view text) {
  detail::Parser p(text);
  auto clauses = p.clauses();
  if (clauses.empty()) throw ParseError("empty program", 1, 1);
  return {Program(std::move(clauses)), p.signature()};
}

/// Parses `?- t1, ..., tn.`; `?-.` is the empty goal. The final period may be
/// omitted.
inline Clause parse_query(std::string_view text) { return detail::Parser(text).query(); }

inline Term parse_term(std::string_view text) { return detail::Parser(text).single_term(); }

inline std::string pretty(const Term& t) { return t.str(); }
inline std::string pretty(const Clause& c) { return c.str(); }
inline std::string pretty(const Program& p) { return p.str(); }

}  // namespace strucres
