#pragma once

#include <map>
#include <set>
#include <string>
#include <variant>

#include "derive.hpp"
#include "rewrite.hpp"

namespace strucres {

/// `head ← body` as in tree diagrams; goals print as `? ← body`.
inline std::string arrow_text(const Clause& c) {
  std::string out = c.is_goal() ? "?" : c.head->str();
  out += " \xE2\x86\x90";
  for (std::size_t i = 0; i < c.body.size(); ++i) out += (i ? ", " : " ") + c.body[i].str();
  return out;
}

inline std::string node_text(const RewNode& n) {
  if (auto a = std::get_if<AndNode>(&n)) return a->term.str();
  if (auto c = std::get_if<OrClause>(&n)) return arrow_text(c->instance);
  if (auto v = std::get_if<OrVar>(&n)) return v->id.str();
  return "\xE2\x80\xA6";
}

namespace detail {

inline std::string dot_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out;
}

}  // namespace detail

/// Graphviz rendering. Atoms are boxes, clause instances ellipses, variables
/// diamonds and cut subtrees dashed. Nodes of the success witness, if any,
/// are drawn bold blue and tagged `witness=true` in their comment.
inline std::string to_dot(const RewritingTree& t) {
  auto witness = success_witness(t);
  std::map<Address, std::size_t> id;
  std::string out = "digraph rewriting_tree {\n  node [fontname=\"Helvetica\"];\n";
  for (const auto& [w, n] : t.nodes()) {
    std::size_t k = id.size();
    id.emplace(w, k);
    std::string attrs = "label=\"" + detail::dot_escape(node_text(n)) + "\"";
    if (std::holds_alternative<AndNode>(n)) attrs += ", shape=box";
    else if (std::holds_alternative<OrClause>(n)) attrs += ", shape=ellipse";
    else if (std::holds_alternative<OrVar>(n)) attrs += ", shape=diamond";
    else attrs += ", shape=plaintext, style=dashed";
    if (witness.count(w)) attrs += ", color=blue, penwidth=2, comment=\"witness=true\"";
    out += "  n" + std::to_string(k) + " [" + attrs + "]; // " + w.str() + "\n";
  }
  for (const auto& [w, n] : t.nodes()) {
    if (w.empty()) continue;
    std::string attrs = witness.count(w) ? " [color=blue, penwidth=2]" : "";
    out += "  n" + std::to_string(id.at(w.parent())) + " -> n" + std::to_string(id.at(w)) + attrs + ";\n";
  }
  return out + "}\n";
}

/// The empty rewriting tree, produced by a null resolvent.
inline std::string empty_tree_dot() { return "digraph rewriting_tree {\n  n0 [label=\"\xE2\x8A\xA5\"];\n}\n"; }

/// Indented outline, one node per line; witness nodes carry a `*`.
inline std::string to_ascii(const RewritingTree& t) {
  auto witness = success_witness(t);
  std::string out;
  for (const auto& [w, n] : t.nodes()) {
    out += std::string(2 * w.length(), ' ');
    out += witness.count(w) ? "* " : "- ";
    out += node_text(n) + "\n";
  }
  return out;
}

inline std::string empty_tree_ascii() { return "\xE2\x8A\xA5\n"; }

/// Derivation tree as DOT: each node shows its root clause; edges carry the
/// variable and resolvent; dead transitions are ⊥ and frontier nodes dashed.
inline std::string to_dot(const DerivationTree& d) {
  std::map<Address, std::size_t> id;
  std::string out = "digraph derivation_tree {\n  node [fontname=\"Helvetica\", shape=box];\n";
  for (const auto& [w, n] : d.nodes) {
    std::size_t k = id.size();
    id.emplace(w, k);
    std::string attrs;
    if (n.dead()) {
      attrs = "label=\"\xE2\x8A\xA5\", shape=plaintext";
    } else {
      attrs = "label=\"" + detail::dot_escape(arrow_text(n.tree->root())) + "\"";
      if (is_success(*n.tree)) attrs += ", color=blue, penwidth=2";
      if (n.frontier) attrs += ", style=dashed";
    }
    out += "  n" + std::to_string(k) + " [" + attrs + "]; // " + w.str() + "\n";
  }
  for (const auto& [w, n] : d.nodes) {
    if (w.empty()) continue;
    std::string label = n.incoming->via.str();
    if (!n.dead()) label += " " + n.incoming->resolvent.str();
    out += "  n" + std::to_string(id.at(w.parent())) + " -> n" + std::to_string(id.at(w)) + " [label=\"" +
           detail::dot_escape(label) + "\"];\n";
  }
  return out + "}\n";
}

}  // namespace strucres
