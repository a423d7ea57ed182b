#pragma once

#include <compare>
#include <cstdint>
#include <initializer_list>
#include <set>
#include <string>
#include <vector>

namespace strucres {

/// A node address: a finite word over the naturals. The empty word is the
/// root. Addresses order lexicographically with a prefix before its
/// extensions, so iterating an ordered map keyed by Address walks a tree in
/// pre-order.
class Address {
 public:
  Address() = default;
  Address(std::initializer_list<std::uint32_t> steps) : steps_(steps) {}
  explicit Address(std::vector<std::uint32_t> steps) : steps_(std::move(steps)) {}

  static Address root() { return {}; }

  bool empty() const { return steps_.empty(); }
  std::size_t length() const { return steps_.size(); }
  const std::vector<std::uint32_t>& steps() const { return steps_; }
  std::uint32_t operator[](std::size_t i) const { return steps_[i]; }
  std::uint32_t last() const { return steps_.back(); }

  Address child(std::uint32_t i) const {
    Address a = *this;
    a.steps_.push_back(i);
    return a;
  }

  Address parent() const {
    Address a = *this;
    if (!a.steps_.empty()) a.steps_.pop_back();
    return a;
  }

  Address concat(const Address& tail) const {
    Address a = *this;
    a.steps_.insert(a.steps_.end(), tail.steps_.begin(), tail.steps_.end());
    return a;
  }

  bool is_prefix_of(const Address& other) const {
    if (steps_.size() > other.steps_.size()) return false;
    for (std::size_t i = 0; i < steps_.size(); ++i)
      if (steps_[i] != other.steps_[i]) return false;
    return true;
  }

  /// The part of `other` after this prefix. Caller guarantees is_prefix_of.
  Address suffix_of(const Address& other) const {
    return Address(std::vector<std::uint32_t>(other.steps_.begin() + steps_.size(), other.steps_.end()));
  }

  /// "ε" for the root; digits joined by '.' otherwise.
  std::string str() const {
    if (steps_.empty()) return "\xCE\xB5";
    return joined(".");
  }

  /// Digits joined by `sep`, empty for the root.
  std::string joined(const char* sep) const {
    std::string out;
    for (std::size_t i = 0; i < steps_.size(); ++i) {
      if (i) out += sep;
      out += std::to_string(steps_[i]);
    }
    return out;
  }

  friend bool operator==(const Address&, const Address&) = default;
  friend std::strong_ordering operator<=>(const Address& a, const Address& b) {
    return a.steps_ <=> b.steps_;
  }

 private:
  std::vector<std::uint32_t> steps_;
};

/// Checks the tree-language closure conditions on a set of addresses: every
/// proper prefix is present and every left sibling is present.
template <typename Range>
bool is_tree_language(const Range& addresses) {
  std::set<Address> all(std::begin(addresses), std::end(addresses));
  if (all.empty()) return false;
  auto has = [&](const Address& a) { return all.count(a) != 0; };
  for (const auto& a : all) {
    if (a.empty()) continue;
    if (!has(a.parent())) return false;
    if (a.last() > 0 && !has(a.parent().child(a.last() - 1))) return false;
  }
  return true;
}

}  // namespace strucres
