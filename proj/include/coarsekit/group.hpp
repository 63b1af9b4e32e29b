// Copyright 2026 The coarsekit Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstddef>
#include <memory>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace coarsekit {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Raised on malformed group data: kind mismatch, out-of-range payload,
/// invalid generators.
class GroupError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised when a materialized set would pass the configured size cap.
/// Callers are expected to lower their horizon and retry.
class ResourceBudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Size caps for ball enumeration and basis-set materialization.
/// Defaults are 10^6 elements each; COARSEKIT_BALL_CAP and
/// COARSEKIT_SET_CAP override them.
struct ResourceCaps {
  std::size_t ball_size = 1'000'000;
  std::size_t set_size = 1'000'000;

  static ResourceCaps from_env();
};

/// Process-wide caps, read from the environment once.
const ResourceCaps& resource_caps();

/// Canonical encoding of a group element. The meaning of the coordinates
/// depends on the owning GroupSpec:
///   FreeAbelian(n)      n integers
///   Cyclic(m)           one residue in [0, m)
///   Heisenberg          (a, b, c) = entries (1,2), (2,3), (1,3)
///   DirectProduct       left coordinates followed by right coordinates
///   QuotientByLattice   reduced coset representative
/// Equal group elements have identical encodings, so ordering and hashing
/// work directly on the coordinates.
struct GroupElement {
  std::vector<Integer> coords;

  GroupElement() = default;
  explicit GroupElement(std::vector<Integer> c) : coords(std::move(c)) {}
  GroupElement(std::initializer_list<long long> c) {
    coords.reserve(c.size());
    for (long long v : c) coords.emplace_back(v);
  }

  friend bool operator==(const GroupElement&, const GroupElement&) = default;
  friend bool operator<(const GroupElement& a, const GroupElement& b) {
    return a.coords < b.coords;
  }
};

struct ElementHash {
  std::size_t operator()(const GroupElement& g) const noexcept;
};

/// Finite element sets are kept sorted by canonical encoding.
using ElementSet = std::set<GroupElement>;

enum class GroupKind {
  kFreeAbelian,
  kCyclic,
  kHeisenberg,
  kDirectProduct,
  kQuotientByLattice,
};

/// One of the concrete finitely generated groups together with a
/// generating set. Immutable; copies share structure.
class GroupSpec {
 public:
  static GroupSpec free_abelian(std::size_t rank);
  static GroupSpec integers() { return free_abelian(1); }
  static GroupSpec cyclic(const Integer& modulus);
  static GroupSpec heisenberg();
  static GroupSpec direct_product(const GroupSpec& left, const GroupSpec& right);
  /// Z^rank modulo the lattice spanned by `lattice` (rows of length rank).
  static GroupSpec quotient_by_lattice(std::size_t rank,
                                       const std::vector<std::vector<Integer>>& lattice);

  /// Same group, different generating set. Every generator must be a valid
  /// element.
  GroupSpec with_generators(std::vector<GroupElement> generators) const;

  GroupKind kind() const;
  /// Number of coordinates in an element encoding.
  std::size_t arity() const;
  const std::vector<GroupElement>& generators() const { return generators_; }
  /// Generators followed by their inverses, identity and repeats removed.
  /// This is the edge order of the Cayley graph.
  const std::vector<GroupElement>& symmetric_generators() const { return symmetric_; }

  // Kind-specific accessors; throw GroupError on the wrong kind.
  const Integer& modulus() const;
  std::size_t rank() const;
  const std::vector<std::vector<Integer>>& lattice_basis() const;
  const GroupSpec& left() const;
  const GroupSpec& right() const;

  bool contains(const GroupElement& g) const;
  /// Throws GroupError unless `g` is a valid canonical element.
  void validate(const GroupElement& g) const;
  /// Reduces raw coordinates to the canonical encoding (residues, coset
  /// representatives). Throws on arity mismatch.
  GroupElement canonical(std::vector<Integer> coords) const;

  GroupElement identity() const;
  GroupElement mul(const GroupElement& g, const GroupElement& h) const;
  GroupElement inv(const GroupElement& g) const;
  bool is_identity(const GroupElement& g) const;

  /// True when the group is finite (cyclic, or products/quotients thereof).
  bool is_finite() const;

  /// Short human-readable form, e.g. "Z^2", "Z/5", "H", "Z^2/<(2,0),(0,3)>".
  std::string describe() const;

  friend bool operator==(const GroupSpec& a, const GroupSpec& b);

  struct Node;

 private:
  explicit GroupSpec(std::shared_ptr<const Node> node);

  std::shared_ptr<const Node> node_;
  std::vector<GroupElement> generators_;
  std::vector<GroupElement> symmetric_;
};

// Free-function spellings of the group operations.
inline GroupElement identity(const GroupSpec& spec) { return spec.identity(); }
inline GroupElement mul(const GroupSpec& spec, const GroupElement& g, const GroupElement& h) {
  return spec.mul(g, h);
}
inline GroupElement inv(const GroupSpec& spec, const GroupElement& g) { return spec.inv(g); }

/// Elements expressible as products of at most `radius` generators or
/// inverses. Throws ResourceBudgetExceeded past `cap` elements.
ElementSet ball(const GroupSpec& spec, std::size_t radius,
                std::size_t cap = resource_caps().ball_size);

/// Breadth-first layers of the Cayley graph: layers[r] holds the elements
/// at word length exactly r, in discovery order.
std::vector<std::vector<GroupElement>> ball_layers(const GroupSpec& spec, std::size_t radius,
                                                   std::size_t cap = resource_caps().ball_size);

/// The fixed enumeration of the group: breadth-first discovery order from
/// the identity, generators before inverses. Returns at most `count`
/// elements (fewer for a finite group).
std::vector<GroupElement> enumerate_elements(const GroupSpec& spec, std::size_t count);

/// Image of a set under the group operation.
ElementSet product(const GroupSpec& spec, const ElementSet& a, const ElementSet& b,
                   std::size_t cap = resource_caps().set_size);
ElementSet inverse(const GroupSpec& spec, const ElementSet& a);
ElementSet left_translate(const GroupSpec& spec, const GroupElement& g, const ElementSet& a);
ElementSet right_translate(const GroupSpec& spec, const ElementSet& a, const GroupElement& g);

/// Text forms: "(a,b,...)" for vector encodings, a bare integer for Z,
/// "r mod k" for cyclic groups, "(left, right)" for direct products.
std::string format_element(const GroupSpec& spec, const GroupElement& g);
std::string format_set(const GroupSpec& spec, const ElementSet& s);
/// Inverse of format_element; also accepts a bare integer for rank-1
/// groups and a flat coordinate tuple for any kind. Throws GroupError.
GroupElement parse_element(const GroupSpec& spec, std::string_view text);

/// Exact text for rationals: integers unformatted, otherwise p/q.
std::string format_rational(const Rational& q);

/// Parses "Z", "Z^n", "Z/k", "H", "Z^n/<(..),(..)>", "G x G".
GroupSpec parse_group(std::string_view text);

}  // namespace coarsekit
