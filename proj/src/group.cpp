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

#include "coarsekit/group.hpp"
#include "coarsekit/text.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <functional>
#include <sstream>
#include <unordered_set>

namespace coarsekit {

namespace {

Integer floor_div(const Integer& a, const Integer& b) {
  Integer q = a / b;
  if (a % b != 0 && ((a < 0) != (b < 0))) --q;
  return q;
}

Integer floor_mod(const Integer& a, const Integer& m) {
  Integer r = a % m;
  if (r < 0) r += m;
  return r;
}

std::size_t env_size(const char* name, std::size_t fallback) {
  const char* raw = std::getenv(name);
  if (raw == nullptr || *raw == '\0') return fallback;
  char* end = nullptr;
  unsigned long long v = std::strtoull(raw, &end, 10);
  if (end == raw || *end != '\0' || v == 0) return fallback;
  return static_cast<std::size_t>(v);
}

// Row echelon basis of the lattice spanned by `rows`: strictly increasing
// pivot columns, positive pivots, zero rows dropped.
std::vector<std::vector<Integer>> echelon_basis(std::size_t rank,
                                                std::vector<std::vector<Integer>> rows) {
  std::vector<std::vector<Integer>> basis;
  for (std::size_t col = 0; col < rank; ++col) {
    while (true) {
      std::size_t best = rows.size();
      for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i][col] == 0) continue;
        if (best == rows.size() || abs(rows[i][col]) < abs(rows[best][col])) best = i;
      }
      if (best == rows.size()) break;
      bool reduced_any = false;
      for (std::size_t i = 0; i < rows.size(); ++i) {
        if (i == best || rows[i][col] == 0) continue;
        Integer q = floor_div(rows[i][col], rows[best][col]);
        for (std::size_t k = col; k < rank; ++k) rows[i][k] -= q * rows[best][k];
        reduced_any = true;
      }
      if (!reduced_any) {
        std::vector<Integer> pivot = std::move(rows[best]);
        rows.erase(rows.begin() + static_cast<std::ptrdiff_t>(best));
        if (pivot[col] < 0) {
          for (auto& v : pivot) v = -v;
        }
        basis.push_back(std::move(pivot));
        break;
      }
    }
    rows.erase(std::remove_if(rows.begin(), rows.end(),
                              [](const std::vector<Integer>& r) {
                                return std::all_of(r.begin(), r.end(),
                                                   [](const Integer& v) { return v == 0; });
                              }),
               rows.end());
  }
  return basis;
}

}  // namespace

namespace text {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

Integer parse_integer(std::string_view text) {
  text = trim(text);
  if (text.empty()) throw GroupError("empty integer literal");
  std::size_t i = (text[0] == '-' || text[0] == '+') ? 1 : 0;
  if (i == text.size()) throw GroupError("bad integer literal '" + std::string(text) + "'");
  for (std::size_t k = i; k < text.size(); ++k) {
    if (!std::isdigit(static_cast<unsigned char>(text[k]))) {
      throw GroupError("bad integer literal '" + std::string(text) + "'");
    }
  }
  Integer v(std::string(text.substr(i)));
  return text[0] == '-' ? Integer(-v) : v;
}

// Splits on `sep` at bracket depth zero.
std::vector<std::string_view> split_top(std::string_view s, std::string_view sep) {
  std::vector<std::string_view> parts;
  int level = 0;
  std::size_t start = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    char c = s[i];
    if (c == '(' || c == '<' || c == '[' || c == '{') ++level;
    if (c == ')' || c == '>' || c == ']' || c == '}') --level;
    if (level == 0 && s.substr(i, sep.size()) == sep) {
      parts.push_back(s.substr(start, i - start));
      i += sep.size() - 1;
      start = i + 1;
    }
  }
  parts.push_back(s.substr(start));
  return parts;
}

bool wrapped_in(std::string_view s, char open, char close) {
  if (s.size() < 2 || s.front() != open || s.back() != close) return false;
  int level = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == open) ++level;
    if (s[i] == close) --level;
    if (level == 0 && i + 1 < s.size()) return false;
  }
  return true;
}

}  // namespace text

namespace {

using text::parse_integer;
using text::split_top;
using text::trim;
using text::wrapped_in;

std::vector<Integer> parse_tuple(std::string_view text) {
  text = trim(text);
  if (wrapped_in(text, '(', ')')) text = text.substr(1, text.size() - 2);
  std::vector<Integer> out;
  for (auto part : split_top(text, ",")) out.push_back(parse_integer(part));
  return out;
}

}  // namespace

ResourceCaps ResourceCaps::from_env() {
  ResourceCaps caps;
  caps.ball_size = env_size("COARSEKIT_BALL_CAP", caps.ball_size);
  caps.set_size = env_size("COARSEKIT_SET_CAP", caps.set_size);
  return caps;
}

const ResourceCaps& resource_caps() {
  static const ResourceCaps caps = ResourceCaps::from_env();
  return caps;
}

std::size_t ElementHash::operator()(const GroupElement& g) const noexcept {
  std::size_t h = 0x9e3779b97f4a7c15ULL ^ g.coords.size();
  for (const auto& c : g.coords) {
    h ^= std::hash<Integer>{}(c) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  }
  return h;
}

struct GroupSpec::Node {
  GroupKind kind = GroupKind::kFreeAbelian;
  std::size_t rank = 0;
  Integer modulus;
  std::vector<std::vector<Integer>> lattice;
  std::vector<std::size_t> pivots;
  std::shared_ptr<const GroupSpec> left;
  std::shared_ptr<const GroupSpec> right;

  std::size_t arity() const {
    switch (kind) {
      case GroupKind::kFreeAbelian:
      case GroupKind::kQuotientByLattice:
        return rank;
      case GroupKind::kCyclic:
        return 1;
      case GroupKind::kHeisenberg:
        return 3;
      case GroupKind::kDirectProduct:
        return left->arity() + right->arity();
    }
    return 0;
  }
};

GroupSpec::GroupSpec(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

namespace {

std::vector<GroupElement> symmetrize(const GroupSpec& spec, const std::vector<GroupElement>& gens) {
  std::vector<GroupElement> out;
  auto push = [&](const GroupElement& g) {
    if (spec.is_identity(g)) return;
    if (std::find(out.begin(), out.end(), g) == out.end()) out.push_back(g);
  };
  for (const auto& g : gens) push(g);
  for (const auto& g : gens) push(spec.inv(g));
  return out;
}

GroupElement unit(std::size_t arity, std::size_t pos) {
  std::vector<Integer> c(arity);
  c[pos] = 1;
  return GroupElement(std::move(c));
}

}  // namespace

GroupSpec GroupSpec::free_abelian(std::size_t rank) {
  if (rank == 0) throw GroupError("free abelian rank must be positive");
  auto node = std::make_shared<Node>();
  node->kind = GroupKind::kFreeAbelian;
  node->rank = rank;
  GroupSpec spec(node);
  std::vector<GroupElement> gens;
  for (std::size_t i = 0; i < rank; ++i) gens.push_back(unit(rank, i));
  return spec.with_generators(std::move(gens));
}

GroupSpec GroupSpec::cyclic(const Integer& modulus) {
  if (modulus < 2) throw GroupError("cyclic modulus must be at least 2");
  auto node = std::make_shared<Node>();
  node->kind = GroupKind::kCyclic;
  node->modulus = modulus;
  GroupSpec spec(node);
  return spec.with_generators({GroupElement{1}});
}

GroupSpec GroupSpec::heisenberg() {
  auto node = std::make_shared<Node>();
  node->kind = GroupKind::kHeisenberg;
  GroupSpec spec(node);
  return spec.with_generators({GroupElement{1, 0, 0}, GroupElement{0, 1, 0}});
}

GroupSpec GroupSpec::direct_product(const GroupSpec& left, const GroupSpec& right) {
  auto node = std::make_shared<Node>();
  node->kind = GroupKind::kDirectProduct;
  node->left = std::make_shared<const GroupSpec>(left);
  node->right = std::make_shared<const GroupSpec>(right);
  GroupSpec spec(node);
  std::vector<GroupElement> gens;
  const GroupElement el = left.identity();
  const GroupElement er = right.identity();
  for (const auto& g : left.generators()) {
    GroupElement x = g;
    x.coords.insert(x.coords.end(), er.coords.begin(), er.coords.end());
    gens.push_back(std::move(x));
  }
  for (const auto& g : right.generators()) {
    GroupElement x = el;
    x.coords.insert(x.coords.end(), g.coords.begin(), g.coords.end());
    gens.push_back(std::move(x));
  }
  return spec.with_generators(std::move(gens));
}

GroupSpec GroupSpec::quotient_by_lattice(std::size_t rank,
                                         const std::vector<std::vector<Integer>>& lattice) {
  if (rank == 0) throw GroupError("quotient rank must be positive");
  for (const auto& row : lattice) {
    if (row.size() != rank) throw GroupError("lattice generator has wrong length");
  }
  auto node = std::make_shared<Node>();
  node->kind = GroupKind::kQuotientByLattice;
  node->rank = rank;
  node->lattice = echelon_basis(rank, lattice);
  for (const auto& row : node->lattice) {
    std::size_t p = 0;
    while (row[p] == 0) ++p;
    node->pivots.push_back(p);
  }
  GroupSpec spec(node);
  std::vector<GroupElement> gens;
  for (std::size_t i = 0; i < rank; ++i) {
    GroupElement g = spec.canonical(unit(rank, i).coords);
    if (!spec.is_identity(g) && std::find(gens.begin(), gens.end(), g) == gens.end()) {
      gens.push_back(std::move(g));
    }
  }
  if (gens.empty()) gens.push_back(spec.identity());
  return spec.with_generators(std::move(gens));
}

GroupSpec GroupSpec::with_generators(std::vector<GroupElement> generators) const {
  if (generators.empty()) throw GroupError("generating set must be nonempty");
  for (const auto& g : generators) validate(g);
  GroupSpec out(node_);
  out.generators_ = std::move(generators);
  out.symmetric_ = symmetrize(out, out.generators_);
  return out;
}

GroupKind GroupSpec::kind() const { return node_->kind; }
std::size_t GroupSpec::arity() const { return node_->arity(); }

const Integer& GroupSpec::modulus() const {
  if (node_->kind != GroupKind::kCyclic) throw GroupError("modulus() on a non-cyclic group");
  return node_->modulus;
}

std::size_t GroupSpec::rank() const {
  if (node_->kind != GroupKind::kFreeAbelian && node_->kind != GroupKind::kQuotientByLattice) {
    throw GroupError("rank() on a group without rank");
  }
  return node_->rank;
}

const std::vector<std::vector<Integer>>& GroupSpec::lattice_basis() const {
  if (node_->kind != GroupKind::kQuotientByLattice) throw GroupError("lattice_basis() on a non-quotient");
  return node_->lattice;
}

const GroupSpec& GroupSpec::left() const {
  if (node_->kind != GroupKind::kDirectProduct) throw GroupError("left() on a non-product");
  return *node_->left;
}

const GroupSpec& GroupSpec::right() const {
  if (node_->kind != GroupKind::kDirectProduct) throw GroupError("right() on a non-product");
  return *node_->right;
}

GroupElement GroupSpec::canonical(std::vector<Integer> coords) const {
  if (coords.size() != arity()) {
    throw GroupError("element arity " + std::to_string(coords.size()) + " does not match " +
                     describe());
  }
  switch (node_->kind) {
    case GroupKind::kFreeAbelian:
    case GroupKind::kHeisenberg:
      break;
    case GroupKind::kCyclic:
      coords[0] = floor_mod(coords[0], node_->modulus);
      break;
    case GroupKind::kDirectProduct: {
      const std::size_t split = node_->left->arity();
      std::vector<Integer> l(coords.begin(), coords.begin() + static_cast<std::ptrdiff_t>(split));
      std::vector<Integer> r(coords.begin() + static_cast<std::ptrdiff_t>(split), coords.end());
      GroupElement cl = node_->left->canonical(std::move(l));
      GroupElement cr = node_->right->canonical(std::move(r));
      coords = std::move(cl.coords);
      coords.insert(coords.end(), cr.coords.begin(), cr.coords.end());
      break;
    }
    case GroupKind::kQuotientByLattice:
      for (std::size_t i = 0; i < node_->lattice.size(); ++i) {
        const auto& row = node_->lattice[i];
        const std::size_t p = node_->pivots[i];
        Integer q = floor_div(coords[p], row[p]);
        if (q == 0) continue;
        for (std::size_t k = p; k < coords.size(); ++k) coords[k] -= q * row[k];
      }
      break;
  }
  return GroupElement(std::move(coords));
}

namespace {

// Canonical-form test without building a reduced copy where the encoding
// needs no reduction.
bool is_canonical(const GroupSpec& spec, const GroupElement& g) {
  switch (spec.kind()) {
    case GroupKind::kFreeAbelian:
    case GroupKind::kHeisenberg:
      return true;
    case GroupKind::kCyclic:
      return g.coords[0] >= 0 && g.coords[0] < spec.modulus();
    default:
      return spec.canonical(g.coords) == g;
  }
}

}  // namespace

bool GroupSpec::contains(const GroupElement& g) const {
  if (g.coords.size() != arity()) return false;
  return is_canonical(*this, g);
}

void GroupSpec::validate(const GroupElement& g) const {
  if (g.coords.size() != arity()) {
    throw GroupError("element of arity " + std::to_string(g.coords.size()) +
                     " does not belong to " + describe());
  }
  if (!is_canonical(*this, g)) {
    throw GroupError("element is not in canonical form for " + describe());
  }
}

GroupElement GroupSpec::identity() const {
  return GroupElement(std::vector<Integer>(arity()));
}

bool GroupSpec::is_identity(const GroupElement& g) const {
  return std::all_of(g.coords.begin(), g.coords.end(), [](const Integer& v) { return v == 0; });
}

GroupElement GroupSpec::mul(const GroupElement& g, const GroupElement& h) const {
  validate(g);
  validate(h);
  switch (node_->kind) {
    case GroupKind::kHeisenberg:
      return GroupElement({g.coords[0] + h.coords[0], g.coords[1] + h.coords[1],
                           g.coords[2] + h.coords[2] + g.coords[0] * h.coords[1]});
    case GroupKind::kDirectProduct: {
      const std::size_t split = node_->left->arity();
      auto part = [&](const GroupElement& x, bool first) {
        return first ? GroupElement(std::vector<Integer>(
                           x.coords.begin(), x.coords.begin() + static_cast<std::ptrdiff_t>(split)))
                     : GroupElement(std::vector<Integer>(
                           x.coords.begin() + static_cast<std::ptrdiff_t>(split), x.coords.end()));
      };
      GroupElement l = node_->left->mul(part(g, true), part(h, true));
      GroupElement r = node_->right->mul(part(g, false), part(h, false));
      l.coords.insert(l.coords.end(), r.coords.begin(), r.coords.end());
      return l;
    }
    default: {
      std::vector<Integer> c(g.coords.size());
      for (std::size_t i = 0; i < c.size(); ++i) c[i] = g.coords[i] + h.coords[i];
      return canonical(std::move(c));
    }
  }
}

GroupElement GroupSpec::inv(const GroupElement& g) const {
  validate(g);
  switch (node_->kind) {
    case GroupKind::kHeisenberg:
      return GroupElement({-g.coords[0], -g.coords[1], g.coords[0] * g.coords[1] - g.coords[2]});
    case GroupKind::kDirectProduct: {
      const std::size_t split = node_->left->arity();
      GroupElement l(std::vector<Integer>(g.coords.begin(),
                                          g.coords.begin() + static_cast<std::ptrdiff_t>(split)));
      GroupElement r(std::vector<Integer>(g.coords.begin() + static_cast<std::ptrdiff_t>(split),
                                          g.coords.end()));
      GroupElement out = node_->left->inv(l);
      GroupElement ri = node_->right->inv(r);
      out.coords.insert(out.coords.end(), ri.coords.begin(), ri.coords.end());
      return out;
    }
    default: {
      std::vector<Integer> c(g.coords.size());
      for (std::size_t i = 0; i < c.size(); ++i) c[i] = -g.coords[i];
      return canonical(std::move(c));
    }
  }
}

bool GroupSpec::is_finite() const {
  switch (node_->kind) {
    case GroupKind::kFreeAbelian:
    case GroupKind::kHeisenberg:
      return false;
    case GroupKind::kCyclic:
      return true;
    case GroupKind::kDirectProduct:
      return node_->left->is_finite() && node_->right->is_finite();
    case GroupKind::kQuotientByLattice:
      return node_->lattice.size() == node_->rank;
  }
  return false;
}

std::string GroupSpec::describe() const {
  switch (node_->kind) {
    case GroupKind::kFreeAbelian:
      return node_->rank == 1 ? "Z" : "Z^" + std::to_string(node_->rank);
    case GroupKind::kCyclic:
      return "Z/" + node_->modulus.str();
    case GroupKind::kHeisenberg:
      return "H";
    case GroupKind::kDirectProduct:
      return node_->left->describe() + " x " + node_->right->describe();
    case GroupKind::kQuotientByLattice: {
      std::string s = node_->rank == 1 ? "Z" : "Z^" + std::to_string(node_->rank);
      s += "/<";
      for (std::size_t i = 0; i < node_->lattice.size(); ++i) {
        if (i) s += ",";
        s += "(";
        for (std::size_t k = 0; k < node_->lattice[i].size(); ++k) {
          if (k) s += ",";
          s += node_->lattice[i][k].str();
        }
        s += ")";
      }
      return s + ">";
    }
  }
  return "?";
}

bool operator==(const GroupSpec& a, const GroupSpec& b) {
  if (a.generators_ != b.generators_) return false;
  if (a.node_ == b.node_) return true;
  const auto& x = *a.node_;
  const auto& y = *b.node_;
  if (x.kind != y.kind) return false;
  switch (x.kind) {
    case GroupKind::kFreeAbelian:
      return x.rank == y.rank;
    case GroupKind::kCyclic:
      return x.modulus == y.modulus;
    case GroupKind::kHeisenberg:
      return true;
    case GroupKind::kDirectProduct:
      return *x.left == *y.left && *x.right == *y.right;
    case GroupKind::kQuotientByLattice:
      return x.rank == y.rank && x.lattice == y.lattice;
  }
  return false;
}

std::vector<std::vector<GroupElement>> ball_layers(const GroupSpec& spec, std::size_t radius,
                                                   std::size_t cap) {
  std::vector<std::vector<GroupElement>> layers;
  std::unordered_set<GroupElement, ElementHash> seen;
  GroupElement e = spec.identity();
  seen.insert(e);
  layers.push_back({e});
  for (std::size_t r = 1; r <= radius; ++r) {
    std::vector<GroupElement> next;
    for (const auto& g : layers.back()) {
      for (const auto& s : spec.symmetric_generators()) {
        GroupElement h = spec.mul(g, s);
        if (seen.insert(h).second) {
          next.push_back(std::move(h));
          if (seen.size() > cap) {
            throw ResourceBudgetExceeded("ball of radius " + std::to_string(radius) + " in " +
                                         spec.describe() + " exceeds " + std::to_string(cap) +
                                         " elements");
          }
        }
      }
    }
    if (next.empty()) break;
    layers.push_back(std::move(next));
  }
  return layers;
}

ElementSet ball(const GroupSpec& spec, std::size_t radius, std::size_t cap) {
  ElementSet out;
  for (auto& layer : ball_layers(spec, radius, cap)) {
    for (auto& g : layer) out.insert(std::move(g));
  }
  return out;
}

std::vector<GroupElement> enumerate_elements(const GroupSpec& spec, std::size_t count) {
  std::vector<GroupElement> order;
  std::unordered_set<GroupElement, ElementHash> seen;
  if (count == 0) return order;
  order.push_back(spec.identity());
  seen.insert(order.back());
  for (std::size_t head = 0; head < order.size() && order.size() < count; ++head) {
    for (const auto& s : spec.symmetric_generators()) {
      GroupElement h = spec.mul(order[head], s);
      if (seen.insert(h).second) {
        order.push_back(std::move(h));
        if (order.size() == count) break;
      }
    }
  }
  return order;
}

ElementSet product(const GroupSpec& spec, const ElementSet& a, const ElementSet& b,
                   std::size_t cap) {
  ElementSet out;
  for (const auto& x : a) {
    for (const auto& y : b) {
      out.insert(spec.mul(x, y));
      if (out.size() > cap) {
        throw ResourceBudgetExceeded("set product exceeds " + std::to_string(cap) + " elements");
      }
    }
  }
  return out;
}

ElementSet inverse(const GroupSpec& spec, const ElementSet& a) {
  ElementSet out;
  for (const auto& x : a) out.insert(spec.inv(x));
  return out;
}

ElementSet left_translate(const GroupSpec& spec, const GroupElement& g, const ElementSet& a) {
  ElementSet out;
  for (const auto& x : a) out.insert(spec.mul(g, x));
  return out;
}

ElementSet right_translate(const GroupSpec& spec, const ElementSet& a, const GroupElement& g) {
  ElementSet out;
  for (const auto& x : a) out.insert(spec.mul(x, g));
  return out;
}

std::string format_element(const GroupSpec& spec, const GroupElement& g) {
  switch (spec.kind()) {
    case GroupKind::kCyclic:
      return g.coords.at(0).str() + " mod " + spec.modulus().str();
    case GroupKind::kDirectProduct: {
      const std::size_t split = spec.left().arity();
      GroupElement l(std::vector<Integer>(g.coords.begin(),
                                          g.coords.begin() + static_cast<std::ptrdiff_t>(split)));
      GroupElement r(std::vector<Integer>(g.coords.begin() + static_cast<std::ptrdiff_t>(split),
                                          g.coords.end()));
      return "(" + format_element(spec.left(), l) + ", " + format_element(spec.right(), r) + ")";
    }
    default:
      break;
  }
  if (g.coords.size() == 1) return g.coords[0].str();
  std::string s = "(";
  for (std::size_t i = 0; i < g.coords.size(); ++i) {
    if (i) s += ",";
    s += g.coords[i].str();
  }
  return s + ")";
}

std::string format_set(const GroupSpec& spec, const ElementSet& s) {
  std::string out = "{";
  bool first = true;
  for (const auto& g : s) {
    if (!first) out += ", ";
    first = false;
    out += format_element(spec, g);
  }
  return out + "}";
}

GroupElement parse_element(const GroupSpec& spec, std::string_view text) {
  text = trim(text);
  if (text.empty()) throw GroupError("empty element literal");
  if (spec.kind() == GroupKind::kCyclic) {
    auto parts = split_top(text, " mod ");
    if (parts.size() == 2) {
      if (parse_integer(parts[1]) != spec.modulus()) {
        throw GroupError("element modulus does not match " + spec.describe());
      }
      return spec.canonical({parse_integer(parts[0])});
    }
    return spec.canonical({parse_integer(text)});
  }
  if (spec.kind() == GroupKind::kDirectProduct && wrapped_in(text, '(', ')')) {
    auto parts = split_top(text.substr(1, text.size() - 2), ",");
    if (parts.size() == 2) {
      GroupElement l = parse_element(spec.left(), parts[0]);
      GroupElement r = parse_element(spec.right(), parts[1]);
      l.coords.insert(l.coords.end(), r.coords.begin(), r.coords.end());
      return l;
    }
  }
  // Flat coordinate tuple; residues and coset representatives are reduced.
  return spec.canonical(parse_tuple(text));
}

std::string format_rational(const Rational& q) {
  using boost::multiprecision::denominator;
  using boost::multiprecision::numerator;
  if (denominator(q) == 1) return numerator(q).str();
  return numerator(q).str() + "/" + denominator(q).str();
}

GroupSpec parse_group(std::string_view text) {
  text = trim(text);
  auto factors = split_top(text, " x ");
  if (factors.size() > 1) {
    GroupSpec acc = parse_group(factors[0]);
    for (std::size_t i = 1; i < factors.size(); ++i) {
      acc = GroupSpec::direct_product(acc, parse_group(factors[i]));
    }
    return acc;
  }
  if (wrapped_in(text, '(', ')')) return parse_group(text.substr(1, text.size() - 2));
  if (text == "H") return GroupSpec::heisenberg();
  if (text.empty() || text[0] != 'Z') throw GroupError("unknown group '" + std::string(text) + "'");
  std::string_view rest = text.substr(1);
  std::size_t rank = 1;
  if (!rest.empty() && rest[0] == '^') {
    std::size_t end = 1;
    while (end < rest.size() && std::isdigit(static_cast<unsigned char>(rest[end]))) ++end;
    if (end == 1) throw GroupError("bad rank in '" + std::string(text) + "'");
    rank = std::stoul(std::string(rest.substr(1, end - 1)));
    rest = rest.substr(end);
  }
  if (rest.empty()) return GroupSpec::free_abelian(rank);
  if (rest[0] != '/') throw GroupError("unknown group '" + std::string(text) + "'");
  rest = trim(rest.substr(1));
  if (wrapped_in(rest, '<', '>')) {
    std::vector<std::vector<Integer>> lattice;
    for (auto part : split_top(rest.substr(1, rest.size() - 2), ",")) {
      if (trim(part).empty()) continue;
      lattice.push_back(parse_tuple(part));
    }
    return GroupSpec::quotient_by_lattice(rank, lattice);
  }
  if (rank != 1) throw GroupError("use Z^n/<...> for quotients of higher rank");
  return GroupSpec::cyclic(parse_integer(rest));
}

}  // namespace coarsekit
