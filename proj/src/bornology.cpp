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

#include "coarsekit/bornology.hpp"

#include <algorithm>
#include <bit>
#include <random>
#include <stdexcept>
#include <unordered_map>

#include "coarsekit/text.hpp"

namespace coarsekit {

// --- set descriptors -------------------------------------------------------

SetDescriptor SetDescriptor::explicit_set(ElementSet elements) {
  SetDescriptor d;
  d.kind = Kind::kExplicit;
  d.elements = std::move(elements);
  return d;
}

SetDescriptor SetDescriptor::geometric_seed(const Integer& base, std::size_t length_cap) {
  if (base < 2) throw std::invalid_argument("geometric seed base must be >= 2");
  if (length_cap < 1) throw std::invalid_argument("geometric seed length cap must be >= 1");
  SetDescriptor d;
  d.kind = Kind::kGeometricSeed;
  d.base = base;
  d.length_cap = length_cap;
  return d;
}

ElementSet SetDescriptor::materialize(const GroupSpec& group) const {
  if (kind == Kind::kExplicit) {
    for (const auto& g : elements) group.validate(g);
    return elements;
  }
  if (group.kind() != GroupKind::kFreeAbelian || group.rank() != 1) {
    throw GroupError("geometric seeds live in Z, not " + group.describe());
  }
  ElementSet out{GroupElement({0})};
  Integer power = 1;
  for (std::size_t i = 1; i <= length_cap; ++i) {
    power *= base;
    out.insert(GroupElement(std::vector<Integer>{power}));
  }
  return out;
}

std::string SetDescriptor::describe(const GroupSpec& group) const {
  if (kind == Kind::kGeometricSeed) {
    return "geometric(" + base.str() + "," + std::to_string(length_cap) + ")";
  }
  return format_set(group, elements);
}

SetDescriptor parse_set_descriptor(const GroupSpec& group, std::string_view src) {
  using text::parse_integer;
  using text::split_top;
  using text::trim;
  using text::wrapped_in;
  std::string_view s = trim(src);
  auto call_args = [&](std::string_view name) -> std::optional<std::vector<std::string_view>> {
    if (s.substr(0, name.size()) != name) return std::nullopt;
    std::string_view rest = trim(s.substr(name.size()));
    if (!wrapped_in(rest, '(', ')')) throw GroupError("expected " + std::string(name) + "(...)");
    return split_top(rest.substr(1, rest.size() - 2), ",");
  };
  if (auto args = call_args("geometric")) {
    if (args->size() != 2) throw GroupError("geometric(base, length) takes two arguments");
    Integer base = parse_integer((*args)[0]);
    Integer len = parse_integer((*args)[1]);
    if (base < 2 || len < 1 || len > 4096) throw GroupError("geometric seed out of range");
    SetDescriptor d = SetDescriptor::geometric_seed(base, static_cast<std::size_t>(len));
    d.materialize(group);
    return d;
  }
  if (auto args = call_args("range")) {
    if (args->size() != 2 && args->size() != 3) throw GroupError("range(lo, hi[, step])");
    if (group.arity() != 1 || group.kind() != GroupKind::kFreeAbelian) {
      throw GroupError("range(...) needs the group Z");
    }
    Integer lo = parse_integer((*args)[0]);
    Integer hi = parse_integer((*args)[1]);
    Integer step = args->size() == 3 ? parse_integer((*args)[2]) : Integer(1);
    if (step < 1) throw GroupError("range step must be positive");
    if (hi >= lo && (hi - lo) / step >= resource_caps().set_size) {
      throw ResourceBudgetExceeded("range literal is past the set cap");
    }
    ElementSet out;
    for (Integer v = lo; v <= hi; v += step) out.insert(GroupElement(std::vector<Integer>{v}));
    return SetDescriptor::explicit_set(std::move(out));
  }
  if (wrapped_in(s, '{', '}')) {
    std::string_view body = trim(s.substr(1, s.size() - 2));
    ElementSet out;
    if (!body.empty()) {
      for (auto part : split_top(body, ",")) out.insert(parse_element(group, part));
    }
    return SetDescriptor::explicit_set(std::move(out));
  }
  throw GroupError("unrecognized set literal '" + std::string(s) + "'");
}

// --- basis state -----------------------------------------------------------

std::string to_string(BasisKind kind) {
  switch (kind) {
    case BasisKind::kMinimal:
      return "minimal";
    case BasisKind::kFull:
      return "full";
    case BasisKind::kMetricBalls:
      return "metric-balls";
    case BasisKind::kGenerated:
      return "generated";
  }
  return "?";
}

struct BornologyBasis::State {
  BasisKind kind = BasisKind::kMinimal;
  GroupSpec group;
  MetricPtr metric;
  std::vector<SetDescriptor> seeds;
  std::size_t depth_cap = 0;

  std::mutex mutex;

  // Minimal: prefix of the fixed enumeration.
  std::vector<GroupElement> order;
  std::unordered_map<GroupElement, std::size_t, ElementHash> order_index;
  bool order_complete = false;

  // Full.
  std::unique_ptr<WordNorm> word_norm;

  // Generated: entries sorted by level, levels built so far.
  std::vector<ElementSet> atoms;
  std::deque<ElementSet> sets;
  std::vector<std::size_t> levels;
  std::size_t levels_built = 0;

  explicit State(GroupSpec g) : group(std::move(g)) {}

  // Grows the enumeration prefix to at least `count` elements when the
  // group has that many.
  void ensure_order_locked(std::size_t count) {
    if (order.size() >= count || order_complete) return;
    std::size_t want = std::max(count, 2 * order.size());
    if (want > resource_caps().ball_size) want = std::max(count, resource_caps().ball_size);
    order = enumerate_elements(group, want);
    if (order.size() < want) order_complete = true;
    order_index.clear();
    for (std::size_t i = 0; i < order.size(); ++i) order_index.emplace(order[i], i);
  }

  // Position of g in the fixed enumeration, growing the prefix as needed.
  std::optional<std::size_t> order_position_locked(const GroupElement& g) {
    while (true) {
      auto it = order_index.find(g);
      if (it != order_index.end()) return it->second;
      if (order_complete || order.size() >= resource_caps().ball_size) return std::nullopt;
      ensure_order_locked(std::max<std::size_t>(16, 2 * order.size()));
    }
  }

  void build_atoms_locked() {
    if (!atoms.empty()) return;
    std::vector<ElementSet> raw;
    for (const auto& d : seeds) raw.push_back(d.materialize(group));
    const std::size_t n = raw.size();
    for (std::size_t i = 0; i < n; ++i) raw.push_back(inverse(group, raw[i]));
    for (const auto& s : group.symmetric_generators()) raw.push_back(ElementSet{s});
    raw.push_back(ElementSet{group.identity()});
    for (auto& a : raw) {
      if (std::find(atoms.begin(), atoms.end(), a) == atoms.end()) atoms.push_back(std::move(a));
    }
  }

  static bool complexity_less(const ElementSet& a, const ElementSet& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  }

  // Builds Generated levels up to `level` (clipped to the depth cap).
  void ensure_levels_locked(std::size_t level) {
    level = std::min(level, depth_cap);
    if (levels_built >= level) return;
    build_atoms_locked();
    std::set<ElementSet> seen(sets.begin(), sets.end());
    while (levels_built < level) {
      std::vector<ElementSet> fresh;
      if (levels_built == 0) {
        for (const auto& a : atoms) {
          if (seen.insert(a).second) fresh.push_back(a);
        }
      } else {
        const std::size_t existing = sets.size();
        for (std::size_t i = 0; i < existing; ++i) {
          for (const auto& a : atoms) {
            ElementSet p = product(group, sets[i], a, resource_caps().set_size);
            if (seen.insert(p).second) fresh.push_back(std::move(p));
          }
        }
      }
      std::sort(fresh.begin(), fresh.end(), complexity_less);
      ++levels_built;
      for (auto& f : fresh) {
        sets.push_back(std::move(f));
        levels.push_back(levels_built);
      }
    }
  }

  // Number of Generated entries with level <= `level`.
  std::size_t generated_prefix_locked(std::size_t level) {
    ensure_levels_locked(level);
    return static_cast<std::size_t>(
        std::upper_bound(levels.begin(), levels.end(), std::min(level, depth_cap)) -
        levels.begin());
  }

  Distance word_length(const GroupElement& g) {
    if (!word_norm) word_norm = std::make_unique<WordNorm>(group);
    return word_norm->norm(g);
  }
};

BornologyBasis::BornologyBasis(std::shared_ptr<State> state) : state_(std::move(state)) {}

BornologyBasis BornologyBasis::minimal(GroupSpec group) {
  auto st = std::make_shared<State>(std::move(group));
  st->kind = BasisKind::kMinimal;
  return BornologyBasis(st);
}

BornologyBasis BornologyBasis::full(GroupSpec group) {
  auto st = std::make_shared<State>(std::move(group));
  st->kind = BasisKind::kFull;
  return BornologyBasis(st);
}

BornologyBasis BornologyBasis::metric_balls(MetricPtr metric) {
  if (!metric) throw std::invalid_argument("metric_balls needs a metric");
  auto st = std::make_shared<State>(metric->group());
  st->kind = BasisKind::kMetricBalls;
  st->metric = std::move(metric);
  return BornologyBasis(st);
}

BornologyBasis BornologyBasis::generated(GroupSpec group, std::vector<SetDescriptor> seeds,
                                         std::size_t depth_cap) {
  if (depth_cap < 1) throw std::invalid_argument("generated basis depth cap must be >= 1");
  for (const auto& d : seeds) d.materialize(group);
  auto st = std::make_shared<State>(std::move(group));
  st->kind = BasisKind::kGenerated;
  st->seeds = std::move(seeds);
  st->depth_cap = depth_cap;
  return BornologyBasis(st);
}

BasisKind BornologyBasis::kind() const { return state_->kind; }
const GroupSpec& BornologyBasis::group() const { return state_->group; }
const MetricPtr& BornologyBasis::metric() const { return state_->metric; }
const std::vector<SetDescriptor>& BornologyBasis::seeds() const { return state_->seeds; }
std::size_t BornologyBasis::depth_cap() const { return state_->depth_cap; }

std::string BornologyBasis::describe() const {
  const State& s = *state_;
  switch (s.kind) {
    case BasisKind::kMinimal:
      return "minimal on " + s.group.describe();
    case BasisKind::kFull:
      return "full on " + s.group.describe();
    case BasisKind::kMetricBalls:
      return "balls of " + s.metric->describe();
    case BasisKind::kGenerated: {
      std::string out = "generated by ";
      for (std::size_t i = 0; i < s.seeds.size(); ++i) {
        if (i) out += ", ";
        out += s.seeds[i].describe(s.group);
      }
      if (s.seeds.empty()) out += "nothing";
      return out + " in " + s.group.describe() + ", levels <= " + std::to_string(s.depth_cap);
    }
  }
  return "?";
}

std::optional<ElementSet> BornologyBasis::entry(std::size_t p) const {
  State& s = *state_;
  std::lock_guard lock(s.mutex);
  switch (s.kind) {
    case BasisKind::kMinimal:
      s.ensure_order_locked(p + 1);
      if (p >= s.order.size()) return std::nullopt;
      return ElementSet{s.order[p]};
    case BasisKind::kFull:
      if (!s.word_norm) s.word_norm = std::make_unique<WordNorm>(s.group);
      return s.word_norm->ball(p + 1);
    case BasisKind::kMetricBalls:
      return s.metric->open_ball_at_identity(Rational(static_cast<long long>(p + 2)));
    case BasisKind::kGenerated: {
      while (s.sets.size() <= p && s.levels_built < s.depth_cap) {
        s.ensure_levels_locked(s.levels_built + 1);
      }
      if (p < s.sets.size()) return s.sets[p];
      const std::size_t i = p - s.sets.size();
      s.ensure_order_locked(i + 1);
      if (i >= s.order.size()) return std::nullopt;
      return ElementSet{s.order[i]};
    }
  }
  return std::nullopt;
}

std::size_t BornologyBasis::level(std::size_t p) const {
  State& s = *state_;
  switch (s.kind) {
    case BasisKind::kMinimal:
    case BasisKind::kMetricBalls:
      return p + 1;
    case BasisKind::kFull:
      return 1;
    case BasisKind::kGenerated: {
      std::lock_guard lock(s.mutex);
      while (s.sets.size() <= p && s.levels_built < s.depth_cap) {
        s.ensure_levels_locked(s.levels_built + 1);
      }
      if (p < s.levels.size()) return s.levels[p];
      const std::size_t i = p - s.levels.size();
      s.ensure_order_locked(i + 1);
      if (i >= s.order.size()) throw std::out_of_range("position past the generated stream");
      return s.depth_cap + 1 + i;
    }
  }
  return 0;
}

bool BornologyBasis::entry_contains(std::size_t p, const GroupElement& g) const {
  State& s = *state_;
  switch (s.kind) {
    case BasisKind::kMinimal: {
      std::lock_guard lock(s.mutex);
      s.ensure_order_locked(p + 1);
      return p < s.order.size() && s.order[p] == g;
    }
    case BasisKind::kFull: {
      std::lock_guard lock(s.mutex);
      return s.word_length(g) <= Distance(static_cast<long long>(p + 1));
    }
    case BasisKind::kMetricBalls:
      return s.metric->distance(s.group.identity(), g) < Distance(static_cast<long long>(p + 2));
    case BasisKind::kGenerated: {
      auto e = entry(p);
      return e && e->contains(g);
    }
  }
  return false;
}

std::optional<std::size_t> BornologyBasis::first_position(const GroupElement& g) const {
  State& s = *state_;
  s.group.validate(g);
  switch (s.kind) {
    case BasisKind::kMinimal: {
      std::lock_guard lock(s.mutex);
      return s.order_position_locked(g);
    }
    case BasisKind::kFull:
    case BasisKind::kMetricBalls: {
      Distance r;
      if (s.kind == BasisKind::kFull) {
        std::lock_guard lock(s.mutex);
        r = s.word_length(g);
      } else {
        r = s.metric->distance(s.group.identity(), g);
      }
      if (!r.finite()) return std::nullopt;
      // Full: radius p+1 >= r. Balls: p+2 > r. Both give floor(r) - 1.
      const Integer fl = numerator(r.value()) / denominator(r.value());
      return static_cast<std::size_t>(std::max<Integer>(fl - 1, 0));
    }
    case BasisKind::kGenerated: {
      const std::size_t n = generated_prefix(s.depth_cap);
      for (std::size_t p = 0; p < n; ++p) {
        if (generated_entry(p).contains(g)) return p;
      }
      std::lock_guard lock(s.mutex);
      auto i = s.order_position_locked(g);
      if (!i) return std::nullopt;
      return n + *i;
    }
  }
  return std::nullopt;
}

std::size_t BornologyBasis::generated_prefix(std::size_t level) const {
  State& s = *state_;
  if (s.kind != BasisKind::kGenerated) throw std::logic_error("not a generated basis");
  std::lock_guard lock(s.mutex);
  return s.generated_prefix_locked(level);
}

const ElementSet& BornologyBasis::generated_entry(std::size_t p) const {
  State& s = *state_;
  if (s.kind != BasisKind::kGenerated) throw std::logic_error("not a generated basis");
  std::lock_guard lock(s.mutex);
  while (s.sets.size() <= p && s.levels_built < s.depth_cap) {
    s.ensure_levels_locked(s.levels_built + 1);
  }
  return s.sets.at(p);
}

std::vector<ElementSet> enumerate_basis(const BornologyBasis& basis, std::size_t count) {
  if (count < 1) throw std::invalid_argument("enumerate_basis needs count >= 1");
  std::vector<ElementSet> out;
  for (std::size_t p = 0; p < count; ++p) {
    auto e = basis.entry(p);
    if (!e) break;
    out.push_back(std::move(*e));
  }
  return out;
}

// --- membership ------------------------------------------------------------

std::string to_string(MembershipStatus status) {
  return status == MembershipStatus::kMember ? "Member" : "NotCoveredAtDepth";
}

namespace {

// Coverage masks over the query elements.
class Mask {
 public:
  explicit Mask(std::size_t bits = 0) : words_((bits + 63) / 64, 0) {}
  void set(std::size_t i) { words_[i / 64] |= std::uint64_t{1} << (i % 64); }
  bool test(std::size_t i) const { return (words_[i / 64] >> (i % 64)) & 1U; }
  std::size_t count() const {
    std::size_t c = 0;
    for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
    return c;
  }
  bool none() const {
    return std::all_of(words_.begin(), words_.end(), [](std::uint64_t w) { return w == 0; });
  }
  bool subset_of(const Mask& o) const {
    for (std::size_t i = 0; i < words_.size(); ++i) {
      if (words_[i] & ~o.words_[i]) return false;
    }
    return true;
  }
  // Bits of *this not in o.
  Mask minus(const Mask& o) const {
    Mask r = *this;
    for (std::size_t i = 0; i < words_.size(); ++i) r.words_[i] &= ~o.words_[i];
    return r;
  }
  std::size_t overlap(const Mask& o) const {
    std::size_t c = 0;
    for (std::size_t i = 0; i < words_.size(); ++i) {
      c += static_cast<std::size_t>(std::popcount(words_[i] & o.words_[i]));
    }
    return c;
  }
  std::size_t first() const {
    for (std::size_t i = 0; i < words_.size(); ++i) {
      if (words_[i]) return i * 64 + static_cast<std::size_t>(std::countr_zero(words_[i]));
    }
    return words_.size() * 64;
  }
  friend bool operator==(const Mask&, const Mask&) = default;

 private:
  std::vector<std::uint64_t> words_;
};

struct Candidate {
  std::size_t position;
  Mask mask;
};

// Drops empty masks and masks contained in another candidate's mask
// (the earlier position wins ties).
std::vector<Candidate> prune_dominated(std::vector<Candidate> in) {
  std::vector<Candidate> out;
  for (std::size_t i = 0; i < in.size(); ++i) {
    if (in[i].mask.none()) continue;
    bool dominated = false;
    for (std::size_t j = 0; j < in.size() && !dominated; ++j) {
      if (i == j || in[j].mask.none()) continue;
      if (in[i].mask.subset_of(in[j].mask)) {
        dominated = !(in[j].mask == in[i].mask) || j < i;
      }
    }
    if (!dominated) out.push_back(std::move(in[i]));
  }
  return out;
}

bool search(const std::vector<Candidate>& cands, const Mask& uncovered, std::size_t budget,
            std::size_t max_mask, std::vector<std::size_t>& chosen) {
  if (uncovered.none()) return true;
  if (budget == 0) return false;
  const std::size_t left = uncovered.count();
  if (budget * max_mask < left) return false;
  const std::size_t pivot = uncovered.first();
  for (std::size_t i = 0; i < cands.size(); ++i) {
    if (!cands[i].mask.test(pivot)) continue;
    chosen.push_back(i);
    if (search(cands, uncovered.minus(cands[i].mask), budget - 1, max_mask, chosen)) return true;
    chosen.pop_back();
  }
  return false;
}

// Cover of all `bits` query elements by at most `budget` candidates.
std::optional<std::vector<std::size_t>> find_cover(std::vector<Candidate> cands,
                                                   std::size_t bits, std::size_t budget) {
  Mask all(bits);
  for (std::size_t i = 0; i < bits; ++i) all.set(i);
  cands = prune_dominated(std::move(cands));

  // Greedy pass.
  {
    Mask uncovered = all;
    std::vector<std::size_t> picked;
    while (!uncovered.none() && picked.size() < budget) {
      std::size_t best = cands.size();
      std::size_t gain = 0;
      for (std::size_t i = 0; i < cands.size(); ++i) {
        std::size_t g = cands[i].mask.overlap(uncovered);
        if (g > gain) {
          gain = g;
          best = i;
        }
      }
      if (best == cands.size()) break;
      picked.push_back(cands[best].position);
      uncovered = uncovered.minus(cands[best].mask);
    }
    if (uncovered.none()) {
      std::sort(picked.begin(), picked.end());
      return picked;
    }
  }

  std::size_t max_mask = 0;
  for (const auto& c : cands) max_mask = std::max(max_mask, c.mask.count());
  std::vector<std::size_t> chosen;
  if (!search(cands, all, budget, max_mask, chosen)) return std::nullopt;
  std::vector<std::size_t> out;
  for (auto i : chosen) out.push_back(cands[i].position);
  std::sort(out.begin(), out.end());
  return out;
}

std::string truncation_note(const BornologyBasis& b, std::size_t depth) {
  std::string note = b.describe() + "; covers of <= " + std::to_string(depth) +
                     " entries of level <= " + std::to_string(depth);
  return note;
}

// Cover search without the singleton shortcut.
MembershipVerdict cover_search(const BornologyBasis& b, const ElementSet& query,
                               std::size_t depth) {
  MembershipVerdict v;
  v.depth_examined = depth;
  v.truncation = truncation_note(b, depth);
  if (query.empty()) {
    v.status = MembershipStatus::kMember;
    return v;
  }
  const GroupSpec& G = b.group();
  for (const auto& g : query) G.validate(g);
  switch (b.kind()) {
    case BasisKind::kMinimal: {
      // Entries of level <= depth are the first `depth` singletons.
      std::vector<std::size_t> cover;
      for (const auto& g : query) {
        auto p = b.first_position(g);
        if (!p || *p >= depth) return v;
        cover.push_back(*p);
      }
      std::sort(cover.begin(), cover.end());
      v.status = MembershipStatus::kMember;
      v.cover = std::move(cover);
      return v;
    }
    case BasisKind::kFull:
    case BasisKind::kMetricBalls: {
      // Nested entries: the smallest one holding every query element.
      std::size_t need = 0;
      for (const auto& g : query) {
        auto p = b.first_position(g);
        if (!p) return v;
        need = std::max(need, *p);
      }
      if (b.level(need) > depth) return v;
      v.status = MembershipStatus::kMember;
      v.cover = {need};
      return v;
    }
    case BasisKind::kGenerated: {
      const std::size_t lvl = std::min(depth, b.depth_cap());
      std::vector<GroupElement> elems(query.begin(), query.end());
      std::vector<Candidate> cands;
      const std::size_t n = b.generated_prefix(lvl);
      for (std::size_t p = 0; p < n; ++p) {
        const ElementSet& e = b.generated_entry(p);
        Candidate c{p, Mask(elems.size())};
        for (std::size_t i = 0; i < elems.size(); ++i) {
          if (e.contains(elems[i])) c.mask.set(i);
        }
        cands.push_back(std::move(c));
      }
      // Singletons past the level cap.
      for (std::size_t p = b.generated_prefix(b.depth_cap()); depth > b.depth_cap(); ++p) {
        auto e = b.entry(p);
        if (!e || b.level(p) > depth) break;
        Candidate c{p, Mask(elems.size())};
        for (std::size_t i = 0; i < elems.size(); ++i) {
          if (e->contains(elems[i])) c.mask.set(i);
        }
        cands.push_back(std::move(c));
      }
      auto cover = find_cover(std::move(cands), elems.size(), depth);
      if (!cover) return v;
      v.status = MembershipStatus::kMember;
      v.cover = std::move(*cover);
      return v;
    }
  }
  return v;
}

}  // namespace

MembershipVerdict member(const BornologyBasis& b, const ElementSet& query, std::size_t depth) {
  if (depth < 1) throw std::invalid_argument("member needs depth >= 1");
  if (query.size() == 1) {
    // Axiom 1: the first entry holding the element.
    const GroupElement& g = *query.begin();
    b.group().validate(g);
    MembershipVerdict v;
    v.depth_examined = depth;
    v.truncation = b.describe() + "; singleton";
    std::optional<std::size_t> pos = b.first_position(g);
    if (pos) {
      v.status = MembershipStatus::kMember;
      v.cover = {*pos};
    }
    return v;
  }
  return cover_search(b, query, depth);
}

std::optional<std::size_t> minimal_cover_depth(const BornologyBasis& b, const ElementSet& query,
                                                std::size_t max_depth) {
  for (std::size_t d = 1; d <= max_depth; ++d) {
    if (cover_search(b, query, d).is_member()) return d;
  }
  return std::nullopt;
}

ElementSet basis_ops(const GroupSpec& group, const ElementSet& b1, const ElementSet& b2,
                     BasisOp op, const std::optional<GroupElement>& g) {
  for (const auto& x : b1) group.validate(x);
  switch (op) {
    case BasisOp::kProduct:
      for (const auto& x : b2) group.validate(x);
      return product(group, b1, b2, resource_caps().set_size);
    case BasisOp::kUnion: {
      for (const auto& x : b2) group.validate(x);
      ElementSet out = b1;
      out.insert(b2.begin(), b2.end());
      if (out.size() > resource_caps().set_size) {
        throw ResourceBudgetExceeded("set union exceeds the set cap");
      }
      return out;
    }
    case BasisOp::kInverse:
      return inverse(group, b1);
    case BasisOp::kLeftTranslate:
    case BasisOp::kRightTranslate:
      if (!g) throw std::invalid_argument("translation needs an element");
      group.validate(*g);
      return op == BasisOp::kLeftTranslate ? left_translate(group, *g, b1)
                                           : right_translate(group, b1, *g);
  }
  return {};
}

// --- metric from a basis ---------------------------------------------------

BasisChainMetric::BasisChainMetric(BornologyBasis basis, std::size_t n_cap)
    : Metric(basis.group()), basis_(std::move(basis)), n_cap_(n_cap) {
  if (!basis_.entry(0)) throw std::invalid_argument("metric_from_basis needs a nonempty stream");
  const GroupElement e = group().identity();
  first_level_.emplace(e, 0);
  sizes_.push_back(1);
}

void BasisChainMetric::extend_locked() const {
  const std::size_t n = sizes_.size();  // building C_n
  const GroupSpec& G = group();
  ElementSet D{G.identity()};
  for (std::size_t p = 0; p <= n; ++p) {
    auto entry = basis_.entry(p);
    if (!entry) break;
    for (const auto& x : *entry) {
      D.insert(x);
      D.insert(G.inv(x));
    }
  }
  ElementSet C{G.identity()};
  for (std::size_t i = 0; i < n; ++i) C = product(G, C, D, resource_caps().set_size);
  for (const auto& x : C) first_level_.emplace(x, n);
  sizes_.push_back(C.size());
}

Distance BasisChainMetric::distance(const GroupElement& x, const GroupElement& y) const {
  const GroupSpec& G = group();
  const GroupElement g = G.mul(G.inv(x), y);
  std::lock_guard lock(mutex_);
  while (true) {
    auto it = first_level_.find(g);
    if (it != first_level_.end()) return Distance(static_cast<long long>(it->second));
    if (sizes_.size() > n_cap_) return Distance::horizon();
    extend_locked();
  }
}

ElementSet BasisChainMetric::chain(std::size_t n) const {
  if (n > n_cap_) throw std::invalid_argument("chain index past the n-cap");
  std::lock_guard lock(mutex_);
  while (sizes_.size() <= n) extend_locked();
  ElementSet out;
  for (const auto& [g, lvl] : first_level_) {
    if (lvl <= n) out.insert(g);
  }
  return out;
}

std::string BasisChainMetric::describe() const {
  return "chain metric of " + basis_.describe() + " (n-cap " + std::to_string(n_cap_) + ")";
}

std::shared_ptr<const BasisChainMetric> metric_from_basis(const BornologyBasis& basis,
                                                          std::size_t n_cap) {
  return std::make_shared<const BasisChainMetric>(basis, n_cap);
}

DiameterMatch finite_diameter_sets_match(const BornologyBasis& b, const Metric& m,
                                         const ElementSet& truncation, std::size_t depth,
                                         const Rational& bound, std::size_t random_samples,
                                         std::uint64_t seed) {
  if (truncation.empty()) throw std::invalid_argument("truncation must be nonempty");
  DiameterMatch result;
  const Distance limit(bound);
  auto check = [&](const ElementSet& s) {
    ++result.samples_checked;
    const bool in = member(b, s, depth).is_member();
    const Distance diam = diameter(m, s);
    if (in != (diam <= limit)) {
      result.match = false;
      result.counterexample = s;
      result.counterexample_member = in;
      result.counterexample_diameter = diam;
      return false;
    }
    return true;
  };

  if (!check(truncation)) return result;
  for (std::size_t p = 0; p < 4 * truncation.size(); ++p) {
    if (b.kind() == BasisKind::kGenerated && !b.entry(p)) break;
    if (b.level(p) > depth) break;
    auto e = b.entry(p);
    if (!e) break;
    ElementSet s;
    std::set_intersection(e->begin(), e->end(), truncation.begin(), truncation.end(),
                          std::inserter(s, s.end()));
    if (!s.empty() && !check(s)) return result;
  }
  std::mt19937_64 rng(seed);
  std::vector<GroupElement> pool(truncation.begin(), truncation.end());
  for (std::size_t i = 0; i < random_samples; ++i) {
    const std::size_t size = 1 + static_cast<std::size_t>(rng() % pool.size());
    for (std::size_t k = 0; k < size; ++k) {
      const std::size_t j = k + static_cast<std::size_t>(rng() % (pool.size() - k));
      std::swap(pool[k], pool[j]);
    }
    if (!check(ElementSet(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(size)))) {
      return result;
    }
  }
  return result;
}

}  // namespace coarsekit
