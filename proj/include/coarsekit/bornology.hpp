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
#include <cstdint>
#include <deque>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "coarsekit/group.hpp"
#include "coarsekit/metrics.hpp"

namespace coarsekit {

/// A finite seed set. GeometricSeed(b, L) is {0, b, b^2, ..., b^L} in Z.
struct SetDescriptor {
  enum class Kind { kExplicit, kGeometricSeed };

  Kind kind = Kind::kExplicit;
  ElementSet elements;  // kExplicit
  Integer base = 0;     // kGeometricSeed
  std::size_t length_cap = 0;

  static SetDescriptor explicit_set(ElementSet elements);
  /// Throws std::invalid_argument unless base >= 2 and length_cap >= 1.
  static SetDescriptor geometric_seed(const Integer& base, std::size_t length_cap);

  /// Validated, canonical elements. GeometricSeed requires the group Z.
  ElementSet materialize(const GroupSpec& group) const;
  std::string describe(const GroupSpec& group) const;
};

/// Parses "{x,y,...}" (element literals for `group`), "geometric(b,L)",
/// "range(lo,hi)" and "range(lo,hi,step)" (Z only). Throws GroupError.
SetDescriptor parse_set_descriptor(const GroupSpec& group, std::string_view text);

enum class BasisKind { kMinimal, kFull, kMetricBalls, kGenerated };

std::string to_string(BasisKind kind);

/// A bornology given by a deterministic stream of finite sets B_0, B_1, ...
/// (positions are 0-based). Each position carries a complexity level used
/// by `member`:
///
///   Minimal      {g_p}, the p-th element of the fixed enumeration; level p+1
///   Full         the word ball of radius p+1; level 1
///   MetricBalls  {g : d(e,g) < p+2}; level p+1
///   Generated    products of l atoms (seeds, their inverses, generator
///                singletons, {e}); level l <= depth cap, ordered by
///                (level, size, encoding). After the last capped level the
///                stream continues with the singletons {g_i} of the fixed
///                enumeration at level cap+1+i.
///
/// Copies share one cache; extension of the cache is serialized.
class BornologyBasis {
 public:
  static BornologyBasis minimal(GroupSpec group);
  static BornologyBasis full(GroupSpec group);
  static BornologyBasis metric_balls(MetricPtr metric);
  static BornologyBasis generated(GroupSpec group, std::vector<SetDescriptor> seeds,
                                  std::size_t depth_cap = 4);

  BasisKind kind() const;
  const GroupSpec& group() const;
  /// MetricBalls only.
  const MetricPtr& metric() const;
  const std::vector<SetDescriptor>& seeds() const;
  std::size_t depth_cap() const;
  std::string describe() const;

  /// Stream entry at a position; nullopt past the end of a finite stream.
  std::optional<ElementSet> entry(std::size_t position) const;
  std::size_t level(std::size_t position) const;
  /// Membership in an entry without materializing it.
  bool entry_contains(std::size_t position, const GroupElement& g) const;
  /// First position whose entry contains g; nullopt when the element is
  /// not reached within the stream and resource caps.
  std::optional<std::size_t> first_position(const GroupElement& g) const;

  /// Generated only: number of product entries of level <= `level`
  /// (clipped to the depth cap), and a reference to a cached product entry
  /// that stays valid for the lifetime of the basis.
  std::size_t generated_prefix(std::size_t level) const;
  const ElementSet& generated_entry(std::size_t position) const;

  struct State;

 private:
  explicit BornologyBasis(std::shared_ptr<State> state);
  std::shared_ptr<State> state_;
};

/// First `count` stream entries; shorter when the stream is finite.
std::vector<ElementSet> enumerate_basis(const BornologyBasis& basis, std::size_t count);

enum class MembershipStatus { kMember, kNotCoveredAtDepth };

std::string to_string(MembershipStatus status);

struct MembershipVerdict {
  MembershipStatus status = MembershipStatus::kNotCoveredAtDepth;
  /// Stream positions whose union contains the query (Member only).
  std::vector<std::size_t> cover;
  std::size_t depth_examined = 0;
  /// The truncation the verdict was reached under.
  std::string truncation;

  bool is_member() const { return status == MembershipStatus::kMember; }
};

/// Searches for a cover of `query` by at most `depth` stream entries of
/// level <= depth: greedy first, then exhaustive search. A singleton query
/// is covered by the first entry containing it, at any depth.
MembershipVerdict member(const BornologyBasis& basis, const ElementSet& query,
                         std::size_t depth);

/// Smallest depth <= max_depth at which the cover search succeeds, with no
/// singleton shortcut. nullopt when no depth up to max_depth works.
std::optional<std::size_t> minimal_cover_depth(const BornologyBasis& basis,
                                                const ElementSet& query, std::size_t max_depth);

enum class BasisOp { kProduct, kUnion, kInverse, kLeftTranslate, kRightTranslate };

/// Exact set operations. kInverse reads b1 only; the translates read b1
/// and `g`, which they require.
ElementSet basis_ops(const GroupSpec& group, const ElementSet& b1, const ElementSet& b2,
                     BasisOp op, const std::optional<GroupElement>& g = std::nullopt);

/// d(x, y) = min{ n : x^-1 y in C_n } with C_0 = {e} and C_n = D_n^n,
/// D_n the union of {e} and the symmetrized first n+1 stream entries.
/// Chains are materialized lazily and cached; past `n_cap` the distance
/// is the horizon marker.
class BasisChainMetric : public Metric {
 public:
  BasisChainMetric(BornologyBasis basis, std::size_t n_cap);
  Distance distance(const GroupElement& x, const GroupElement& y) const override;
  std::string describe() const override;
  std::size_t n_cap() const { return n_cap_; }
  /// C_n, materializing as needed. n <= n_cap.
  ElementSet chain(std::size_t n) const;

 private:
  void extend_locked() const;

  BornologyBasis basis_;
  std::size_t n_cap_;
  mutable std::mutex mutex_;
  mutable std::vector<std::size_t> sizes_;  // |C_0|, |C_1|, ...
  mutable std::unordered_map<GroupElement, std::size_t, ElementHash> first_level_;
};

std::shared_ptr<const BasisChainMetric> metric_from_basis(const BornologyBasis& basis,
                                                          std::size_t n_cap = 32);

struct DiameterMatch {
  bool match = true;
  std::optional<ElementSet> counterexample;
  bool counterexample_member = false;
  std::optional<Distance> counterexample_diameter;
  std::size_t samples_checked = 0;
};

/// Checks member(S, depth) is Member iff diam(S) <= bound, for S running
/// over: the truncation itself, its nonempty intersections with stream
/// entries of level <= depth, then `random_samples` random subsets drawn
/// from a generator seeded with `seed`. Stops at the first mismatch.
DiameterMatch finite_diameter_sets_match(const BornologyBasis& basis, const Metric& metric,
                                         const ElementSet& truncation, std::size_t depth,
                                         const Rational& bound, std::size_t random_samples = 256,
                                         std::uint64_t seed = 1);

}  // namespace coarsekit
