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
#include <functional>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "coarsekit/bornology.hpp"
#include "coarsekit/group.hpp"
#include "coarsekit/metrics.hpp"

namespace coarsekit {

using ElementPair = std::pair<GroupElement, GroupElement>;

/// A finite relation on a group, deduplicated and ordered.
using Entourage = std::set<ElementPair>;

Entourage diagonal(const ElementSet& set);

/// {(x, z) : (x, y) in e1 and (y, z) in e2}. Throws ResourceBudgetExceeded
/// past the set cap.
Entourage compose(const Entourage& e1, const Entourage& e2);
/// {(y, x) : (x, y) in e}.
Entourage invert(const Entourage& e);
/// {x^-1 y : (x, y) in e}.
ElementSet left_shadow(const GroupSpec& group, const Entourage& e);
/// {x y^-1 : (x, y) in e}.
ElementSet right_shadow(const GroupSpec& group, const Entourage& e);
/// {(x^-1, y^-1) : (x, y) in e}.
Entourage theta_image(const GroupSpec& group, const Entourage& e);
/// g.e = {(g x, g y) : (x, y) in e}.
Entourage translate(const GroupSpec& group, const GroupElement& g, const Entourage& e);

/// Largest d(x, y) over the pairs of e; 0 for an empty relation.
Distance max_distance(const Metric& metric, const Entourage& e);

/// An indexed family n -> E_n, 1 <= n <= index_cap. The generator must be
/// pure.
struct EntourageFamily {
  std::string name;
  GroupSpec group;
  std::size_t index_cap = 0;
  std::function<Entourage(std::size_t)> generator;

  Entourage at(std::size_t n) const;
};

/// n -> {(B_n, A_n)} with A_n = (n,0,1), B_n = (n+1,1,1) in the Heisenberg group.
EntourageFamily heisenberg_separation_family(std::size_t index_cap);
/// n -> diagonal of a fixed set.
EntourageFamily diagonal_family(const GroupSpec& group, ElementSet set, std::size_t index_cap);
/// n -> {(0, step * n)} in Z.
EntourageFamily z_shift_family(const Integer& step, std::size_t index_cap);

/// One of the three coarse structures a probe can test against.
struct Structure {
  enum class Kind { kBoundedByMetric, kLeftBornological, kRightBornological };

  Kind kind = Kind::kBoundedByMetric;
  MetricPtr metric;
  std::optional<BornologyBasis> bornology;

  static Structure bounded_by_metric(MetricPtr metric);
  static Structure left_bornological(BornologyBasis basis);
  static Structure right_bornological(BornologyBasis basis);

  const GroupSpec& group() const;
  std::string describe() const;
};

/// Observed quantity of a relation under a structure: the largest distance
/// (metric), or the minimal cover depth of the shadow (bornological). A
/// shadow inside {e} has quantity 0; a shadow not covered within `depth`
/// gives the horizon marker.
Distance entourage_measure(const Structure& s, const Entourage& e, std::size_t depth);

/// Boundedness measure of a set: diameter (metric) or minimal cover depth
/// (bornological; 0 for the empty set).
Distance set_measure(const Structure& s, const ElementSet& set, std::size_t depth);

struct ControlledVerdict {
  std::string structure;
  /// (n, observed quantity of E_1 u ... u E_n).
  std::vector<std::pair<std::size_t, Distance>> values;
  Trend trend = Trend::kInconclusive;
};

/// Probes the cumulative unions E_1 u ... u E_n for n <= horizon and
/// classifies the resulting ladder.
ControlledVerdict controlled_probe(const EntourageFamily& family, const Structure& s,
                                   std::size_t horizon, std::size_t depth);

struct BoundedSetCheck {
  Distance diam;
  /// x -> max over b in B of d(b, x).
  std::vector<std::pair<GroupElement, Distance>> radii;
  bool two_sided_ok = false;
};

/// For every x in B: diam(B) <= 2 max_b d(b, x) and max_b d(b, x) <= diam(B).
BoundedSetCheck bounded_set_check(const ElementSet& set, const Metric& metric);

struct InvarianceCheck {
  bool ok = true;
  std::optional<GroupElement> counterexample;
};

/// left_shadow(g.e) == left_shadow(e) for every g in `shifts`.
InvarianceCheck left_translation_invariance_check(const GroupSpec& group, const Entourage& e,
                                                  const ElementSet& shifts);

using ElementMap = std::function<GroupElement(const GroupElement&)>;

struct CoarseMapReport {
  bool bornologous_ok = true;
  bool proper_ok = true;
  std::vector<std::string> witnesses;
  /// Per family: verdict in the domain, then of the image family in the
  /// codomain (only for families controlled in the domain).
  std::vector<ControlledVerdict> domain_verdicts;
  std::vector<std::optional<ControlledVerdict>> image_verdicts;
  /// Per bounded sample: measure of its preimage inside each ladder step.
  std::vector<std::vector<Distance>> preimage_measures;
  std::vector<Trend> preimage_trends;
};

/// Bornologous: every family whose domain trend is bounded maps to a family
/// with bounded trend in the codomain. Proper: for every sample bounded in
/// the codomain, its preimage inside each step of `domain_ladder` has a
/// bounded measure trend.
CoarseMapReport coarse_map_probe(const ElementMap& f, const Structure& domain,
                                 const Structure& codomain,
                                 const std::vector<EntourageFamily>& families,
                                 const std::vector<ElementSet>& bounded_samples,
                                 const TruncationLadder& domain_ladder, std::size_t horizon,
                                 std::size_t depth);

/// Probes n -> {(f(m), f2(m)) : m in ladder[n-1]}.
ControlledVerdict closeness_probe(const ElementMap& f, const ElementMap& f2,
                                  const TruncationLadder& ladder, const Structure& s,
                                  std::size_t depth);

}  // namespace coarsekit
