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
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "coarsekit/group.hpp"

namespace coarsekit {

/// An exact nonnegative distance, or the horizon-exceeded marker returned
/// when a truncated evaluator cannot certify the value. The marker orders
/// above every finite value.
class Distance {
 public:
  Distance() = default;
  Distance(const Rational& v) : value_(v) {}  // NOLINT: implicit on purpose
  Distance(long long v) : value_(v) {}        // NOLINT
  static Distance horizon() {
    Distance d;
    d.exceeded_ = true;
    return d;
  }

  bool finite() const { return !exceeded_; }
  bool exceeded() const { return exceeded_; }
  /// Throws std::logic_error on the horizon marker.
  const Rational& value() const;

  friend bool operator==(const Distance& a, const Distance& b) {
    return a.exceeded_ == b.exceeded_ && (a.exceeded_ || a.value_ == b.value_);
  }
  friend bool operator<(const Distance& a, const Distance& b) {
    if (a.exceeded_) return false;
    if (b.exceeded_) return true;
    return a.value_ < b.value_;
  }
  friend bool operator<=(const Distance& a, const Distance& b) { return !(b < a); }
  friend bool operator>(const Distance& a, const Distance& b) { return b < a; }
  friend bool operator>=(const Distance& a, const Distance& b) { return !(a < b); }

  /// Sum; horizon if either side is.
  friend Distance operator+(const Distance& a, const Distance& b);

  std::string str() const;

 private:
  Rational value_{0};
  bool exceeded_ = false;
};

inline Distance max(const Distance& a, const Distance& b) { return a < b ? b : a; }

constexpr std::size_t kDefaultRadiusCap = 64;

/// A nonnegative function on the group vanishing at the identity.
class Norm {
 public:
  explicit Norm(GroupSpec group) : group_(std::move(group)) {}
  virtual ~Norm() = default;

  const GroupSpec& group() const { return group_; }
  virtual Distance norm(const GroupElement& g) const = 0;
  /// Whether the gauge is a genuine norm (symmetric, subadditive).
  virtual bool satisfies_norm_axioms() const { return true; }
  virtual std::string describe() const = 0;

 private:
  GroupSpec group_;
};

using NormPtr = std::shared_ptr<const Norm>;

/// Word length in the group's generating set, by breadth-first search out
/// to `radius_cap`. The explored ball is cached and grown on demand; the
/// cache is guarded so concurrent readers see a consistent state.
class WordNorm : public Norm {
 public:
  explicit WordNorm(GroupSpec group, std::size_t radius_cap = kDefaultRadiusCap,
                    std::size_t ball_cap = resource_caps().ball_size);

  Distance norm(const GroupElement& g) const override;
  std::string describe() const override;
  std::size_t radius_cap() const { return radius_cap_; }

  /// Elements of word length <= radius (radius clipped to the cap).
  ElementSet ball(std::size_t radius) const;

 private:
  // Grows the cache by one breadth-first layer; false when nothing new.
  bool expand_locked() const;

  std::size_t radius_cap_;
  std::size_t ball_cap_;
  mutable std::mutex mutex_;
  mutable std::unordered_map<GroupElement, std::size_t, ElementHash> lengths_;
  mutable std::vector<GroupElement> frontier_;
  mutable std::size_t explored_ = 0;
  mutable bool exhausted_ = false;
};

/// Heisenberg gauge g -> max(|a|, |b|, |c|), the max-entry distance from
/// the identity matrix. Not symmetric under inversion and not subadditive.
class MaxEntryNorm : public Norm {
 public:
  MaxEntryNorm();
  Distance norm(const GroupElement& g) const override;
  bool satisfies_norm_axioms() const override { return false; }
  std::string describe() const override { return "max-entry gauge"; }
};

/// Two-argument distance on a group. Implementations are immutable after
/// construction and safe to share across threads.
class Metric {
 public:
  explicit Metric(GroupSpec group) : group_(std::move(group)) {}
  virtual ~Metric() = default;

  const GroupSpec& group() const { return group_; }
  virtual Distance distance(const GroupElement& x, const GroupElement& y) const = 0;
  /// True when distinct elements may be at distance zero.
  virtual bool is_pseudo() const { return false; }
  virtual std::string describe() const = 0;

  /// {g : d(e, g) < bound} when it is finite and enumerable by this
  /// metric. Default: throws ResourceBudgetExceeded.
  virtual ElementSet open_ball_at_identity(const Rational& bound) const;

 private:
  GroupSpec group_;
};

using MetricPtr = std::shared_ptr<const Metric>;

/// Cayley-graph distance, computed left-invariantly as |g^-1 h|.
class WordMetric : public Metric {
 public:
  explicit WordMetric(GroupSpec group, std::size_t radius_cap = kDefaultRadiusCap);
  Distance distance(const GroupElement& x, const GroupElement& y) const override;
  std::string describe() const override;
  ElementSet open_ball_at_identity(const Rational& bound) const override;
  const WordNorm& norm() const { return norm_; }

 private:
  WordNorm norm_;
};

/// rho(g, h) = ||g^-1 h||.
class InducedMetric : public Metric {
 public:
  explicit InducedMetric(NormPtr norm);
  Distance distance(const GroupElement& x, const GroupElement& y) const override;
  std::string describe() const override;
  const Norm& norm() const { return *norm_; }

 private:
  NormPtr norm_;
};

/// Heisenberg rho(A, B) = max_ij |a_ij - b_ij|.
class MaxEntryMetric : public Metric {
 public:
  MaxEntryMetric();
  Distance distance(const GroupElement& x, const GroupElement& y) const override;
  std::string describe() const override { return "max-entry"; }
  ElementSet open_ball_at_identity(const Rational& bound) const override;
};

/// Heisenberg pseudometric rho(A, B) = |a_12 - b_12|.
class FirstEntryPseudometric : public Metric {
 public:
  FirstEntryPseudometric();
  Distance distance(const GroupElement& x, const GroupElement& y) const override;
  bool is_pseudo() const override { return true; }
  std::string describe() const override { return "first-entry pseudometric"; }
};

/// Pseudometric on Z^rank pulled back from the word metric of
/// Z^rank / lattice: rho(a, b) = d_quotient(pi(a), pi(b)).
class QuotientWordMetric : public Metric {
 public:
  QuotientWordMetric(std::size_t rank, std::vector<std::vector<Integer>> lattice,
                     std::size_t radius_cap = kDefaultRadiusCap);
  Distance distance(const GroupElement& x, const GroupElement& y) const override;
  bool is_pseudo() const override;
  std::string describe() const override;

  const GroupSpec& quotient() const { return quotient_; }
  /// Canonical coset representative of an ambient element.
  GroupElement project(const GroupElement& a) const;

 private:
  GroupSpec quotient_;
  WordNorm quotient_norm_;
};

/// factor * base.
class ScaledMetric : public Metric {
 public:
  ScaledMetric(MetricPtr base, Rational factor);
  Distance distance(const GroupElement& x, const GroupElement& y) const override;
  bool is_pseudo() const override { return base_->is_pseudo(); }
  std::string describe() const override;
  ElementSet open_ball_at_identity(const Rational& bound) const override;

 private:
  MetricPtr base_;
  Rational factor_;
};

/// rho+_T(x, y) = max over g in T of rho(gx, gy) for a fixed truncation T.
class TruncatedRhoPlusMetric : public Metric {
 public:
  TruncatedRhoPlusMetric(MetricPtr base, ElementSet truncation);
  Distance distance(const GroupElement& x, const GroupElement& y) const override;
  bool is_pseudo() const override { return base_->is_pseudo(); }
  std::string describe() const override;

 private:
  MetricPtr base_;
  ElementSet truncation_;
};

// Named operations.

Distance word_distance(const WordMetric& metric, const GroupElement& g, const GroupElement& h);
Distance induced_distance(const Norm& norm, const GroupElement& g, const GroupElement& h);
Integer max_entry_distance(const GroupElement& g, const GroupElement& h);
Distance quotient_distance(const QuotientWordMetric& metric, const GroupElement& a,
                           const GroupElement& b);

/// max over g in `truncation` of base(gx, gy). The truncation must be
/// nonempty and contain the identity.
Distance rho_plus_truncated(const Metric& base, const GroupElement& x, const GroupElement& y,
                            const ElementSet& truncation);

/// Largest pairwise distance in a finite set (0 for a singleton).
Distance diameter(const Metric& metric, const ElementSet& set);

enum class Trend { kBounded, kGrowing, kInconclusive };

std::string to_string(Trend t);

/// Ladder rule: growing when the values strictly increase at every step
/// and the last increment is at least the first; bounded when the last two
/// values are equal; otherwise inconclusive. A ladder ending in the
/// horizon marker is growing if any earlier value is finite.
Trend classify_trend(std::span<const Distance> ladder);

/// A nested sequence of finite truncations, smallest first.
using TruncationLadder = std::vector<ElementSet>;

struct BornologyWitness {
  GroupElement shift;
  GroupElement x;
  GroupElement y;
  Distance observed;
};

struct BornologicityReport {
  Rational input_bound;
  /// Largest observed rho(gx, gy); nullopt when the trend is growing.
  std::optional<Distance> certified_bound;
  Trend trend = Trend::kInconclusive;
  /// S_C at each ladder step.
  std::vector<Distance> ladder_values;
  /// Maximizing (g, x, y) at each ladder step with a nonempty pair set.
  std::vector<BornologyWitness> witnesses;
  /// No pair with rho(x, y) < C in the final truncation.
  bool empty_pair_set = false;
  std::vector<std::size_t> pair_truncation_sizes;
  std::vector<std::size_t> shift_truncation_sizes;
};

/// S_C over each step of the ladders: max of rho(gx, gy) for g in the shift
/// truncation and x, y in the pair truncation with rho(x, y) < C. The two
/// ladders must have the same length, at least 3.
BornologicityReport bornologicity_probe(const Metric& base, const Rational& C,
                                        const TruncationLadder& pair_ladder,
                                        const TruncationLadder& shift_ladder);

struct PropernessReport {
  /// Elements at distance <= R from the identity in the last truncation.
  std::size_t count = 0;
  bool saturated = false;
  std::vector<std::size_t> counts;
};

/// Counts the R-ball around the identity inside each truncation; saturated
/// when the last ladder step did not change the count. Needs >= 2 steps.
PropernessReport properness_probe(const Metric& base, const Rational& R,
                                  const TruncationLadder& ladder);

}  // namespace coarsekit
