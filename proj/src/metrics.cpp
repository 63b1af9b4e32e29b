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

#include "coarsekit/metrics.hpp"

#include <algorithm>
#include <stdexcept>

namespace coarsekit {

namespace {

// Largest integer radius r with r < bound.
Integer strict_integer_radius(const Rational& bound) {
  using boost::multiprecision::denominator;
  using boost::multiprecision::numerator;
  Integer fl = numerator(bound) / denominator(bound);
  if (numerator(bound) % denominator(bound) != 0 && bound < 0) --fl;
  return (Rational(fl) == bound) ? Integer(fl - 1) : fl;
}

void require_heisenberg(const GroupElement& g) {
  if (g.coords.size() != 3) throw GroupError("expected a Heisenberg element (a,b,c)");
}

}  // namespace

const Rational& Distance::value() const {
  if (exceeded_) throw std::logic_error("value() on a horizon-exceeded distance");
  return value_;
}

Distance operator+(const Distance& a, const Distance& b) {
  if (a.exceeded_ || b.exceeded_) return Distance::horizon();
  return Distance(Rational(a.value_ + b.value_));
}

std::string Distance::str() const {
  return exceeded_ ? std::string("horizon-exceeded") : format_rational(value_);
}

// --- norms -----------------------------------------------------------------

WordNorm::WordNorm(GroupSpec group, std::size_t radius_cap, std::size_t ball_cap)
    : Norm(std::move(group)), radius_cap_(radius_cap), ball_cap_(ball_cap) {
  GroupElement e = this->group().identity();
  lengths_.emplace(e, 0);
  frontier_.push_back(std::move(e));
}

bool WordNorm::expand_locked() const {
  if (exhausted_) return false;
  std::vector<GroupElement> next;
  for (const auto& g : frontier_) {
    for (const auto& s : group().symmetric_generators()) {
      GroupElement h = group().mul(g, s);
      if (lengths_.emplace(h, explored_ + 1).second) next.push_back(std::move(h));
    }
  }
  if (lengths_.size() > ball_cap_) {
    throw ResourceBudgetExceeded("word ball of radius " + std::to_string(explored_ + 1) + " in " +
                                 group().describe() + " exceeds " + std::to_string(ball_cap_) +
                                 " elements");
  }
  if (next.empty()) {
    exhausted_ = true;
    return false;
  }
  frontier_ = std::move(next);
  ++explored_;
  return true;
}

Distance WordNorm::norm(const GroupElement& g) const {
  group().validate(g);
  std::lock_guard lock(mutex_);
  while (true) {
    auto it = lengths_.find(g);
    if (it != lengths_.end()) return Distance(static_cast<long long>(it->second));
    if (explored_ >= radius_cap_ || !expand_locked()) return Distance::horizon();
  }
}

ElementSet WordNorm::ball(std::size_t radius) const {
  radius = std::min(radius, radius_cap_);
  std::lock_guard lock(mutex_);
  while (explored_ < radius && expand_locked()) {
  }
  ElementSet out;
  for (const auto& [g, len] : lengths_) {
    if (len <= radius) out.insert(g);
  }
  return out;
}

std::string WordNorm::describe() const {
  return "word norm on " + group().describe() + " (cap " + std::to_string(radius_cap_) + ")";
}

MaxEntryNorm::MaxEntryNorm() : Norm(GroupSpec::heisenberg()) {}

Distance MaxEntryNorm::norm(const GroupElement& g) const {
  require_heisenberg(g);
  Integer m = 0;
  for (const auto& c : g.coords) m = std::max(m, Integer(abs(c)));
  return Distance(Rational(m));
}

// --- metrics ---------------------------------------------------------------

ElementSet Metric::open_ball_at_identity(const Rational&) const {
  throw ResourceBudgetExceeded("metric '" + describe() + "' cannot enumerate its balls");
}

WordMetric::WordMetric(GroupSpec group, std::size_t radius_cap)
    : Metric(group), norm_(std::move(group), radius_cap) {}

Distance WordMetric::distance(const GroupElement& x, const GroupElement& y) const {
  return norm_.norm(group().mul(group().inv(x), y));
}

std::string WordMetric::describe() const { return "word metric on " + group().describe(); }

ElementSet WordMetric::open_ball_at_identity(const Rational& bound) const {
  Integer r = strict_integer_radius(bound);
  if (r < 0) return {};
  if (r > norm_.radius_cap() && !group().is_finite()) {
    throw ResourceBudgetExceeded("word ball radius " + r.str() + " is past the radius cap");
  }
  return norm_.ball(static_cast<std::size_t>(std::min<Integer>(r, norm_.radius_cap())));
}

InducedMetric::InducedMetric(NormPtr norm) : Metric(norm->group()), norm_(std::move(norm)) {}

Distance InducedMetric::distance(const GroupElement& x, const GroupElement& y) const {
  return norm_->norm(group().mul(group().inv(x), y));
}

std::string InducedMetric::describe() const { return "induced by " + norm_->describe(); }

MaxEntryMetric::MaxEntryMetric() : Metric(GroupSpec::heisenberg()) {}

Distance MaxEntryMetric::distance(const GroupElement& x, const GroupElement& y) const {
  return Distance(Rational(max_entry_distance(x, y)));
}

ElementSet MaxEntryMetric::open_ball_at_identity(const Rational& bound) const {
  Integer r = strict_integer_radius(bound);
  ElementSet out;
  if (r < 0) return out;
  const Integer side = 2 * r + 1;
  if (side * side * side > resource_caps().set_size) {
    throw ResourceBudgetExceeded("max-entry ball of radius " + r.str() + " is past the set cap");
  }
  for (Integer a = -r; a <= r; ++a) {
    for (Integer b = -r; b <= r; ++b) {
      for (Integer c = -r; c <= r; ++c) out.insert(GroupElement({a, b, c}));
    }
  }
  return out;
}

FirstEntryPseudometric::FirstEntryPseudometric() : Metric(GroupSpec::heisenberg()) {}

Distance FirstEntryPseudometric::distance(const GroupElement& x, const GroupElement& y) const {
  require_heisenberg(x);
  require_heisenberg(y);
  return Distance(Rational(abs(x.coords[0] - y.coords[0])));
}

QuotientWordMetric::QuotientWordMetric(std::size_t rank, std::vector<std::vector<Integer>> lattice,
                                       std::size_t radius_cap)
    : Metric(GroupSpec::free_abelian(rank)),
      quotient_(GroupSpec::quotient_by_lattice(rank, lattice)),
      quotient_norm_(quotient_, radius_cap) {}

GroupElement QuotientWordMetric::project(const GroupElement& a) const {
  group().validate(a);
  return quotient_.canonical(a.coords);
}

Distance QuotientWordMetric::distance(const GroupElement& x, const GroupElement& y) const {
  const GroupElement px = project(x);
  const GroupElement py = project(y);
  return quotient_norm_.norm(quotient_.mul(quotient_.inv(px), py));
}

bool QuotientWordMetric::is_pseudo() const { return !quotient_.lattice_basis().empty(); }

std::string QuotientWordMetric::describe() const {
  return "quotient word pseudometric via " + quotient_.describe();
}

ScaledMetric::ScaledMetric(MetricPtr base, Rational factor)
    : Metric(base->group()), base_(std::move(base)), factor_(std::move(factor)) {
  if (factor_ <= 0) throw std::invalid_argument("scale factor must be positive");
}

Distance ScaledMetric::distance(const GroupElement& x, const GroupElement& y) const {
  Distance d = base_->distance(x, y);
  if (!d.finite()) return d;
  return Distance(Rational(d.value() * factor_));
}

std::string ScaledMetric::describe() const {
  return format_rational(factor_) + " * (" + base_->describe() + ")";
}

ElementSet ScaledMetric::open_ball_at_identity(const Rational& bound) const {
  return base_->open_ball_at_identity(bound / factor_);
}

TruncatedRhoPlusMetric::TruncatedRhoPlusMetric(MetricPtr base, ElementSet truncation)
    : Metric(base->group()), base_(std::move(base)), truncation_(std::move(truncation)) {
  if (truncation_.empty() || !truncation_.contains(group().identity())) {
    throw std::invalid_argument("rho+ truncation must be nonempty and contain the identity");
  }
}

Distance TruncatedRhoPlusMetric::distance(const GroupElement& x, const GroupElement& y) const {
  return rho_plus_truncated(*base_, x, y, truncation_);
}

std::string TruncatedRhoPlusMetric::describe() const {
  return "rho+ of (" + base_->describe() + ") over " + std::to_string(truncation_.size()) +
         " shifts";
}

// --- named operations ------------------------------------------------------

Distance word_distance(const WordMetric& metric, const GroupElement& g, const GroupElement& h) {
  return metric.distance(g, h);
}

Distance induced_distance(const Norm& norm, const GroupElement& g, const GroupElement& h) {
  const GroupSpec& G = norm.group();
  return norm.norm(G.mul(G.inv(g), h));
}

Integer max_entry_distance(const GroupElement& g, const GroupElement& h) {
  require_heisenberg(g);
  require_heisenberg(h);
  Integer m = 0;
  for (std::size_t i = 0; i < 3; ++i) m = std::max(m, Integer(abs(g.coords[i] - h.coords[i])));
  return m;
}

Distance quotient_distance(const QuotientWordMetric& metric, const GroupElement& a,
                           const GroupElement& b) {
  return metric.distance(a, b);
}

Distance rho_plus_truncated(const Metric& base, const GroupElement& x, const GroupElement& y,
                            const ElementSet& truncation) {
  const GroupSpec& G = base.group();
  if (truncation.empty() || !truncation.contains(G.identity())) {
    throw std::invalid_argument("rho+ truncation must be nonempty and contain the identity");
  }
  Distance best(0);
  for (const auto& g : truncation) {
    Distance d = base.distance(G.mul(g, x), G.mul(g, y));
    if (!d.finite()) return d;
    best = max(best, d);
  }
  return best;
}

Distance diameter(const Metric& metric, const ElementSet& set) {
  Distance best(0);
  for (auto i = set.begin(); i != set.end(); ++i) {
    for (auto j = set.begin(); j != set.end(); ++j) {
      if (i == j) continue;
      Distance d = metric.distance(*i, *j);
      if (!d.finite()) return d;
      best = max(best, d);
    }
  }
  return best;
}

std::string to_string(Trend t) {
  switch (t) {
    case Trend::kBounded:
      return "bounded";
    case Trend::kGrowing:
      return "growing";
    case Trend::kInconclusive:
      return "inconclusive";
  }
  return "?";
}

Trend classify_trend(std::span<const Distance> ladder) {
  if (ladder.size() < 2) return Trend::kInconclusive;
  if (!ladder.back().finite()) {
    bool any_finite = std::any_of(ladder.begin(), ladder.end(),
                                  [](const Distance& d) { return d.finite(); });
    return any_finite ? Trend::kGrowing : Trend::kInconclusive;
  }
  bool strictly_increasing = true;
  for (std::size_t i = 1; i < ladder.size(); ++i) {
    if (!(ladder[i - 1] < ladder[i])) strictly_increasing = false;
  }
  if (strictly_increasing) {
    const Rational first = ladder[1].value() - ladder[0].value();
    const Rational last = ladder.back().value() - ladder[ladder.size() - 2].value();
    if (last >= first) return Trend::kGrowing;
  }
  if (ladder[ladder.size() - 1] == ladder[ladder.size() - 2]) return Trend::kBounded;
  return Trend::kInconclusive;
}

BornologicityReport bornologicity_probe(const Metric& base, const Rational& C,
                                        const TruncationLadder& pair_ladder,
                                        const TruncationLadder& shift_ladder) {
  if (pair_ladder.size() != shift_ladder.size() || pair_ladder.size() < 3) {
    throw std::invalid_argument("bornologicity_probe needs two ladders of equal length >= 3");
  }
  const GroupSpec& G = base.group();
  BornologicityReport report;
  report.input_bound = C;
  const Distance bound(C);
  for (std::size_t step = 0; step < pair_ladder.size(); ++step) {
    const ElementSet& pairs = pair_ladder[step];
    const ElementSet& shifts = shift_ladder[step];
    if (pairs.empty() || shifts.empty()) {
      throw std::invalid_argument("bornologicity_probe truncations must be nonempty");
    }
    report.pair_truncation_sizes.push_back(pairs.size());
    report.shift_truncation_sizes.push_back(shifts.size());

    std::vector<std::pair<const GroupElement*, const GroupElement*>> close;
    for (const auto& x : pairs) {
      for (const auto& y : pairs) {
        if (x == y) continue;
        if (base.distance(x, y) < bound) close.emplace_back(&x, &y);
      }
    }
    report.empty_pair_set = close.empty();
    Distance best(0);
    std::optional<BornologyWitness> witness;
    for (const auto& g : shifts) {
      for (const auto& [x, y] : close) {
        GroupElement gx = G.mul(g, *x);
        GroupElement gy = G.mul(g, *y);
        Distance d = base.distance(gx, gy);
        if (!witness || best < d) {
          best = d;
          witness = BornologyWitness{g, *x, *y, d};
        }
      }
    }
    report.ladder_values.push_back(best);
    if (witness) report.witnesses.push_back(*witness);
  }
  report.trend = classify_trend(report.ladder_values);
  if (report.trend != Trend::kGrowing) report.certified_bound = report.ladder_values.back();
  return report;
}

PropernessReport properness_probe(const Metric& base, const Rational& R,
                                  const TruncationLadder& ladder) {
  if (ladder.size() < 2) throw std::invalid_argument("properness_probe needs >= 2 ladder steps");
  const GroupElement e = base.group().identity();
  const Distance radius(R);
  PropernessReport report;
  for (const auto& truncation : ladder) {
    if (truncation.empty()) throw std::invalid_argument("properness_probe truncation is empty");
    std::size_t count = 0;
    for (const auto& g : truncation) {
      if (base.distance(e, g) <= radius) ++count;
    }
    report.counts.push_back(count);
  }
  report.count = report.counts.back();
  report.saturated = report.counts.back() == report.counts[report.counts.size() - 2];
  return report;
}

}  // namespace coarsekit
