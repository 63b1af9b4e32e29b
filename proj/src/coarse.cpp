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

#include "coarsekit/coarse.hpp"

#include <map>
#include <stdexcept>

namespace coarsekit {

Entourage diagonal(const ElementSet& set) {
  Entourage out;
  for (const auto& x : set) out.emplace(x, x);
  return out;
}

Entourage compose(const Entourage& e1, const Entourage& e2) {
  std::map<GroupElement, std::vector<const GroupElement*>> by_source;
  for (const auto& [y, z] : e2) by_source[y].push_back(&z);
  Entourage out;
  for (const auto& [x, y] : e1) {
    auto it = by_source.find(y);
    if (it == by_source.end()) continue;
    for (const GroupElement* z : it->second) {
      out.emplace(x, *z);
      if (out.size() > resource_caps().set_size) {
        throw ResourceBudgetExceeded("composed relation exceeds the set cap");
      }
    }
  }
  return out;
}

Entourage invert(const Entourage& e) {
  Entourage out;
  for (const auto& [x, y] : e) out.emplace(y, x);
  return out;
}

ElementSet left_shadow(const GroupSpec& group, const Entourage& e) {
  ElementSet out;
  for (const auto& [x, y] : e) out.insert(group.mul(group.inv(x), y));
  return out;
}

ElementSet right_shadow(const GroupSpec& group, const Entourage& e) {
  ElementSet out;
  for (const auto& [x, y] : e) out.insert(group.mul(x, group.inv(y)));
  return out;
}

Entourage theta_image(const GroupSpec& group, const Entourage& e) {
  Entourage out;
  for (const auto& [x, y] : e) out.emplace(group.inv(x), group.inv(y));
  return out;
}

Entourage translate(const GroupSpec& group, const GroupElement& g, const Entourage& e) {
  Entourage out;
  for (const auto& [x, y] : e) out.emplace(group.mul(g, x), group.mul(g, y));
  return out;
}

Distance max_distance(const Metric& metric, const Entourage& e) {
  Distance best(0);
  for (const auto& [x, y] : e) {
    best = max(best, metric.distance(x, y));
    if (!best.finite()) break;
  }
  return best;
}

// --- families --------------------------------------------------------------

Entourage EntourageFamily::at(std::size_t n) const {
  if (n < 1 || n > index_cap) {
    throw std::out_of_range("family index " + std::to_string(n) + " outside 1.." +
                            std::to_string(index_cap));
  }
  return generator(n);
}

EntourageFamily heisenberg_separation_family(std::size_t index_cap) {
  return {"heisenberg_an_bn", GroupSpec::heisenberg(), index_cap, [](std::size_t n) {
            const long long k = static_cast<long long>(n);
            return Entourage{{GroupElement({k + 1, 1, 1}), GroupElement({k, 0, 1})}};
          }};
}

EntourageFamily diagonal_family(const GroupSpec& group, ElementSet set, std::size_t index_cap) {
  for (const auto& g : set) group.validate(g);
  Entourage d = diagonal(set);
  return {"diagonal", group, index_cap, [d](std::size_t) { return d; }};
}

EntourageFamily z_shift_family(const Integer& step, std::size_t index_cap) {
  return {"z_shift(" + step.str() + ")", GroupSpec::integers(), index_cap,
          [step](std::size_t n) {
            return Entourage{
                {GroupElement({0}), GroupElement(std::vector<Integer>{step * Integer(n)})}};
          }};
}

// --- structures ------------------------------------------------------------

Structure Structure::bounded_by_metric(MetricPtr metric) {
  if (!metric) throw std::invalid_argument("bounded structure needs a metric");
  Structure s;
  s.kind = Kind::kBoundedByMetric;
  s.metric = std::move(metric);
  return s;
}

Structure Structure::left_bornological(BornologyBasis basis) {
  Structure s;
  s.kind = Kind::kLeftBornological;
  s.bornology = std::move(basis);
  return s;
}

Structure Structure::right_bornological(BornologyBasis basis) {
  Structure s;
  s.kind = Kind::kRightBornological;
  s.bornology = std::move(basis);
  return s;
}

const GroupSpec& Structure::group() const {
  return kind == Kind::kBoundedByMetric ? metric->group() : bornology->group();
}

std::string Structure::describe() const {
  switch (kind) {
    case Kind::kBoundedByMetric:
      return "bounded(" + metric->describe() + ")";
    case Kind::kLeftBornological:
      return "left(" + bornology->describe() + ")";
    case Kind::kRightBornological:
      return "right(" + bornology->describe() + ")";
  }
  return "?";
}

namespace {

Distance shadow_measure(const BornologyBasis& b, const ElementSet& shadow, std::size_t depth) {
  const GroupElement e = b.group().identity();
  if (shadow.empty() || (shadow.size() == 1 && *shadow.begin() == e)) return Distance(0);
  auto d = minimal_cover_depth(b, shadow, depth);
  return d ? Distance(static_cast<long long>(*d)) : Distance::horizon();
}

ElementSet shadow_of(const Structure& s, const Entourage& e) {
  return s.kind == Structure::Kind::kLeftBornological ? left_shadow(s.group(), e)
                                                      : right_shadow(s.group(), e);
}

}  // namespace

Distance entourage_measure(const Structure& s, const Entourage& e, std::size_t depth) {
  if (s.kind == Structure::Kind::kBoundedByMetric) return max_distance(*s.metric, e);
  return shadow_measure(*s.bornology, shadow_of(s, e), depth);
}

Distance set_measure(const Structure& s, const ElementSet& set, std::size_t depth) {
  if (s.kind == Structure::Kind::kBoundedByMetric) return diameter(*s.metric, set);
  if (set.empty()) return Distance(0);
  auto d = minimal_cover_depth(*s.bornology, set, depth);
  return d ? Distance(static_cast<long long>(*d)) : Distance::horizon();
}

ControlledVerdict controlled_probe(const EntourageFamily& family, const Structure& s,
                                   std::size_t horizon, std::size_t depth) {
  if (horizon > family.index_cap) {
    throw std::invalid_argument("probe horizon past the family index cap");
  }
  ControlledVerdict v;
  v.structure = s.describe();
  Distance running(0);
  ElementSet shadow;
  for (std::size_t n = 1; n <= horizon; ++n) {
    const Entourage e = family.at(n);
    if (running.finite()) {
      if (s.kind == Structure::Kind::kBoundedByMetric) {
        running = max(running, max_distance(*s.metric, e));
      } else {
        const ElementSet add = shadow_of(s, e);
        shadow.insert(add.begin(), add.end());
        running = shadow_measure(*s.bornology, shadow, depth);
      }
    }
    v.values.emplace_back(n, running);
  }
  std::vector<Distance> ladder;
  for (const auto& [n, d] : v.values) ladder.push_back(d);
  v.trend = classify_trend(ladder);
  return v;
}

BoundedSetCheck bounded_set_check(const ElementSet& set, const Metric& metric) {
  if (set.empty()) throw std::invalid_argument("bounded_set_check needs a nonempty set");
  BoundedSetCheck out;
  out.diam = diameter(metric, set);
  out.two_sided_ok = true;
  for (const auto& x : set) {
    Distance r(0);
    for (const auto& b : set) r = max(r, metric.distance(b, x));
    if (!(out.diam <= r + r) || !(r <= out.diam)) out.two_sided_ok = false;
    out.radii.emplace_back(x, r);
  }
  return out;
}

InvarianceCheck left_translation_invariance_check(const GroupSpec& group, const Entourage& e,
                                                  const ElementSet& shifts) {
  InvarianceCheck out;
  const ElementSet base = left_shadow(group, e);
  for (const auto& g : shifts) {
    if (left_shadow(group, translate(group, g, e)) != base) {
      out.ok = false;
      out.counterexample = g;
      break;
    }
  }
  return out;
}

CoarseMapReport coarse_map_probe(const ElementMap& f, const Structure& domain,
                                 const Structure& codomain,
                                 const std::vector<EntourageFamily>& families,
                                 const std::vector<ElementSet>& bounded_samples,
                                 const TruncationLadder& domain_ladder, std::size_t horizon,
                                 std::size_t depth) {
  if (domain_ladder.size() < 2) throw std::invalid_argument("domain ladder needs >= 2 steps");
  CoarseMapReport report;
  const GroupSpec& target = codomain.group();
  for (const auto& fam : families) {
    ControlledVerdict dv = controlled_probe(fam, domain, horizon, depth);
    report.domain_verdicts.push_back(dv);
    if (dv.trend != Trend::kBounded) {
      report.image_verdicts.push_back(std::nullopt);
      continue;
    }
    EntourageFamily image{"f(" + fam.name + ")", target, fam.index_cap,
                          [&fam, &f](std::size_t n) {
                            Entourage out;
                            for (const auto& [x, y] : fam.at(n)) out.emplace(f(x), f(y));
                            return out;
                          }};
    ControlledVerdict iv = controlled_probe(image, codomain, horizon, depth);
    if (iv.trend != Trend::kBounded) {
      report.bornologous_ok = false;
      report.witnesses.push_back("family " + fam.name + " is controlled in " + dv.structure +
                                 " but its image is " + to_string(iv.trend) + " in " +
                                 iv.structure);
    }
    report.image_verdicts.push_back(std::move(iv));
  }
  for (std::size_t i = 0; i < bounded_samples.size(); ++i) {
    const ElementSet& sample = bounded_samples[i];
    std::vector<Distance> measures;
    for (const auto& step : domain_ladder) {
      ElementSet pre;
      for (const auto& x : step) {
        if (sample.contains(f(x))) pre.insert(x);
      }
      measures.push_back(set_measure(domain, pre, depth));
    }
    Trend t = classify_trend(measures);
    if (t != Trend::kBounded) {
      report.proper_ok = false;
      report.witnesses.push_back("preimage of " + format_set(target, sample) + " is " +
                                 to_string(t) + " in " + domain.describe());
    }
    report.preimage_measures.push_back(std::move(measures));
    report.preimage_trends.push_back(t);
  }
  return report;
}

ControlledVerdict closeness_probe(const ElementMap& f, const ElementMap& f2,
                                  const TruncationLadder& ladder, const Structure& s,
                                  std::size_t depth) {
  if (ladder.empty()) throw std::invalid_argument("closeness_probe needs a ladder");
  EntourageFamily fam{"closeness", s.group(), ladder.size(), [&](std::size_t n) {
                        Entourage out;
                        for (const auto& m : ladder[n - 1]) out.emplace(f(m), f2(m));
                        return out;
                      }};
  return controlled_probe(fam, s, ladder.size(), depth);
}

}  // namespace coarsekit
