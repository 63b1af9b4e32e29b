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

#include <memory>
#include <random>
#include <vector>

#include "coarsekit/metrics.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace coarsekit;

namespace {

// Exhaustive axiom suite on a finite sample.
void check_metric_axioms(const Metric& m, const ElementSet& pts) {
  std::vector<GroupElement> v(pts.begin(), pts.end());
  for (const auto& x : v) {
    REQUIRE(m.distance(x, x) == Distance(0));
    for (const auto& y : v) {
      const Distance dxy = m.distance(x, y);
      REQUIRE(dxy.finite());
      REQUIRE(dxy == m.distance(y, x));
      if (!m.is_pseudo() && x != y) REQUIRE(dxy > Distance(0));
      for (const auto& z : v) REQUIRE(m.distance(x, z) <= dxy + m.distance(y, z));
    }
  }
}

GroupElement A(long long n) { return GroupElement({n, 0, 1}); }
GroupElement B(long long n) { return GroupElement({n + 1, 1, 1}); }

}  // namespace

TEST_CASE("Distance ordering and horizon") {
  CHECK(Distance(3) < Distance::horizon());
  CHECK_FALSE(Distance::horizon() < Distance(3));
  CHECK((Distance(2) + Distance::horizon()).exceeded());
  CHECK(Distance(Rational(1, 2)).str() == "1/2");
  CHECK(Distance::horizon().str() == "horizon-exceeded");
  CHECK_THROWS_AS(Distance::horizon().value(), std::logic_error);
}

TEST_CASE("word_distance examples") {
  WordMetric z(GroupSpec::integers());
  CHECK(word_distance(z, {0}, {5}) == Distance(5));
  WordMetric z2(GroupSpec::free_abelian(2));
  CHECK(word_distance(z2, {0, 0}, {2, 3}) == Distance(5));
  WordMetric h(GroupSpec::heisenberg());
  CHECK(word_distance(h, {3, -2, 7}, {3, -2, 7}) == Distance(0));
}

TEST_CASE("word distance beyond the radius cap is the horizon marker") {
  WordMetric z(GroupSpec::integers(), 10);
  CHECK(z.distance({0}, {10}) == Distance(10));
  CHECK(z.distance({0}, {11}).exceeded());
}

TEST_CASE("induced_distance examples") {
  auto word = std::make_shared<const WordNorm>(GroupSpec::integers());
  CHECK(induced_distance(*word, {3}, {10}) == Distance(7));
  MaxEntryNorm me;
  CHECK(induced_distance(me, B(1), A(1)) == Distance(2));
  CHECK(induced_distance(me, A(4), A(4)) == Distance(0));
}

TEST_CASE("max_entry_distance examples") {
  CHECK(max_entry_distance(A(7), B(7)) == 1);
  CHECK(max_entry_distance({2, 2, 2}, {2, 2, 2}) == 0);
  CHECK(max_entry_distance({0, 0, 0}, {-1, 2, 5}) == 5);
}

TEST_CASE("quotient_distance examples against the cycle oracle") {
  QuotientWordMetric q(1, {{5}});
  CHECK(quotient_distance(q, {0}, {3}) == Distance(2));
  CHECK(quotient_distance(q, {1}, {2}) == Distance(1));
  for (long long k = -6; k <= 6; ++k) CHECK(quotient_distance(q, {4}, {4 + 5 * k}) == Distance(0));
  CHECK(q.is_pseudo());
  for (long long k : {2, 3, 5, 7, 10}) {
    QuotientWordMetric qk(1, {{k}});
    auto cyc = oracle::cycle_distances(k);
    for (long long a = -15; a <= 15; ++a) {
      for (long long b = -15; b <= 15; ++b) {
        long long r = ((b - a) % k + k) % k;
        REQUIRE(qk.distance({a}, {b}) == Distance(cyc[r]));
      }
    }
  }
}

TEST_CASE("metric axioms on radius-3 balls") {
  for (const auto& G : {GroupSpec::integers(), GroupSpec::free_abelian(2), GroupSpec::cyclic(7),
                        GroupSpec::heisenberg()}) {
    check_metric_axioms(WordMetric(G), ball(G, 3));
  }
  const auto H = GroupSpec::heisenberg();
  check_metric_axioms(MaxEntryMetric(), ball(H, 3));
  check_metric_axioms(FirstEntryPseudometric(), ball(H, 3));
  check_metric_axioms(QuotientWordMetric(1, {{4}}), ball(GroupSpec::integers(), 3));
  check_metric_axioms(QuotientWordMetric(2, {{2, 0}, {0, 3}}), ball(GroupSpec::free_abelian(2), 3));
  auto base = std::make_shared<const WordMetric>(GroupSpec::free_abelian(2));
  check_metric_axioms(ScaledMetric(base, Rational(3, 2)), ball(GroupSpec::free_abelian(2), 3));
}

TEST_CASE("metric axioms on random triples") {
  const auto H = GroupSpec::heisenberg();
  WordMetric w(H);
  MaxEntryMetric me;
  std::mt19937_64 rng(3);
  auto pts = ball(H, 5);
  std::vector<GroupElement> v(pts.begin(), pts.end());
  for (int i = 0; i < 10000; ++i) {
    const auto& x = v[rng() % v.size()];
    const auto& y = v[rng() % v.size()];
    const auto& z = v[rng() % v.size()];
    REQUIRE(w.distance(x, z) <= w.distance(x, y) + w.distance(y, z));
    REQUIRE(me.distance(x, z) <= me.distance(x, y) + me.distance(y, z));
  }
}

TEST_CASE("pseudo flags") {
  CHECK_FALSE(WordMetric(GroupSpec::integers()).is_pseudo());
  CHECK_FALSE(MaxEntryMetric().is_pseudo());
  CHECK(FirstEntryPseudometric().is_pseudo());
  CHECK(FirstEntryPseudometric().distance({1, 0, 0}, {1, 0, 5}) == Distance(0));
}

TEST_CASE("word norm axioms") {
  for (const auto& G : {GroupSpec::free_abelian(2), GroupSpec::heisenberg(), GroupSpec::cyclic(6)}) {
    WordNorm n(G);
    CHECK(n.norm(G.identity()) == Distance(0));
    auto pts = ball(G, 3);
    for (const auto& g : pts) {
      if (!G.is_identity(g)) REQUIRE(n.norm(g) > Distance(0));
      REQUIRE(n.norm(G.inv(g)) == n.norm(g));
      for (const auto& h : pts) REQUIRE(n.norm(G.mul(g, h)) <= n.norm(g) + n.norm(h));
    }
  }
}

TEST_CASE("max-entry gauge is flagged as not a norm") {
  MaxEntryNorm n;
  CHECK_FALSE(n.satisfies_norm_axioms());
  const auto H = GroupSpec::heisenberg();
  CHECK(n.norm(H.inv({2, 2, 0})) != n.norm({2, 2, 0}));
}

TEST_CASE("induced distance is left-invariant") {
  const auto H = GroupSpec::heisenberg();
  auto wn = std::make_shared<const WordNorm>(H);
  InducedMetric im(wn);
  std::mt19937_64 rng(5);
  auto pts = ball(H, 4);
  std::vector<GroupElement> v(pts.begin(), pts.end());
  for (int i = 0; i < 3000; ++i) {
    const auto& a = v[rng() % v.size()];
    const auto& g = v[rng() % v.size()];
    const auto& h = v[rng() % v.size()];
    REQUIRE(im.distance(H.mul(a, g), H.mul(a, h)) == im.distance(g, h));
  }
}

TEST_CASE("word distance equals explicit-graph search on Z^2 and H") {
  struct Case {
    GroupSpec G;
    oracle::Vec root;
    std::function<std::vector<oracle::Vec>(const oracle::Vec&)> step;
  };
  for (const auto& c : {Case{GroupSpec::free_abelian(2), {0, 0}, oracle::step_free_abelian},
                        Case{GroupSpec::heisenberg(), {0, 0, 0}, oracle::step_heisenberg}}) {
    WordMetric w(c.G);
    oracle::ExplicitGraph g(c.root, 8, c.step);
    auto inner = ball(c.G, 4);
    for (const auto& x : inner) {
      auto dist = g.bfs(g.index.at(oracle::to_vec(x)));
      for (const auto& y : inner) {
        REQUIRE(w.distance(x, y) == Distance(dist[g.index.at(oracle::to_vec(y))]));
      }
    }
  }
}

TEST_CASE("rho_plus_truncated examples and properties") {
  const auto Z = GroupSpec::integers();
  WordMetric z(Z);
  for (std::size_t r : {0u, 1u, 3u, 8u}) {
    CHECK(rho_plus_truncated(z, {2}, {9}, ball(Z, r)) == Distance(7));
  }
  MaxEntryMetric me;
  const auto H = GroupSpec::heisenberg();
  CHECK(rho_plus_truncated(me, A(1), A(1), ball(H, 3)) == Distance(0));
  std::vector<Distance> ladder;
  for (std::size_t r = 0; r <= 6; ++r) ladder.push_back(rho_plus_truncated(me, A(1), B(1), ball(H, r)));
  CHECK(ladder.front() == Distance(1));
  CHECK(ladder.back() >= Distance(2));
  for (std::size_t i = 1; i < ladder.size(); ++i) CHECK(ladder[i - 1] <= ladder[i]);
  CHECK(rho_plus_truncated(me, A(1), B(1), {H.identity(), H.inv(B(1))}) == Distance(2));
  CHECK_THROWS(rho_plus_truncated(me, A(1), B(1), {B(1)}));
}

TEST_CASE("truncated rho plus satisfies the triangle inequality") {
  const auto H = GroupSpec::heisenberg();
  auto base = std::make_shared<const MaxEntryMetric>();
  TruncatedRhoPlusMetric rp(base, ball(H, 2));
  auto pts = ball(H, 2);
  for (const auto& x : pts) {
    for (const auto& y : pts) {
      REQUIRE(rp.distance(x, y) == rp.distance(y, x));
      for (const auto& zz : pts) REQUIRE(rp.distance(x, zz) <= rp.distance(x, y) + rp.distance(y, zz));
    }
  }
}

TEST_CASE("classify_trend") {
  std::vector<Distance> grow{1, 2, 3, 5};
  std::vector<Distance> flat{1, 2, 2};
  std::vector<Distance> slowing{1, 5, 6};
  std::vector<Distance> horizon_end{1, 2, Distance::horizon()};
  std::vector<Distance> all_horizon{Distance::horizon(), Distance::horizon()};
  CHECK(classify_trend(grow) == Trend::kGrowing);
  CHECK(classify_trend(flat) == Trend::kBounded);
  CHECK(classify_trend(slowing) == Trend::kInconclusive);
  CHECK(classify_trend(horizon_end) == Trend::kGrowing);
  CHECK(classify_trend(all_horizon) == Trend::kInconclusive);
}

TEST_CASE("bornologicity_probe examples") {
  const auto Z = GroupSpec::integers();
  WordMetric z(Z);
  TruncationLadder ladder{ball(Z, 4), ball(Z, 8), ball(Z, 12)};
  auto rep = bornologicity_probe(z, 3, ladder, ladder);
  CHECK(rep.trend == Trend::kBounded);
  REQUIRE(rep.certified_bound);
  CHECK(*rep.certified_bound == Distance(2));

  const auto H = GroupSpec::heisenberg();
  MaxEntryMetric me;
  TruncationLadder pairs, shifts;
  for (long long N : {3, 6, 12, 24}) {
    ElementSet p, s{H.identity()};
    for (long long n = 1; n <= N; ++n) {
      p.insert(A(n));
      p.insert(B(n));
      s.insert(H.inv(B(n)));
    }
    pairs.push_back(p);
    shifts.push_back(s);
  }
  auto hrep = bornologicity_probe(me, 2, pairs, shifts);
  CHECK(hrep.trend == Trend::kGrowing);
  CHECK_FALSE(hrep.certified_bound);
  CHECK(hrep.ladder_values.back() >= Distance(25));
  CHECK_FALSE(hrep.witnesses.empty());
  for (const auto& w : hrep.witnesses) {
    CHECK(me.distance(w.x, w.y) < Distance(2));
    CHECK(me.distance(H.mul(w.shift, w.x), H.mul(w.shift, w.y)) == w.observed);
  }

  TruncationLadder sparse{{GroupElement({0}), GroupElement({10})},
                          {GroupElement({0}), GroupElement({10}), GroupElement({20})},
                          {GroupElement({0}), GroupElement({10}), GroupElement({30})}};
  auto empty = bornologicity_probe(z, 5, sparse, sparse);
  CHECK(empty.empty_pair_set);
}

TEST_CASE("scaled metrics keep the probe trend") {
  const auto H = GroupSpec::heisenberg();
  auto base = std::make_shared<const MaxEntryMetric>();
  ScaledMetric scaled(base, 3);
  TruncationLadder pairs, shifts;
  for (long long N : {2, 4, 8}) {
    ElementSet p, s{H.identity()};
    for (long long n = 1; n <= N; ++n) {
      p.insert(A(n));
      p.insert(B(n));
      s.insert(H.inv(B(n)));
    }
    pairs.push_back(p);
    shifts.push_back(s);
  }
  CHECK(bornologicity_probe(*base, 2, pairs, shifts).trend ==
        bornologicity_probe(scaled, 6, pairs, shifts).trend);
  const auto Z = GroupSpec::integers();
  auto zb = std::make_shared<const WordMetric>(Z);
  ScaledMetric zs(zb, Rational(1, 2));
  TruncationLadder lz{ball(Z, 3), ball(Z, 6), ball(Z, 9)};
  CHECK(bornologicity_probe(*zb, 3, lz, lz).trend == bornologicity_probe(zs, Rational(3, 2), lz, lz).trend);
}

TEST_CASE("properness_probe examples") {
  const auto Z = GroupSpec::integers();
  WordMetric z(Z);
  TruncationLadder ladder{ball(Z, 10), ball(Z, 20), ball(Z, 30)};
  auto r = properness_probe(z, 4, ladder);
  CHECK(r.count == 9);
  CHECK(r.saturated);
  auto r0 = properness_probe(z, 0, ladder);
  CHECK(r0.count == 1);
  CHECK(r0.saturated);
  QuotientWordMetric q(1, {{5}});
  auto rq = properness_probe(q, 2, ladder);
  CHECK_FALSE(rq.saturated);
  CHECK(rq.counts == std::vector<std::size_t>{21, 41, 61});
}

TEST_CASE("diameter") {
  WordMetric z(GroupSpec::integers());
  CHECK(diameter(z, {GroupElement({4})}) == Distance(0));
  CHECK(diameter(z, {GroupElement({-3}), GroupElement({0}), GroupElement({8})}) == Distance(11));
}
