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

#include <random>

#include "coarsekit/bornology.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace coarsekit;

namespace {

GroupElement z(long long v) { return GroupElement({v}); }

ElementSet interval(long long lo, long long hi, long long step = 1) {
  ElementSet s;
  for (long long v = lo; v <= hi; v += step) s.insert(z(v));
  return s;
}

// Member verdicts must come with a literal cover.
void check_cover(const BornologyBasis& b, const ElementSet& q, const MembershipVerdict& v) {
  if (!v.is_member()) return;
  ElementSet u;
  for (std::size_t p : v.cover) {
    auto e = b.entry(p);
    REQUIRE(e);
    u.insert(e->begin(), e->end());
  }
  for (const auto& g : q) REQUIRE(u.contains(g));
}

BornologyBasis powers_of_ten_basis(std::size_t L, std::size_t cap) {
  return BornologyBasis::generated(GroupSpec::integers(), {SetDescriptor::geometric_seed(10, L)},
                                   cap);
}

}  // namespace

TEST_CASE("set descriptors") {
  const auto Z = GroupSpec::integers();
  CHECK(SetDescriptor::geometric_seed(10, 3).materialize(Z) ==
        ElementSet{z(0), z(10), z(100), z(1000)});
  CHECK_THROWS_AS(SetDescriptor::geometric_seed(1, 3), std::invalid_argument);
  CHECK_THROWS(SetDescriptor::geometric_seed(10, 2).materialize(GroupSpec::free_abelian(2)));
  CHECK(parse_set_descriptor(Z, "{3, 1, 3}").materialize(Z) == ElementSet{z(1), z(3)});
  CHECK(parse_set_descriptor(Z, "range(0,10,5)").materialize(Z) == ElementSet{z(0), z(5), z(10)});
  CHECK(parse_set_descriptor(Z, "geometric(20,2)").materialize(Z) == ElementSet{z(0), z(20), z(400)});
  CHECK_THROWS_AS(parse_set_descriptor(Z, "{(1,2)}"), GroupError);
}

TEST_CASE("enumerate_basis examples") {
  const auto Z = GroupSpec::integers();
  auto m = enumerate_basis(BornologyBasis::minimal(Z), 3);
  CHECK(m == std::vector<ElementSet>{{z(0)}, {z(1)}, {z(-1)}});
  auto balls = enumerate_basis(
      BornologyBasis::metric_balls(std::make_shared<const WordMetric>(Z)), 2);
  CHECK(balls == std::vector<ElementSet>{interval(-1, 1), interval(-2, 2)});
  auto full = enumerate_basis(BornologyBasis::full(Z), 2);
  CHECK(full == std::vector<ElementSet>{interval(-1, 1), interval(-2, 2)});
}

TEST_CASE("generated stream contains the seed and its double at small positions") {
  const auto Z = GroupSpec::integers();
  const BornologyBasis b = powers_of_ten_basis(4, 2);
  const ElementSet A = SetDescriptor::geometric_seed(10, 4).materialize(Z);
  const ElementSet AA = product(Z, A, A);
  bool seen_a = false, seen_aa = false;
  for (std::size_t p = 0; p < b.generated_prefix(2); ++p) {
    const ElementSet& e = b.generated_entry(p);
    if (e == A) seen_a = b.level(p) == 1;
    if (e == AA) seen_aa = b.level(p) == 2;
  }
  CHECK(seen_a);
  CHECK(seen_aa);
  // Past the cap the stream lists singletons of the fixed enumeration.
  const std::size_t core = b.generated_prefix(2);
  CHECK(b.entry(core) == ElementSet{z(0)});
  CHECK(b.entry(core + 2) == ElementSet{z(-1)});
  CHECK(b.level(core + 2) == 5);
}

TEST_CASE("streams are symmetric") {
  const auto H = GroupSpec::heisenberg();
  const BornologyBasis b = BornologyBasis::generated(
      H, {SetDescriptor::explicit_set({GroupElement({1, 2, 0}), GroupElement({0, 1, 3})})}, 2);
  const std::size_t core = b.generated_prefix(2);
  auto prefix = enumerate_basis(b, core);
  for (const auto& e : prefix) {
    const ElementSet inv_e = inverse(H, e);
    bool found = false;
    for (const auto& f : prefix) found = found || f == inv_e;
    REQUIRE(found);
  }
  // Tail singletons: the inverse singleton is somewhere in the stream.
  for (std::size_t p = core; p < core + 200; ++p) {
    auto e = b.entry(p);
    REQUIRE(e);
    REQUIRE(e->size() == 1);
    auto q = b.first_position(H.inv(*e->begin()));
    REQUIRE(q);
    CHECK(b.entry(*q)->contains(H.inv(*e->begin())));
  }
}

TEST_CASE("stream determinism") {
  const auto Z = GroupSpec::integers();
  for (int round = 0; round < 2; ++round) {
    auto a = enumerate_basis(powers_of_ten_basis(4, 3), 300);
    auto b = enumerate_basis(powers_of_ten_basis(4, 3), 300);
    CHECK(a == b);
  }
  auto h1 = enumerate_basis(BornologyBasis::minimal(GroupSpec::heisenberg()), 50);
  auto h2 = enumerate_basis(BornologyBasis::minimal(GroupSpec::heisenberg()), 50);
  CHECK(h1 == h2);
  const BornologyBasis shared = powers_of_ten_basis(3, 2);
  const BornologyBasis copy = shared;
  CHECK(enumerate_basis(shared, 40) == enumerate_basis(copy, 40));
}

TEST_CASE("member examples") {
  const auto Z = GroupSpec::integers();
  for (const auto& b : {BornologyBasis::minimal(Z), BornologyBasis::full(Z), powers_of_ten_basis(6, 3)}) {
    auto v = member(b, {z(17)}, 1);
    CHECK(v.is_member());
    check_cover(b, {z(17)}, v);
  }
  const BornologyBasis b = powers_of_ten_basis(6, 3);
  auto v = member(b, {z(0), z(10), z(100)}, 1);
  CHECK(v.is_member());
  CHECK(v.cover.size() == 1);
  check_cover(b, {z(0), z(10), z(100)}, v);
  for (std::size_t d = 1; d <= 3; ++d) {
    auto e = member(b, interval(0, 50, 2), d);
    CHECK(e.status == MembershipStatus::kNotCoveredAtDepth);
    CHECK(e.depth_examined == d);
    CHECK_FALSE(e.truncation.empty());
  }
  CHECK(to_string(MembershipStatus::kMember) == "Member");
  CHECK(to_string(MembershipStatus::kNotCoveredAtDepth) == "NotCoveredAtDepth");
}

TEST_CASE("minimal basis covers exactly the enumerated prefix") {
  const auto Z = GroupSpec::integers();
  const auto b = BornologyBasis::minimal(Z);
  CHECK(member(b, {z(0), z(1), z(-1)}, 3).is_member());
  CHECK_FALSE(member(b, {z(0), z(1), z(-1)}, 2).is_member());
  CHECK(minimal_cover_depth(b, {z(2)}, 10) == std::optional<std::size_t>(4));
  CHECK(member(b, {z(2)}, 1).is_member());
}

TEST_CASE("bornology axiom suite on generated prefixes") {
  const auto Z = GroupSpec::integers();
  const BornologyBasis b = BornologyBasis::generated(
      Z, {SetDescriptor::explicit_set({z(0), z(7), z(20)})}, 4);
  std::mt19937_64 rng(9);
  auto prefix = enumerate_basis(b, b.generated_prefix(2));
  for (int i = 0; i < 60; ++i) {
    const ElementSet& e1 = prefix[rng() % prefix.size()];
    const ElementSet& e2 = prefix[rng() % prefix.size()];
    auto d1 = minimal_cover_depth(b, e1, 2);
    auto d2 = minimal_cover_depth(b, e2, 2);
    REQUIRE(d1);
    REQUIRE(d2);
    // Subsets.
    ElementSet sub;
    for (const auto& g : e1) {
      if (rng() % 2) sub.insert(g);
    }
    if (!sub.empty()) {
      auto v = member(b, sub, *d1);
      REQUIRE(v.is_member());
      check_cover(b, sub, v);
    }
    // Inverse, union and product.
    REQUIRE(minimal_cover_depth(b, inverse(Z, e1), *d1 + 1));
    ElementSet u = e1;
    u.insert(e2.begin(), e2.end());
    auto vu = member(b, u, *d1 + *d2);
    REQUIRE(vu.is_member());
    check_cover(b, u, vu);
    auto vp = member(b, product(Z, e1, e2), *d1 + *d2 + 1);
    REQUIRE(vp.is_member());
    check_cover(b, product(Z, e1, e2), vp);
  }
}

TEST_CASE("generated kZ membership agrees with the quotient pseudometric") {
  const auto Z = GroupSpec::integers();
  const long long k = 3;
  const BornologyBasis b = BornologyBasis::generated(
      Z, {SetDescriptor::explicit_set(interval(-30, 30, k))}, k / 2 + 1);
  QuotientWordMetric q(1, {{k}});
  CHECK(minimal_cover_depth(b, {z(0), z(3), z(-9)}, 3) == std::optional<std::size_t>(1));
  CHECK(minimal_cover_depth(b, {z(0), z(1)}, 3) == std::optional<std::size_t>(2));
  std::mt19937_64 rng(4);
  for (int i = 0; i < 200; ++i) {
    ElementSet s;
    const std::size_t n = 1 + rng() % 8;
    while (s.size() < n) s.insert(z(static_cast<long long>(rng() % 41) - 20));
    const Distance dq = diameter(q, s);
    auto v = member(b, s, k);
    REQUIRE(v.is_member() == (dq.finite() && dq <= Distance(k / 2)));
    check_cover(b, s, v);
    // Residue classes used by s bound the cover depth.
    std::set<long long> classes;
    for (const auto& g : s) classes.insert(((g.coords[0].convert_to<long long>() % k) + k) % k);
    auto d = minimal_cover_depth(b, s, k);
    REQUIRE(d);
    REQUIRE(*d <= std::max<std::size_t>(classes.size(), 2));
  }
}

TEST_CASE("basis_ops examples") {
  const auto Z = GroupSpec::integers();
  CHECK(basis_ops(Z, {z(0), z(10)}, {z(0), z(100)}, BasisOp::kProduct) ==
        ElementSet{z(0), z(10), z(100), z(110)});
  CHECK(basis_ops(Z, {z(1), z(2)}, {}, BasisOp::kInverse) == ElementSet{z(-1), z(-2)});
  CHECK(basis_ops(Z, {z(1)}, {z(4)}, BasisOp::kUnion) == ElementSet{z(1), z(4)});
  CHECK(basis_ops(Z, {z(1)}, {}, BasisOp::kLeftTranslate, z(5)) == ElementSet{z(6)});
  CHECK_THROWS(basis_ops(Z, {z(1)}, {}, BasisOp::kRightTranslate));
  const auto H = GroupSpec::heisenberg();
  const auto prod = basis_ops(H, {GroupElement({1, 0, 0})}, {GroupElement({0, 1, 0})}, BasisOp::kProduct);
  REQUIRE(prod.size() == 1);
  CHECK(oracle::to_vec(*prod.begin()) == oracle::heis_mul({1, 0, 0}, {0, 1, 0}));
  CHECK(basis_ops(H, {GroupElement({1, 0, 0})}, {}, BasisOp::kRightTranslate, GroupElement({0, 1, 0})) ==
        ElementSet{GroupElement({1, 1, 1})});
}

TEST_CASE("metric_from_basis on the minimal bornology of Z") {
  const auto Z = GroupSpec::integers();
  auto d = metric_from_basis(BornologyBasis::minimal(Z));
  CHECK(d->distance(z(0), z(1)) == Distance(1));
  CHECK(d->distance(z(5), z(5)) == Distance(0));
  // D_n is [-ceil(n/2), ceil(n/2)], so C_n = [-n ceil(n/2), n ceil(n/2)].
  for (long long x = -60; x <= 60; ++x) {
    long long n = 0;
    while (n * ((n + 1) / 2) < (x < 0 ? -x : x)) ++n;
    REQUIRE(d->distance(z(0), z(x)) == Distance(n));
  }
}

TEST_CASE("metric_from_basis on integer balls is coarsely the absolute value") {
  const auto Z = GroupSpec::integers();
  auto d = metric_from_basis(BornologyBasis::metric_balls(std::make_shared<const WordMetric>(Z)));
  for (long long x = -80; x <= 80; ++x) {
    long long n = 0;
    while (n * (n + 1) < (x < 0 ? -x : x)) ++n;
    REQUIRE(d->distance(z(0), z(x)) == Distance(n));
  }
  const auto b = BornologyBasis::metric_balls(std::make_shared<const WordMetric>(Z));
  for (std::size_t p = 0; p < 6; ++p) REQUIRE(diameter(*d, *b.entry(p)).finite());
}

TEST_CASE("metric_from_basis passes the axiom suite") {
  const auto Z = GroupSpec::integers();
  const auto H = GroupSpec::heisenberg();
  std::vector<std::pair<BornologyBasis, ElementSet>> cases = {
      {BornologyBasis::minimal(Z), interval(-12, 12)},
      {BornologyBasis::minimal(GroupSpec::free_abelian(2)), ball(GroupSpec::free_abelian(2), 3)},
      {BornologyBasis::minimal(H), ball(H, 2)},
      {BornologyBasis::generated(Z, {SetDescriptor::explicit_set({z(0), z(5)})}, 3), interval(-12, 12)},
  };
  for (const auto& [b, pts] : cases) {
    auto d = metric_from_basis(b);
    const GroupSpec& G = b.group();
    for (const auto& x : pts) {
      REQUIRE(d->distance(x, x) == Distance(0));
      for (const auto& y : pts) {
        const Distance dxy = d->distance(x, y);
        REQUIRE(dxy.finite());
        REQUIRE(dxy == d->distance(y, x));
        if (x != y) REQUIRE(dxy > Distance(0));
        for (const auto& g : {G.identity(), *pts.begin(), *pts.rbegin()}) {
          REQUIRE(d->distance(G.mul(g, x), G.mul(g, y)) == dxy);
        }
        for (const auto& w : pts) REQUIRE(d->distance(x, w) <= dxy + d->distance(y, w));
      }
    }
  }
}

TEST_CASE("chains are nested and multiplicative") {
  const auto Z = GroupSpec::integers();
  auto d = metric_from_basis(BornologyBasis::minimal(Z), 10);
  for (std::size_t n = 0; n + 1 <= 6; ++n) {
    const ElementSet cn = d->chain(n);
    const ElementSet cn1 = d->chain(n + 1);
    for (const auto& g : cn) REQUIRE(cn1.contains(g));
    for (std::size_t m = 0; n + m <= 6; ++m) {
      for (const auto& g : product(Z, cn, d->chain(m))) REQUIRE(d->chain(n + m).contains(g));
    }
  }
  CHECK(d->distance(z(0), z(10000)).exceeded());
}

TEST_CASE("finite_diameter_sets_match examples") {
  const auto Z = GroupSpec::integers();
  WordMetric w(Z, 201);
  const ElementSet T = interval(-50, 50);
  auto ok = finite_diameter_sets_match(BornologyBasis::minimal(Z), w, T, 101, 100, 200, 3);
  CHECK(ok.match);
  CHECK(ok.samples_checked > 200);

  const ElementSet T2 = interval(-20, 20);
  auto bad = finite_diameter_sets_match(BornologyBasis::full(Z), w, T2, 1, 10, 50, 3);
  CHECK_FALSE(bad.match);
  REQUIRE(bad.counterexample);
  CHECK(*bad.counterexample == T2);
  CHECK(bad.counterexample_member);

  const long long k = 5;
  QuotientWordMetric q(1, {{k}});
  auto gen = BornologyBasis::generated(Z, {SetDescriptor::explicit_set(interval(-40, 40, k))}, k / 2 + 1);
  auto coset = finite_diameter_sets_match(gen, q, interval(-20, 20), k, k / 2, 100, 5);
  CHECK(coset.match);
}
