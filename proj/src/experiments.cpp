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

#include "coarsekit/experiments.hpp"

#include <algorithm>
#include <chrono>
#include <sstream>

#include "coarsekit/bornology.hpp"
#include "coarsekit/coarse.hpp"
#include "coarsekit/metrics.hpp"
#include "json.hpp"

namespace coarsekit {

std::string to_string(Tag tag) {
  switch (tag) {
    case Tag::kPaper:
      return "PAPER";
    case Tag::kTrivial:
      return "TRIVIAL";
    case Tag::kDerived:
      return "DERIVED";
  }
  return "?";
}

void ScenarioReport::expect(std::string description, std::string expected, std::string observed,
                            Tag tag) {
  const bool pass = expected == observed;
  assertions.push_back({std::move(description), std::move(expected), std::move(observed), tag, pass});
}

bool ScenarioReport::all_pass() const { return failures() == 0; }

std::size_t ScenarioReport::failures() const {
  return static_cast<std::size_t>(std::count_if(assertions.begin(), assertions.end(),
                                                [](const Assertion& a) { return !a.pass; }));
}

namespace {

GroupElement z(long long v) { return GroupElement({v}); }

GroupElement zi(const Integer& v) { return GroupElement(std::vector<Integer>{v}); }

ElementSet interval(long long lo, long long hi, long long step = 1) {
  ElementSet out;
  for (long long v = lo; v <= hi; v += step) out.insert(z(v));
  return out;
}

std::string str(std::size_t v) { return std::to_string(v); }
std::string str(bool b) { return b ? "true" : "false"; }

std::string verdict_text(const MembershipVerdict& v) { return to_string(v.status); }

// Ladder radii ceil(R/4), ceil(R/2), R, deduplicated.
std::vector<long long> quarter_ladder(std::size_t R) {
  std::vector<long long> out;
  for (std::size_t r : {(R + 3) / 4, (R + 1) / 2, R}) {
    if (r == 0) continue;
    if (out.empty() || out.back() != static_cast<long long>(r)) out.push_back(static_cast<long long>(r));
  }
  return out;
}

}  // namespace

// --- Heisenberg ------------------------------------------------------------

ScenarioReport heisenberg_separation(std::size_t N) {
  ScenarioReport rep;
  rep.scenario = "heisenberg_separation";
  rep.parameters = {{"N", str(N)}};
  const GroupSpec H = GroupSpec::heisenberg();
  auto rho = std::make_shared<const MaxEntryMetric>();
  const MaxEntryNorm norm;

  const EntourageFamily fam = heisenberg_separation_family(N);
  const std::size_t depth = N + 2;
  const ControlledVerdict bounded =
      controlled_probe(fam, Structure::bounded_by_metric(rho), N, depth);
  const ControlledVerdict left =
      controlled_probe(fam, Structure::left_bornological(BornologyBasis::metric_balls(rho)), N,
                       depth);
  rep.truncations.push_back("family indices 1.." + str(N) + ", cover depth <= " + str(depth));

  for (std::size_t n = 1; n <= N; ++n) {
    const long long k = static_cast<long long>(n);
    const GroupElement A({k, 0, 1});
    const GroupElement B({k + 1, 1, 1});
    const GroupElement shadow = H.mul(H.inv(B), A);
    const Integer d = max_entry_distance(A, B);
    const Distance nv = norm.norm(shadow);
    rep.rows.push_back({n,
                        {{"A_n", format_element(H, A)},
                         {"B_n", format_element(H, B)},
                         {"rho(A_n,B_n)", d.str()},
                         {"B_n^-1 A_n", format_element(H, shadow)},
                         {"norm", nv.str()},
                         {"bounded_value", bounded.values[n - 1].second.str()},
                         {"left_value", left.values[n - 1].second.str()}}});
    rep.expect("rho(A_n,B_n) at n=" + str(n), "1", d.str(), Tag::kPaper);
    rep.expect("max-entry norm of B_n^-1 A_n at n=" + str(n), std::to_string(n + 1), nv.str(),
               Tag::kPaper);
    rep.expect("B_n^-1 A_n at n=" + str(n), "(-1,-1," + std::to_string(n + 1) + ")",
               format_element(H, shadow), Tag::kDerived);
  }
  rep.expect("left shadow cover depth at n=N", std::to_string(N + 1),
             left.values.back().second.str(), Tag::kDerived);
  if (N >= 2) {
    rep.expect("trend under the max-entry bounded structure", "bounded", to_string(bounded.trend),
               Tag::kPaper);
    rep.expect("trend under the left structure of max-entry balls", "growing",
               to_string(left.trend), Tag::kPaper);
  }
  return rep;
}

ScenarioReport heisenberg_pseudometric(std::size_t N) {
  ScenarioReport rep;
  rep.scenario = "heisenberg_pseudometric";
  rep.parameters = {{"N", str(N)}};
  const GroupSpec H = GroupSpec::heisenberg();
  const FirstEntryPseudometric rho;
  const auto layers = ball_layers(H, N);
  std::vector<GroupElement> elems;
  std::size_t mismatches = 0;
  std::size_t asymmetric = 0;
  std::size_t zero_pairs = 0;
  std::size_t pairs = 0;
  for (std::size_t r = 0; r < layers.size(); ++r) {
    elems.insert(elems.end(), layers[r].begin(), layers[r].end());
    rep.rows.push_back({r, {{"ball_size", str(elems.size())}}});
  }
  for (const auto& A : elems) {
    for (const auto& B : elems) {
      ++pairs;
      const GroupElement q = H.mul(H.inv(A), B);
      const Integer lhs = abs(q.coords[0]);
      const Distance d = rho.distance(A, B);
      if (Distance(Rational(lhs)) != d) ++mismatches;
      if (rho.distance(B, A) != d) ++asymmetric;
      if (!(A == B) && d == Distance(0)) ++zero_pairs;
    }
  }
  const std::size_t tri_radius = std::min<std::size_t>(N, 3);
  std::vector<GroupElement> small;
  for (std::size_t r = 0; r <= tri_radius && r < layers.size(); ++r) {
    small.insert(small.end(), layers[r].begin(), layers[r].end());
  }
  std::size_t triangle_failures = 0;
  for (const auto& x : small) {
    for (const auto& y : small) {
      const Distance dxy = rho.distance(x, y);
      for (const auto& w : small) {
        if (dxy > rho.distance(x, w) + rho.distance(w, y)) ++triangle_failures;
      }
    }
  }
  rep.truncations.push_back("word ball of radius " + str(N) + " (" + str(elems.size()) +
                            " elements, " + str(pairs) + " ordered pairs)");
  rep.truncations.push_back("triangle inequality on the word ball of radius " + str(tri_radius));
  rep.expect("pairs with |entry12(A^-1 B)| != |a12 - b12|", "0", str(mismatches), Tag::kPaper);
  rep.expect("asymmetric pairs", "0", str(asymmetric), Tag::kTrivial);
  rep.expect("triangle inequality failures", "0", str(triangle_failures), Tag::kTrivial);
  rep.expect("distinct pairs at pseudodistance 0 exist", "true", str(zero_pairs > 0),
             Tag::kTrivial);
  rep.expect("rho((1,0,0),(1,0,5))", "0",
             rho.distance(GroupElement({1, 0, 0}), GroupElement({1, 0, 5})).str(), Tag::kTrivial);
  rep.expect("rho((2,3,4),(2,3,4))", "0",
             rho.distance(GroupElement({2, 3, 4}), GroupElement({2, 3, 4})).str(), Tag::kTrivial);
  return rep;
}

// --- Z modulo kZ -----------------------------------------------------------

ScenarioReport z_quotient_metric(std::size_t k, std::size_t R) {
  ScenarioReport rep;
  rep.scenario = "z_quotient_metric";
  rep.parameters = {{"k", str(k)}, {"R", str(R)}};
  const long long kk = static_cast<long long>(k);
  const long long RR = static_cast<long long>(R);
  const GroupSpec Z = GroupSpec::integers();
  const GroupSpec Zk = GroupSpec::cyclic(kk);
  auto q = std::make_shared<const QuotientWordMetric>(1, std::vector<std::vector<Integer>>{{kk}});
  const WordMetric w(Z, 2 * R + 1);

  for (long long r = kk; r <= RR; ++r) {
    const ElementSet T = interval(-r, r);
    const Distance dq = diameter(*q, T);
    const Distance dw = diameter(w, T);
    rep.rows.push_back({static_cast<std::size_t>(r),
                        {{"pseudometric_diameter", dq.str()}, {"word_diameter", dw.str()}}});
    rep.expect("pseudometric diameter of [-R,R] at R=" + std::to_string(r),
               std::to_string(k / 2), dq.str(), Tag::kDerived);
    rep.expect("word diameter of [-R,R] at R=" + std::to_string(r), std::to_string(2 * r),
               dw.str(), Tag::kTrivial);
  }
  for (long long j = -3; j <= 3; ++j) {
    rep.expect("quotient_distance(0," + std::to_string(kk * j) + ")", "0",
               quotient_distance(*q, z(0), z(kk * j)).str(), Tag::kTrivial);
  }

  // <kZ> on Z, realized by a truncated coset seed.
  const long long reach = std::max(2 * RR, 10 * kk);
  const long long top = (reach / kk) * kk;
  const SetDescriptor seed = SetDescriptor::explicit_set(interval(-top, top, kk));
  const std::size_t depth = k;
  const BornologyBasis gen = BornologyBasis::generated(Z, {seed}, k / 2 + 1);
  const BornologyBasis quot = BornologyBasis::minimal(Zk);
  const Structure on_z = Structure::left_bornological(gen);
  const Structure on_zk = Structure::left_bornological(quot);
  rep.truncations.push_back("seed kZ within [-" + std::to_string(reach) + "," +
                            std::to_string(reach) + "], generated levels <= " +
                            str(k / 2 + 1) + ", cover depth <= " + str(depth));

  TruncationLadder ladder;
  for (long long r : quarter_ladder(R)) ladder.push_back(interval(-r, r));
  rep.truncations.push_back("domain ladder [-r,r] for r in {" + [&] {
    std::string s;
    for (long long r : quarter_ladder(R)) s += (s.empty() ? "" : ",") + std::to_string(r);
    return s;
  }() + "}");

  const ElementMap pi = [Zk](const GroupElement& x) { return Zk.canonical(x.coords); };
  const ElementMap section = [](const GroupElement& r) { return GroupElement(r.coords); };
  const std::size_t horizon = std::max<std::size_t>(10, 2 * k);

  std::vector<EntourageFamily> z_families = {z_shift_family(kk, horizon),
                                             z_shift_family(1, horizon)};
  std::vector<ElementSet> zk_samples = {ElementSet{Zk.identity()}, ElementSet{Zk.canonical({1})},
                                        ball(Zk, k)};
  CoarseMapReport pr =
      coarse_map_probe(pi, on_z, on_zk, z_families, zk_samples, ladder, horizon, depth);

  EntourageFamily zk_family{"residue_shift", Zk, horizon, [Zk](std::size_t n) {
                              return Entourage{{Zk.identity(),
                                                Zk.canonical({Integer(n)})}};
                            }};
  const TruncationLadder zk_ladder = {ball(Zk, k), ball(Zk, k)};
  std::vector<ElementSet> z_samples = {ElementSet{z(0)}, interval(-RR, RR)};
  CoarseMapReport ir = coarse_map_probe(section, on_zk, on_z, {zk_family}, z_samples, zk_ladder,
                                        horizon, depth);

  const ElementMap i_pi = [&](const GroupElement& x) { return section(pi(x)); };
  const ElementMap id = [](const GroupElement& x) { return x; };
  const ControlledVerdict close = closeness_probe(i_pi, id, ladder, on_z, depth);

  rep.expect("projection is bornologous", "true", str(pr.bornologous_ok), Tag::kPaper);
  rep.expect("projection is proper", "true", str(pr.proper_ok), Tag::kPaper);
  rep.expect("section is bornologous", "true", str(ir.bornologous_ok), Tag::kPaper);
  rep.expect("section is proper", "true", str(ir.proper_ok), Tag::kPaper);
  rep.expect("section after projection is close to the identity", "bounded",
             to_string(close.trend), Tag::kPaper);
  return rep;
}

// --- generated bornologies on Z --------------------------------------------

ScenarioReport powers_of_ten(std::size_t depth, std::size_t N) {
  ScenarioReport rep;
  rep.scenario = "powers_of_ten";
  rep.parameters = {{"depth", str(depth)}, {"N", str(N)}};
  const GroupSpec Z = GroupSpec::integers();
  const std::size_t L = std::to_string(N).size() + 4;
  const std::size_t cap = std::max<std::size_t>(depth, 2);
  const BornologyBasis b =
      BornologyBasis::generated(Z, {SetDescriptor::geometric_seed(10, L)}, cap);
  rep.truncations.push_back("seed geometric(10," + str(L) + "), generated levels <= " +
                            str(cap));
  const long long NN = static_cast<long long>(N);

  rep.expect("member({0,10,100}, depth 1)", "Member",
             verdict_text(member(b, {z(0), z(10), z(100)}, 1)), Tag::kTrivial);
  rep.expect("member({20})", "Member", verdict_text(member(b, {z(20)}, 1)), Tag::kTrivial);
  const ElementSet evens = interval(0, NN, 2);
  const ElementSet whole = interval(-NN, NN);
  for (std::size_t d = 1; d <= depth; ++d) {
    const MembershipVerdict ve = member(b, evens, d);
    const MembershipVerdict vw = member(b, whole, d);
    rep.rows.push_back({d, {{"evens", verdict_text(ve)}, {"interval", verdict_text(vw)}}});
    rep.expect("evidence at depth " + str(d) + ": evens in [0,N] not covered",
               "NotCoveredAtDepth", verdict_text(ve), Tag::kDerived);
    rep.expect("evidence at depth " + str(d) + ": [-N,N] not covered", "NotCoveredAtDepth",
               verdict_text(vw), Tag::kDerived);
  }
  return rep;
}

ScenarioReport aj_family(std::size_t J, std::size_t depth) {
  ScenarioReport rep;
  rep.scenario = "aj_family";
  rep.parameters = {{"J", str(J)}, {"depth", str(depth)}};
  const GroupSpec Z = GroupSpec::integers();
  const std::size_t length = 4;
  std::vector<SetDescriptor> seeds;
  for (std::size_t j = 0; j <= J; ++j) {
    seeds.push_back(SetDescriptor::geometric_seed(Integer(10 + 10 * j), length));
  }
  rep.truncations.push_back("seeds geometric(10+10j," + str(length) + ") for j <= " + str(J) +
                            ", generated levels <= " + str(depth));
  for (std::size_t j = 0; j <= J; ++j) {
    std::vector<SetDescriptor> others;
    for (std::size_t i = 0; i <= J; ++i) {
      if (i != j) others.push_back(seeds[i]);
    }
    const ElementSet Aj = seeds[j].materialize(Z);
    const BornologyBasis without = BornologyBasis::generated(Z, others, depth);
    const BornologyBasis own = BornologyBasis::generated(Z, {seeds[j]}, depth);
    IndexRow row{j, {}};
    for (std::size_t d = 1; d <= depth; ++d) {
      const MembershipVerdict v = member(without, Aj, d);
      row.values.emplace_back("depth " + str(d), verdict_text(v));
      rep.expect("evidence at depth " + str(d) + ": A_" + str(j) +
                     " not covered by the other seeds",
                 "NotCoveredAtDepth", verdict_text(v), Tag::kDerived);
    }
    rep.rows.push_back(std::move(row));
    rep.expect("A_" + str(j) + " in its own bornology at depth 1", "Member",
               verdict_text(member(own, Aj, 1)), Tag::kTrivial);
  }
  const BornologyBasis all = BornologyBasis::generated(Z, seeds, std::max<std::size_t>(depth, 3));
  rep.expect("member({30})", "Member", verdict_text(member(all, {z(30)}, 1)), Tag::kTrivial);
  return rep;
}

// --- proper left-invariant metrics on Z ------------------------------------

ScenarioReport smith_uniqueness_probe(std::size_t R) {
  ScenarioReport rep;
  rep.scenario = "smith_uniqueness_probe";
  rep.parameters = {{"R", str(R)}};
  const GroupSpec Z1 = GroupSpec::integers();
  const GroupSpec Z23 = Z1.with_generators({z(2), z(3)});
  auto d1 = std::make_shared<const WordMetric>(Z1, 2 * R + 1);
  auto d2 = std::make_shared<const WordMetric>(Z23, 2 * R + 1);
  const std::vector<long long> radii = quarter_ladder(R);
  TruncationLadder ladder;
  for (long long r : radii) ladder.push_back(interval(-r, r));
  rep.truncations.push_back("ladder [-r,r] for r in {" + [&] {
    std::string s;
    for (long long r : radii) s += (s.empty() ? "" : ",") + std::to_string(r);
    return s;
  }() + "}");

  rep.expect("word norm of 1 for generators {2,3}", "2", d2->distance(z(0), z(1)).str(),
             Tag::kDerived);
  rep.expect("d1(0,0)", "0", d1->distance(z(0), z(0)).str(), Tag::kTrivial);
  rep.expect("d2(0,0)", "0", d2->distance(z(0), z(0)).str(), Tag::kTrivial);

  // Lipschitz-style table: max d2 over pairs with d1 <= C, per ladder step.
  for (std::size_t C = 1; C <= 5; ++C) {
    IndexRow row{C, {}};
    std::vector<Distance> values;
    for (std::size_t s = 0; s < ladder.size(); ++s) {
      Distance best(0);
      for (const auto& x : ladder[s]) {
        for (const auto& y : ladder[s]) {
          if (d1->distance(x, y) <= Distance(static_cast<long long>(C))) {
            best = max(best, d2->distance(x, y));
          }
        }
      }
      values.push_back(best);
      row.values.emplace_back("r" + std::to_string(radii[s]), best.str());
    }
    rep.rows.push_back(std::move(row));
    rep.expect("max d2 over d1 <= " + str(C) + " stabilizes", "bounded",
               to_string(classify_trend(values)), Tag::kDerived);
  }

  auto step_family = [&](const GroupSpec& G, long long s) {
    return EntourageFamily{"step(" + std::to_string(s) + ")", G, ladder.size(),
                           [&ladder, s](std::size_t n) {
                             Entourage e;
                             for (const auto& x : ladder[n - 1]) {
                               GroupElement y = zi(x.coords[0] + s);
                               if (ladder[n - 1].contains(y)) e.emplace(x, y);
                             }
                             return e;
                           }};
  };
  const ElementMap id = [](const GroupElement& x) { return x; };
  const Structure s1 = Structure::bounded_by_metric(d1);
  const Structure s2 = Structure::bounded_by_metric(d2);
  const std::vector<EntourageFamily> fam1 = {step_family(Z1, 1), step_family(Z1, 2),
                                             step_family(Z1, 3)};
  const std::vector<ElementSet> unit2 = {d2->open_ball_at_identity(2)};
  const std::vector<ElementSet> unit1 = {d1->open_ball_at_identity(2)};
  const CoarseMapReport forward =
      coarse_map_probe(id, s1, s2, fam1, unit2, ladder, ladder.size(), 1);
  const CoarseMapReport backward =
      coarse_map_probe(id, s2, s1, fam1, unit1, ladder, ladder.size(), 1);
  rep.expect("identity (Z,{1}) -> (Z,{2,3}) is bornologous", "true", str(forward.bornologous_ok),
             Tag::kDerived);
  rep.expect("identity (Z,{1}) -> (Z,{2,3}) is proper", "true", str(forward.proper_ok),
             Tag::kDerived);
  rep.expect("identity (Z,{2,3}) -> (Z,{1}) is bornologous", "true",
             str(backward.bornologous_ok), Tag::kDerived);
  rep.expect("identity (Z,{2,3}) -> (Z,{1}) is proper", "true", str(backward.proper_ok),
             Tag::kDerived);
  return rep;
}

// --- rho+ ------------------------------------------------------------------

ScenarioReport rho_plus_demo(std::size_t R) {
  ScenarioReport rep;
  rep.scenario = "rho_plus_demo";
  rep.parameters = {{"R", str(R)}};
  const GroupSpec Z = GroupSpec::integers();
  const WordMetric dz(Z);
  const std::vector<long long> radii = quarter_ladder(R);
  const long long window = std::min<long long>(static_cast<long long>(R), 10);
  std::size_t mismatches = 0;
  std::vector<std::string> r29;
  for (long long r : radii) {
    const ElementSet T = interval(-r, r);
    for (long long x = -window; x <= window; ++x) {
      for (long long y = -window; y <= window; ++y) {
        if (rho_plus_truncated(dz, z(x), z(y), T) != dz.distance(z(x), z(y))) ++mismatches;
      }
    }
    r29.push_back(rho_plus_truncated(dz, z(2), z(9), T).str());
  }
  rep.truncations.push_back("Z: shifts [-r,r], pairs in [-" + std::to_string(window) + "," +
                            std::to_string(window) + "]");
  rep.expect("Z pairs where truncated rho+ differs from |x-y|", "0", str(mismatches),
             Tag::kTrivial);
  for (std::size_t i = 0; i < radii.size(); ++i) {
    rep.expect("Z rho+(2,9) with shifts [-" + std::to_string(radii[i]) + "," +
                   std::to_string(radii[i]) + "]",
               "7", r29[i], Tag::kTrivial);
  }

  const GroupSpec H = GroupSpec::heisenberg();
  const MaxEntryMetric rho;
  const GroupElement A1({1, 0, 1});
  const GroupElement B1({2, 1, 1});
  const GroupElement B1inv = H.inv(B1);
  rep.expect("H rho(A_1,B_1)", "1", rho.distance(A1, B1).str(), Tag::kPaper);
  const std::size_t top = std::min<std::size_t>(R, 6);
  const auto layers = ball_layers(H, top);
  ElementSet T;
  std::vector<Distance> values;
  bool nondecreasing = true;
  for (std::size_t r = 0; r < layers.size(); ++r) {
    T.insert(layers[r].begin(), layers[r].end());
    if (r == 0) continue;
    const Distance v = rho_plus_truncated(rho, A1, B1, T);
    if (!values.empty() && v < values.back()) nondecreasing = false;
    values.push_back(v);
    const bool has_inv = T.contains(B1inv);
    rep.rows.push_back({r,
                        {{"shifts", str(T.size())},
                         {"rho_plus(A_1,B_1)", v.str()},
                         {"contains B_1^-1", str(has_inv)}}});
    if (has_inv) {
      rep.expect("H rho+(A_1,B_1) >= 2 on the word ball of radius " + str(r), "true",
                 str(Distance(2) <= v), Tag::kPaper);
    }
  }
  rep.truncations.push_back("H: shifts in word balls of radius 1.." + str(top));
  rep.expect("H rho+(A_1,B_1) nondecreasing along the ladder", "true", str(nondecreasing),
             Tag::kDerived);
  if (values.size() >= 2) {
    rep.expect("H rho+(A_1,B_1) trend", "growing", to_string(classify_trend(values)),
               Tag::kDerived);
  }
  rep.expect("rho+(x,x) for x=(3,-1,2)", "0",
             rho_plus_truncated(rho, GroupElement({3, -1, 2}), GroupElement({3, -1, 2}), T).str(),
             Tag::kTrivial);
  return rep;
}

// --- registry --------------------------------------------------------------

namespace {

std::size_t as_size(const ScenarioParams& p, const std::string& key) {
  const Integer& v = p.at(key);
  if (v > Integer(1'000'000'000)) throw ConfigError("parameter " + key + " is too large");
  return static_cast<std::size_t>(v);
}

std::vector<ScenarioInfo> build_registry() {
  std::vector<ScenarioInfo> r = {
      {"aj_family",
       "A_j = geometric(10+10j,4) seeds; each A_j not covered by the others at small depth",
       {{"J", 2, 2, "largest seed index"}, {"depth", 3, 1, "cover depth and level cap"}},
       [](const ScenarioParams& p) { return aj_family(as_size(p, "J"), as_size(p, "depth")); }},
      {"heisenberg_pseudometric",
       "first-entry pseudometric on the Heisenberg group: invariance and axioms",
       {{"N", 4, 1, "word-ball radius"}},
       [](const ScenarioParams& p) { return heisenberg_pseudometric(as_size(p, "N")); }},
      {"heisenberg_separation",
       "(B_n, A_n) is controlled for the max-entry metric but not left-bornologically",
       {{"N", 50, 1, "largest index n"}},
       [](const ScenarioParams& p) { return heisenberg_separation(as_size(p, "N")); }},
      {"powers_of_ten", "generated bornology of {0,10,100,...} versus the even integers",
       {{"depth", 3, 1, "largest cover depth"}, {"N", 50, 10, "truncation bound"}},
       [](const ScenarioParams& p) { return powers_of_ten(as_size(p, "depth"), as_size(p, "N")); }},
      {"rho_plus_demo", "truncated rho+ on Z and on the Heisenberg max-entry metric",
       {{"R", 50, 2, "truncation radius"}},
       [](const ScenarioParams& p) { return rho_plus_demo(as_size(p, "R")); }},
      {"smith_uniqueness_probe", "word metrics for {1} and {2,3} on Z are coarsely equivalent",
       {{"R", 50, 4, "truncation radius"}},
       [](const ScenarioParams& p) { return smith_uniqueness_probe(as_size(p, "R")); }},
      {"z_quotient_metric", "pseudometric on Z pulled back from Z/k",
       {{"k", 5, 2, "modulus"}, {"R", 50, 1, "truncation radius"}},
       [](const ScenarioParams& p) { return z_quotient_metric(as_size(p, "k"), as_size(p, "R")); }},
  };
  std::sort(r.begin(), r.end(),
            [](const ScenarioInfo& a, const ScenarioInfo& b) { return a.name < b.name; });
  return r;
}

}  // namespace

const std::vector<ScenarioInfo>& scenario_registry() {
  static const std::vector<ScenarioInfo> registry = build_registry();
  return registry;
}

const ScenarioInfo* find_scenario(std::string_view name) {
  for (const auto& s : scenario_registry()) {
    if (s.name == name) return &s;
  }
  return nullptr;
}

ScenarioReport run_scenario(std::string_view name, const ScenarioParams& overrides) {
  const ScenarioInfo* info = find_scenario(name);
  if (!info) throw ConfigError("unknown scenario '" + std::string(name) + "'");
  ScenarioParams params;
  for (const auto& spec : info->params) params[spec.name] = spec.default_value;
  for (const auto& [key, value] : overrides) {
    auto it = std::find_if(info->params.begin(), info->params.end(),
                           [&](const ParamSpec& s) { return s.name == key; });
    if (it == info->params.end()) {
      throw ConfigError("unknown parameter '" + key + "' for scenario " + info->name);
    }
    if (value < it->minimum) {
      throw ConfigError("parameter " + key + " must be >= " + it->minimum.str());
    }
    params[key] = value;
  }
  const auto start = std::chrono::steady_clock::now();
  ScenarioReport report = info->run(params);
  report.wall_time_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

// --- emitters --------------------------------------------------------------

std::string format_tsv(const ScenarioReport& r, bool include_timing) {
  std::ostringstream out;
  auto line = [&](std::string_view record, std::string_view key, std::string_view value,
                  std::string_view expected, std::string_view tag, std::string_view pass) {
    out << record << '\t' << key << '\t' << value << '\t' << expected << '\t' << tag << '\t'
        << pass << '\n';
  };
  line("record", "key", "value", "expected", "tag", "pass");
  line("scenario", "name", r.scenario, "", "", "");
  for (const auto& [k, v] : r.parameters) line("param", k, v, "", "", "");
  for (std::size_t i = 0; i < r.truncations.size(); ++i) {
    line("truncation", std::to_string(i), r.truncations[i], "", "", "");
  }
  for (const auto& row : r.rows) {
    std::string joined;
    for (const auto& [k, v] : row.values) joined += (joined.empty() ? "" : "; ") + k + "=" + v;
    line("row", std::to_string(row.index), joined, "", "", "");
  }
  for (const auto& a : r.assertions) {
    line("assert", a.description, a.observed, a.expected, to_string(a.tag),
         a.pass ? "pass" : "FAIL");
  }
  line("summary", "failures", std::to_string(r.failures()), "0", "", r.all_pass() ? "pass" : "FAIL");
  if (include_timing && r.wall_time_seconds) {
    std::ostringstream t;
    t.precision(3);
    t << std::fixed << *r.wall_time_seconds;
    line("timing", "wall_time_seconds", t.str(), "", "", "");
  }
  return out.str();
}

std::string format_json(const ScenarioReport& r, bool include_timing) {
  nlohmann::ordered_json j;
  j["scenario"] = r.scenario;
  nlohmann::ordered_json params = nlohmann::ordered_json::object();
  for (const auto& [k, v] : r.parameters) params[k] = v;
  j["parameters"] = params;
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (const auto& row : r.rows) {
    nlohmann::ordered_json values = nlohmann::ordered_json::object();
    for (const auto& [k, v] : row.values) values[k] = v;
    rows.push_back({{"index", row.index}, {"values", values}});
  }
  j["rows"] = rows;
  nlohmann::ordered_json asserts = nlohmann::ordered_json::array();
  for (const auto& a : r.assertions) {
    asserts.push_back({{"description", a.description},
                       {"expected", a.expected},
                       {"observed", a.observed},
                       {"tag", to_string(a.tag)},
                       {"pass", a.pass}});
  }
  j["assertions"] = asserts;
  j["truncations"] = r.truncations;
  j["pass"] = r.all_pass();
  if (include_timing && r.wall_time_seconds) j["wall_time_seconds"] = *r.wall_time_seconds;
  return j.dump(2) + "\n";
}

}  // namespace coarsekit
