#include "doctest.h"

#include <set>

#include "balltiling/verifier.hpp"
#include "json.hpp"

using namespace balltiling;

namespace {

SpaceSpec plane() { return SpaceSpec::single("z", 2, NormKind::LInf); }

SubspaceFrame plane_frame() {
  SparseVec e0, e1;
  e0.set_block("z", 0, 1);
  e1.set_block("z", 1, 1);
  return SubspaceFrame({e0, e1}, "R2");
}

SparseVec pt(const Scalar& x, const Scalar& y) {
  SparseVec v;
  v.set_block("z", 0, x);
  v.set_block("z", 1, y);
  return v;
}

std::vector<SparseVec> grid_samples(RationalSampler& rs, int n, const Scalar& lo, const Scalar& hi) {
  std::vector<SparseVec> out;
  for (int i = 0; i < n; ++i) out.push_back(pt(rs.dyadic_in(lo, hi, 10), rs.dyadic_in(lo, hi, 10)));
  return out;
}

}  // namespace

TEST_CASE("uniform grid passes overlap and star checks") {
  auto fam = std::make_shared<CoverFamily>(plane(), plane_frame(), nullptr);
  WhitneyHandle h(fam);
  RationalSampler rs(3);
  auto samples = grid_samples(rs, 300, -4, 4);
  auto rep = verify_non_overlapping(h, samples);
  CHECK(rep.passed());
  CHECK(rep.counts["located_members"] > 50);
  CHECK(verify_covering(h, samples).passed());

  auto members = h.locate(pt(Scalar(1, 3), Scalar(1, 3)));
  REQUIRE(members.size() == 1);
  CHECK(star_degree(h, members[0]) == 8);
  auto star = star_degree_report(h, members, 8);
  CHECK(star.passed());
  CHECK(star.star_histogram[8] == 1);
  CHECK_FALSE(star_degree_report(h, members, 7).passed());
  CHECK(replay(h, star_degree_report(h, members, 7).violations[0]));
}

TEST_CASE("overlapping input balls give a witness pair") {
  const SpaceSpec s = SpaceSpec::single("z", 2, NormKind::L1);
  auto h = ListHandle::from_balls(s, {Ball(pt(0, 0), 1), Ball(pt(Scalar(3, 2), 0), 1), Ball(pt(5, 5), 1)});
  auto rep = verify_non_overlapping(h, {pt(Scalar(3, 4), 0), pt(5, 5)});
  REQUIRE(rep.violations.size() == 1);
  CHECK(rep.violations[0].members.size() == 2);
  CHECK(replay(h, rep.violations[0]));

  // Touching balls do not overlap.
  auto touch = ListHandle::from_balls(s, {Ball(pt(0, 0), 1), Ball(pt(2, 0), 1)});
  CHECK(verify_non_overlapping(touch, {pt(1, 0)}).passed());
  CHECK(star_degree(touch, touch.enumerate()[0]) == 1);

  auto alone = ListHandle::from_balls(s, {Ball(pt(0, 0), 1), Ball(pt(9, 0), 1)});
  CHECK(star_degree(alone, alone.enumerate()[0]) == 0);
}

TEST_CASE("covering check finds holes") {
  std::vector<Ball> grid;
  for (int i = -2; i <= 2; ++i)
    for (int j = -2; j <= 2; ++j)
      if (i != 0 || j != 0) grid.emplace_back(pt(2 * i, 2 * j), 1);
  auto h = ListHandle::from_balls(plane(), grid);
  auto rep = verify_covering(h, {pt(Scalar(1, 3), Scalar(-1, 5)), pt(2, 2), pt(Scalar(1, 2), 0)});
  CHECK(rep.violations.size() == 2);
  for (const auto& w : rep.violations) CHECK(replay(h, w));
  CHECK(rep.counts["covered"] == 1);

  auto single = ListHandle::from_balls(plane(), {Ball(pt(1, 2), 0)});
  CHECK(verify_covering(single, {pt(1, 2)}).passed());
}

TEST_CASE("sweep pairwise check agrees with brute force") {
  const SpaceSpec s({Block{"z", 2, NormKind::L1}}, true);
  RationalSampler rs(17);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<Member> ms;
    for (int i = 0; i < 40; ++i) {
      SparseVec c = pt(rs.small_rational(10, 2), rs.small_rational(10, 2));
      if (rs.coin()) c.set_tail(TailIndex(rs.integer(1, 3)), rs.small_rational(3, 2));
      ms.push_back(Member{Ball(c, Scalar(rs.integer(1, 4), 2)), "#" + std::to_string(i)});
    }
    std::set<std::pair<std::string, std::string>> brute;
    for (std::size_t i = 0; i < ms.size(); ++i)
      for (std::size_t j = i + 1; j < ms.size(); ++j)
        if (distance(ms[i].ball.center, ms[j].ball.center, s) < ms[i].ball.radius + ms[j].ball.radius)
          brute.insert(std::minmax(ms[i].tag, ms[j].tag));
    std::set<std::pair<std::string, std::string>> got;
    for (const auto& w : check_pairwise(s, ms).violations) got.insert(std::minmax(w.members[0].tag, w.members[1].tag));
    CHECK(got == brute);
  }
}

TEST_CASE("stage tiling has no cross-stage co-membership") {
  SparseVec one;
  one.set_block("y", 0, 1);
  auto t = std::make_shared<StageTiling>(SpaceSpec::single("y", 1, NormKind::LInf), std::vector<SparseVec>{one});
  t->build_stage(2);
  StageHandle h(t);
  RationalSampler rs(8);
  std::vector<SparseVec> samples;
  for (int i = 0; i < 150; ++i) {
    SparseVec p;
    p.set_block("y", 0, rs.dyadic_in(-3, 3, 8));
    p.set_tail(TailIndex(1), rs.dyadic_in(-3, 3, 8));
    p.set_tail(TailIndex(2), rs.dyadic_in(-3, 3, 8));
    samples.push_back(p);
  }
  CHECK(verify_covering(h, samples).passed());
  CHECK(verify_non_overlapping(h, samples).passed());
  for (const auto& p : samples) {
    std::set<char> stages;
    for (const auto& m : h.locate(p)) stages.insert(m.tag[1]);
    CHECK(stages.size() == 1);
  }
}

TEST_CASE("boundary cover fact in low dimensions") {
  RationalSampler rs(5);
  // n = 1: [-1, 1] inside [-2, 2].
  auto r1 = boundary_cover_oracle(BodyNorm::L1, PlainBall{{0}, 1}, {PlainBall{{0}, 2}}, rs);
  CHECK(r1.passed());
  CHECK(r1.counts["interior_escapes"] == 0);

  // n = 2: a disk under two large disks.
  const PlainBall disk{{0, 0}, 1};
  auto r2 = boundary_cover_oracle(BodyNorm::L2, disk, {PlainBall{{0, 10}, Scalar(21, 2)}, PlainBall{{0, -10}, Scalar(21, 2)}}, rs);
  CHECK(r2.passed());
  CHECK(r2.counts["boundary_exact"] == 1);
  CHECK(r2.counts["interior_escapes"] == 0);

  // Uncovered boundary is inconclusive with an exact witness.
  auto r3 = boundary_cover_oracle(BodyNorm::LInf, PlainBall{{0, 0}, 1}, {PlainBall{{5, 0}, 1}}, rs);
  CHECK(r3.inconclusive);
  REQUIRE(r3.findings.size() == 1);
  CHECK(replay(BodyNorm::LInf, r3.findings[0]));
}

TEST_CASE("exact boundary certificates agree with dense sampling") {
  RationalSampler rs(12);
  int covered = 0, uncovered = 0;
  for (BodyNorm norm : {BodyNorm::L1, BodyNorm::LInf, BodyNorm::L2}) {
    for (int trial = 0; trial < 30; ++trial) {
      PlainBall body{{rs.small_rational(2, 2), rs.small_rational(2, 2)}, Scalar(rs.integer(1, 3))};
      std::vector<PlainBall> covers;
      for (int k = 0; k < 2; ++k)
        covers.push_back(PlainBall{{rs.small_rational(6, 2), rs.small_rational(6, 2)}, Scalar(rs.integer(2, 12), 2)});
      auto res = boundary_covered_exact(norm, body, covers);
      REQUIRE(res);
      auto in_any = [&](const std::vector<Scalar>& p) {
        for (const auto& c : covers)
          if (plain_contains(norm, c, p)) return true;
        return false;
      };
      if (res->verdict == Coverage::Uncovered) {
        ++uncovered;
        REQUIRE(res->witness);
        CHECK_FALSE(in_any(*res->witness));
      } else if (res->verdict == Coverage::Covered) {
        ++covered;
        for (int i = 0; i < 400; ++i) CHECK(in_any(sample_sphere(norm, body, rs)));
      }
    }
  }
  CHECK(covered > 5);
  CHECK(uncovered > 5);
}

TEST_CASE("three balls can miss the center only for the round norm") {
  CHECK_FALSE(find_three_ball_escape(BodyNorm::L1));
  CHECK_FALSE(find_three_ball_escape(BodyNorm::LInf));
  auto inst = find_three_ball_escape(BodyNorm::L2);
  REQUIRE(inst);
  CHECK(inst->covers.size() == 3);
  CHECK(inst->center_margin > 0);
  CHECK(boundary_covered_exact(BodyNorm::L2, inst->body, inst->covers)->verdict == Coverage::Covered);
  CHECK_FALSE(plain_contains(BodyNorm::L2, inst->covers[0], {0, 0}));
  RationalSampler rs(2);
  auto rep = boundary_cover_oracle(BodyNorm::L2, inst->body, inst->covers, rs);
  CHECK(rep.violations.empty());
  CHECK(rep.counts["interior_escapes"] > 0);
  REQUIRE_FALSE(rep.findings.empty());
  CHECK(replay(BodyNorm::L2, rep.findings[0]));
}

TEST_CASE("singular probes") {
  auto obstacle = std::make_shared<BallListObstacle>(plane(), std::vector<Ball>{Ball(pt(0, 0), 1)});
  auto fam = std::make_shared<CoverFamily>(plane(), plane_frame(), obstacle);
  WhitneyHandle h(fam);
  ProbeOptions opts{{Scalar(1, 2), Scalar(1, 8)}, {2, 4, 6}};
  const SparseVec edge = pt(1, Scalar(1, 3));
  const SparseVec far = pt(20, 20);
  auto rep = probe_singular(h, {edge, far}, opts);
  CHECK(rep.counts["flagged"] == 1);
  REQUIRE(rep.findings.size() == 1);
  CHECK(*rep.findings[0].point == edge);
  CHECK(obstacle->distance(*rep.findings[0].point) == 0);

  auto list = ListHandle::from_balls(plane(), {Ball(pt(0, 0), 1), Ball(pt(2, 0), 1)});
  CHECK(probe_singular(list, {pt(1, 0)}, opts).counts["flagged"] == 0);
}

TEST_CASE("reports serialize and merge") {
  const SpaceSpec s = SpaceSpec::single("z", 2, NormKind::L1);
  auto h = ListHandle::from_balls(s, {Ball(pt(0, 0), 1), Ball(pt(1, 0), 1)});
  auto a = verify_non_overlapping(h, {pt(0, 0)});
  auto b = verify_covering(h, {pt(0, 0), pt(7, 7)});
  Report m = a;
  m.merge(b);
  CHECK(m.violations.size() == 2);
  CHECK(m.checks == std::vector<std::string>{"overlap", "cover"});
  auto j = nlohmann::json::parse(m.to_json());
  CHECK(j["passed"] == false);
  CHECK(j["violations"].size() == 2);
  CHECK(j["violations"][0]["members"][0]["ball"]["radius"] == "1");
  CHECK(j["max_radius"] == "1");
}
