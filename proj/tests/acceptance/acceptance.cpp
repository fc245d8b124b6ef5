#include <mpfr.h>

#include <array>
#include <chrono>
#include <cmath>
#include <functional>
#include <iomanip>
#include <iostream>
#include <map>
#include <set>
#include <sstream>

#include "balltiling/octahedron.hpp"
#include "balltiling/verifier.hpp"
#include "oracle.hpp"

using namespace balltiling;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string fmt(long double x, int prec = 3) {
  std::ostringstream o;
  o << std::setprecision(prec) << static_cast<double>(x);
  return o.str();
}

SparseVec zpt(const Scalar& x, const Scalar& y) {
  SparseVec v;
  v.set_block("z", 0, x);
  v.set_block("z", 1, y);
  return v;
}

// 1

Outcome octahedron_constants() {
  const auto t0 = Clock::now();
  const long double asin3 = std::asin(1.0L / 3), pi = std::acos(-1.0L);
  const long double vertex = solid_angle_numeric({1, 0, 0}, {{0, 1, 0}, {0, -1, 0}, {0, 0, 1}, {0, 0, -1}});
  const long double edge = tangent_cone_angle({Scalar(1, 2), Scalar(1, 2), 0});
  const long double face = tangent_cone_angle({Scalar(1, 3), Scalar(1, 3), Scalar(1, 3)});
  const long double ev = std::fabs(vertex - 4 * asin3);
  const long double ee = std::fabs(edge - 2 * std::acos(-1.0L / 3));
  const long double ef = std::fabs(face - 2 * pi);

  // 2 acos(-1/3) - (2 asin(1/3) + pi) at 256 bits.
  mpfr_t a, b, c;
  mpfr_inits2(256, a, b, c, static_cast<mpfr_ptr>(nullptr));
  mpfr_set_si(a, -1, MPFR_RNDN);
  mpfr_div_ui(a, a, 3, MPFR_RNDN);
  mpfr_acos(a, a, MPFR_RNDN);
  mpfr_mul_ui(a, a, 2, MPFR_RNDN);
  mpfr_set_ui(b, 1, MPFR_RNDN);
  mpfr_div_ui(b, b, 3, MPFR_RNDN);
  mpfr_asin(b, b, MPFR_RNDN);
  mpfr_mul_ui(b, b, 2, MPFR_RNDN);
  mpfr_const_pi(c, MPFR_RNDN);
  mpfr_add(b, b, c, MPFR_RNDN);
  mpfr_sub(a, a, b, MPFR_RNDN);
  const double identity_gap = std::fabs(mpfr_get_d(a, MPFR_RNDN));
  mpfr_clears(a, b, c, static_cast<mpfr_ptr>(nullptr));

  const SolidAngle we = solid_angle_at(BoundaryClass::EdgeInterior);
  const bool symbolic = we == SolidAngle{2, 1} && we == parse_solid_angle("2asin + pi") &&
                        we.symbolic() == "2*arcsin(1/3) + pi" && identity_gap < 1e-70 &&
                        solid_angle_at(BoundaryClass::Vertex) == SolidAngle{4, 0} &&
                        solid_angle_at(BoundaryClass::FaceInterior) == SolidAngle{0, 2};
  const double t = seconds_since(t0);
  Outcome o;
  o.pass = ev < 1e-9 && ee < 1e-9 && ef < 1e-9 && symbolic && t < 1;
  o.detail = "|dV|=" + fmt(ev) + " |dE|=" + fmt(ee) + " |dF|=" + fmt(ef) + " identity gap=" + fmt(identity_gap) +
             (symbolic ? " symbolic ok" : " symbolic MISMATCH");
  return o;
}

// 2

Outcome decomposition() {
  const auto t0 = Clock::now();
  const SolidAngle full = parse_solid_angle("4pi");
  const auto exact = decompose_full_angle(full);
  const ScanBounds b{10, 4, 2};
  const auto scanned = numeric_scan(full, b, 1e-9L);
  // Independent scan in long double.
  const long double wv = 4 * std::asin(1.0L / 3), we = 2 * std::acos(-1.0L / 3), wf = 2 * std::acos(-1.0L);
  std::vector<DecompositionSolution> brute;
  for (long v = 0; v <= 10; ++v)
    for (long e = 0; e <= 4; ++e)
      for (long f = 0; f <= 2; ++f)
        if (std::fabs(v * wv + e * we + f * wf - 2 * wf) <= 1e-9L) brute.push_back({v, e, f});
  const std::vector<DecompositionSolution> expected{{0, 0, 2}};
  const double t = seconds_since(t0);
  Outcome o;
  o.pass = exact == expected && scanned == expected && brute == expected && t < 1;
  o.detail = "exact " + std::to_string(exact.size()) + " solution(s), scan " + std::to_string(scanned.size()) +
             ", oracle scan " + std::to_string(brute.size()) + ", min gap |asin(1/3)/pi - p/q| (q<=1000) = " +
             fmt(min_rational_gap(1000));
  return o;
}

// 3

Outcome restriction_identities() {
  RationalSampler rs(2024);
  std::size_t violations = 0, probes = 0, empty = 0;
  const SpaceSpec l1 = SpaceSpec::single("b", 5, NormKind::L1);
  for (int inst = 0; inst < 1000; ++inst) {
    SparseVec x;
    for (std::uint32_t i = 0; i < 5; ++i)
      if (rs.integer(0, 4)) x.set_block("b", i, rs.small_rational(12, 6));
    std::set<std::uint32_t> keep;
    for (std::uint32_t i = 0; i < 5; ++i)
      if (rs.coin()) keep.insert(i);
    const Ball ball(x, Scalar(rs.integer(0, 40), rs.integer(1, 6)));
    const auto r = restrict_ball_l1(l1, ball, keep);
    if (!r) ++empty;
    SparseVec x1;
    for (std::uint32_t i : keep) x1.set_block("b", i, x.get_block("b", i));
    std::vector<SparseVec> pts{x1};
    for (int k = 0; k < 24; ++k) {
      SparseVec p = x1;
      for (std::uint32_t i : keep) p.set_block("b", i, x1.get_block("b", i) + rs.small_rational(8, 8) * (k % 3 ? 1 : 0));
      pts.push_back(p);
    }
    if (r && !keep.empty()) {
      // Boundary points of the restricted ball along each kept axis.
      for (std::uint32_t i : keep)
        for (int sgn : {-1, 1}) {
          SparseVec p = x1;
          p.set_block("b", i, x1.get_block("b", i) + sgn * r->radius);
          pts.push_back(p);
        }
    }
    for (const auto& p : pts) {
      ++probes;
      const bool whole = oracle::contains(l1, ball, p);
      const bool part = r && oracle::contains(l1, *r, p);
      if (whole != part) ++violations;
    }
    if (r && r->radius != ball.radius - oracle::dist(l1, x, x1)) ++violations;
  }

  const SpaceSpec mixed({Block{"u", 2, NormKind::L1}, Block{"v", 2, NormKind::LInf}}, true);
  for (int inst = 0; inst < 1000; ++inst) {
    SparseVec x;
    for (const char* blk : {"u", "v"})
      for (std::uint32_t i = 0; i < 2; ++i)
        if (rs.integer(0, 3)) x.set_block(blk, i, rs.small_rational(10, 4));
    for (long t = 1; t <= 6; ++t)
      if (rs.coin()) x.set_tail(TailIndex(t), rs.small_rational(10, 4));
    if (rs.coin()) x.tail().add_run(TailIndex(7), TailIndex(rs.integer(7, 5000)), rs.small_rational(6, 4));
    std::vector<std::string> blocks;
    if (rs.coin()) blocks.push_back("u");
    if (rs.coin()) blocks.push_back("v");
    const long through = rs.integer(0, 8);
    const SubSum keep = rs.coin() ? SubSum::with_tail_prefix(blocks, TailIndex(through)) : SubSum::blocks_only(blocks);
    const Ball ball(x, Scalar(rs.integer(0, 30), rs.integer(1, 4)));
    const auto r = restrict_ball_inf(mixed, ball, keep);
    if (!r) ++empty;
    if (r && r->radius != ball.radius) ++violations;
    const SparseVec x1 = keep.kept(x);
    std::vector<SparseVec> pts{x1};
    for (int k = 0; k < 24; ++k) {
      SparseVec p;
      for (const auto& blk : blocks)
        for (std::uint32_t i = 0; i < 2; ++i) p.set_block(blk, i, x1.get_block(blk, i) + rs.small_rational(6, 4));
      if (keep.tail == SubSum::Tail::Prefix)
        for (long t = 1; t <= through; ++t) p.set_tail(TailIndex(t), x1.get_tail(TailIndex(t)) + rs.small_rational(6, 4));
      pts.push_back(p);
    }
    for (const auto& p : pts) {
      ++probes;
      const bool whole = oracle::contains(mixed, ball, p);
      const bool part = r && oracle::contains(mixed, *r, p);
      if (whole != part) ++violations;
    }
  }
  Outcome o;
  o.pass = violations == 0;
  o.detail = "2000 instances, " + std::to_string(probes) + " membership probes, " + std::to_string(empty) +
             " empty intersections, " + std::to_string(violations) + " violations";
  return o;
}

// 4

Outcome induction_lift() {
  const auto t0 = Clock::now();
  const SpaceSpec base = SpaceSpec::single("y", 2, NormKind::L1);
  const SpaceSpec lifted_space(base.blocks(), true);
  RationalSampler rs(44);
  std::vector<Ball> fam;
  for (int i = 0; i < 50; ++i) {
    SparseVec c;
    c.set_block("y", 0, rs.small_rational(30, 4));
    c.set_block("y", 1, rs.small_rational(30, 4));
    fam.emplace_back(c, Scalar(rs.integer(1, 12), rs.integer(1, 4)));
  }
  const long m = 3;
  const auto lifted = lift_ball_family(fam, TailIndex(m));
  std::size_t bad_center = 0, separation = 0, graph = 0, base_edges = 0, lifted_edges = 0;
  for (std::size_t i = 0; i < fam.size(); ++i) {
    SparseVec expect = fam[i].center;
    const long k = static_cast<long>(i) + 1;
    for (long t = m + 1; t < m + k; ++t) expect.set_tail(TailIndex(t), fam[i].radius);
    expect.set_tail(TailIndex(m + k), -fam[i].radius);
    if (!(lifted[i] == Ball(expect, fam[i].radius))) ++bad_center;
  }
  for (std::size_t i = 0; i < fam.size(); ++i)
    for (std::size_t j = i + 1; j < fam.size(); ++j) {
      const Scalar d = oracle::dist(lifted_space, lifted[i].center, lifted[j].center);
      if (d < lifted[i].radius + lifted[j].radius) ++separation;
      const bool base_edge = oracle::dist(base, fam[i].center, fam[j].center) <= fam[i].radius + fam[j].radius;
      const bool lifted_edge = d <= lifted[i].radius + lifted[j].radius;
      base_edges += base_edge;
      lifted_edges += lifted_edge;
      if (lifted_edge && !base_edge) ++graph;
    }
  const double t = seconds_since(t0);
  Outcome o;
  o.pass = bad_center == 0 && separation == 0 && graph == 0 && t < 10;
  o.detail = "1225 pairs: " + std::to_string(separation) + " separation failures, lifted edges " +
             std::to_string(lifted_edges) + " of base " + std::to_string(base_edges) + ", " + std::to_string(graph) +
             " non-base edges, " + std::to_string(bad_center) + " center mismatches";
  return o;
}

// 5

Outcome c0_lift() {
  auto base = std::make_shared<IntervalTiling>("x", 0, 1);
  LiftedTiling lt(base);
  const SpaceSpec& s = lt.space();
  RationalSampler rs(55);
  std::size_t missed = 0;
  std::map<std::string, Ball> distinct;
  for (int n = 0; n < 10000; ++n) {
    SparseVec p;
    p.set_block("x", 0, rs.small_rational(400, 7));
    const long support = rs.integer(0, 6);
    for (long j = 0; j < support; ++j) p.set_tail(TailIndex(rs.integer(1, 40)), rs.small_rational(12, 5) * (rs.coin() ? 1 : 3));
    const Ball b = lt.locate(p);
    if (!oracle::contains(s, b, p)) ++missed;
    distinct.emplace(to_json(b), b);
  }
  std::vector<Ball> balls;
  for (auto& [k, b] : distinct) balls.push_back(b);
  std::vector<CoordId> coords{parse_coord("x.0")};
  for (int t = 1; t <= 40; ++t) coords.push_back(parse_coord("t" + std::to_string(t)));
  const auto overlaps = oracle::overlapping_pairs(s, balls, coords);
  Outcome o;
  o.pass = missed == 0 && overlaps.empty();
  o.detail = "10000 points, " + std::to_string(missed) + " not contained, " + std::to_string(balls.size()) +
             " distinct balls, " + std::to_string(overlaps.size()) + " overlapping pairs";
  return o;
}

// 6

Outcome stage_tiling() {
  const auto t0 = Clock::now();
  SparseVec one;
  one.set_block("y", 0, 1);
  auto tiling = std::make_shared<StageTiling>(SpaceSpec::single("y", 1, NormKind::LInf), std::vector<SparseVec>{one});
  tiling->build_stage(3);
  const SpaceSpec& s = tiling->space();
  RationalSampler rs(66);
  std::vector<SparseVec> pts;
  for (int n = 0; n < 10000; ++n) {
    SparseVec p;
    p.set_block("y", 0, rs.dyadic_in(-3, 3, 12));
    for (long t = 1; t <= 3; ++t) p.set_tail(TailIndex(t), rs.dyadic_in(-3, 3, 12));
    pts.push_back(p);
  }
  std::size_t empty = 0, wrong = 0, mixed_stage = 0;
  std::map<std::string, StageBall> distinct;
  for (const auto& p : pts) {
    const auto hits = tiling->locate_point(p, true);
    if (hits.empty()) ++empty;
    std::set<unsigned> stages;
    for (const auto& h : hits) {
      if (!oracle::contains(s, h.ball, p)) ++wrong;
      stages.insert(h.stage);
      distinct.emplace(StageHandle::member(h).tag, h);
    }
    if (stages.size() > 1) ++mixed_stage;
  }
  const double t_locate = seconds_since(t0);
  std::vector<Ball> balls;
  std::vector<unsigned> stage_of;
  for (const auto& [tag, b] : distinct) {
    balls.push_back(b.ball);
    stage_of.push_back(b.stage);
  }
  const std::vector<CoordId> coords{parse_coord("y.0"), parse_coord("t1"), parse_coord("t2"), parse_coord("t3")};
  const auto overlaps = oracle::overlapping_pairs(s, balls, coords);

  // Co-membership over the located balls, bucketed by (y, t1).
  std::map<std::pair<long, long>, std::vector<std::size_t>> buckets;
  for (std::size_t i = 0; i < balls.size(); ++i) {
    const double y = balls[i].center.get_block("y", 0).get_d(), t1 = balls[i].center.get_tail(TailIndex(1)).get_d();
    const double r = balls[i].radius.get_d() + 1e-9;
    for (long a = static_cast<long>(std::floor(y - r)); a <= static_cast<long>(std::floor(y + r)); ++a)
      for (long b = static_cast<long>(std::floor(t1 - r)); b <= static_cast<long>(std::floor(t1 + r)); ++b)
        buckets[{a, b}].push_back(i);
  }
  std::vector<std::array<double, 4>> box(balls.size());
  std::vector<double> radius_d(balls.size());
  for (std::size_t i = 0; i < balls.size(); ++i) {
    radius_d[i] = balls[i].radius.get_d();
    for (std::size_t k = 0; k < 4; ++k) box[i][k] = balls[i].center.get(coords[k]).get_d();
  }
  std::size_t cross = 0;
  for (const auto& p : pts) {
    const auto key = std::make_pair(static_cast<long>(std::floor(p.get_block("y", 0).get_d())),
                                    static_cast<long>(std::floor(p.get_tail(TailIndex(1)).get_d())));
    std::array<double, 4> q{};
    for (std::size_t k = 0; k < 4; ++k) q[k] = p.get(coords[k]).get_d();
    std::set<unsigned> stages;
    for (std::size_t i : buckets[key]) {
      bool far = false;
      for (std::size_t k = 0; k < 4 && !far; ++k) far = std::fabs(q[k] - box[i][k]) > radius_d[i] * (1 + 1e-9) + 1e-12;
      if (!far && oracle::contains(s, balls[i], p)) stages.insert(stage_of[i]);
    }
    if (stages.size() > 1) ++cross;
  }

  const double t_check = seconds_since(t0) - t_locate;
  // Star degrees of 100 located balls, taken round-robin over the stages.
  std::map<unsigned, std::vector<const StageBall*>> by_stage;
  for (const auto& [tag, b] : distinct) by_stage[b.stage].push_back(&b);
  std::map<std::size_t, std::size_t> hist;
  std::size_t sampled = 0;
  for (std::size_t round = 0; sampled < 100 && sampled < distinct.size(); ++round)
    for (const auto& [st, list] : by_stage)
      if (round < list.size() && sampled < 100) {
        ++hist[tiling->star_degree(*list[round])];
        ++sampled;
      }

  const double t = seconds_since(t0);
  std::string h;
  for (const auto& [deg, cnt] : hist) h += (h.empty() ? "" : " ") + std::to_string(deg) + ":" + std::to_string(cnt);
  std::map<unsigned, std::size_t> per_stage;
  for (unsigned st : stage_of) ++per_stage[st];
  Outcome o;
  o.pass = empty == 0 && wrong == 0 && mixed_stage == 0 && overlaps.empty() && cross == 0 && sampled == 100 && t < 120;
  o.detail = "10000 points, " + std::to_string(empty) + " unlocated, " + std::to_string(wrong) + " wrong, " +
             std::to_string(balls.size()) + " distinct balls (s1 " + std::to_string(per_stage[1]) + ", s2 " +
             std::to_string(per_stage[2]) + ", s3 " + std::to_string(per_stage[3]) + "), " +
             std::to_string(overlaps.size()) + " overlaps, " + std::to_string(mixed_stage + cross) +
             " cross-stage co-memberships; star degrees of " + std::to_string(sampled) + " balls {" + h +
             "}; locate " + fmt(t_locate) + " s, oracle checks " + fmt(t_check) + " s, star " +
             fmt(t - t_locate - t_check) + " s";
  return o;
}

// 7

Outcome whitney(NormKind kind) {
  const SpaceSpec z = SpaceSpec::single("z", 2, kind);
  SparseVec e0, e1;
  e0.set_block("z", 0, 1);
  e1.set_block("z", 1, 1);
  const Ball obstacle_ball(zpt(0, 0), 1);
  CoverFamily fam(z, SubspaceFrame({e0, e1}, "R2"), std::make_shared<BallListObstacle>(z, std::vector<Ball>{obstacle_ball}));
  auto dist_c = [&](const SparseVec& p) -> Scalar {
    const Scalar d = oracle::dist(z, p, obstacle_ball.center) - 1;
    return d < 0 ? Scalar(0) : d;
  };
  RationalSampler rs(kind == NormKind::L1 ? 71 : 72);
  std::size_t uncovered = 0, wrong = 0, points = 0;
  while (points < 10000) {
    const SparseVec p = zpt(rs.dyadic_in(-3, 3, 16), rs.dyadic_in(-3, 3, 16));
    if (dist_c(p) < Scalar(1, 1000)) continue;
    ++points;
    const auto cells = fam.locate(p);
    if (cells.empty()) ++uncovered;
    for (const auto& c : cells)
      if (!oracle::contains(z, fam.ball(c), p)) ++wrong;
  }
  std::size_t cells = 0, not_clear = 0, not_certified = 0, bad_geometry = 0;
  unsigned deepest = 0;
  for (const auto& c : fam.materialized()) {
    ++cells;
    deepest = std::max(deepest, c.level);
    const Ball b = fam.ball(c);
    if (!(dist_c(b.center) > b.radius)) ++not_clear;
    const auto cert = fam.certify(c);
    if (!cert.covers_cell || !cert.clear_of_obstacle) ++not_certified;
    const Scalar side = fam.params().base_side * dyadic(c.level);
    if (!(b.center == zpt((Scalar(c.corner[0]) + Scalar(1, 2)) * side, (Scalar(c.corner[1]) + Scalar(1, 2)) * side)))
      ++bad_geometry;
    for (int dx = 0; dx <= 1; ++dx)
      for (int dy = 0; dy <= 1; ++dy)
        if (!oracle::contains(z, b, zpt(Scalar(c.corner[0] + dx) * side, Scalar(c.corner[1] + dy) * side))) ++bad_geometry;
  }
  Outcome o;
  o.pass = uncovered == 0 && wrong == 0 && not_clear == 0 && not_certified == 0 && bad_geometry == 0;
  o.detail = std::string(kind == NormKind::L1 ? "l1" : "linf") + ": 10000 points, " + std::to_string(uncovered) +
             " uncovered, " + std::to_string(wrong) + " wrong; " + std::to_string(cells) + " cells to level " +
             std::to_string(deepest) + ", " + std::to_string(not_clear) + " touching C, " +
             std::to_string(not_certified) + " uncertified, " + std::to_string(bad_geometry) + " geometry errors";
  return o;
}

Outcome whitney_cover() {
  Outcome a = whitney(NormKind::L1), b = whitney(NormKind::LInf);
  return {a.pass && b.pass, a.detail + "; " + b.detail};
}

// 8

Outcome sphere_decomposition() {
  const SpaceSpec c00 = SpaceSpec::tail_only();
  RationalSampler rs(88);
  std::size_t bad_entries = 0, bad_distance = 0;
  for (int n = 0; n < 10000; ++n) {
    SparseVec p;
    const long support = rs.integer(0, 8);
    for (long j = 0; j < support; ++j) {
      const Scalar v = rs.coin() ? Scalar(rs.integer(-9, 9)) : rs.small_rational(40, 7);
      p.set_tail(TailIndex(rs.integer(1, 30)), v);
    }
    if (rs.integer(0, 9) == 0) p.tail().add_run(TailIndex(31), TailIndex(rs.integer(31, 100000)), rs.small_rational(9, 4));
    const SparseVec c = sphere_decomposition_center(p);
    if (!c.block_entries().empty()) ++bad_entries;
    for (const auto& run : c.tail().runs())
      if (!oracle::is_odd_integer(run.value)) ++bad_entries;
    if (c.tail().empty()) ++bad_entries;
    if (oracle::dist(c00, p, c) != 1) ++bad_distance;
  }
  Outcome o;
  o.pass = bad_entries == 0 && bad_distance == 0;
  o.detail = "10000 points, " + std::to_string(bad_entries) + " non-odd entries, " + std::to_string(bad_distance) +
             " with sup-distance != 1";
  return o;
}

// 9

Scalar plain_norm(BodyNorm kind, const std::vector<Scalar>& v) {
  Scalar acc = 0;
  for (const auto& x : v) {
    const Scalar a = x < 0 ? Scalar(-x) : x;
    if (kind == BodyNorm::L1)
      acc += a;
    else if (kind == BodyNorm::L2)
      acc += a * a;
    else if (acc < a)
      acc = a;
  }
  return acc;
}

bool plain_in(BodyNorm kind, const PlainBall& b, const std::vector<Scalar>& p) {
  std::vector<Scalar> d(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) d[i] = p[i] - b.center[i];
  const Scalar n = plain_norm(kind, d);
  return kind == BodyNorm::L2 ? n <= b.radius * b.radius : n <= b.radius;
}

double plain_norm_d(BodyNorm kind, const std::vector<double>& v) {
  double acc = 0;
  for (double x : v) {
    if (kind == BodyNorm::L1)
      acc += std::fabs(x);
    else if (kind == BodyNorm::L2)
      acc += x * x;
    else
      acc = std::max(acc, std::fabs(x));
  }
  return kind == BodyNorm::L2 ? std::sqrt(acc) : acc;
}

Outcome boundary_cover() {
  RationalSampler rs(99);
  const BodyNorm kinds[] = {BodyNorm::L1, BodyNorm::LInf, BodyNorm::L2};
  std::size_t conclusive = 0, attempts = 0, escapes = 0, oracle_escapes = 0;
  std::map<std::string, std::size_t> per_dim;
  while (conclusive < 200 && attempts < 2000) {
    ++attempts;
    const BodyNorm kind = kinds[rs.integer(0, 2)];
    const std::size_t dim = static_cast<std::size_t>(rs.integer(1, 3));
    const std::size_t k = static_cast<std::size_t>(rs.integer(1, static_cast<long>(dim)));
    PlainBall body{std::vector<Scalar>(dim), Scalar(rs.integer(1, 3))};
    for (auto& x : body.center) x = rs.small_rational(4, 2);
    std::vector<PlainBall> covers(k);
    std::vector<double> w(k);
    for (std::size_t i = 0; i < k; ++i) {
      covers[i].center.resize(dim);
      for (std::size_t d = 0; d < dim; ++d) covers[i].center[d] = body.center[d] + body.radius * rs.small_rational(8, 4);
      w[i] = 0.5 + rs.integer(0, 6) / 4.0;
    }
    // Smallest common scale covering sampled boundary points, then 9/8 of it.
    double lambda = 0;
    for (int n = 0; n < 3000; ++n) {
      const auto s = sample_sphere(kind, body, rs);
      double best = 1e300;
      for (std::size_t i = 0; i < k; ++i) {
        std::vector<double> diff(dim);
        for (std::size_t d = 0; d < dim; ++d) diff[d] = s[d].get_d() - covers[i].center[d].get_d();
        best = std::min(best, plain_norm_d(kind, diff) / w[i]);
      }
      lambda = std::max(lambda, best);
    }
    for (std::size_t i = 0; i < k; ++i) covers[i].radius = Scalar(static_cast<long>(std::ceil(lambda * 9 / 8 * w[i] * 4096)) + 1, 4096);
    BoundaryOptions opts;
    opts.boundary_samples = 4000;
    opts.interior_samples = 1000;
    const Report rep = boundary_cover_oracle(kind, body, covers, rs, opts);
    if (rep.inconclusive) continue;
    ++conclusive;
    ++per_dim[std::to_string(dim) + "d"];
    escapes += rep.violations.size();
    std::vector<std::vector<Scalar>> probes{body.center};
    for (int n = 0; n < 300; ++n) probes.push_back(sample_ball(kind, body, rs));
    for (const auto& p : probes) {
      bool in = false;
      for (const auto& c : covers) in = in || plain_in(kind, c, p);
      if (!in) ++oracle_escapes;
    }
  }

  // Three round balls around the unit disk.
  const auto sharp = find_three_ball_escape(BodyNorm::L2);
  bool sharp_ok = false;
  std::string sharp_detail = "no 3-ball instance found";
  if (sharp) {
    const auto cert = boundary_covered_exact(BodyNorm::L2, sharp->body, sharp->covers);
    bool center_free = true;
    for (const auto& c : sharp->covers) center_free = center_free && !plain_in(BodyNorm::L2, c, sharp->body.center);
    std::size_t misses = 0;
    for (int n = 0; n < 100000; ++n) {
      const double th = 2 * std::acos(-1.0) * n / 100000;
      const double x = std::cos(th), y = std::sin(th);
      bool in = false;
      for (const auto& c : sharp->covers) {
        const double dx = x - c.center[0].get_d(), dy = y - c.center[1].get_d();
        in = in || std::sqrt(dx * dx + dy * dy) <= c.radius.get_d() + 1e-12;
      }
      if (!in) ++misses;
    }
    sharp_ok = cert && cert->verdict == Coverage::Covered && center_free && misses == 0;
    sharp_detail = "l2 3-ball instance radius " + fmt(sharp->radius.get_d(), 6) + ", center margin " +
                   fmt(sharp->center_margin.get_d(), 4) + ", boundary " +
                   (cert && cert->verdict == Coverage::Covered ? "certified" : "NOT certified") + ", center " +
                   (center_free ? "uncovered" : "covered") + ", dense circle misses " + std::to_string(misses);
  }
  const bool flat_none = !find_three_ball_escape(BodyNorm::L1) && !find_three_ball_escape(BodyNorm::LInf);
  std::string dims;
  for (const auto& [d, n] : per_dim) dims += (dims.empty() ? "" : " ") + d + ":" + std::to_string(n);
  Outcome o;
  o.pass = conclusive == 200 && escapes == 0 && oracle_escapes == 0 && sharp_ok;
  o.detail = std::to_string(conclusive) + " covered-boundary instances (" + dims + ", " + std::to_string(attempts) +
             " drawn), " + std::to_string(escapes) + " interior escapes, " + std::to_string(oracle_escapes) +
             " oracle escapes; " + sharp_detail + "; l1/linf 3-ball search " + (flat_none ? "empty" : "FOUND");
  return o;
}

struct Criterion {
  int id;
  const char* name;
  std::function<Outcome()> run;
};

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Criterion> all{
      {1, "octahedron solid angles", octahedron_constants},
      {2, "full-angle decomposition", decomposition},
      {3, "ball restriction identities", restriction_identities},
      {4, "finite family lift", induction_lift},
      {5, "c0 lift of an interval tiling", c0_lift},
      {6, "staged tiling, stages 1-3", stage_tiling},
      {7, "Whitney cover of the plane", whitney_cover},
      {8, "sphere decomposition of c00", sphere_decomposition},
      {9, "boundary cover fact", boundary_cover},
  };
  std::set<int> only;
  for (int i = 1; i < argc; ++i) only.insert(std::atoi(argv[i]));
  int failed = 0;
  for (const auto& c : all) {
    if (!only.empty() && !only.count(c.id)) continue;
    const auto t0 = Clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double t = seconds_since(t0);
    std::cout << (o.pass ? "PASS" : "FAIL") << "  [" << c.id << "] " << c.name << " (" << std::fixed
              << std::setprecision(2) << t << " s): " << o.detail << std::endl;
    std::cout.unsetf(std::ios::fixed);
    failed += !o.pass;
  }
  return failed == 0 ? 0 : 1;
}
