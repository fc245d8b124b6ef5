#include "balltiling/verifier.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>

#include "json.hpp"

namespace balltiling {

using nlohmann::json;

namespace {

std::string ball_tag(const Ball& b) { return to_string(b.center) + " r=" + to_string(b.radius); }

void note_radius(Report& r, const Scalar& x) {
  if (!r.max_radius || *r.max_radius < x) r.max_radius = x;
}

json member_json(const Member& m) {
  return {{"tag", m.tag}, {"ball", json::parse(to_json(m.ball))}};
}

json witness_json(const Witness& w) {
  json j{{"check", w.check}, {"message", w.message}};
  if (w.point) j["point"] = json::parse(to_json(*w.point));
  json ms = json::array();
  for (const auto& m : w.members) ms.push_back(member_json(m));
  j["members"] = ms;
  if (w.limit) j["limit"] = *w.limit;
  return j;
}

std::vector<Member> as_members(const std::vector<Ball>& balls) {
  std::vector<Member> out;
  for (std::size_t i = 0; i < balls.size(); ++i) out.push_back(Member{balls[i], "#" + std::to_string(i)});
  return out;
}

}  // namespace

// Handles

ListHandle::ListHandle(SpaceSpec space, std::vector<Member> members)
    : space_(std::move(space)), members_(std::move(members)) {
  for (const auto& m : members_) space_.check_supported(m.ball.center);
}

ListHandle ListHandle::from_balls(SpaceSpec space, const std::vector<Ball>& balls) {
  return ListHandle(std::move(space), as_members(balls));
}

ListHandle ListHandle::from_archive(const Archive& a) {
  std::vector<Member> ms;
  for (std::size_t i = 0; i < a.records.size(); ++i) {
    const auto& r = a.records[i];
    std::string tag = r.tag;
    if (tag.empty() && r.cell) tag = (r.stage ? "s" + std::to_string(*r.stage) + ":" : std::string()) + to_string(*r.cell);
    if (tag.empty()) tag = "#" + std::to_string(i);
    ms.push_back(Member{r.ball, std::move(tag)});
  }
  return ListHandle(a.space, std::move(ms));
}

std::vector<Member> ListHandle::locate(const SparseVec& p) const {
  std::vector<Member> out;
  for (const auto& m : members_)
    if (ball_contains(space_, m.ball, p)) out.push_back(m);
  return out;
}

std::vector<Member> ListHandle::balls_near(const SparseVec& p, const Scalar& w) const {
  std::vector<Member> out;
  for (const auto& m : members_)
    if (dist_point_ball(space_, p, m.ball) <= w) out.push_back(m);
  return out;
}

std::vector<Member> WhitneyHandle::locate(const SparseVec& p) const {
  std::vector<Member> out;
  for (const auto& c : family_->balls_containing(p)) out.push_back(member(c));
  return out;
}

std::vector<Member> WhitneyHandle::balls_near(const SparseVec& p, const Scalar& w) const {
  std::vector<Member> out;
  for (const auto& c : family_->balls_near(p, w)) out.push_back(member(c));
  return out;
}

std::vector<Member> WhitneyHandle::balls_near_horizon(const SparseVec& p, const Scalar& w, unsigned horizon) const {
  std::vector<Member> out;
  for (const auto& c : family_->balls_near_horizon(p, w, horizon)) out.push_back(member(c));
  return out;
}

std::vector<Member> WhitneyHandle::enumerate() const {
  std::vector<Member> out;
  for (const auto& c : family_->materialized()) out.push_back(member(c));
  return out;
}

std::vector<Member> LiftedHandle::locate(const SparseVec& p) const {
  std::vector<Member> out;
  for (auto& b : tiling_->locate_all(p)) {
    std::string tag = ball_tag(b);
    out.push_back(Member{std::move(b), std::move(tag)});
  }
  return out;
}

std::vector<Member> LiftedHandle::balls_near(const SparseVec&, const Scalar&) const {
  throw DomainError("members of a c0 lift meet infinitely many others");
}

Member StageHandle::member(const StageBall& b) {
  return Member{b.ball, "s" + std::to_string(b.stage) + ":" + to_string(b.cell)};
}

std::vector<unsigned> StageHandle::stages() const {
  if (stage_) return {*stage_};
  std::vector<unsigned> out;
  for (unsigned s = 1; s <= tiling_->built(); ++s) out.push_back(s);
  return out;
}

std::vector<Member> StageHandle::locate(const SparseVec& p) const {
  std::vector<Member> out;
  const auto hits = stage_ ? tiling_->stage_containing(*stage_, p) : tiling_->locate_point(p, true);
  for (const auto& b : hits) out.push_back(member(b));
  return out;
}

std::vector<Member> StageHandle::balls_near(const SparseVec& p, const Scalar& w) const {
  std::vector<Member> out;
  for (unsigned s : stages())
    for (const auto& b : tiling_->stage_near(s, p, w)) out.push_back(member(b));
  return out;
}

std::vector<Member> StageHandle::balls_near_horizon(const SparseVec& p, const Scalar& w, unsigned horizon) const {
  std::vector<Member> out;
  for (unsigned s : stages())
    for (const auto& b : tiling_->stage_near_horizon(s, p, w, horizon)) out.push_back(member(b));
  return out;
}

std::vector<Member> StageHandle::enumerate() const {
  std::vector<Member> out;
  for (unsigned s : stages())
    for (const auto& c : tiling_->family(s).materialized()) out.push_back(member(tiling_->member(s, c)));
  return out;
}

// Report

void Report::merge(const Report& o) {
  for (const auto& c : o.checks)
    if (std::find(checks.begin(), checks.end(), c) == checks.end()) checks.push_back(c);
  for (const auto& [k, v] : o.counts) counts[k] += v;
  violations.insert(violations.end(), o.violations.begin(), o.violations.end());
  findings.insert(findings.end(), o.findings.begin(), o.findings.end());
  for (const auto& [k, v] : o.star_histogram) star_histogram[k] += v;
  if (o.max_radius) note_radius(*this, *o.max_radius);
  inconclusive = inconclusive || o.inconclusive;
}

std::string Report::to_json() const {
  json j;
  j["passed"] = passed();
  j["inconclusive"] = inconclusive;
  j["checks"] = checks;
  j["counts"] = counts;
  json hist = json::object();
  for (const auto& [k, v] : star_histogram) hist[std::to_string(k)] = v;
  j["star_histogram"] = hist;
  j["max_radius"] = max_radius ? json(to_string(*max_radius)) : json(nullptr);
  json vs = json::array();
  for (const auto& w : violations) vs.push_back(witness_json(w));
  j["violations"] = vs;
  json fs = json::array();
  for (const auto& w : findings) fs.push_back(witness_json(w));
  j["findings"] = fs;
  return j.dump(2);
}

bool replay(const FamilyHandle& h, const Witness& w) {
  if (w.check == "overlap") return w.members.size() == 2 && balls_overlap(h.space(), w.members[0].ball, w.members[1].ball);
  if (w.check == "cover") return w.point && h.locate(*w.point).empty();
  if (w.check == "star") return !w.members.empty() && w.limit && star_degree(h, w.members[0]) > *w.limit;
  throw DomainError("cannot replay check '" + w.check + "'");
}

// Checks

Report check_pairwise(const SpaceSpec& space, const std::vector<Member>& members) {
  Report r;
  r.checks.push_back("overlap");
  r.counts["members"] = members.size();
  const std::size_t n = members.size();
  if (n < 2) return r;

  // Each coordinate is dominated by the norm, so overlap forces
  // |c_i - c'_i| < r + r' on every coordinate.
  std::vector<CoordId> coords;
  for (const auto& b : space.blocks())
    for (std::uint32_t i = 0; i < b.dim; ++i) coords.push_back(CoordId::of_block(b.name, i));
  if (space.has_tail()) {
    TailIndex last = 0;
    for (const auto& m : members)
      if (auto l = m.ball.center.tail().last_index()) last = std::max(last, *l);
    const long reach = std::min<long>(last.fits_slong_p() ? last.get_si() : 64, 64);
    for (long i = 0; i <= reach; ++i) coords.push_back(CoordId::of_tail(TailIndex(i)));
  }
  const std::size_t dims = coords.size();
  std::vector<double> c(n * dims), rad(n);
  for (std::size_t i = 0; i < n; ++i) {
    rad[i] = to_double(members[i].ball.radius);
    for (std::size_t k = 0; k < dims; ++k) c[i * dims + k] = to_double(members[i].ball.center.get(coords[k]));
  }
  std::size_t axis = 0;
  double best = -1;
  for (std::size_t k = 0; k < dims; ++k) {
    double lo = c[k], hi = c[k];
    for (std::size_t i = 0; i < n; ++i) {
      lo = std::min(lo, c[i * dims + k]);
      hi = std::max(hi, c[i * dims + k]);
    }
    if (hi - lo > best) {
      best = hi - lo;
      axis = k;
    }
  }
  auto slack = [](double a, double b) { return 1e-9 * (1 + std::fabs(a) + std::fabs(b)); };
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  auto lo_of = [&](std::size_t i) { return c[i * dims + axis] - rad[i]; };
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return lo_of(a) < lo_of(b); });
  std::size_t candidates = 0, exact = 0;
  for (std::size_t a = 0; a < n; ++a) {
    const std::size_t i = order[a];
    const double hi_i = c[i * dims + axis] + rad[i];
    for (std::size_t b = a + 1; b < n; ++b) {
      const std::size_t j = order[b];
      if (lo_of(j) > hi_i + slack(hi_i, lo_of(j))) break;
      ++candidates;
      bool possible = true;
      for (std::size_t k = 0; k < dims && possible; ++k) {
        const double gap = std::fabs(c[i * dims + k] - c[j * dims + k]);
        possible = gap < rad[i] + rad[j] + slack(gap, rad[i] + rad[j]);
      }
      if (!possible) continue;
      ++exact;
      if (balls_overlap(space, members[i].ball, members[j].ball))
        r.violations.push_back(Witness{"overlap", members[i].tag + " overlaps " + members[j].tag, std::nullopt,
                                       {members[i], members[j]}, std::nullopt});
    }
  }
  r.counts["candidate_pairs"] = candidates;
  r.counts["exact_pair_checks"] = exact;
  for (const auto& m : members) note_radius(r, m.ball.radius);
  return r;
}

Report verify_non_overlapping(const FamilyHandle& h, const std::vector<SparseVec>& samples) {
  Report local;
  local.checks.push_back("overlap");
  std::map<std::string, Member> distinct;
  for (const auto& p : samples) {
    const auto hits = h.locate(p);
    for (std::size_t i = 0; i < hits.size(); ++i) {
      distinct.emplace(hits[i].tag, hits[i]);
      for (std::size_t j = i + 1; j < hits.size(); ++j)
        if (balls_overlap(h.space(), hits[i].ball, hits[j].ball))
          local.violations.push_back(Witness{"overlap", hits[i].tag + " overlaps " + hits[j].tag + " at a sample", p,
                                             {hits[i], hits[j]}, std::nullopt});
    }
  }
  std::vector<Member> all;
  for (auto& [tag, m] : distinct) all.push_back(m);
  Report global = check_pairwise(h.space(), all);
  global.counts.erase("members");
  global.counts["located_members"] = all.size();
  global.counts["samples"] = samples.size();
  // Pairs seen at a sample reappear in the global pass; keep one copy.
  std::set<std::pair<std::string, std::string>> seen;
  for (const auto& w : global.violations) seen.insert({w.members[0].tag, w.members[1].tag});
  for (auto& w : local.violations) {
    auto key = std::make_pair(w.members[0].tag, w.members[1].tag);
    auto rev = std::make_pair(key.second, key.first);
    if (!seen.count(key) && !seen.count(rev)) {
      seen.insert(key);
      global.violations.push_back(std::move(w));
    }
  }
  return global;
}

Report verify_covering(const FamilyHandle& h, const std::vector<SparseVec>& points) {
  Report r;
  r.checks.push_back("cover");
  std::size_t covered = 0;
  for (const auto& p : points) {
    const auto hits = h.locate(p);
    if (hits.empty()) {
      r.violations.push_back(Witness{"cover", "point lies in no member", p, {}, std::nullopt});
      continue;
    }
    ++covered;
    for (const auto& m : hits) note_radius(r, m.ball.radius);
  }
  r.counts["points"] = points.size();
  r.counts["covered"] = covered;
  return r;
}

std::size_t star_degree(const FamilyHandle& h, const Member& m) {
  std::set<std::string> others;
  for (const auto& n : h.balls_near(m.ball.center, m.ball.radius))
    if (n.tag != m.tag) others.insert(n.tag);
  return others.size();
}

Report star_degree_report(const FamilyHandle& h, const std::vector<Member>& members, std::optional<std::size_t> bound) {
  Report r;
  r.checks.push_back("star");
  for (const auto& m : members) {
    const std::size_t d = star_degree(h, m);
    ++r.star_histogram[d];
    r.counts["max_star_degree"] = std::max(r.counts["max_star_degree"], d);
    note_radius(r, m.ball.radius);
    if (bound && d > *bound)
      r.violations.push_back(Witness{"star", m.tag + " meets " + std::to_string(d) + " others", std::nullopt, {m}, bound});
  }
  r.counts["balls"] = members.size();
  return r;
}

// Boundary cover fact

namespace {

using Pt = std::vector<Scalar>;

SparseVec to_sparse(const Pt& p) {
  SparseVec v;
  for (std::size_t i = 0; i < p.size(); ++i) v.set_block("x", static_cast<std::uint32_t>(i), p[i]);
  return v;
}

std::vector<Member> plain_members(const std::vector<PlainBall>& covers) {
  std::vector<Member> out;
  for (std::size_t i = 0; i < covers.size(); ++i)
    out.push_back(Member{Ball(to_sparse(covers[i].center), covers[i].radius), "#" + std::to_string(i)});
  return out;
}

Pt from_sparse(const SparseVec& v, std::size_t dim) {
  Pt p(dim);
  for (std::size_t i = 0; i < dim; ++i) p[i] = v.get_block("x", static_cast<std::uint32_t>(i));
  return p;
}

bool covered_by_any(BodyNorm norm, const std::vector<PlainBall>& covers, const Pt& p) {
  for (const auto& c : covers)
    if (plain_contains(norm, c, p)) return true;
  return false;
}

Pt unit_point(BodyNorm norm, std::size_t dim, RationalSampler& rs, unsigned bits) {
  Pt u(dim);
  if (norm == BodyNorm::LInf) {
    for (auto& x : u) x = rs.dyadic_in(-1, 1, bits);
    u[static_cast<std::size_t>(rs.integer(0, static_cast<std::int64_t>(dim) - 1))] = rs.coin() ? 1 : -1;
  } else if (norm == BodyNorm::L1) {
    std::vector<Scalar> cuts{0, 1};
    for (std::size_t i = 1; i < dim; ++i) cuts.push_back(rs.dyadic_in(0, 1, bits));
    std::sort(cuts.begin(), cuts.end());
    for (std::size_t i = 0; i < dim; ++i) u[i] = (rs.coin() ? 1 : -1) * (cuts[i + 1] - cuts[i]);
  } else if (dim == 1) {
    u[0] = rs.coin() ? 1 : -1;
  } else {
    // Inverse stereographic projection of a rational point.
    Scalar sq = 0;
    std::vector<Scalar> y(dim - 1);
    for (auto& v : y) {
      v = rs.dyadic_in(-1, 1, bits);
      sq += v * v;
    }
    const Scalar d = 1 + sq;
    for (std::size_t i = 0; i + 1 < dim; ++i) u[i] = 2 * y[i] / d;
    u[dim - 1] = (rs.coin() ? 1 : -1) * (1 - sq) / d;
  }
  return u;
}

Pt offset(const PlainBall& body, const Pt& u, const Scalar& scale) {
  Pt p = body.center;
  for (std::size_t i = 0; i < p.size(); ++i) p[i] += scale * body.radius * u[i];
  return p;
}

// A boundary piece parameterized over [lo, hi].
struct Piece {
  Scalar lo, hi;
  Pt from, to;       // segment endpoints
  int arc_sign = 0;  // nonzero for a circle arc chart
};

Pt piece_at(const PlainBall& body, const Piece& pc, const Scalar& t) {
  if (pc.arc_sign == 0) {
    Pt p = pc.from;
    for (std::size_t i = 0; i < p.size(); ++i) p[i] += t * (pc.to[i] - pc.from[i]);
    return p;
  }
  const Scalar d = 1 + t * t;
  return offset(body, {pc.arc_sign * (1 - t * t) / d, 2 * t / d}, 1);
}

// Whether one cover contains the whole sub-piece [a, b].
bool piece_inside(BodyNorm norm, const PlainBall& body, const Piece& pc, const PlainBall& cover, const Scalar& a,
                  const Scalar& b) {
  if (pc.arc_sign == 0)
    return plain_contains(norm, cover, piece_at(body, pc, a)) && plain_contains(norm, cover, piece_at(body, pc, b));
  // |c + r u(t) - c_k|^2 <= s^2  <=>  Q(t) = A t^2 + B t + C >= 0.
  const Scalar wx = body.center[0] - cover.center[0];
  const Scalar wy = body.center[1] - cover.center[1];
  const Scalar& r = body.radius;
  const Scalar h = (cover.radius * cover.radius - r * r - wx * wx - wy * wy) / (2 * r);
  const Scalar A = h + pc.arc_sign * wx;
  const Scalar B = -2 * wy;
  const Scalar C = h - pc.arc_sign * wx;
  auto q = [&](const Scalar& t) -> Scalar { return (A * t + B) * t + C; };
  if (q(a) < 0 || q(b) < 0) return false;
  if (A > 0) {
    const Scalar v = -B / (2 * A);
    if (v > a && v < b && q(v) < 0) return false;
  }
  return true;
}

std::vector<Piece> boundary_pieces(BodyNorm norm, const PlainBall& body) {
  std::vector<Piece> out;
  if (norm == BodyNorm::L2) {
    out.push_back(Piece{-1, 1, {}, {}, 1});
    out.push_back(Piece{-1, 1, {}, {}, -1});
    return out;
  }
  std::vector<Pt> ring;
  if (norm == BodyNorm::L1)
    ring = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  else
    ring = {{1, 1}, {-1, 1}, {-1, -1}, {1, -1}};
  for (std::size_t i = 0; i < ring.size(); ++i)
    out.push_back(Piece{0, 1, offset(body, ring[i], 1), offset(body, ring[(i + 1) % ring.size()], 1), 0});
  return out;
}

}  // namespace

std::string to_string(BodyNorm n) {
  switch (n) {
    case BodyNorm::L1:
      return "l1";
    case BodyNorm::LInf:
      return "linf";
    case BodyNorm::L2:
      return "l2";
  }
  return "?";
}

bool plain_contains(BodyNorm norm, const PlainBall& b, const std::vector<Scalar>& p) {
  if (p.size() != b.center.size()) throw DomainError("dimension mismatch");
  Scalar acc = 0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    const Scalar d = p[i] - b.center[i];
    switch (norm) {
      case BodyNorm::L1:
        acc += abs(d);
        break;
      case BodyNorm::LInf:
        acc = max(acc, abs(d));
        break;
      case BodyNorm::L2:
        acc += d * d;
        break;
    }
  }
  return norm == BodyNorm::L2 ? acc <= b.radius * b.radius : acc <= b.radius;
}

std::vector<Scalar> sample_sphere(BodyNorm norm, const PlainBall& body, RationalSampler& rs, unsigned bits) {
  return offset(body, unit_point(norm, body.center.size(), rs, bits), 1);
}

std::vector<Scalar> sample_ball(BodyNorm norm, const PlainBall& body, RationalSampler& rs, unsigned bits) {
  const Scalar t = rs.dyadic_in(0, 1, bits) * Scalar(mpz_class(1) << bits, (mpz_class(1) << bits) + 1);
  return offset(body, unit_point(norm, body.center.size(), rs, bits), t);
}

std::optional<CoverageResult> boundary_covered_exact(BodyNorm norm, const PlainBall& body,
                                                     const std::vector<PlainBall>& covers, unsigned max_depth) {
  const std::size_t dim = body.center.size();
  if (dim == 0 || dim > 2) return std::nullopt;
  if (body.radius <= 0) throw DomainError("the body needs a positive radius");
  if (dim == 1) {
    for (int sgn : {1, -1}) {
      Pt p = offset(body, {Scalar(sgn)}, 1);
      if (!covered_by_any(norm, covers, p)) return CoverageResult{Coverage::Uncovered, p};
    }
    return CoverageResult{Coverage::Covered, std::nullopt};
  }
  bool undecided = false;
  for (const auto& pc : boundary_pieces(norm, body)) {
    struct Job {
      Scalar a, b;
      unsigned depth;
    };
    std::vector<Job> stack{{pc.lo, pc.hi, 0}};
    for (const Scalar& t : {pc.lo, pc.hi}) {
      Pt p = piece_at(body, pc, t);
      if (!covered_by_any(norm, covers, p)) return CoverageResult{Coverage::Uncovered, p};
    }
    while (!stack.empty()) {
      Job j = stack.back();
      stack.pop_back();
      bool inside = false;
      for (const auto& c : covers)
        if (piece_inside(norm, body, pc, c, j.a, j.b)) {
          inside = true;
          break;
        }
      if (inside) continue;
      const Scalar m = (j.a + j.b) / 2;
      Pt p = piece_at(body, pc, m);
      if (!covered_by_any(norm, covers, p)) return CoverageResult{Coverage::Uncovered, p};
      if (j.depth >= max_depth) {
        undecided = true;
        continue;
      }
      stack.push_back({m, j.b, j.depth + 1});
      stack.push_back({j.a, m, j.depth + 1});
    }
  }
  return CoverageResult{undecided ? Coverage::Undecided : Coverage::Covered, std::nullopt};
}

Report boundary_cover_oracle(BodyNorm norm, const PlainBall& body, const std::vector<PlainBall>& covers,
                             RationalSampler& rs, const BoundaryOptions& opts) {
  const std::size_t dim = body.center.size();
  for (const auto& c : covers)
    if (c.center.size() != dim) throw DomainError("dimension mismatch");
  Report r;
  r.checks.push_back("boundary-cover");
  const auto members = plain_members(covers);
  if (auto exact = boundary_covered_exact(norm, body, covers)) {
    r.counts["boundary_exact"] = 1;
    if (exact->verdict != Coverage::Covered) {
      r.inconclusive = true;
      if (exact->witness)
        r.findings.push_back(Witness{"boundary-uncovered", "boundary point misses every cover", to_sparse(*exact->witness),
                                     members, std::nullopt});
    }
  } else {
    for (std::size_t i = 0; i < opts.boundary_samples; ++i) {
      Pt p = sample_sphere(norm, body, rs);
      if (!covered_by_any(norm, covers, p)) {
        r.inconclusive = true;
        r.findings.push_back(
            Witness{"boundary-uncovered", "boundary point misses every cover", to_sparse(p), members, std::nullopt});
        break;
      }
    }
    r.counts["boundary_samples"] = opts.boundary_samples;
  }
  if (r.inconclusive) return r;
  std::vector<Pt> pts{body.center};
  for (std::size_t i = 0; i < opts.interior_samples; ++i) pts.push_back(sample_ball(norm, body, rs));
  std::size_t escapes = 0;
  for (const auto& p : pts) {
    if (covered_by_any(norm, covers, p)) continue;
    ++escapes;
    Witness w{"interior-escape", "interior point misses every cover", to_sparse(p), members, std::nullopt};
    if (covers.size() <= dim)
      r.violations.push_back(std::move(w));
    else if (r.findings.size() < 8)
      r.findings.push_back(std::move(w));
  }
  r.counts["interior_samples"] = pts.size();
  r.counts["interior_escapes"] = escapes;
  return r;
}

bool replay(BodyNorm norm, const Witness& w) {
  if (!w.point) return false;
  std::size_t dim = 0;
  for (const auto& [k, v] : w.point->block_entries()) dim = std::max<std::size_t>(dim, k.index + 1);
  for (const auto& m : w.members)
    for (const auto& [k, v] : m.ball.center.block_entries()) dim = std::max<std::size_t>(dim, k.index + 1);
  const Pt p = from_sparse(*w.point, dim);
  for (const auto& m : w.members)
    if (plain_contains(norm, PlainBall{from_sparse(m.ball.center, dim), m.ball.radius}, p)) return false;
  return w.check == "interior-escape" || w.check == "boundary-uncovered";
}

std::optional<SharpInstance> find_three_ball_escape(BodyNorm norm) {
  const PlainBall body{{0, 0}, 1};
  std::optional<SharpInstance> best;
  const std::vector<Scalar> rhos{Scalar(1, 2), Scalar(3, 4), Scalar(1), Scalar(5, 4), Scalar(3, 2), Scalar(2), Scalar(3)};
  for (int deg = 0; deg < 120; deg += 15) {
    // Rational unit directions (exact for the Euclidean norm) near 120 degree spacing.
    std::vector<Pt> dirs;
    for (int k = 0; k < 3; ++k) {
      double a = (deg + 120.0 * k) * std::numbers::pi / 180.0;
      if (a > std::numbers::pi) a -= 2 * std::numbers::pi;
      Scalar t(std::lround(std::tan(a / 2) * 1000), 1000);
      t.canonicalize();
      const Scalar d = 1 + t * t;
      dirs.push_back({(1 - t * t) / d, 2 * t / d});
    }
    for (const auto& rho : rhos) {
      std::vector<Pt> centers;
      Scalar reach;
      for (std::size_t k = 0; k < dirs.size(); ++k) {
        centers.push_back({rho * dirs[k][0], rho * dirs[k][1]});
        Scalar n = norm == BodyNorm::L1   ? Scalar(abs(centers[k][0]) + abs(centers[k][1]))
                   : norm == BodyNorm::LInf ? max(abs(centers[k][0]), abs(centers[k][1]))
                                            : rho;
        if (k == 0 || n < reach) reach = n;
      }
      auto with_radius = [&](const Scalar& s) {
        std::vector<PlainBall> cs;
        for (const auto& c : centers) cs.push_back(PlainBall{c, s});
        return cs;
      };
      auto covered = [&](const Scalar& s) {
        return boundary_covered_exact(norm, body, with_radius(s))->verdict == Coverage::Covered;
      };
      // The center escapes exactly when the radius stays below `reach`.
      Scalar hi = reach * Scalar(63, 64);
      if (!covered(hi)) continue;
      Scalar lo = 0;
      for (int it = 0; it < 30; ++it) {
        const Scalar mid = (lo + hi) / 2;
        (covered(mid) ? hi : lo) = mid;
      }
      const Scalar margin = reach - hi;
      if (best && margin <= best->center_margin) continue;
      best = SharpInstance{norm, body, with_radius(hi), hi, margin};
    }
  }
  return best;
}
// Singular points

Report probe_singular(const FamilyHandle& h, const std::vector<SparseVec>& probes, const ProbeOptions& opts) {
  if (opts.horizons.size() < 2 || opts.radii.empty()) throw DomainError("probing needs radii and two or more horizons");
  Report r;
  r.checks.push_back("singular");
  std::size_t flagged = 0;
  for (const auto& p : probes) {
    bool grows = true;
    std::string trace;
    for (const auto& w : opts.radii) {
      std::vector<std::size_t> counts;
      for (unsigned hz : opts.horizons) counts.push_back(h.balls_near_horizon(p, w, hz).size());
      grows = grows && counts.back() > counts[counts.size() - 2];
      trace += " w=" + to_string(w) + ":";
      for (auto c : counts) trace += " " + std::to_string(c);
    }
    if (grows) {
      ++flagged;
      r.findings.push_back(Witness{"singular", "member count still growing at the horizon;" + trace, p, {}, std::nullopt});
    }
  }
  r.counts["probes"] = probes.size();
  r.counts["flagged"] = flagged;
  return r;
}

}  // namespace balltiling
