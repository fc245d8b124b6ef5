#include "balltiling/octahedron.hpp"

#include <mpfr.h>

#include <algorithm>
#include <cmath>
#include <numbers>

namespace balltiling {

namespace {

constexpr long double kPi = std::numbers::pi_v<long double>;

// Neumaier compensated sum.
class Accumulator {
 public:
  void add(long double x) {
    const long double t = sum_ + x;
    if (std::fabs(sum_) >= std::fabs(x))
      comp_ += (sum_ - t) + x;
    else
      comp_ += (x - t) + sum_;
    sum_ = t;
  }
  long double value() const { return sum_ + comp_; }

 private:
  long double sum_ = 0;
  long double comp_ = 0;
};

long double dot(const Vec3& a, const Vec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }

Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

Vec3 sub(const Vec3& a, const Vec3& b) { return {a[0] - b[0], a[1] - b[1], a[2] - b[2]}; }
Vec3 add(const Vec3& a, const Vec3& b) { return {a[0] + b[0], a[1] + b[1], a[2] + b[2]}; }
Vec3 scale(long double k, const Vec3& a) { return {k * a[0], k * a[1], k * a[2]}; }

Vec3 unit(const Vec3& a) {
  const long double n = std::sqrt(dot(a, a));
  if (!(n > 0)) throw DomainError("zero ray");
  return scale(1 / n, a);
}

long double to_ld(const Scalar& s) {
  return static_cast<long double>(s.get_num().get_d()) / static_cast<long double>(s.get_den().get_d());
}

Vec3 to_vec(const Rat3& x) { return {to_ld(x[0]), to_ld(x[1]), to_ld(x[2])}; }

// Solid angle of the triangle cone spanned by unit vectors.
long double triangle_angle(const Vec3& a, const Vec3& b, const Vec3& c) {
  const long double num = std::fabs(dot(a, cross(b, c)));
  const long double den = 1 + dot(a, b) + dot(b, c) + dot(c, a);
  return 2 * std::atan2(num, den);
}

struct P2 {
  long double x, y;
  std::size_t id;
};

long double turn(const P2& o, const P2& a, const P2& b) { return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x); }

std::vector<std::size_t> hull(std::vector<P2> pts) {
  std::sort(pts.begin(), pts.end(), [](const P2& a, const P2& b) { return a.x < b.x || (a.x == b.x && a.y < b.y); });
  std::vector<P2> h(2 * pts.size());
  std::size_t k = 0;
  const long double eps = 1e-15L;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    while (k >= 2 && turn(h[k - 2], h[k - 1], pts[i]) <= eps) --k;
    h[k++] = pts[i];
  }
  for (std::size_t i = pts.size() - 1, lo = k + 1; i-- > 0;) {
    while (k >= lo && turn(h[k - 2], h[k - 1], pts[i]) <= eps) --k;
    h[k++] = pts[i];
  }
  h.resize(k > 0 ? k - 1 : 0);
  std::vector<std::size_t> out;
  for (const auto& p : h) out.push_back(p.id);
  return out;
}

void check_unit_l1(const Rat3& x) {
  if (abs(x[0]) + abs(x[1]) + abs(x[2]) != 1) throw DomainError("point is not on the unit l1 sphere");
}

int zero_count(const Rat3& x) { return (x[0] == 0) + (x[1] == 0) + (x[2] == 0); }

Vec3 axis(std::size_t i, long double s) {
  Vec3 v{0, 0, 0};
  v[i] = s;
  return v;
}

long double sgn(const Scalar& s) { return s < 0 ? -1.0L : 1.0L; }

struct MpfrNum {
  mpfr_t v;
  explicit MpfrNum(long bits) { mpfr_init2(v, bits); }
  ~MpfrNum() { mpfr_clear(v); }
  MpfrNum(const MpfrNum&) = delete;
  MpfrNum& operator=(const MpfrNum&) = delete;
};

std::string term(const Scalar& k, const char* name) {
  if (k == 1) return name;
  return to_string(k) + "*" + name;
}

}  // namespace

std::string to_string(BoundaryClass c) {
  switch (c) {
    case BoundaryClass::Vertex:
      return "Vertex";
    case BoundaryClass::EdgeInterior:
      return "EdgeInterior";
    case BoundaryClass::FaceInterior:
      return "FaceInterior";
  }
  return "?";
}

BoundaryClass classify_boundary_point(const Rat3& x) {
  check_unit_l1(x);
  switch (zero_count(x)) {
    case 2:
      return BoundaryClass::Vertex;
    case 1:
      return BoundaryClass::EdgeInterior;
    default:
      return BoundaryClass::FaceInterior;
  }
}

BoundaryClass classify_boundary_point(const SparseVec& x) {
  if (!x.tail().empty()) throw DomainError("expected a point of l1^3");
  Rat3 r{0, 0, 0};
  for (const auto& [k, v] : x.block_entries()) {
    if (k.block != "x" || k.index > 2) throw DomainError("expected coordinates x.0, x.1, x.2");
    r[k.index] = v;
  }
  return classify_boundary_point(r);
}

bool protectable(const Rat3& x) { return classify_boundary_point(x) == BoundaryClass::FaceInterior; }

long double SolidAngle::value() const {
  return to_ld(asin_coeff) * std::asin(1.0L / 3.0L) + to_ld(pi_coeff) * kPi;
}

std::string SolidAngle::value_string(int digits) const {
  const long bits = static_cast<long>(digits * 3.33) + 32;
  MpfrNum s(bits), p(bits), out(bits);
  mpfr_set_ui(s.v, 1, MPFR_RNDN);
  mpfr_div_ui(s.v, s.v, 3, MPFR_RNDN);
  mpfr_asin(s.v, s.v, MPFR_RNDN);
  mpfr_mul_q(s.v, s.v, asin_coeff.get_mpq_t(), MPFR_RNDN);
  mpfr_const_pi(p.v, MPFR_RNDN);
  mpfr_mul_q(p.v, p.v, pi_coeff.get_mpq_t(), MPFR_RNDN);
  mpfr_add(out.v, s.v, p.v, MPFR_RNDN);
  std::vector<char> buf(static_cast<std::size_t>(digits) + 32);
  mpfr_snprintf(buf.data(), buf.size(), "%.*Rg", digits, out.v);
  return buf.data();
}

std::string SolidAngle::symbolic() const {
  if (asin_coeff == 0 && pi_coeff == 0) return "0";
  std::string out;
  if (asin_coeff != 0) out = term(asin_coeff, "arcsin(1/3)");
  if (pi_coeff != 0) {
    if (!out.empty()) out += pi_coeff < 0 ? " - " : " + ";
    out += term(out.empty() ? pi_coeff : abs(pi_coeff), "pi");
  }
  return out;
}

SolidAngle parse_solid_angle(const std::string& raw) {
  std::string text;
  for (char c : raw)
    if (c != ' ' && c != '*') text += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  if (text == "vertex") return solid_angle_at(BoundaryClass::Vertex);
  if (text == "edge") return solid_angle_at(BoundaryClass::EdgeInterior);
  if (text == "face") return solid_angle_at(BoundaryClass::FaceInterior);
  if (text == "full") return {0, 4};
  if (text.empty()) throw DomainError("empty solid angle");
  SolidAngle out{0, 0};
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t next = text.find('+', pos);
    if (next == std::string::npos) next = text.size();
    const std::string t = text.substr(pos, next - pos);
    auto coeff = [&](std::size_t n) { return n == 0 ? Scalar(1) : parse_scalar(t.substr(0, n)); };
    if (t.size() >= 2 && t.ends_with("pi")) {
      out.pi_coeff += coeff(t.size() - 2);
    } else if (t.size() >= 4 && t.ends_with("asin")) {
      out.asin_coeff += coeff(t.size() - 4);
    } else {
      throw DomainError("cannot parse solid angle term '" + t + "'");
    }
    pos = next + 1;
  }
  return out;
}

SolidAngle solid_angle_at(BoundaryClass c) {
  switch (c) {
    case BoundaryClass::Vertex:
      return {4, 0};
    case BoundaryClass::EdgeInterior:
      return {2, 1};
    case BoundaryClass::FaceInterior:
      return {0, 2};
  }
  throw DomainError("unknown boundary class");
}

long double solid_angle_numeric(const Vec3& apex, const std::vector<Vec3>& through) {
  if (through.size() < 3) throw DomainError("a solid cone needs at least three rays");
  std::vector<Vec3> rays;
  Vec3 m{0, 0, 0};
  for (const auto& t : through) {
    rays.push_back(unit(sub(t, apex)));
    m = add(m, rays.back());
  }
  m = unit(m);
  for (const auto& r : rays)
    if (!(dot(r, m) > 1e-12L)) throw DomainError("rays do not span a pointed cone");
  // Gnomonic projection onto the plane orthogonal to m.
  const Vec3 helper = std::fabs(m[0]) < 0.9L ? Vec3{1, 0, 0} : Vec3{0, 1, 0};
  const Vec3 u = unit(cross(m, helper));
  const Vec3 v = cross(m, u);
  std::vector<P2> pts;
  for (std::size_t i = 0; i < rays.size(); ++i) {
    const Vec3 g = scale(1 / dot(rays[i], m), rays[i]);
    pts.push_back(P2{dot(g, u), dot(g, v), i});
  }
  const auto h = hull(pts);
  if (h.size() < 3) throw DomainError("rays do not span a solid cone");
  Accumulator acc;
  for (std::size_t i = 1; i + 1 < h.size(); ++i) acc.add(triangle_angle(rays[h[0]], rays[h[i]], rays[h[i + 1]]));
  return acc.value();
}

long double tangent_cone_angle(const Rat3& x) {
  const auto cls = classify_boundary_point(x);
  const Vec3 p = to_vec(x);
  Accumulator acc;
  switch (cls) {
    case BoundaryClass::Vertex: {
      std::size_t i = x[0] != 0 ? 0 : (x[1] != 0 ? 1 : 2);
      std::vector<Vec3> adj;
      for (std::size_t j = 0; j < 3; ++j)
        if (j != i) {
          adj.push_back(axis(j, 1));
          adj.push_back(axis(j, -1));
        }
      acc.add(solid_angle_numeric(p, adj));
      break;
    }
    case BoundaryClass::EdgeInterior: {
      std::vector<std::size_t> nz;
      std::size_t k = 0;
      for (std::size_t i = 0; i < 3; ++i) (x[i] != 0 ? nz.push_back(i) : void(k = i));
      const Vec3 along = sub(axis(nz[1], sgn(x[nz[1]])), axis(nz[0], sgn(x[nz[0]])));
      const Vec3 a = axis(k, 1);
      const Vec3 b = axis(k, -1);
      acc.add(solid_angle_numeric(p, {add(p, along), a, b}));
      acc.add(solid_angle_numeric(p, {sub(p, along), a, b}));
      break;
    }
    case BoundaryClass::FaceInterior: {
      const Vec3 v1 = axis(0, sgn(x[0]));
      const Vec3 v2 = axis(1, sgn(x[1]));
      const Vec3 v3 = axis(2, sgn(x[2]));
      const Vec3 n{sgn(x[0]), sgn(x[1]), sgn(x[2])};
      const Vec3 s = sub(v1, v2);
      const Vec3 t = sub(add(v1, v2), scale(2, v3));
      const std::array<Vec3, 4> ring{s, t, scale(-1, s), scale(-1, t)};
      for (std::size_t i = 0; i < 4; ++i)
        acc.add(solid_angle_numeric(p, {sub(p, n), add(p, ring[i]), add(p, ring[(i + 1) % 4])}));
      break;
    }
  }
  return acc.value();
}

std::vector<DecompositionSolution> decompose_full_angle(const SolidAngle& target) {
  // 4 aV + 2 aE = a and aE + 2 aF = b.
  std::vector<DecompositionSolution> out;
  const Scalar& a = target.asin_coeff;
  const Scalar& b = target.pi_coeff;
  if (b < 0 || a < 0) return out;
  const mpz_class top = floor(b);
  for (mpz_class e = 0; e <= top; ++e) {
    const Scalar v = (a - 2 * Scalar(e)) / 4;
    const Scalar f = (b - Scalar(e)) / 2;
    if (v < 0 || f < 0 || v.get_den() != 1 || f.get_den() != 1) continue;
    if (!v.get_num().fits_slong_p() || !f.get_num().fits_slong_p()) throw DomainError("target too large");
    out.push_back({v.get_num().get_si(), e.get_si(), f.get_num().get_si()});
  }
  return out;
}

ScanBounds default_scan_bounds(const SolidAngle& target) {
  const long double t = target.value();
  auto bound = [&](BoundaryClass c) {
    return t <= 0 ? 0L : static_cast<long>(std::ceil(t / solid_angle_at(c).value()));
  };
  return {bound(BoundaryClass::Vertex), bound(BoundaryClass::EdgeInterior), bound(BoundaryClass::FaceInterior)};
}

std::vector<DecompositionSolution> numeric_scan(const SolidAngle& target, const ScanBounds& bounds, long double tol) {
  const long double t = target.value();
  const long double wv = solid_angle_at(BoundaryClass::Vertex).value();
  const long double we = solid_angle_at(BoundaryClass::EdgeInterior).value();
  const long double wf = solid_angle_at(BoundaryClass::FaceInterior).value();
  std::vector<DecompositionSolution> out;
  for (long v = 0; v <= bounds.vertex; ++v)
    for (long e = 0; e <= bounds.edge; ++e)
      for (long f = 0; f <= bounds.face; ++f)
        if (std::fabs(v * wv + e * we + f * wf - t) <= tol) out.push_back({v, e, f});
  return out;
}

double min_rational_gap(long max_den, long bits) {
  if (max_den < 1) throw DomainError("max_den must be positive");
  MpfrNum x(bits), pi(bits), qx(bits), gap(bits), best(bits);
  mpfr_set_ui(x.v, 1, MPFR_RNDN);
  mpfr_div_ui(x.v, x.v, 3, MPFR_RNDN);
  mpfr_asin(x.v, x.v, MPFR_RNDN);
  mpfr_const_pi(pi.v, MPFR_RNDN);
  mpfr_div(x.v, x.v, pi.v, MPFR_RNDN);
  mpfr_set_inf(best.v, 1);
  for (long q = 1; q <= max_den; ++q) {
    mpfr_mul_si(qx.v, x.v, q, MPFR_RNDN);
    mpfr_round(gap.v, qx.v);
    mpfr_sub(gap.v, qx.v, gap.v, MPFR_RNDN);
    mpfr_abs(gap.v, gap.v, MPFR_RNDN);
    mpfr_div_si(gap.v, gap.v, q, MPFR_RNDN);
    if (mpfr_less_p(gap.v, best.v)) mpfr_set(best.v, gap.v, MPFR_RNDN);
  }
  return mpfr_get_d(best.v, MPFR_RNDN);
}

}  // namespace balltiling
