#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>

#include "CLI11.hpp"
#include "balltiling/octahedron.hpp"
#include "config.hpp"
#include "json.hpp"

using namespace tilings;
using nlohmann::json;

namespace {

constexpr int kPass = 0;
constexpr int kFail = 1;
constexpr int kUsage = 2;

struct Common {
  std::string config_path;
  std::string family;
  std::vector<std::string> sets;
  std::optional<std::string> construction, base;
  std::optional<unsigned> stages, max_level;
  std::optional<std::string> extent;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> samples;
};

void add_common(CLI::App* app, Common& c, bool family) {
  app->add_option("--config", c.config_path, "key = value config file")->check(CLI::ExistingFile);
  if (family) app->add_option("--family", c.family, "archive (JSON lines) instead of a live build")->check(CLI::ExistingFile);
  app->add_option("--construction", c.construction, "c00-tiling | c0-lift | whitney");
  app->add_option("--base", c.base, "base tiling of c0-lift (interval-tiling)");
  app->add_option("--stages", c.stages, "number of stages of c00-tiling");
  app->add_option("--extent", c.extent, "half width of the materialized box");
  app->add_option("--max-level", c.max_level, "deepest cell level materialized");
  app->add_option("--seed", c.seed, "sampling seed (default TILINGS_SEED or 1)");
  app->add_option("--samples", c.samples, "number of sample points");
  app->add_option("--set", c.sets, "extra key=value settings")->take_all();
}

Config load_config(const Common& c) {
  Config cfg;
  cfg.seed = default_seed();
  if (!c.config_path.empty())
    for (const auto& [k, v] : read_key_values(c.config_path)) cfg.set(k, v);
  for (const auto& kv : c.sets) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos) throw ConfigError("--set expects key=value, got '" + kv + "'");
    cfg.set(kv.substr(0, eq), kv.substr(eq + 1));
  }
  if (c.construction) cfg.set("construction", *c.construction);
  if (c.base) cfg.set("base", *c.base);
  if (c.stages) cfg.stages = *c.stages;
  if (c.extent) cfg.set("extent", *c.extent);
  if (c.max_level) cfg.max_level = *c.max_level;
  if (c.seed) cfg.seed = *c.seed;
  if (c.samples) cfg.samples = *c.samples;
  cfg.validate();
  return cfg;
}

Archive load_archive(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot read archive '" + path + "'");
  return read_archive(in);
}

std::string slurp_or_text(const std::string& arg) {
  if (std::filesystem::is_regular_file(arg)) {
    std::ifstream in(arg);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
  }
  return arg;
}

/// Points from a file: one point per line, or a JSON array of points.
std::vector<SparseVec> read_points(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot read points file '" + path + "'");
  std::vector<SparseVec> out;
  std::string line;
  while (std::getline(in, line))
    if (line.find_first_not_of(" \t\r") != std::string::npos) out.push_back(parse_point(line));
  return out;
}

json member_json(const Member& m) {
  return {{"tag", m.tag}, {"ball", json::parse(to_json(m.ball))}};
}

int cmd_build(const Common& c, const std::string& out_flag) {
  Config cfg = load_config(c);
  if (!out_flag.empty()) cfg.out = out_flag;
  if (cfg.out.empty()) throw ConfigError("build needs --out or out = ... in the config");
  const auto t0 = std::chrono::steady_clock::now();
  const Live live = make_live(cfg);
  const Archive a = materialize(live);
  {
    std::ofstream out(cfg.out);
    if (!out) throw DomainError("cannot write '" + cfg.out + "'");
    write_archive(out, a);
  }
  std::map<std::string, std::size_t> per_stage;
  std::optional<Scalar> rmax;
  for (const auto& r : a.records) {
    if (r.stage) ++per_stage["s" + std::to_string(*r.stage)];
    if (!rmax || *rmax < r.ball.radius) rmax = r.ball.radius;
  }
  json summary{{"construction", a.construction},
               {"balls", a.records.size()},
               {"out", cfg.out},
               {"seconds", std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count()}};
  if (!per_stage.empty()) summary["per_stage"] = per_stage;
  if (rmax) summary["max_radius"] = to_string(*rmax);
  std::cout << summary.dump(2) << '\n';
  return kPass;
}

int cmd_locate(const Common& c, const std::string& point_arg) {
  const SparseVec p = parse_point(slurp_or_text(point_arg));
  std::vector<Member> hits;
  if (!c.family.empty()) {
    hits = ListHandle::from_archive(load_archive(c.family)).locate(p);
  } else {
    const Live live = make_live(load_config(c));
    hits = live.handle->locate(p);
  }
  json balls = json::array();
  for (const auto& m : hits) balls.push_back(member_json(m));
  std::cout << json{{"point", to_string(p)}, {"count", hits.size()}, {"balls", balls}}.dump(2) << '\n';
  return kPass;
}

struct VerifyFlags {
  std::string checks = "overlap,cover";
  std::optional<std::size_t> star_n;
  std::string points;
  std::string report;
};

std::vector<Member> star_members(const FamilyHandle& h, const std::vector<SparseVec>& pts, std::size_t limit) {
  std::vector<Member> out;
  std::set<std::string> seen;
  for (const auto& p : pts) {
    for (auto& m : h.locate(p)) {
      if (out.size() >= limit) return out;
      if (seen.insert(m.tag).second) out.push_back(std::move(m));
    }
  }
  return out;
}

int cmd_verify(const Common& c, const VerifyFlags& f) {
  std::set<std::string> checks;
  for (std::string item; const char ch : f.checks + ",") {
    if (ch != ',') {
      item += ch;
      continue;
    }
    if (item != "overlap" && item != "cover" && item != "star") throw ConfigError("unknown check '" + item + "'");
    checks.insert(item);
    item.clear();
  }
  Config cfg = load_config(c);
  Report rep;
  if (!c.family.empty()) {
    const Archive a = load_archive(c.family);
    const ListHandle h = ListHandle::from_archive(a);
    if (checks.count("overlap")) rep.merge(check_pairwise(a.space, h.enumerate()));
    if (checks.count("cover")) {
      if (f.points.empty()) throw ConfigError("covering an archive needs --points");
      rep.merge(verify_covering(h, read_points(f.points)));
    }
    if (checks.count("star")) {
      auto ms = h.enumerate();
      if (ms.size() > cfg.star_members) ms.resize(cfg.star_members);
      rep.merge(star_degree_report(h, ms, f.star_n));
    }
  } else {
    const Live live = make_live(cfg);
    const auto pts = f.points.empty() ? sample_points(live, cfg.samples, cfg.seed) : read_points(f.points);
    if (checks.count("overlap")) rep.merge(verify_non_overlapping(*live.handle, pts));
    if (checks.count("cover")) rep.merge(verify_covering(*live.handle, pts));
    if (checks.count("star")) {
      const auto ms = star_members(*live.handle, pts, cfg.star_members);
      if (live.stages) {
        std::map<unsigned, std::vector<Member>> by_stage;
        for (const auto& m : ms) by_stage[static_cast<unsigned>(std::stoul(m.tag.substr(1)))].push_back(m);
        for (const auto& [s, group] : by_stage)
          rep.merge(star_degree_report(StageHandle(live.stages, s), group, f.star_n));
      } else {
        rep.merge(star_degree_report(*live.handle, ms, f.star_n));
      }
    }
  }
  if (!f.report.empty()) {
    std::ofstream out(f.report);
    if (!out) throw DomainError("cannot write '" + f.report + "'");
    out << rep.to_json() << '\n';
    std::cout << (rep.passed() ? "PASS" : "FAIL") << ' ' << rep.violations.size() << " violation(s)\n";
  } else {
    std::cout << rep.to_json() << '\n';
  }
  return rep.passed() ? kPass : kFail;
}

json angle_json(const SolidAngle& a) {
  return {{"symbolic", a.symbolic()}, {"value", a.value_string(30)}};
}

Rat3 parse_rat3(const std::string& text) {
  Rat3 x;
  std::stringstream in(text);
  std::string item;
  std::size_t i = 0;
  while (std::getline(in, item, ',')) {
    if (i == 3) throw DomainError("expected three comma-separated rationals");
    x[i++] = parse_scalar(item);
  }
  if (i != 3) throw DomainError("expected three comma-separated rationals");
  return x;
}

int cmd_octa_classify(const std::string& text) {
  const Rat3 x = parse_rat3(text);
  const BoundaryClass k = classify_boundary_point(x);
  std::cout << json{{"point", {to_string(x[0]), to_string(x[1]), to_string(x[2])}},
                    {"class", to_string(k)},
                    {"protectable", protectable(x)},
                    {"tangent_angle", angle_json(solid_angle_at(k))},
                    {"tangent_angle_numeric", static_cast<double>(tangent_cone_angle(x))}}
                   .dump(2)
            << '\n';
  return kPass;
}

int cmd_octa_angle(const std::string& name, int digits) {
  const SolidAngle a = parse_solid_angle(name);
  json j{{"name", name}, {"symbolic", a.symbolic()}, {"value", a.value_string(digits)}};
  const std::map<std::string, Rat3> representative{
      {"vertex", {1, 0, 0}}, {"edge", {Scalar(1, 2), Scalar(1, 2), 0}}, {"face", {Scalar(1, 3), Scalar(1, 3), Scalar(1, 3)}}};
  if (auto it = representative.find(name); it != representative.end()) {
    const long double numeric = tangent_cone_angle(it->second);
    j["numeric"] = static_cast<double>(numeric);
    j["numeric_error"] = static_cast<double>(std::fabs(numeric - a.value()));
  }
  std::cout << j.dump(2) << '\n';
  return kPass;
}

int cmd_octa_decompose(const std::string& target_text, double tol) {
  const SolidAngle target = parse_solid_angle(target_text);
  auto rows = [](const std::vector<DecompositionSolution>& v) {
    json out = json::array();
    for (const auto& s : v) out.push_back({s.vertex, s.edge, s.face});
    return out;
  };
  const ScanBounds b = default_scan_bounds(target);
  std::cout << json{{"target", target.symbolic()},
                    {"solutions", rows(decompose_full_angle(target))},
                    {"scan_bounds", {b.vertex, b.edge, b.face}},
                    {"scan", rows(numeric_scan(target, b, tol))}}
                   .dump(2)
            << '\n';
  return kPass;
}

struct SliceFlags {
  std::string family;
  std::string frame;
  std::string offset;
  std::string bounds;
  unsigned resolution = 64;
  std::string out;
};

int cmd_slice(const SliceFlags& f) {
  if (f.resolution == 0) throw ConfigError("resolution must be positive");
  const Archive a = load_archive(f.family);
  const auto comma = f.frame.find(',');
  if (comma == std::string::npos) throw ConfigError("--frame expects two coordinates, e.g. y.0,t1");
  const CoordId u = parse_coord(f.frame.substr(0, comma));
  const CoordId v = parse_coord(f.frame.substr(comma + 1));
  std::vector<Scalar> bb;
  {
    std::stringstream in(f.bounds);
    for (std::string item; std::getline(in, item, ',');) bb.push_back(parse_scalar(item));
  }
  if (bb.size() != 4 || !(bb[0] < bb[1]) || !(bb[2] < bb[3])) throw ConfigError("--bounds expects umin,umax,vmin,vmax");
  const SparseVec base = f.offset.empty() ? SparseVec{} : parse_point(slurp_or_text(f.offset));
  const ListHandle h = ListHandle::from_archive(a);
  const auto members = h.enumerate();

  std::ofstream file;
  if (!f.out.empty()) {
    file.open(f.out);
    if (!file) throw DomainError("cannot write '" + f.out + "'");
  }
  std::ostream& out = f.out.empty() ? std::cout : file;
  out << "u,v,count,members\n";
  std::size_t hit_pixels = 0;
  const Scalar du = (bb[1] - bb[0]) / f.resolution, dv = (bb[3] - bb[2]) / f.resolution;
  for (unsigned j = 0; j < f.resolution; ++j) {
    for (unsigned i = 0; i < f.resolution; ++i) {
      const Scalar pu = bb[0] + du * Scalar(2 * i + 1, 2);
      const Scalar pv = bb[2] + dv * Scalar(2 * j + 1, 2);
      SparseVec p = base;
      p.set(u, pu);
      p.set(v, pv);
      std::string tags;
      std::size_t count = 0;
      for (const auto& m : members)
        if (ball_contains(a.space, m.ball, p)) {
          tags += (count++ ? "|" : "") + m.tag;
        }
      if (count) ++hit_pixels;
      out << pu.get_d() << ',' << pv.get_d() << ',' << count << ',' << tags << '\n';
    }
  }
  if (hit_pixels == 0) std::cerr << "warning: the slice meets no ball of the archive\n";
  return kPass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact ball tilings and coverings: build, locate, verify, slice"};
  app.require_subcommand(1);

  Common build_c, locate_c, verify_c;
  std::string build_out, point_arg;
  auto* build = app.add_subcommand("build", "materialize a construction into a JSON-lines archive");
  add_common(build, build_c, false);
  build->add_option("--out", build_out, "archive path");

  auto* locate = app.add_subcommand("locate", "balls containing a point");
  add_common(locate, locate_c, true);
  locate->add_option("--point", point_arg, "point file or inline point")->required();

  VerifyFlags vf;
  auto* verify = app.add_subcommand("verify", "overlap, cover and star checks");
  add_common(verify, verify_c, true);
  verify->add_option("--check", vf.checks, "comma list of overlap,cover,star");
  verify->add_option("--star-n", vf.star_n, "star degree bound");
  verify->add_option("--points", vf.points, "points file, one point per line")->check(CLI::ExistingFile);
  verify->add_option("--report", vf.report, "write the report here");

  auto* octa = app.add_subcommand("octa", "cross-polytope boundary analysis");
  octa->require_subcommand(1);
  std::string classify_arg, angle_arg, decompose_arg = "4pi";
  int digits = 30;
  double tol = 1e-9;
  auto* classify = octa->add_subcommand("classify", "vertex, edge or face point of the l1 sphere");
  classify->add_option("point", classify_arg, "x,y,z with |x|+|y|+|z| = 1")->required();
  auto* angle = octa->add_subcommand("angle", "solid angle constant");
  angle->add_option("name", angle_arg, "vertex | edge | face | full | expression")->required();
  angle->add_option("--digits", digits, "significant digits");
  auto* decompose = octa->add_subcommand("decompose", "integer decompositions of a solid angle");
  decompose->add_option("target,--target", decompose_arg, "solid angle, default 4pi");
  decompose->add_option("--tol", tol, "numeric scan tolerance");

  SliceFlags sf;
  auto* slice = app.add_subcommand("slice", "CSV raster of a planar cross-section of an archive");
  slice->add_option("--family", sf.family, "archive")->required()->check(CLI::ExistingFile);
  slice->add_option("--frame", sf.frame, "two coordinates spanning the plane, e.g. y.0,t1")->required();
  slice->add_option("--offset", sf.offset, "point the plane passes through");
  slice->add_option("--bounds", sf.bounds, "umin,umax,vmin,vmax")->required();
  slice->add_option("--resolution", sf.resolution, "pixels per axis");
  slice->add_option("--out", sf.out, "CSV path, default stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kPass : kUsage;
  }

  try {
    if (*build) return cmd_build(build_c, build_out);
    if (*locate) return cmd_locate(locate_c, point_arg);
    if (*verify) return cmd_verify(verify_c, vf);
    if (*classify) return cmd_octa_classify(classify_arg);
    if (*angle) return cmd_octa_angle(angle_arg, digits);
    if (*decompose) return cmd_octa_decompose(decompose_arg, tol);
    if (*slice) return cmd_slice(sf);
  } catch (const NotYetBuiltError& e) {
    std::cerr << "not yet built: " << e.what() << '\n';
    return kUsage;
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}
