#include "config.hpp"

#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>

namespace tilings {

namespace {

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return {};
  const auto b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(s);
  while (std::getline(in, item, sep))
    if (!trim(item).empty()) out.push_back(trim(item));
  return out;
}

unsigned long to_unsigned(const std::string& key, const std::string& v) {
  try {
    std::size_t used = 0;
    const unsigned long x = std::stoul(v, &used);
    if (used != v.size() || v.front() == '-') throw std::invalid_argument(v);
    return x;
  } catch (const std::exception&) {
    throw ConfigError(key + ": expected a non-negative integer, got '" + v + "'");
  }
}

Scalar to_scalar(const std::string& key, const std::string& v) {
  try {
    return parse_scalar(v);
  } catch (const DomainError&) {
    throw ConfigError(key + ": expected a rational, got '" + v + "'");
  }
}

NormKind to_norm(const std::string& key, const std::string& v) {
  if (v == "l1") return NormKind::L1;
  if (v == "linf") return NormKind::LInf;
  throw ConfigError(key + ": norm must be l1 or linf");
}

}  // namespace

void Config::set(const std::string& key, const std::string& raw) {
  const std::string v = trim(raw);
  if (key == "construction") {
    if (v != "c00-tiling" && v != "c0-lift" && v != "whitney") throw ConfigError("unknown construction '" + v + "'");
    construction = v;
  } else if (key == "y_dim") {
    y_dim = static_cast<std::uint32_t>(to_unsigned(key, v));
  } else if (key == "y_norm") {
    y_norm = to_norm(key, v);
  } else if (key == "generators") {
    generators.clear();
    if (v != "none")
      for (const auto& g : split(v, ';')) generators.push_back(parse_point(g));
  } else if (key == "stages") {
    stages = static_cast<unsigned>(to_unsigned(key, v));
  } else if (key == "z_dim") {
    z_dim = static_cast<std::uint32_t>(to_unsigned(key, v));
  } else if (key == "z_norm") {
    z_norm = to_norm(key, v);
  } else if (key == "obstacle") {
    obstacle.clear();
    if (v != "none")
      for (const auto& item : split(v, ';')) {
        const auto at = item.rfind('@');
        if (at == std::string::npos) throw ConfigError("obstacle: expected '<point> @ <radius>'");
        obstacle.emplace_back(parse_point(item.substr(0, at)), to_scalar(key, trim(item.substr(at + 1))));
      }
  } else if (key == "base") {
    if (v != "interval-tiling") throw ConfigError("unknown base tiling '" + v + "'");
    base = v;
  } else if (key == "origin") {
    origin = to_scalar(key, v);
  } else if (key == "half_width") {
    half_width = to_scalar(key, v);
  } else if (key == "lift_support") {
    lift_support = static_cast<unsigned>(to_unsigned(key, v));
  } else if (key == "s0") {
    whitney.base_side = to_scalar(key, v);
  } else if (key == "window_lo") {
    whitney.window_lo = to_scalar(key, v);
  } else if (key == "window_hi") {
    whitney.window_hi = to_scalar(key, v);
  } else if (key == "kappa") {
    whitney.kappa = to_scalar(key, v);
  } else if (key == "extent") {
    extent = to_scalar(key, v);
  } else if (key == "max_level") {
    max_level = static_cast<unsigned>(to_unsigned(key, v));
  } else if (key == "samples") {
    samples = to_unsigned(key, v);
  } else if (key == "tail_support") {
    tail_support = static_cast<unsigned>(to_unsigned(key, v));
  } else if (key == "seed") {
    seed = to_unsigned(key, v);
  } else if (key == "star_members") {
    star_members = to_unsigned(key, v);
  } else if (key == "out") {
    out = v;
  } else if (key == "report") {
    report = v;
  } else {
    throw ConfigError("unknown config key '" + key + "'");
  }
}

void Config::validate() {
  try {
    whitney.validate();
  } catch (const DomainError& e) {
    throw ConfigError(std::string("whitney parameters: ") + e.what());
  }
  if (extent <= 0) throw ConfigError("extent must be positive");
  if (half_width <= 0) throw ConfigError("half_width must be positive");
  if (construction == "c00-tiling") {
    if (stages == 0) throw ConfigError("stages must be at least 1");
    if (generators.empty() && y_dim > 0) {
      SparseVec g;
      g.set_block("y", 0, 1);
      generators.push_back(g);
    }
    const SpaceSpec y = y_dim == 0 ? SpaceSpec({}, false) : SpaceSpec::single("y", y_dim, y_norm);
    for (const auto& g : generators) {
      try {
        y.check_supported(g);
      } catch (const DomainError& e) {
        throw ConfigError(std::string("generator outside Y: ") + e.what());
      }
    }
  } else if (construction == "whitney") {
    if (z_dim == 0) throw ConfigError("z_dim must be positive");
    const SpaceSpec z = SpaceSpec::single("z", z_dim, z_norm);
    for (const auto& b : obstacle) {
      try {
        z.check_supported(b.center);
      } catch (const DomainError& e) {
        throw ConfigError(std::string("obstacle outside Z: ") + e.what());
      }
    }
  }
}

std::map<std::string, std::string> parse_key_values(const std::string& text) {
  std::map<std::string, std::string> out;
  std::istringstream in(text);
  std::string line;
  int n = 0;
  while (std::getline(in, line)) {
    ++n;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    if (trim(line).empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError("line " + std::to_string(n) + ": expected key = value");
    out[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
  }
  return out;
}

std::map<std::string, std::string> read_key_values(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_key_values(ss.str());
}

std::uint64_t default_seed() {
  if (const char* s = std::getenv("TILINGS_SEED"); s && *s) return to_unsigned("TILINGS_SEED", s);
  return 1;
}

Live make_live(const Config& c) {
  Live live;
  live.config = c;
  if (c.construction == "whitney") {
    const SpaceSpec z = SpaceSpec::single("z", c.z_dim, c.z_norm);
    std::vector<SparseVec> basis;
    for (std::uint32_t i = 0; i < c.z_dim; ++i) {
      SparseVec e;
      e.set_block("z", i, 1);
      basis.push_back(e);
    }
    std::shared_ptr<const Obstacle> obs;
    if (!c.obstacle.empty()) obs = std::make_shared<BallListObstacle>(z, c.obstacle);
    live.whitney = std::make_shared<CoverFamily>(z, SubspaceFrame(basis, "Z"), obs, c.whitney);
    live.handle = std::make_unique<WhitneyHandle>(live.whitney);
  } else if (c.construction == "c00-tiling") {
    const SpaceSpec y = c.y_dim == 0 ? SpaceSpec({}, false) : SpaceSpec::single("y", c.y_dim, c.y_norm);
    live.stages = std::make_shared<StageTiling>(y, c.generators, c.whitney);
    live.stages->build_stage(c.stages);
    live.handle = std::make_unique<StageHandle>(live.stages);
  } else {
    live.interval = std::make_shared<IntervalTiling>("x", c.origin, c.half_width);
    live.lift = std::make_shared<LiftedTiling>(live.interval);
    live.handle = std::make_unique<LiftedHandle>(live.lift);
  }
  return live;
}

std::vector<SparseVec> sample_points(const Live& live, std::size_t n, std::uint64_t seed) {
  const Config& c = live.config;
  RationalSampler rs(seed);
  const Scalar lo = -c.extent, hi = c.extent;
  std::vector<SparseVec> out;
  out.reserve(n);
  while (out.size() < n) {
    SparseVec p;
    if (live.whitney) {
      for (std::uint32_t i = 0; i < c.z_dim; ++i) p.set_block("z", i, rs.dyadic_in(lo, hi));
      if (live.whitney->obstacle().contains(p)) continue;
    } else if (live.stages) {
      const unsigned s = live.stages->built();
      for (unsigned i = 0; i < s && i < c.generators.size(); ++i) p.add_scaled(rs.dyadic_in(lo, hi), c.generators[i]);
      for (unsigned j = 1; j <= s; ++j) p.set_tail(TailIndex(j), rs.dyadic_in(lo, hi));
    } else {
      p.set_block("x", 0, rs.dyadic_in(lo, hi));
      const unsigned support = static_cast<unsigned>(rs.integer(0, c.tail_support));
      for (unsigned j = 0; j < support; ++j) p.set_tail(TailIndex(rs.integer(1, 4 * c.tail_support)), rs.dyadic_in(lo, hi));
    }
    out.push_back(std::move(p));
  }
  return out;
}

namespace {

void odometer(std::vector<int>& digits, bool& done) {
  for (auto& d : digits) {
    if (d < 2) {
      d += 2;
      return;
    }
    d = -2;
  }
  done = true;
}

}  // namespace

Archive materialize(const Live& live) {
  const Config& c = live.config;
  Archive a;
  a.construction = c.construction;
  a.space = live.handle->space();
  if (live.whitney) {
    for (const auto& cell : live.whitney->balls_near_horizon(SparseVec{}, c.extent, c.max_level))
      a.records.push_back(ArchiveRecord{live.whitney->ball(cell), std::nullopt, cell, std::nullopt, ""});
  } else if (live.stages) {
    for (unsigned s = 1; s <= live.stages->built(); ++s)
      for (const auto& b : live.stages->stage_near_horizon(s, SparseVec{}, c.extent, c.max_level))
        a.records.push_back(ArchiveRecord{b.ball, b.stage, b.cell, b.k, ""});
  } else {
    const mpz_class kmax = floor((c.extent - c.origin) / (2 * c.half_width)) + 1;
    const mpz_class kmin = -floor((c.extent + c.origin) / (2 * c.half_width)) - 1;
    for (mpz_class k = kmin; k <= kmax; ++k) {
      const Ball base = live.interval->member(k);
      std::vector<int> z(c.lift_support, -2);
      bool done = false;
      while (!done) {
        SparseVec center = base.center;
        std::string tag = "k" + k.get_str();
        for (unsigned j = 0; j < c.lift_support; ++j) {
          if (z[j] != 0) center.set_tail(TailIndex(j + 1), base.radius * z[j]);
          tag += (j ? "," : ":z") + std::to_string(z[j]);
        }
        a.records.push_back(ArchiveRecord{Ball(center, base.radius), std::nullopt, std::nullopt, std::nullopt, tag});
        odometer(z, done);
      }
    }
  }
  return a;
}

}  // namespace tilings
