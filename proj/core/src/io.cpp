#include "balltiling/io.hpp"

#include <istream>
#include <ostream>

#include "json.hpp"

namespace balltiling {

using nlohmann::json;

namespace {

json vec_json(const SparseVec& v) {
  json out = json::array();
  for (const auto& [k, x] : v.block_entries())
    out.push_back({{"coord", k.block + "." + std::to_string(k.index)}, {"value", to_string(x)}});
  for (const auto& run : v.tail().runs()) {
    json e{{"coord", "t" + to_string(run.from)}, {"value", to_string(run.value)}};
    if (run.through != run.from) e["through"] = "t" + to_string(run.through);
    out.push_back(std::move(e));
  }
  return out;
}

Scalar scalar_of(const json& j) {
  if (j.is_string()) return parse_scalar(j.get<std::string>());
  if (j.is_number_integer()) return Scalar(j.get<long>());
  throw DomainError("expected a rational string");
}

SparseVec vec_of(const json& j) {
  if (!j.is_array()) throw DomainError("a vector must be a JSON array");
  SparseVec v;
  for (const auto& e : j) {
    const CoordId c = parse_coord(e.at("coord").get<std::string>());
    const Scalar x = scalar_of(e.at("value"));
    if (e.contains("through")) {
      const CoordId t = parse_coord(e.at("through").get<std::string>());
      if (!c.is_tail() || !t.is_tail() || t.tail < c.tail) throw DomainError("bad tail run");
      v.tail().add_run(c.tail, t.tail, x);
    } else if (c.is_tail()) {
      v.tail().add_run(c.tail, c.tail, x);
    } else {
      v.set(c, v.get(c) + x);
    }
  }
  return v;
}

json ball_json(const Ball& b) { return {{"center", vec_json(b.center)}, {"radius", to_string(b.radius)}}; }

Ball ball_of(const json& j) { return Ball(vec_of(j.at("center")), scalar_of(j.at("radius"))); }

json space_json(const SpaceSpec& s) {
  json blocks = json::array();
  for (const auto& b : s.blocks())
    blocks.push_back({{"name", b.name}, {"dim", b.dim}, {"norm", b.kind == NormKind::L1 ? "l1" : "linf"}});
  return {{"blocks", blocks}, {"tail", s.has_tail()}};
}

SpaceSpec space_of(const json& j) {
  std::vector<Block> blocks;
  for (const auto& b : j.at("blocks")) {
    const auto norm = b.at("norm").get<std::string>();
    if (norm != "l1" && norm != "linf") throw DomainError("unknown norm '" + norm + "'");
    blocks.push_back(Block{b.at("name").get<std::string>(), b.at("dim").get<std::uint32_t>(),
                           norm == "l1" ? NormKind::L1 : NormKind::LInf});
  }
  return SpaceSpec(std::move(blocks), j.value("tail", false));
}

json parse(std::string_view text) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw DomainError(std::string("invalid JSON: ") + e.what());
  }
}

template <class F>
auto guarded(F&& f) {
  try {
    return f();
  } catch (const json::exception& e) {
    throw DomainError(std::string("malformed JSON record: ") + e.what());
  }
}

std::string trim(std::string_view s) {
  const auto a = s.find_first_not_of(" \t\r\n");
  if (a == std::string_view::npos) return {};
  const auto b = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(a, b - a + 1));
}

}  // namespace

std::string to_json(const SparseVec& v) { return vec_json(v).dump(); }
std::string to_json(const Ball& b) { return ball_json(b).dump(); }
std::string to_json(const SpaceSpec& s) { return space_json(s).dump(); }

SparseVec sparse_vec_from_json(std::string_view text) {
  return guarded([&] { return vec_of(parse(text)); });
}

Ball ball_from_json(std::string_view text) {
  return guarded([&] { return ball_of(parse(text)); });
}

SpaceSpec space_from_json(std::string_view text) {
  return guarded([&] { return space_of(parse(text)); });
}

SparseVec parse_point(std::string_view raw) {
  const std::string text = trim(raw);
  if (text.empty()) throw DomainError("empty point");
  if (text.front() == '[') return sparse_vec_from_json(text);
  if (text.front() != '{' || text.back() != '}') throw DomainError("a point is a JSON array or {coord: value, ...}");
  SparseVec v;
  const std::string body = text.substr(1, text.size() - 2);
  std::size_t pos = 0;
  while (pos < body.size()) {
    std::size_t next = body.find(',', pos);
    if (next == std::string::npos) next = body.size();
    const std::string item = trim(std::string_view(body).substr(pos, next - pos));
    pos = next + 1;
    if (item.empty()) continue;
    const auto colon = item.find(':');
    if (colon == std::string::npos) throw DomainError("expected coord: value in '" + item + "'");
    const std::string key = trim(std::string_view(item).substr(0, colon));
    const Scalar x = parse_scalar(trim(std::string_view(item).substr(colon + 1)));
    const auto dots = key.find("..");
    if (dots != std::string::npos) {
      const CoordId a = parse_coord(key.substr(0, dots));
      const CoordId b = parse_coord(key.substr(dots + 2));
      if (!a.is_tail() || !b.is_tail() || b.tail < a.tail) throw DomainError("bad tail run '" + key + "'");
      v.tail().add_run(a.tail, b.tail, x);
    } else {
      const CoordId c = parse_coord(key);
      v.set(c, v.get(c) + x);
    }
  }
  return v;
}

void write_archive(std::ostream& out, const Archive& a) {
  out << json{{"construction", a.construction}, {"space", space_json(a.space)}, {"count", a.records.size()}}.dump()
      << '\n';
  for (const auto& r : a.records) {
    json j = ball_json(r.ball);
    if (r.stage) j["stage"] = *r.stage;
    if (r.cell) {
      j["level"] = r.cell->level;
      j["corner"] = r.cell->corner;
    }
    if (r.k) j["k"] = to_string(*r.k);
    if (!r.tag.empty()) j["tag"] = r.tag;
    out << j.dump() << '\n';
  }
}

Archive read_archive(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw DomainError("empty archive");
  return guarded([&] {
    const json head = parse(line);
    Archive a;
    a.construction = head.value("construction", "");
    a.space = space_of(head.at("space"));
    const std::size_t expected = head.value("count", std::size_t{0});
    while (std::getline(in, line)) {
      if (trim(line).empty()) continue;
      const json j = parse(line);
      ArchiveRecord r;
      r.ball = ball_of(j);
      a.space.check_supported(r.ball.center);
      if (j.contains("stage")) r.stage = j.at("stage").get<unsigned>();
      if (j.contains("level")) r.cell = CellKey{j.at("level").get<unsigned>(), j.at("corner").get<std::vector<std::int64_t>>()};
      if (j.contains("k")) r.k = parse_index(j.at("k").get<std::string>());
      r.tag = j.value("tag", "");
      a.records.push_back(std::move(r));
    }
    if (head.contains("count") && expected != a.records.size()) throw DomainError("archive is truncated");
    return a;
  });
}

}  // namespace balltiling
