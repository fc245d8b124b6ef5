#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "balltiling/ball.hpp"
#include "balltiling/whitney.hpp"

namespace balltiling {

// JSON text forms. Rationals and tail indices are strings so that values
// round-trip exactly.
//   SparseVec: [{"coord": "x.0", "value": "1/2"}, {"coord": "t3", "through": "t9", "value": "-1"}]
//   Ball:      {"center": <SparseVec>, "radius": "1/4"}
//   SpaceSpec: {"blocks": [{"name": "x", "dim": 2, "norm": "l1"}], "tail": true}

std::string to_json(const SparseVec& v);
std::string to_json(const Ball& b);
std::string to_json(const SpaceSpec& s);

SparseVec sparse_vec_from_json(std::string_view text);
Ball ball_from_json(std::string_view text);
SpaceSpec space_from_json(std::string_view text);

/// Reads a SparseVec from either its JSON form or the brace text form
/// produced by to_string ("{x.0: 1/2, t3..t9: -1}").
SparseVec parse_point(std::string_view text);

struct ArchiveRecord {
  Ball ball;
  std::optional<unsigned> stage;
  std::optional<CellKey> cell;
  std::optional<TailIndex> k;
  std::string tag;

  friend bool operator==(const ArchiveRecord&, const ArchiveRecord&) = default;
};

/// JSON-lines file: a header line with the space and construction, then one
/// ball per line.
struct Archive {
  SpaceSpec space = SpaceSpec::tail_only();
  std::string construction;
  std::vector<ArchiveRecord> records;
};

void write_archive(std::ostream& out, const Archive& a);
Archive read_archive(std::istream& in);

}  // namespace balltiling
