#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "balltiling/verifier.hpp"

namespace tilings {

using namespace balltiling;

class ConfigError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// Build and sampling settings. Every key can come from a key = value file
/// and be overridden on the command line.
struct Config {
  std::string construction = "c00-tiling";  // c00-tiling | c0-lift | whitney

  // c00-tiling: Y block and generators.
  std::uint32_t y_dim = 1;
  NormKind y_norm = NormKind::LInf;
  std::vector<SparseVec> generators;  // default {y.0: 1}; empty with y_dim = 0
  unsigned stages = 1;

  // whitney: Z = block "z" and obstacle balls.
  std::uint32_t z_dim = 2;
  NormKind z_norm = NormKind::LInf;
  std::vector<Ball> obstacle;

  // c0-lift: base interval tiling [origin + 2hk - h, origin + 2hk + h].
  std::string base = "interval-tiling";
  Scalar origin{0};
  Scalar half_width{1};
  unsigned lift_support = 2;  // tail coordinates enumerated by build

  WhitneyParams whitney;

  // Materialized region: frame box [-extent, extent]^d, cell levels <= max_level.
  Scalar extent{2};
  unsigned max_level = 1;

  std::size_t samples = 1000;
  unsigned tail_support = 6;
  std::uint64_t seed = 1;
  std::size_t star_members = 100;

  std::string out;
  std::string report;

  /// Applies one key = value setting.
  void set(const std::string& key, const std::string& value);
  /// Throws ConfigError on inconsistent settings and fills defaults.
  void validate();
};

/// Reads `key = value` lines; '#' starts a comment.
std::map<std::string, std::string> read_key_values(const std::string& path);
std::map<std::string, std::string> parse_key_values(const std::string& text);

/// Seed from TILINGS_SEED, else 1.
std::uint64_t default_seed();

/// A live construction with its query handle.
struct Live {
  Config config;
  std::shared_ptr<CoverFamily> whitney;
  std::shared_ptr<StageTiling> stages;
  std::shared_ptr<LiftedTiling> lift;
  std::shared_ptr<IntervalTiling> interval;
  std::unique_ptr<FamilyHandle> handle;
};

Live make_live(const Config& c);

/// Seeded sample points of the constructed region.
std::vector<SparseVec> sample_points(const Live& live, std::size_t n, std::uint64_t seed);

/// Balls of the family meeting the configured region.
Archive materialize(const Live& live);

}  // namespace tilings
