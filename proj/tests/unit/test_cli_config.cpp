#include "doctest.h"

#include <cstdlib>
#include <set>

#include "config.hpp"

using namespace tilings;

TEST_CASE("key-value parsing") {
  auto kv = parse_key_values("# comment\nstages = 3  # trailing\n\n construction=c0-lift \n");
  CHECK(kv.size() == 2);
  CHECK(kv["stages"] == "3");
  CHECK(kv["construction"] == "c0-lift");
  CHECK_THROWS_AS(parse_key_values("stages 3\n"), ConfigError);
}

TEST_CASE("settings and validation") {
  Config c;
  c.set("generators", "{y.0: 1}; {y.0: 1/2}");
  CHECK(c.generators.size() == 2);
  c.set("obstacle", "{z.0: 1, z.1: 0} @ 1/2; {z.0: -3} @ 1");
  REQUIRE(c.obstacle.size() == 2);
  CHECK(c.obstacle[0].radius == Scalar(1, 2));
  CHECK_THROWS_AS(c.set("stages", "-1"), ConfigError);
  CHECK_THROWS_AS(c.set("y_norm", "l2"), ConfigError);
  CHECK_THROWS_AS(c.set("obstacle", "{z.0: 1}"), ConfigError);
  CHECK_THROWS_AS(c.set("nope", "1"), ConfigError);

  Config d;
  d.validate();
  CHECK(d.generators.size() == 1);

  Config e;
  e.set("generators", "{x.0: 1}");
  CHECK_THROWS_AS(e.validate(), ConfigError);

  Config f;
  f.set("window_hi", "4");
  CHECK_THROWS_AS(f.validate(), ConfigError);

  Config g;
  g.set("y_dim", "0");
  g.set("generators", "none");
  g.validate();
  CHECK(g.generators.empty());
}

TEST_CASE("seed from the environment") {
  ::unsetenv("TILINGS_SEED");
  CHECK(default_seed() == 1);
  ::setenv("TILINGS_SEED", "42", 1);
  CHECK(default_seed() == 42);
  ::setenv("TILINGS_SEED", "x", 1);
  CHECK_THROWS_AS(default_seed(), ConfigError);
  ::unsetenv("TILINGS_SEED");
}

TEST_CASE("materialized lift enumerates the box") {
  Config c;
  c.set("construction", "c0-lift");
  c.set("lift_support", "1");
  c.validate();
  const Live live = make_live(c);
  const Archive a = materialize(live);
  // k in -2..2, one tail entry in {-2, 0, 2}.
  CHECK(a.records.size() == 15);
  std::set<std::string> tags;
  for (const auto& r : a.records) {
    tags.insert(r.tag);
    CHECK(r.ball.radius == 1);
    auto hits = live.handle->locate(r.ball.center);
    REQUIRE(hits.size() == 1);
    CHECK(hits[0].ball == r.ball);
  }
  CHECK(tags.size() == 15);
}

TEST_CASE("samples are deterministic and lie in the construction") {
  Config c;
  c.stages = 2;
  c.validate();
  const Live live = make_live(c);
  auto a = sample_points(live, 50, 9), b = sample_points(live, 50, 9), other = sample_points(live, 50, 10);
  CHECK(a == b);
  CHECK(a != other);
  for (const auto& p : a) CHECK(live.stages->stage_of(p).has_value());

  Config w;
  w.set("construction", "whitney");
  w.set("obstacle", "{z.0: 0, z.1: 0} @ 1");
  w.validate();
  const Live lw = make_live(w);
  for (const auto& p : sample_points(lw, 100, 3)) CHECK_FALSE(lw.whitney->obstacle().contains(p));
}
