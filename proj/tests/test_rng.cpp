#include <doctest.h>

#include <set>

#include "hycosbm/rng.hpp"

using hycosbm::CounterRng;

TEST_CASE("counter rng is a pure function of seed, stream and position") {
  CounterRng a(42, 3), b(42, 3);
  for (int t = 0; t < 100; ++t) CHECK(a() == b());
  CounterRng c(42, 4), d(43, 3);
  CHECK(c() != CounterRng(42, 3)());
  CHECK(d() != CounterRng(42, 3)());
}

TEST_CASE("substreams do not advance the parent and are distinct") {
  CounterRng root(7);
  auto s0 = root.substream(0);
  auto s1 = root.substream(1);
  CHECK(root.counter() == 0);
  CHECK(s0() != s1());
  CHECK(root.substream(0)() == CounterRng(7).substream(0)());
}

TEST_CASE("uniform helpers stay in range") {
  CounterRng rng(1);
  double sum = 0.0;
  for (int t = 0; t < 100000; ++t) {
    const double u = rng.uniform();
    REQUIRE(u >= 0.0);
    REQUIRE(u < 1.0);
    sum += u;
    const double o = rng.uniform_open();
    REQUIRE(o > 0.0);
    REQUIRE(o < 1.0);
  }
  CHECK(sum / 100000.0 == doctest::Approx(0.5).epsilon(0.01));
  std::set<std::uint64_t> seen;
  for (int t = 0; t < 1000; ++t) {
    const auto v = rng.below(7);
    REQUIRE(v < 7);
    seen.insert(v);
  }
  CHECK(seen.size() == 7);
}
