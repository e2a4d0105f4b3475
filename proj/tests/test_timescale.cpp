#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <limits>
#include <vector>

#include "chronoscale/timescale.hpp"

using namespace chronoscale;

namespace {

TimeScale<double> mixed_scale() {
  // [0,1] u {2,3}
  return build_timescale<double>({interval(0.0, 1.0), isolated(2.0), isolated(3.0)});
}

}  // namespace

TEST_CASE("normalization") {
  SECTION("already normal") {
    auto ts = build_timescale<double>({interval(0.0, 1.0), isolated(2.0), isolated(3.0)});
    REQUIRE(ts.components().size() == 3);
  }
  SECTION("touching intervals merge") {
    auto ts = build_timescale<double>({interval(0.0, 1.0), interval(1.0, 2.0)});
    REQUIRE(ts.components().size() == 1);
    CHECK(ts.min() == 0.0);
    CHECK(ts.max() == 2.0);
  }
  SECTION("absorb contained point and sort") {
    auto ts = build_timescale<double>({isolated(5.0), interval(0.0, 1.0), isolated(0.5)});
    REQUIRE(ts.components().size() == 2);
    CHECK(ts.components()[0].lo == 0.0);
    CHECK(ts.components()[0].hi == 1.0);
    CHECK(ts.components()[1].is_point());
    CHECK(ts.components()[1].lo == 5.0);
  }
  SECTION("duplicate points collapse") {
    auto ts = build_timescale<Rational>({isolated(Rational(1)), isolated(Rational(1))});
    REQUIRE(ts.components().size() == 1);
    CHECK(ts.components()[0].is_point());
  }
  SECTION("overlapping intervals merge") {
    auto ts = build_timescale<double>({interval(0.0, 1.0), interval(0.5, 2.0)});
    REQUIRE(ts.components().size() == 1);
    CHECK(ts.max() == 2.0);
  }
  SECTION("errors") {
    CHECK_THROWS_AS(build_timescale<double>({}), InvalidScale);
    CHECK_THROWS_AS(build_timescale<double>({interval(1.0, 0.0)}), InvalidScale);
    CHECK_THROWS_AS(
        build_timescale<double>({isolated(std::numeric_limits<double>::quiet_NaN())}),
        InvalidScale);
    CHECK_THROWS_AS(
        build_timescale<double>({interval(0.0, std::numeric_limits<double>::infinity())}),
        InvalidScale);
  }
}

TEST_CASE("jump operators") {
  auto ts = mixed_scale();
  SECTION("right end of an interval is right-scattered") {
    auto j = jump_operators(ts, 1.0);
    CHECK(j.sigma == 2.0);
    CHECK(j.rho == 1.0);
    CHECK(j.mu == 1.0);
    CHECK(j.nu == 0.0);
  }
  SECTION("max convention") {
    auto j = jump_operators(ts, 3.0);
    CHECK(j.sigma == 3.0);
    CHECK(j.rho == 2.0);
    CHECK(j.mu == 0.0);
    CHECK(j.nu == 1.0);
  }
  SECTION("unit graininess on Z") {
    auto z = integer_scale<Rational>(0, 10);
    auto j = jump_operators(z, Rational(4));
    CHECK(j.sigma == 5);
    CHECK(j.rho == 3);
    CHECK(j.mu == 1);
    CHECK(j.nu == 1);
  }
  SECTION("interior of an interval is dense both ways") {
    auto j = jump_operators(ts, 0.5);
    CHECK(j.sigma == 0.5);
    CHECK(j.rho == 0.5);
  }
  SECTION("min convention") {
    auto j = jump_operators(ts, 0.0);
    CHECK(j.rho == 0.0);
    CHECK(j.sigma == 0.0);  // left endpoint of an interval is right-dense
  }
  SECTION("membership errors") {
    CHECK_THROWS_AS(ts.sigma(1.5), PointNotInScale);
    CHECK_THROWS_AS(jump_operators(ts, -1.0), PointNotInScale);
    CHECK(ts.contains(2.0));
    CHECK_FALSE(ts.contains(2.5));
  }
}

TEST_CASE("jump operator round trips") {
  auto ts = mixed_scale();
  // rho(sigma(t)) = t at right-scattered t whose successor is left-scattered.
  for (double t : {1.0, 2.0}) {
    CHECK(ts.rho(ts.sigma(t)) == t);
  }
  for (double t : {2.0, 3.0}) {
    CHECK(ts.sigma(ts.rho(t)) == t);
  }
  // mu == 0 exactly at right-dense points.
  CHECK(ts.mu(0.25) == 0.0);
  CHECK(ts.mu(3.0) == 0.0);
  CHECK(ts.mu(1.0) > 0.0);
  CHECK(ts.nu(0.25) == 0.0);
  CHECK(ts.nu(0.0) == 0.0);
  CHECK(ts.nu(2.0) > 0.0);
}

TEST_CASE("image of a scale") {
  SECTION("pointwise square on Z") {
    auto z = integer_scale<Rational>(0, 3);
    auto img = z.image([](const Rational& t) { return t * t; }, Direction::Increasing);
    auto pts = img.grid_points();
    REQUIRE(pts == std::vector<Rational>{0, 1, 4, 9});
  }
  SECTION("shift keeps shape") {
    auto ts = build_timescale<double>({interval(0.0, 1.0), isolated(2.0)});
    auto img = ts.image([](double t) { return t + 1.0; }, Direction::Increasing);
    REQUIRE(img.components().size() == 2);
    CHECK(img.components()[0].lo == 1.0);
    CHECK(img.components()[0].hi == 2.0);
    CHECK(img.components()[1].lo == 3.0);
  }
  SECTION("powers of two") {
    auto z = integer_scale<Rational>(0, 4);
    auto img = z.image([](const Rational& t) { return int_pow(Rational(2), t.convert_to<long long>()); },
                       Direction::Increasing);
    REQUIRE(img.grid_points() == std::vector<Rational>{1, 2, 4, 8, 16});
  }
  SECTION("decreasing map reverses component order") {
    auto ts = build_timescale<double>({interval(0.0, 1.0), isolated(2.0)});
    auto img = ts.image([](double t) { return -t; }, Direction::Decreasing);
    REQUIRE(img.components().size() == 2);
    CHECK(img.components()[0].is_point());
    CHECK(img.components()[0].lo == -2.0);
    CHECK(img.components()[1].lo == -1.0);
    CHECK(img.components()[1].hi == 0.0);
  }
  SECTION("identity image equals the scale") {
    auto ts = mixed_scale();
    auto img = ts.image([](double t) { return t; }, Direction::Increasing);
    CHECK(img == ts);
  }
  SECTION("round trip through the inverse") {
    auto z = integer_scale<Rational>(0, 6);
    auto fwd = z.image([](const Rational& t) { return 3 * t + 1; }, Direction::Increasing);
    auto back = fwd.image([](const Rational& y) { return (y - 1) / 3; }, Direction::Increasing);
    CHECK(back == z);
  }
  SECTION("collision is a monotonicity violation") {
    auto z = integer_scale<Rational>(-2, 2);
    CHECK_THROWS_AS(z.image([](const Rational& t) { return t * t; }, Direction::Increasing),
                    MonotonicityViolation);
  }
}

TEST_CASE("restriction") {
  auto ts = build_timescale<double>({interval(0.0, 2.0), isolated(3.0), interval(4.0, 5.0)});
  auto win = ts.restricted(1.0, 4.0);
  REQUIRE(win.components().size() == 3);
  CHECK(win.components()[0].lo == 1.0);
  CHECK(win.components()[0].hi == 2.0);
  CHECK(win.components()[2].is_point());
  CHECK(win.components()[2].lo == 4.0);
  CHECK_THROWS_AS(ts.restricted(1.0, 3.5), PointNotInScale);
}

TEST_CASE("approx membership snaps endpoints within tolerance") {
  auto ts = mixed_scale();
  CHECK(ts.snap(2.0 + 1e-13) == 2.0);
  CHECK(ts.snap(1.0 - 1e-13) == 1.0);
  CHECK(ts.sigma(1.0 + 1e-13) == 2.0);
  CHECK_THROWS_AS(ts.snap(2.0 + 1e-9), PointNotInScale);
}
