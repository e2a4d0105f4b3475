#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "chronoscale/calculus.hpp"
#include "chronoscale/timescale.hpp"

using namespace chronoscale;

namespace {

// Refine-and-sum oracle: replace interval components by a uniform mesh of
// width <= w and take plain left (delta) / right (nabla) Riemann-scattered
// sums over the resulting grid. Independent of the integral implementation.
template <class Fn>
std::vector<double> meshed_points(const TimeScale<double>& ts, double w) {
  std::vector<double> pts;
  for (const auto& c : ts.components()) {
    if (c.is_point()) {
      pts.push_back(c.lo);
      continue;
    }
    const int n = std::max(1, static_cast<int>(std::ceil((c.hi - c.lo) / w)));
    for (int i = 0; i <= n; ++i) pts.push_back(c.lo + (c.hi - c.lo) * i / n);
  }
  return pts;
}

template <class Fn>
double delta_sum_oracle(const std::vector<double>& pts, Fn f, double a, double b) {
  double acc = 0.0;
  for (std::size_t i = 0; i + 1 < pts.size(); ++i)
    if (pts[i] >= a && pts[i] < b) acc += (pts[i + 1] - pts[i]) * f(pts[i]);
  return acc;
}

template <class Fn>
double nabla_sum_oracle(const std::vector<double>& pts, Fn f, double a, double b) {
  double acc = 0.0;
  for (std::size_t i = 1; i < pts.size(); ++i)
    if (pts[i] > a && pts[i] <= b) acc += (pts[i] - pts[i - 1]) * f(pts[i]);
  return acc;
}

}  // namespace

TEST_CASE("delta integral on discrete scales is the forward-weighted sum") {
  auto z = integer_scale<Rational>(-5, 10);
  auto id = [](const Rational& t) { return t; };
  CHECK(delta_integral(z, id, Rational(0), Rational(4)) == 6);  // 0+1+2+3
  CHECK(delta_integral(z, id, Rational(2), Rational(2)) == 0);
  CHECK(delta_integral(z, id, Rational(4), Rational(0)) == -6);
}

TEST_CASE("nabla integral on discrete scales is the backward-weighted sum") {
  auto z = integer_scale<Rational>(-5, 10);
  auto id = [](const Rational& y) { return y; };
  CHECK(nabla_integral(z, id, Rational(0), Rational(3)) == 6);  // 1+2+3
  CHECK(nabla_integral(z, id, Rational(3), Rational(3)) == 0);
  CHECK(nabla_integral(z, id, Rational(3), Rational(0)) == -6);
}

TEST_CASE("mixed scale integrals split into dense and scattered parts") {
  auto ts = build_timescale<double>({interval(0.0, 1.0), isolated(2.0), isolated(3.0)});
  auto id = [](double t) { return t; };
  CHECK_THAT(delta_integral(ts, id, 0.0, 3.0),
             Catch::Matchers::WithinAbs(3.5, 1e-12));  // 0.5 + 1*1 + 1*2
  CHECK_THAT(nabla_integral(ts, id, 0.0, 3.0),
             Catch::Matchers::WithinAbs(5.5, 1e-12));  // 0.5 + 1*2 + 1*3
}

TEST_CASE("integrals on a real interval match antiderivatives") {
  auto r = real_scale(0.0, 2.0);
  auto sq = [](double t) { return t * t; };
  CHECK_THAT(delta_integral(r, sq, 0.0, 2.0), Catch::Matchers::WithinAbs(8.0 / 3.0, 1e-10));
  CHECK_THAT(nabla_integral(r, sq, 0.0, 2.0), Catch::Matchers::WithinAbs(8.0 / 3.0, 1e-10));
  // Integrable singular-derivative case.
  auto rt = [](double t) { return std::sqrt(t); };
  CHECK_THAT(delta_integral(r, rt, 0.0, 2.0),
             Catch::Matchers::WithinAbs(2.0 / 3.0 * std::pow(2.0, 1.5), 1e-9));
}

TEST_CASE("integrals are additive over split points") {
  auto ts = build_timescale<double>({interval(0.0, 1.0), isolated(2.0), isolated(3.0),
                                     interval(4.0, 5.0)});
  auto f = [](double t) { return t * t - t + 1.0; };
  const double whole = delta_integral(ts, f, 0.0, 5.0);
  const double split =
      delta_integral(ts, f, 0.0, 2.0) + delta_integral(ts, f, 2.0, 5.0);
  CHECK_THAT(whole, Catch::Matchers::WithinAbs(split, 1e-10));
  const double nwhole = nabla_integral(ts, f, 0.0, 5.0);
  const double nsplit =
      nabla_integral(ts, f, 0.0, 3.0) + nabla_integral(ts, f, 3.0, 5.0);
  CHECK_THAT(nwhole, Catch::Matchers::WithinAbs(nsplit, 1e-10));
}

TEST_CASE("linearity in the integrand") {
  auto z = integer_scale<Rational>(0, 12);
  auto f1 = [](const Rational& t) { return t * t; };
  auto f2 = [](const Rational& t) { return 3 - t; };
  auto combo = [&](const Rational& t) { return Rational(5) * f1(t) - Rational(7) * f2(t); };
  const Rational lhs = delta_integral(z, combo, Rational(1), Rational(11));
  const Rational rhs = Rational(5) * delta_integral(z, f1, Rational(1), Rational(11)) -
                       Rational(7) * delta_integral(z, f2, Rational(1), Rational(11));
  CHECK(lhs == rhs);
  CHECK(nabla_integral(z, combo, Rational(1), Rational(11)) ==
        Rational(5) * nabla_integral(z, f1, Rational(1), Rational(11)) -
            Rational(7) * nabla_integral(z, f2, Rational(1), Rational(11)));
}

TEST_CASE("refinement consistency: mesh substitution converges as O(w)") {
  auto ts = build_timescale<double>({interval(0.0, 1.0), isolated(2.0), isolated(3.0)});
  auto f = [](double t) { return t * t + 1.0; };
  const double exact_delta = delta_integral(ts, f, 0.0, 3.0);
  const double exact_nabla = nabla_integral(ts, f, 0.0, 3.0);
  double prev_d = 0, prev_n = 0;
  for (int level = 0; level < 4; ++level) {
    const double w = 0.02 / (1 << level);
    auto pts = meshed_points<decltype(f)>(ts, w);
    const double d = delta_sum_oracle(pts, f, 0.0, 3.0);
    const double n = nabla_sum_oracle(pts, f, 0.0, 3.0);
    if (level > 0) {
      // Halving w should roughly halve the defect.
      CHECK(std::fabs(d - exact_delta) < 0.75 * std::fabs(prev_d - exact_delta));
      CHECK(std::fabs(n - exact_nabla) < 0.75 * std::fabs(prev_n - exact_nabla));
    }
    prev_d = d;
    prev_n = n;
  }
}

TEST_CASE("exact regime refuses dense integration") {
  auto ts = build_timescale<Rational>({interval(Rational(0), Rational(1))});
  auto id = [](const Rational& t) { return t; };
  CHECK_THROWS_AS(delta_integral(ts, id, Rational(0), Rational(1)), ExactRegimeError);
}

TEST_CASE("generalized monomials") {
  SECTION("order zero is one everywhere") {
    auto ts = build_timescale<double>({interval(0.0, 1.0), isolated(2.0)});
    CHECK(taylor_monomial(ts, 0, 2.0, 0.0) == 1.0);
  }
  SECTION("h_1 is t - s on any scale") {
    auto ts = build_timescale<double>({interval(0.0, 1.0), isolated(2.0), isolated(4.5)});
    for (double s : {0.0, 1.0, 2.0})
      for (double t : {0.25, 1.0, 2.0, 4.5})
        CHECK_THAT(taylor_monomial(ts, 1, t, s), Catch::Matchers::WithinAbs(t - s, 1e-10));
  }
  SECTION("integer scale matches the falling-factorial closed form") {
    auto z = integer_scale<Rational>(0, 10);
    CHECK(taylor_monomial(z, 2, Rational(4), Rational(0)) == 6);  // 4*3/2
    CHECK(taylor_monomial(z, 3, Rational(7), Rational(2)) == Rational(5 * 4 * 3) / 6);
  }
  SECTION("negative span on Z") {
    auto z = integer_scale<Rational>(0, 10);
    // h_2(0, 4) = (t-s)(t-s-1)/2 with t-s = -4.
    CHECK(taylor_monomial(z, 2, Rational(0), Rational(4)) == Rational((-4) * (-5)) / 2);
  }
  SECTION("real line gives power-over-factorial") {
    auto r = real_scale(0.0, 3.0);
    CHECK_THAT(taylor_monomial(r, 3, 2.0, 0.0),
               Catch::Matchers::WithinAbs(8.0 / 6.0, 1e-9));
  }
  SECTION("order cap") {
    auto z = integer_scale<Rational>(0, 4);
    CHECK_THROWS_AS(taylor_monomial(z, 13, Rational(1), Rational(0)), Error);
  }
}
