#include <doctest.h>

#include <cmath>
#include <random>

#include "cpsblotto/cubic.hpp"

using namespace cpsblotto;

namespace {

// Sign changes of p on a fine grid, each refined by plain bisection.
std::vector<double> bisection_roots(const Cubic& p, double lo, double hi, int cells) {
  std::vector<double> out;
  const double step = (hi - lo) / cells;
  for (int k = 0; k < cells; ++k) {
    double a = lo + k * step, b = a + step;
    if ((p(a) < 0) == (p(b) < 0)) continue;
    for (int it = 0; it < 200; ++it) {
      const double m = 0.5 * (a + b);
      ((p(a) < 0) == (p(m) < 0) ? a : b) = m;
    }
    out.push_back(0.5 * (a + b));
  }
  return out;
}

}  // namespace

TEST_SUITE("cubic") {
  TEST_CASE("three simple roots") {
    const Cubic p{1, -6, 11, -6};
    const auto r = real_roots(p);
    REQUIRE(r.size() == 3);
    CHECK(r[0] == doctest::Approx(1));
    CHECK(r[1] == doctest::Approx(2));
    CHECK(r[2] == doctest::Approx(3));
  }

  TEST_CASE("degenerate leading coefficients") {
    auto q = real_roots(Cubic{0, 1, -3, 2});
    REQUIRE(q.size() == 2);
    CHECK(q[0] == doctest::Approx(1));
    CHECK(q[1] == doctest::Approx(2));
    auto l = real_roots(Cubic{0, 0, 2, -1});
    REQUIRE(l.size() == 1);
    CHECK(l[0] == doctest::Approx(0.5));
    CHECK(real_roots(Cubic{0, 0, 0, 0}).empty());
    CHECK(real_roots(Cubic{0, 1, 0, 1}).empty());
  }

  TEST_CASE("one real root") {
    const auto r = real_roots(Cubic{1, 0, 1, -2});
    REQUIRE(r.size() == 1);
    CHECK(r[0] == doctest::Approx(1));
  }

  TEST_CASE("random cubics agree with bisection") {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> root(-5.0, 5.0), scale(0.1, 10.0);
    for (int trial = 0; trial < 200; ++trial) {
      const double r1 = root(rng), r2 = root(rng), r3 = root(rng), s = scale(rng);
      const Cubic p{s, -s * (r1 + r2 + r3), s * (r1 * r2 + r1 * r3 + r2 * r3), -s * r1 * r2 * r3};
      const auto expected = bisection_roots(p, -6, 6, 24000);
      const auto found = real_roots(p);
      // near-double roots may not show a sign change on the grid
      if (std::abs(r1 - r2) < 1e-3 || std::abs(r1 - r3) < 1e-3 || std::abs(r2 - r3) < 1e-3) continue;
      REQUIRE(found.size() == expected.size());
      for (std::size_t k = 0; k < found.size(); ++k) {
        CHECK(found[k] == doctest::Approx(expected[k]).epsilon(1e-9));
        CHECK(std::abs(p(found[k])) <= 1e-9 * p.scale(found[k]));
      }
    }
  }

  TEST_CASE("bracketed root") {
    const Cubic p{1, 0, 0, -2};
    const double x = bracketed_root(p, 0, 2);
    CHECK(x == doctest::Approx(std::cbrt(2.0)));
    CHECK(std::abs(p(x)) <= 1e-12);
  }
}
