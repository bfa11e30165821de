#include <catch2/catch_amalgamated.hpp>

#include "voterct/sweep.hpp"

using namespace voterct;

TEST_CASE("cycle sweep reproduces the known regions", "[sweep]") {
  const auto sweep = sweep_family("cycle", 3, 20, 1, 4);
  CHECK(sweep.param_name == "F");
  REQUIRE(sweep.cells.size() == 18u * 4u);
  for (const auto& cell : sweep.cells) {
    INFO("F=" << cell.param << " tau=" << cell.tau);
    CHECK(cell.fluctuates == (cell.param <= 2 * cell.tau + 2));
    const bool should_fixate =
        !cell.fluctuates && cell.param >= 4 * cell.tau + 2;
    CHECK((cell.verdict == Verdict::Fixates) == should_fixate);
    if (!cell.fluctuates && cell.param < 4 * cell.tau + 2)
      CHECK(cell.verdict == Verdict::Unknown);
  }
}

TEST_CASE("star sweep fixation region follows the quadratic", "[sweep]") {
  for (int b : {3, 5}) {
    const auto sweep = sweep_family("star", 1, 10, 1, 3, b);
    for (const auto& cell : sweep.cells) {
      const long r = cell.param, tau = cell.tau;
      CHECK(cell.fluctuates == (r <= tau));
      // Inside the window 3 tau < 2r <= 4 tau the exact S equals b times the
      // corollary quadratic.
      if (3 * tau < 2 * r && 2 * r <= 4 * tau) {
        const long quad = 4 * (b - 1) * r * r +
                          2 * ((4 - 5 * b) * tau + b - 1) * r +
                          (6 * b - 5) * tau * tau + (1 - 2 * b) * tau;
        CHECK(s_general(star_graph(b, static_cast<int>(r)),
                        static_cast<int>(tau)) == BigInt(b) * quad);
      }
    }
  }
}

TEST_CASE("hypercube sweep", "[sweep]") {
  const auto sweep = sweep_family("hypercube", 1, 9, 1, 4);
  for (const auto& cell : sweep.cells) {
    INFO("d=" << cell.param << " tau=" << cell.tau);
    CHECK(cell.fluctuates == (cell.param <= cell.tau + 1));
    if (!cell.fluctuates) {
      const bool s_positive =
          !cell.s_value.empty() && rational_from_string(cell.s_value) > 0;
      const bool s_reg_positive = !cell.s_reg_value.empty() &&
                                  rational_from_string(cell.s_reg_value) > 0;
      CHECK((cell.verdict == Verdict::Fixates) == (s_positive || s_reg_positive));
    }
  }
  CHECK_THROWS_AS(sweep_family("moebius", 1, 2, 1, 2), std::invalid_argument);
  CHECK_THROWS_AS(sweep_family("path", 5, 2, 1, 2), std::invalid_argument);
}

TEST_CASE("closed-form hypercube functionals match explicit graphs", "[sweep]") {
  for (int d = 2; d <= 8; ++d)
    for (int tau = 1; tau < d; ++tau) {
      const Rational scaled = hypercube_s_scaled(d, tau);
      CHECK(scaled * Rational(BigInt(1) << d) ==
            s_general(hypercube_graph(d), tau));
      const auto closed = hypercube_s_reg(d, tau);
      const auto exact = s_reg(hypercube_graph(d), tau);
      REQUIRE(static_cast<bool>(closed) == static_cast<bool>(exact));
      if (closed) CHECK(*closed == *exact);
    }
}

TEST_CASE("summary preset: fixed rows", "[sweep]") {
  // The parameterized rows are exercised by the acceptance suite; the five
  // fixed polyhedra run fast enough for the unit suite.
  CHECK(table1_platonic_row(tetrahedron_graph(), 1, 1, 1, 0).ok());
  CHECK(table1_platonic_row(cube_graph(), 3, 3, 2, 1).ok());
  CHECK(table1_platonic_row(octahedron_graph(), 2, 2, 1, 0).ok());
  CHECK(table1_platonic_row(dodecahedron_graph(), 5, 5, 4, 2).ok());
  CHECK(table1_platonic_row(icosahedron_graph(), 3, 3, 2, 1).ok());

  // A deliberately wrong claim is caught.
  const auto broken = table1_platonic_row(cube_graph(), 3, 3, 2, 2);
  CHECK_FALSE(broken.ok());
}
