#include "doctest.h"
#include "t5/inequality.hpp"
#include "test_support.hpp"

using namespace t5;

namespace {

std::vector<Rational> baseline_c_values() { return {0, -3650, -3318, 5044, 580}; }
std::vector<Rational> baseline_d_values() { return {58, Rational(-15, 2), 772, 57, 376}; }

std::vector<Rational> baseline_x() { return pack_unknowns(baseline_c_values(), baseline_d_values(), {-19, 0}, {-63, -82}); }

}  // namespace

TEST_CASE("system shape and labels") {
  const auto sys = build_system(SearchParams::baseline());
  CHECK(sys.matrix.rows() == kSystemRows);
  CHECK(sys.matrix.cols() == kSystemCols);
  CHECK(sys.row_labels.front() == std::make_pair(1, 2));
  CHECK(sys.row_labels.back() == std::make_pair(5, 4));
  CHECK(sys.column_labels.front() == "c2");
  CHECK(sys.column_labels.back() == "q52");
}

TEST_CASE("baseline constants satisfy every row") {
  const auto sys = build_system(SearchParams::baseline());
  const auto ax = sys.evaluate(baseline_x());
  CHECK(ax[0] == Rational(-2470));
  for (const auto& v : ax) CHECK(v.sign() < 0);
}

TEST_CASE("the zero vector is not a solution") {
  const auto sys = build_system(SearchParams::baseline());
  const auto ax = sys.evaluate(std::vector<Rational>(kSystemCols));
  for (const auto& v : ax) CHECK(v.is_zero());
}

TEST_CASE("solve_strict finds an exact witness at the baseline") {
  const auto sys = build_system(SearchParams::baseline());
  const auto r = solve_strict(sys);
  REQUIRE(std::holds_alternative<FeasibleSolution>(r));
  const auto& fs = std::get<FeasibleSolution>(r);
  const auto ax = sys.evaluate(fs.x);
  for (const auto& v : ax) CHECK(v <= Rational(-1));
  CHECK(fs.margin < Rational(0));
}

TEST_CASE("strict feasibility is scale invariant") {
  const auto sys = build_system(SearchParams::baseline());
  auto x = baseline_x();
  for (auto& v : x) v *= Rational(7, 3);
  for (const auto& v : sys.evaluate(x)) CHECK(v.sign() < 0);
}

TEST_CASE("a row together with its negation is infeasible") {
  RatMatrix a{{1, 2, -3}, {-1, -2, 3}};
  const auto r = solve_strict(a);
  REQUIRE(std::holds_alternative<Infeasible>(r));
  CHECK(verify_certificate(a, std::get<Infeasible>(r)));
}

TEST_CASE("random infeasible systems carry valid certificates") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 10; ++trial) {
    RatMatrix a = testing::random_matrix(rng, 4, 3);
    // Append a nonnegative combination of existing rows, negated.
    RatMatrix b(5, 3);
    b.set_block(0, 0, a);
    for (std::size_t j = 0; j < 3; ++j) b(4, j) = -(a(0, j) + Rational(2) * a(2, j));
    const auto r = solve_strict(b);
    REQUIRE(std::holds_alternative<Infeasible>(r));
    CHECK(verify_certificate(b, std::get<Infeasible>(r)));
  }
}

TEST_CASE("tiny systems") {
  const auto r = solve_strict(RatMatrix{{1}});
  REQUIRE(std::holds_alternative<FeasibleSolution>(r));
  CHECK(std::get<FeasibleSolution>(r).x[0] == Rational(-1));
  CHECK(std::holds_alternative<Infeasible>(solve_strict(RatMatrix{{0}})));
}

TEST_CASE("certificate verification rejects bad vectors") {
  RatMatrix a{{1, 0}, {-1, 0}, {0, 1}};
  CHECK_FALSE(verify_certificate(a, Infeasible{{0, 0, 0}}));
  CHECK_FALSE(verify_certificate(a, Infeasible{{1, 1, 1}}));
  CHECK_FALSE(verify_certificate(a, Infeasible{{-1, -1, 0}}));
  CHECK(verify_certificate(a, Infeasible{{1, 1, 0}}));
}

TEST_CASE("z3 = 0 is degenerate") {
  SearchParams p = SearchParams::baseline();
  p.z3 = 0;
  CHECK_THROWS_AS(build_system(p), DegenerateParameters);
}

TEST_CASE("grid search") {
  SUBCASE("singleton baseline grid has one hit") {
    const auto res = grid_search(GridSpec::singleton(SearchParams::baseline()));
    CHECK(res.evaluated == 1);
    REQUIRE(res.hits.size() == 1);
    CHECK(res.hits[0].index == 0);
  }
  SUBCASE("kappa <= 1 is skipped unless allowed") {
    SearchParams p = SearchParams::baseline();
    p.kappa[2] = 1;
    const auto res = grid_search(GridSpec::singleton(p));
    CHECK(res.evaluated == 0);
    CHECK(res.skipped.size() == 1);
    CHECK(grid_search(GridSpec::singleton(p), true).evaluated == 1);
  }
  SUBCASE("empty axis gives an empty grid") {
    GridSpec g = GridSpec::singleton(SearchParams::baseline());
    g.axes[0].values.clear();
    CHECK(g.size() == 0);
    const auto res = grid_search(g);
    CHECK(res.evaluated == 0);
    CHECK(res.hits.empty());
  }
  SUBCASE("enumeration order, last axis fastest") {
    GridSpec g = GridSpec::singleton(SearchParams::baseline());
    g.axes[1].values = {0, 1};  // z3 = 0 is degenerate
    g.axes[13].values = {1, 2};
    const auto res = grid_search(g);
    CHECK(res.skipped.size() == 2);
    CHECK(res.evaluated == 2);
    for (const auto& h : res.hits) CHECK(h.index >= 2);
  }
}
