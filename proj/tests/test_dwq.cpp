#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>

#include "doctest.h"
#include "iwq/dwq.hpp"

using namespace iwq;

namespace {

double rule_action(const WeightedRule& r, const PointLayout& layout, const UnivariateBasis& basis,
                   Index j, int deriv) {
  double s = 0.0;
  for (std::size_t k = 0; k < r.point_ids.size(); ++k)
    s += basis.value(j, layout.points[static_cast<std::size_t>(r.point_ids[k])], deriv) * r.weights[k];
  return s;
}

}  // namespace

TEST_CASE("empty gamma list reproduces plain WQ point-for-point") {
  const int p = 3;
  UnivariateBasis b{KnotVector::uniform_open(p, 10)};
  const auto ar = build_axis_rules(b, {}, Purpose::stiffness, true);
  const auto layout = wq_point_layout(b, Purpose::stiffness);
  const auto wq0 = solve_wq_weights(b, layout);
  const auto lower = derivative_basis(b).first;
  const auto wq1 = wq_derivative_rule(b, solve_rules(lower, wq_target_space(b, Purpose::stiffness), layout));

  REQUIRE(ar.layout.points == layout.points);
  for (Index i = 0; i < b.num_functions(); ++i) {
    const auto& segs = ar.per_function[static_cast<std::size_t>(i)];
    REQUIRE(segs.size() == 1);
    CHECK(segs[0].rule0.point_ids == wq0[static_cast<std::size_t>(i)].point_ids);
    CHECK(segs[0].rule0.weights == wq0[static_cast<std::size_t>(i)].weights);
    CHECK(segs[0].rule1.point_ids == wq1[static_cast<std::size_t>(i)].point_ids);
    CHECK(segs[0].rule1.weights == wq1[static_cast<std::size_t>(i)].weights);
  }
}

TEST_CASE("nested points next to the artificial discontinuity") {
  const int p = 3;
  UnivariateBasis b{KnotVector::uniform_open(p, 10)};
  const double gamma = b.breakpoint_values()[6];
  const auto ar = build_axis_rules(b, {gamma}, Purpose::stiffness, false);
  CHECK(ar.layout.points_in_element(5) == p + 1);
  CHECK(ar.layout.points_in_element(6) == p + 1);
  CHECK(ar.layout.points_in_element(3) == 3);
}

TEST_CASE("retained DWQ0 weights integrate over the regular side only") {
  const int p = 3;
  const int nel = 10;
  UnivariateBasis b{KnotVector::uniform_open(p, nel)};
  const double gamma = b.breakpoint_values()[6];
  const auto ar = build_axis_rules(b, {gamma}, Purpose::stiffness, false);

  std::vector<bool> cut_side(static_cast<std::size_t>(nel), false);
  for (Index e = 0; e < nel; ++e)
    if (b.element_lo(e) >= gamma) cut_side[static_cast<std::size_t>(e)] = true;

  const auto retained = retained_rules(ar, cut_side, 0);
  for (const auto& r : retained) {
    const double exact = function_integral(b, r.test_index, 0, 0.0, gamma, p + 1);
    CHECK(r.weight_sum() == doctest::Approx(exact).epsilon(1e-11));
  }
}

TEST_CASE("retained DWQ1 weights follow the fundamental theorem on [0,gamma]") {
  const int p = 3;
  const int nel = 10;
  UnivariateBasis b{KnotVector::uniform_open(p, nel)};
  const double gamma = b.breakpoint_values()[6];
  const auto ar = build_axis_rules(b, {gamma}, Purpose::stiffness, true);

  std::vector<bool> cut_side(static_cast<std::size_t>(nel), false);
  for (Index e = 0; e < nel; ++e)
    if (b.element_lo(e) >= gamma) cut_side[static_cast<std::size_t>(e)] = true;

  const auto retained = retained_rules(ar, cut_side, 1);
  for (const auto& r : retained) {
    const Index i = r.test_index;
    const double expected = b.value(i, gamma - 1e-13) - b.value(i, 0.0);
    CHECK(r.weight_sum() == doctest::Approx(expected).epsilon(1e-10));
  }
}

TEST_CASE("regular-side pairings match element-wise Gauss for every gamma") {
  // Mass and stiffness pairings over the regular side, all interior
  // breakpoints in turn.
  for (int p : {2, 3, 4}) {
    const int nel = 10;
    UnivariateBasis b{KnotVector::uniform_open(p, nel)};
    for (int bp = 1; bp < nel; ++bp) {
      const double gamma = b.breakpoint_values()[static_cast<std::size_t>(bp)];
      const auto ar = build_axis_rules(b, {gamma}, Purpose::stiffness, true);
      std::vector<bool> cut_side(static_cast<std::size_t>(nel), false);
      for (Index e = 0; e < nel; ++e)
        if (b.element_lo(e) >= gamma) cut_side[static_cast<std::size_t>(e)] = true;

      const auto r0 = retained_rules(ar, cut_side, 0);
      const auto r1 = retained_rules(ar, cut_side, 1);
      for (Index i = 0; i < b.num_functions(); ++i) {
        for (Index j = 0; j < b.num_functions(); ++j) {
          if (b.support_lo(j) >= b.support_hi(i) || b.support_hi(j) <= b.support_lo(i)) continue;
          const double mass = rule_action(r0[static_cast<std::size_t>(i)], ar.layout, b, j, 0);
          const double mass_exact = pairing_integral(b, i, 0, b, j, 0, 0.0, gamma, p + 1);
          CHECK(mass == doctest::Approx(mass_exact).epsilon(1e-11));
          const double stiff = rule_action(r1[static_cast<std::size_t>(i)], ar.layout, b, j, 1);
          const double stiff_exact = pairing_integral(b, i, 1, b, j, 1, 0.0, gamma, p + 1);
          CHECK(stiff == doctest::Approx(stiff_exact).epsilon(1e-11));
        }
      }
    }
  }
}

TEST_CASE("per-segment rules integrate their element range exactly") {
  const int p = 3;
  const int nel = 12;
  UnivariateBasis b{KnotVector::uniform_open(p, nel)};
  const auto ar = build_axis_rules(b, {b.breakpoint_values()[3], b.breakpoint_values()[7]}, Purpose::stiffness, true);
  for (Index i = 0; i < b.num_functions(); ++i) {
    for (const auto& seg : ar.per_function[static_cast<std::size_t>(i)]) {
      const double lo = b.element_lo(seg.elem_begin);
      const double hi = b.element_hi(seg.elem_end - 1);
      for (Index j = std::max<Index>(0, i - p); j <= std::min(b.num_functions() - 1, i + p); ++j) {
        CHECK(rule_action(seg.rule0, ar.layout, b, j, 0) ==
              doctest::Approx(pairing_integral(b, i, 0, b, j, 0, lo, hi, p + 1)).epsilon(1e-11));
        CHECK(rule_action(seg.rule1, ar.layout, b, j, 1) ==
              doctest::Approx(pairing_integral(b, i, 1, b, j, 1, lo, hi, p + 1)).epsilon(1e-11));
      }
    }
  }
}

TEST_CASE("mass-purpose DWQ segments integrate exactly as well") {
  const int p = 2;
  const int nel = 8;
  UnivariateBasis b{KnotVector::uniform_open(p, nel)};
  const auto ar = build_axis_rules(b, {b.breakpoint_values()[4]}, Purpose::mass, false);
  for (Index i = 0; i < b.num_functions(); ++i)
    for (const auto& seg : ar.per_function[static_cast<std::size_t>(i)]) {
      const double lo = b.element_lo(seg.elem_begin);
      const double hi = b.element_hi(seg.elem_end - 1);
      for (Index j = std::max<Index>(0, i - p); j <= std::min(b.num_functions() - 1, i + p); ++j)
        CHECK(rule_action(seg.rule0, ar.layout, b, j, 0) ==
              doctest::Approx(pairing_integral(b, i, 0, b, j, 0, lo, hi, p + 1)).epsilon(1e-11));
    }
}

TEST_CASE("gamma validation") {
  UnivariateBasis b{KnotVector::uniform_open(2, 4)};
  CHECK_THROWS_AS(build_axis_rules(b, {0.13}, Purpose::mass, false), std::invalid_argument);
  CHECK_THROWS_AS(build_axis_rules(b, {0.0}, Purpose::mass, false), std::domain_error);
  CHECK_THROWS_AS(build_axis_rules(b, {1.0}, Purpose::mass, false), std::domain_error);
}

TEST_CASE("box point bound formula") {
  CHECK(box_point_bound({3, 3}, 3, 3, 2) == 41);  // 16*2 + 9*1
  CHECK(box_point_bound({3, 3}, 3, 2, 2) == 32);  // second term vanishes
  CHECK(box_point_bound({2, 2, 2}, 3, 3, 3) == 81);
  CHECK_THROWS_AS(box_point_bound({2, 2}, 3, 1, 2), std::invalid_argument);
}
