#include "iwq/dwq.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace iwq {

namespace {

// Elements of the coarse mesh whose lower/upper bound is a gamma.
std::vector<Index> elements_adjacent_to(const UnivariateBasis& basis, const std::vector<double>& gammas) {
  std::vector<Index> out;
  for (double g : gammas)
    for (Index e = 0; e < basis.num_elements(); ++e)
      if (basis.element_lo(e) == g || basis.element_hi(e) == g) out.push_back(e);
  return out;
}

void fill_trial_tables(AxisRules& ar) {
  const int p = ar.basis.degree();
  const Index np = ar.layout.num_points();
  ar.active_first.resize(static_cast<std::size_t>(np));
  ar.trial_val.assign(static_cast<std::size_t>(np * (p + 1)), 0.0);
  ar.trial_der.assign(static_cast<std::size_t>(np * (p + 1)), 0.0);
  std::vector<std::vector<double>> vals;
  for (Index k = 0; k < np; ++k) {
    ar.active_first[static_cast<std::size_t>(k)] = ar.basis.eval(ar.layout.points[static_cast<std::size_t>(k)], 1, vals);
    for (int j = 0; j <= p; ++j) {
      ar.trial_val[static_cast<std::size_t>(k * (p + 1) + j)] = vals[0][static_cast<std::size_t>(j)];
      ar.trial_der[static_cast<std::size_t>(k * (p + 1) + j)] = vals[1][static_cast<std::size_t>(j)];
    }
  }
}

// Splits a full-support weight map into segments delimited by the gammas
// inside the support.
std::vector<RuleSegment> make_segments(const AxisRules& ar, Index fn, const std::map<Index, double>& w0,
                                       const std::map<Index, double>& w1, bool with_derivatives) {
  const auto [e_first, e_last] = ar.basis.support_elements(fn);
  std::vector<Index> bounds{e_first};
  for (double g : ar.gammas) {
    if (g <= ar.basis.element_lo(e_first) || g >= ar.basis.element_hi(e_last - 1)) continue;
    for (Index e = e_first; e < e_last; ++e)
      if (ar.basis.element_lo(e) == g) bounds.push_back(e);
  }
  bounds.push_back(e_last);
  std::sort(bounds.begin(), bounds.end());

  std::vector<RuleSegment> segs;
  for (std::size_t s = 0; s + 1 < bounds.size(); ++s) {
    RuleSegment seg;
    seg.elem_begin = bounds[s];
    seg.elem_end = bounds[s + 1];
    seg.rule0.test_index = fn;
    seg.rule0.alpha = 0;
    seg.rule1.test_index = fn;
    seg.rule1.alpha = 1;
    const Index k_lo = ar.layout.elem_first[static_cast<std::size_t>(seg.elem_begin)];
    const Index k_hi = ar.layout.elem_first[static_cast<std::size_t>(seg.elem_end)];
    for (const auto& [k, w] : w0)
      if (k >= k_lo && k < k_hi) {
        seg.rule0.point_ids.push_back(k);
        seg.rule0.weights.push_back(w);
      }
    if (with_derivatives)
      for (const auto& [k, w] : w1)
        if (k >= k_lo && k < k_hi) {
          seg.rule1.point_ids.push_back(k);
          seg.rule1.weights.push_back(w);
        }
    segs.push_back(std::move(seg));
  }
  return segs;
}

}  // namespace

Index AxisRules::point_element(Index point_id) const {
  const auto it = std::upper_bound(layout.elem_first.begin(), layout.elem_first.end(), point_id);
  return static_cast<Index>(it - layout.elem_first.begin()) - 1;
}

AxisRules build_axis_rules(const UnivariateBasis& basis, std::vector<double> gammas, Purpose purpose,
                           bool with_derivatives) {
  std::sort(gammas.begin(), gammas.end());
  gammas.erase(std::unique(gammas.begin(), gammas.end()), gammas.end());
  for (double g : gammas) {
    if (!(g > basis.kv().front() && g < basis.kv().back()))
      throw std::domain_error("build_axis_rules: gamma outside the open domain");
    bool is_bp = false;
    for (double v : basis.breakpoint_values()) is_bp |= (v == g);
    if (!is_bp) throw std::invalid_argument("build_axis_rules: gamma is not a breakpoint");
  }

  AxisRules ar;
  ar.basis = basis;
  ar.gammas = gammas;
  ar.layout = wq_point_layout(basis, purpose, elements_adjacent_to(basis, gammas));
  fill_trial_tables(ar);

  const Index n = basis.num_functions();
  ar.per_function.resize(static_cast<std::size_t>(n));

  if (gammas.empty()) {
    const auto rules0 = solve_wq_weights(basis, ar.layout);
    std::vector<WeightedRule> rules1;
    if (with_derivatives) {
      const auto lower = derivative_basis(basis).first;
      const auto rules_pm1 = solve_rules(lower, wq_target_space(basis, purpose), ar.layout);
      rules1 = wq_derivative_rule(basis, rules_pm1);
    }
    for (Index i = 0; i < n; ++i) {
      std::map<Index, double> w0, w1;
      const auto& r0 = rules0[static_cast<std::size_t>(i)];
      for (std::size_t k = 0; k < r0.point_ids.size(); ++k) w0[r0.point_ids[k]] = r0.weights[k];
      if (with_derivatives) {
        const auto& r1 = rules1[static_cast<std::size_t>(i)];
        for (std::size_t k = 0; k < r1.point_ids.size(); ++k) w1[r1.point_ids[k]] = r1.weights[k];
      }
      ar.per_function[static_cast<std::size_t>(i)] = make_segments(ar, i, w0, w1, with_derivatives);
    }
    return ar;
  }

  // (a) C^{-1} refinement at the gammas with the accumulated subdivision map.
  auto [refined, S] = insert_discontinuities(basis, gammas);

  // (c) refined weights on the augmented layout.
  const auto refined0 = solve_rules(refined, wq_target_space(refined, purpose), ar.layout);

  std::vector<WeightedRule> refined1;
  if (with_derivatives) {
    refined1.resize(static_cast<std::size_t>(refined.num_functions()));
    for (const auto& [sub, offset] : split_at_discontinuities(refined, gammas)) {
      const auto lower = derivative_basis(sub).first;
      const auto rules_pm1 = solve_rules(lower, wq_target_space(sub, purpose), ar.layout);
      auto sub1 = wq_derivative_rule(sub, rules_pm1);
      for (Index loc = 0; loc < sub.num_functions(); ++loc) {
        auto& dst = refined1[static_cast<std::size_t>(offset + loc)];
        dst = std::move(sub1[static_cast<std::size_t>(loc)]);
        dst.test_index = offset + loc;
      }
    }
  }

  // Map back to the coarse test functions: w_{k,j} = sum_i w~_{k,i} S_{ij}.
  for (Index j = 0; j < n; ++j) {
    std::map<Index, double> w0, w1;
    for (const auto& e : S.column(j)) {
      const auto& r0 = refined0[static_cast<std::size_t>(e.col)];
      for (std::size_t k = 0; k < r0.point_ids.size(); ++k) w0[r0.point_ids[k]] += e.value * r0.weights[k];
      if (with_derivatives) {
        const auto& r1 = refined1[static_cast<std::size_t>(e.col)];
        for (std::size_t k = 0; k < r1.point_ids.size(); ++k) w1[r1.point_ids[k]] += e.value * r1.weights[k];
      }
    }
    ar.per_function[static_cast<std::size_t>(j)] = make_segments(ar, j, w0, w1, with_derivatives);
  }
  return ar;
}

std::vector<WeightedRule> retained_rules(const AxisRules& rules, const std::vector<bool>& drop_element,
                                         int alpha) {
  std::vector<WeightedRule> out;
  for (const auto& segs : rules.per_function) {
    WeightedRule merged;
    merged.alpha = alpha;
    for (const auto& seg : segs) {
      merged.test_index = seg.rule0.test_index;
      const WeightedRule& r = alpha == 0 ? seg.rule0 : seg.rule1;
      for (std::size_t k = 0; k < r.point_ids.size(); ++k) {
        if (drop_element[static_cast<std::size_t>(rules.point_element(r.point_ids[k]))]) continue;
        merged.point_ids.push_back(r.point_ids[k]);
        merged.weights.push_back(r.weights[k]);
      }
    }
    out.push_back(std::move(merged));
  }
  return out;
}

Index box_point_bound(const std::vector<int>& degrees, int nqi, int h_b, int dim) {
  if (h_b < 2) throw std::invalid_argument("box_point_bound: h_b must be >= 2");
  Index full = 1, inner = 1;
  for (int d = 0; d < dim; ++d) {
    full *= degrees[static_cast<std::size_t>(d)] + 1;
    inner *= nqi;
  }
  return full * 2 + inner * (h_b - 2);
}

}  // namespace iwq
