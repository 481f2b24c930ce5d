#include "iwq/wq.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <istream>
#include <map>
#include <ostream>
#include <set>

#include "json.hpp"

namespace iwq {

namespace {

// Union of positive-length cells of both bases' breakpoints within [lo,hi].
std::vector<double> union_cells(const UnivariateBasis& A, const UnivariateBasis& B, double lo, double hi) {
  std::set<double> cuts;
  cuts.insert(lo);
  cuts.insert(hi);
  for (double v : A.breakpoint_values())
    if (v > lo && v < hi) cuts.insert(v);
  for (double v : B.breakpoint_values())
    if (v > lo && v < hi) cuts.insert(v);
  return {cuts.begin(), cuts.end()};
}

}  // namespace

PointLayout wq_point_layout(const UnivariateBasis& basis, Purpose purpose,
                            const std::vector<Index>& force_full) {
  if (!basis.kv().is_open()) throw std::invalid_argument("wq_point_layout: open knot vector required");
  const int p = basis.degree();
  const Index ne = basis.num_elements();
  const GaussRule gauss = gauss_legendre(p + 1);

  // Elements adjacent to a C^{-1} breakpoint carry all p+1 points.
  std::vector<bool> full(static_cast<std::size_t>(ne), false);
  const auto& bp = basis.breakpoint_values();
  const auto& reg = basis.regularities();
  for (std::size_t c = 0; c < bp.size(); ++c) {
    if (reg[c] > -1) continue;
    for (Index e = 0; e < ne; ++e)
      if (basis.element_lo(e) == bp[c] || basis.element_hi(e) == bp[c]) full[static_cast<std::size_t>(e)] = true;
  }
  for (Index e : force_full) full[static_cast<std::size_t>(e)] = true;

  const int nqi = purpose == Purpose::mass ? 2 : 3;
  std::vector<int> selection;  // indices into the (p+1)-point rule for interior elements
  selection.push_back(0);
  if (nqi == 3) {
    const int m = p + 1;
    selection.push_back(m % 2 == 1 ? (m - 1) / 2 : m / 2 - 1);  // lower-median Gauss point
  }
  selection.push_back(p);
  std::sort(selection.begin(), selection.end());
  selection.erase(std::unique(selection.begin(), selection.end()), selection.end());

  PointLayout layout;
  layout.purpose = purpose;
  layout.elem_first.push_back(0);
  std::vector<double> x, w;
  for (Index e = 0; e < ne; ++e) {
    gauss.mapped(basis.element_lo(e), basis.element_hi(e), x, w);
    if (full[static_cast<std::size_t>(e)]) {
      for (double xi : x) layout.points.push_back(xi);
    } else {
      for (int s : selection) layout.points.push_back(x[static_cast<std::size_t>(s)]);
    }
    layout.elem_first.push_back(static_cast<Index>(layout.points.size()));
  }
  return layout;
}

double WeightedRule::apply(const PointLayout& layout, const std::function<double(double)>& v) const {
  double s = 0.0;
  for (std::size_t k = 0; k < point_ids.size(); ++k)
    s += v(layout.points[static_cast<std::size_t>(point_ids[k])]) * weights[k];
  return s;
}

double WeightedRule::weight_sum() const {
  double s = 0.0;
  for (double w : weights) s += w;
  return s;
}

double pairing_integral(const UnivariateBasis& A, Index i, int da, const UnivariateBasis& B, Index j,
                        int db, double lo, double hi, int order) {
  lo = std::max({lo, A.support_lo(i), B.support_lo(j)});
  hi = std::min({hi, A.support_hi(i), B.support_hi(j)});
  if (lo >= hi) return 0.0;
  const GaussRule gauss = gauss_legendre(order);
  const auto cells = union_cells(A, B, lo, hi);
  double total = 0.0;
  std::vector<double> x, w;
  for (std::size_t c = 0; c + 1 < cells.size(); ++c) {
    gauss.mapped(cells[c], cells[c + 1], x, w);
    for (std::size_t k = 0; k < x.size(); ++k)
      total += w[k] * A.value(i, x[k], da) * B.value(j, x[k], db);
  }
  return total;
}

double function_integral(const UnivariateBasis& basis, Index i, int deriv, double lo, double hi, int order) {
  lo = std::max(lo, basis.support_lo(i));
  hi = std::min(hi, basis.support_hi(i));
  if (lo >= hi) return 0.0;
  const GaussRule gauss = gauss_legendre(order);
  const auto cells = union_cells(basis, basis, lo, hi);
  double total = 0.0;
  std::vector<double> x, w;
  for (std::size_t c = 0; c + 1 < cells.size(); ++c) {
    gauss.mapped(cells[c], cells[c + 1], x, w);
    for (std::size_t k = 0; k < x.size(); ++k) total += w[k] * basis.value(i, x[k], deriv);
  }
  return total;
}

UnivariateBasis wq_target_space(const UnivariateBasis& test_basis, Purpose purpose) {
  return purpose == Purpose::stiffness ? reduce_regularity(test_basis) : test_basis;
}

std::vector<WeightedRule> solve_rules(const UnivariateBasis& test_basis, const UnivariateBasis& target_basis,
                                      const PointLayout& layout) {
  const Index n = test_basis.num_functions();
  const Index nt = target_basis.num_functions();
  const int order = std::max(test_basis.degree(), target_basis.degree()) + 1;

  // Active target values at every layout point inside the target's domain
  // (sub-basis solves see the full-domain layout), evaluated once.
  std::vector<Index> tgt_first(static_cast<std::size_t>(layout.num_points()), -1);
  std::vector<std::vector<double>> tgt_vals(static_cast<std::size_t>(layout.num_points()));
  {
    std::vector<std::vector<double>> tmp;
    for (Index k = 0; k < layout.num_points(); ++k) {
      const double x = layout.points[static_cast<std::size_t>(k)];
      if (x < target_basis.kv().front() || x > target_basis.kv().back()) continue;
      tgt_first[static_cast<std::size_t>(k)] = target_basis.eval(x, 0, tmp);
      tgt_vals[static_cast<std::size_t>(k)] = tmp[0];
    }
  }

  std::vector<WeightedRule> rules(static_cast<std::size_t>(n));
  std::string failure;

#pragma omp parallel for schedule(dynamic)
  for (Index i = 0; i < n; ++i) {
    const double lo = test_basis.support_lo(i), hi = test_basis.support_hi(i);

    std::vector<Index> pts;
    for (Index k = 0; k < layout.num_points(); ++k) {
      const double x = layout.points[static_cast<std::size_t>(k)];
      if (x > lo && x < hi) pts.push_back(k);
    }
    std::vector<Index> tgts;
    for (Index j = 0; j < nt; ++j)
      if (target_basis.support_lo(j) < hi && target_basis.support_hi(j) > lo) tgts.push_back(j);

    Eigen::MatrixXd A = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(tgts.size()),
                                              static_cast<Eigen::Index>(pts.size()));
    Eigen::VectorXd f(static_cast<Eigen::Index>(tgts.size()));
    for (std::size_t r = 0; r < tgts.size(); ++r) {
      const Index j = tgts[r];
      for (std::size_t c = 0; c < pts.size(); ++c) {
        const Index k = pts[c];
        if (tgt_first[static_cast<std::size_t>(k)] < 0) continue;
        const Index off = j - tgt_first[static_cast<std::size_t>(k)];
        if (off >= 0 && off <= target_basis.degree())
          A(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
              tgt_vals[static_cast<std::size_t>(k)][static_cast<std::size_t>(off)];
      }
      f(static_cast<Eigen::Index>(r)) = pairing_integral(target_basis, j, 0, test_basis, i, 0,
                                                         lo, hi, order);
    }

    Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(A);
    cod.setThreshold(1e-10);
    if (cod.rank() < static_cast<Eigen::Index>(tgts.size())) {
#pragma omp critical
      failure = "solve_rules: layout infeasible for test function " + std::to_string(i);
      continue;
    }
    Eigen::VectorXd w = cod.solve(f);

    WeightedRule& rule = rules[static_cast<std::size_t>(i)];
    rule.test_index = i;
    rule.alpha = 0;
    rule.point_ids = pts;
    rule.weights.assign(w.data(), w.data() + w.size());
  }

  if (!failure.empty()) throw std::runtime_error(failure);
  return rules;
}

std::vector<WeightedRule> solve_wq_weights(const UnivariateBasis& test_basis, const PointLayout& layout) {
  return solve_rules(test_basis, wq_target_space(test_basis, layout.purpose), layout);
}

std::vector<WeightedRule> wq_derivative_rule(const UnivariateBasis& test_basis,
                                             const std::vector<WeightedRule>& rules_pm1) {
  const auto [lower, coeffs] = derivative_basis(test_basis);
  const Index n = test_basis.num_functions();
  const Index nl = lower.num_functions();
  if (static_cast<Index>(rules_pm1.size()) != nl)
    throw std::invalid_argument("wq_derivative_rule: rule count does not match the degree-(p-1) space");

  std::vector<WeightedRule> rules(static_cast<std::size_t>(n));
  for (Index i = 0; i < n; ++i) {
    const double a = coeffs.a[static_cast<std::size_t>(i)];
    const double b = coeffs.b[static_cast<std::size_t>(i)];
    std::map<Index, double> acc;
    if (a != 0.0) {
      if (i - 1 < 0 || i - 1 >= nl) throw std::logic_error("wq_derivative_rule: lower index out of range");
      const auto& r = rules_pm1[static_cast<std::size_t>(i - 1)];
      for (std::size_t k = 0; k < r.point_ids.size(); ++k) acc[r.point_ids[k]] += a * r.weights[k];
    }
    if (b != 0.0) {
      if (i < 0 || i >= nl) throw std::logic_error("wq_derivative_rule: lower index out of range");
      const auto& r = rules_pm1[static_cast<std::size_t>(i)];
      for (std::size_t k = 0; k < r.point_ids.size(); ++k) acc[r.point_ids[k]] -= b * r.weights[k];
    }
    WeightedRule& rule = rules[static_cast<std::size_t>(i)];
    rule.test_index = i;
    rule.alpha = 1;
    for (const auto& [k, w] : acc) {
      rule.point_ids.push_back(k);
      rule.weights.push_back(w);
    }
  }
  return rules;
}

double exactness_report(const std::vector<WeightedRule>& rules, const UnivariateBasis& test_basis,
                        const UnivariateBasis& target_basis, const PointLayout& layout) {
  const int order = std::max(test_basis.degree(), target_basis.degree()) + 1;
  double worst = 0.0;
  for (const auto& rule : rules) {
    const Index i = rule.test_index;
    const double lo = test_basis.support_lo(i), hi = test_basis.support_hi(i);
    for (Index j = 0; j < target_basis.num_functions(); ++j) {
      if (target_basis.support_lo(j) >= hi || target_basis.support_hi(j) <= lo) continue;
      double quad = 0.0;
      for (std::size_t k = 0; k < rule.point_ids.size(); ++k)
        quad += target_basis.value(j, layout.points[static_cast<std::size_t>(rule.point_ids[k])]) * rule.weights[k];
      const double exact = pairing_integral(target_basis, j, 0, test_basis, i, rule.alpha, lo, hi, order);
      worst = std::max(worst, std::abs(quad - exact) / (1.0 + std::abs(exact)));
    }
  }
  return worst;
}

void export_rules_json(std::ostream& os, const RuleDocument& doc) {
  nlohmann::json j;
  j["degree"] = doc.degree;
  j["knots"] = doc.knots;
  j["purpose"] = doc.purpose == Purpose::mass ? "mass" : "stiffness";
  j["points"] = doc.points;
  j["rules"] = nlohmann::json::array();
  for (const auto& r : doc.rules) {
    nlohmann::json jr;
    jr["test_index"] = r.test_index;
    jr["alpha"] = r.alpha;
    jr["point_indices"] = r.point_ids;
    jr["weights"] = r.weights;
    j["rules"].push_back(std::move(jr));
  }
  os << j.dump(2) << "\n";
}

RuleDocument import_rules_json(std::istream& is) {
  nlohmann::json j;
  is >> j;
  RuleDocument doc;
  doc.degree = j.at("degree").get<int>();
  doc.knots = j.at("knots").get<std::vector<double>>();
  doc.purpose = j.at("purpose").get<std::string>() == "mass" ? Purpose::mass : Purpose::stiffness;
  doc.points = j.at("points").get<std::vector<double>>();
  for (const auto& jr : j.at("rules")) {
    WeightedRule r;
    r.test_index = jr.at("test_index").get<Index>();
    r.alpha = jr.at("alpha").get<int>();
    r.point_ids = jr.at("point_indices").get<std::vector<Index>>();
    r.weights = jr.at("weights").get<std::vector<double>>();
    doc.rules.push_back(std::move(r));
  }
  return doc;
}

}  // namespace iwq
