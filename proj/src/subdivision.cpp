#include "iwq/subdivision.hpp"

#include <algorithm>
#include <map>

namespace iwq {

SubdivisionMatrix SubdivisionMatrix::identity(Index n) {
  SubdivisionMatrix s;
  s.rows_ = s.cols_ = n;
  s.data_.resize(static_cast<std::size_t>(n));
  for (Index i = 0; i < n; ++i) s.data_[static_cast<std::size_t>(i)] = {{i, 1.0}};
  return s;
}

std::vector<double> SubdivisionMatrix::apply(const std::vector<double>& coarse) const {
  if (static_cast<Index>(coarse.size()) != cols_) throw std::invalid_argument("SubdivisionMatrix::apply: size mismatch");
  std::vector<double> out(static_cast<std::size_t>(rows_), 0.0);
  for (Index i = 0; i < rows_; ++i)
    for (const auto& e : data_[static_cast<std::size_t>(i)])
      out[static_cast<std::size_t>(i)] += e.value * coarse[static_cast<std::size_t>(e.col)];
  return out;
}

void SubdivisionMatrix::compose_left(const SubdivisionMatrix& single) {
  if (single.cols_ != rows_) throw std::invalid_argument("SubdivisionMatrix::compose_left: shape mismatch");
  std::vector<std::vector<Entry>> out(static_cast<std::size_t>(single.rows_));
  for (Index i = 0; i < single.rows_; ++i) {
    std::map<Index, double> acc;
    for (const auto& a : single.data_[static_cast<std::size_t>(i)])
      for (const auto& b : data_[static_cast<std::size_t>(a.col)]) acc[b.col] += a.value * b.value;
    out[static_cast<std::size_t>(i)].reserve(acc.size());
    for (const auto& [col, v] : acc) out[static_cast<std::size_t>(i)].push_back({col, v});
  }
  data_ = std::move(out);
  rows_ = single.rows_;
}

std::vector<SubdivisionMatrix::Entry> SubdivisionMatrix::column(Index j) const {
  std::vector<Entry> out;
  for (Index i = 0; i < rows_; ++i)
    for (const auto& e : data_[static_cast<std::size_t>(i)])
      if (e.col == j) out.push_back({i, e.value});
  return out;
}

SubdivisionMatrix SubdivisionMatrix::single_insertion(const KnotVector& kv, double u_hat) {
  const int p = kv.degree();
  const auto& U = kv.knots();
  const Index n = kv.num_functions();
  const Index s = kv.find_span(u_hat);

  SubdivisionMatrix m;
  m.rows_ = n + 1;
  m.cols_ = n;
  m.data_.resize(static_cast<std::size_t>(n + 1));
  for (Index i = 0; i <= n; ++i) {
    double alpha;
    if (i <= s - p)
      alpha = 1.0;
    else if (i <= s) {
      const double den = U[static_cast<std::size_t>(i + p)] - U[static_cast<std::size_t>(i)];
      alpha = den != 0.0 ? (u_hat - U[static_cast<std::size_t>(i)]) / den : 0.0;  // 0/0 := 0
    } else
      alpha = 0.0;
    auto& row = m.data_[static_cast<std::size_t>(i)];
    if (alpha != 0.0 && i < n) row.push_back({i, alpha});
    if (alpha != 1.0 && i > 0) row.push_back({i - 1, 1.0 - alpha});
    std::sort(row.begin(), row.end(), [](const Entry& a, const Entry& b) { return a.col < b.col; });
  }
  return m;
}

std::pair<UnivariateBasis, SubdivisionMatrix> insert_knot(const UnivariateBasis& basis, double u_hat,
                                                          int target_multiplicity) {
  const auto& kv = basis.kv();
  if (!(u_hat > kv.front() && u_hat < kv.back()))
    throw std::domain_error("insert_knot: u_hat not strictly inside the domain");
  if (target_multiplicity > kv.degree() + 1)
    throw std::invalid_argument("insert_knot: multiplicity exceeds degree+1");

  KnotVector current = kv;
  SubdivisionMatrix acc = SubdivisionMatrix::identity(kv.num_functions());
  while (current.multiplicity(u_hat) < target_multiplicity) {
    SubdivisionMatrix step = SubdivisionMatrix::single_insertion(current, u_hat);
    acc.compose_left(step);
    std::vector<double> knots = current.knots();
    knots.insert(std::upper_bound(knots.begin(), knots.end(), u_hat), u_hat);
    current = KnotVector(std::move(knots), current.degree());
  }
  return {UnivariateBasis(current), std::move(acc)};
}

std::pair<UnivariateBasis, SubdivisionMatrix> insert_discontinuities(const UnivariateBasis& basis,
                                                                     const std::vector<double>& gammas) {
  UnivariateBasis current = basis;
  SubdivisionMatrix acc = SubdivisionMatrix::identity(basis.num_functions());
  for (double g : gammas) {
    auto [refined, s] = insert_knot(current, g, current.degree() + 1);
    acc.compose_left(s);
    current = std::move(refined);
  }
  return {std::move(current), std::move(acc)};
}

std::vector<std::pair<UnivariateBasis, Index>> split_at_discontinuities(const UnivariateBasis& basis,
                                                                        const std::vector<double>& gammas) {
  const int p = basis.degree();
  const auto& U = basis.kv().knots();
  std::vector<double> cuts = gammas;
  std::sort(cuts.begin(), cuts.end());

  std::vector<std::pair<UnivariateBasis, Index>> out;
  std::size_t begin = 0;  // first knot index of the current segment
  Index fn_offset = 0;
  for (double g : cuts) {
    if (basis.kv().multiplicity(g) != p + 1)
      throw std::invalid_argument("split_at_discontinuities: not C^{-1} at cut");
    // Segment knots run up to and including the p+1 copies of g.
    std::size_t first_g = begin;
    while (U[first_g] != g) ++first_g;
    std::vector<double> seg(U.begin() + static_cast<std::ptrdiff_t>(begin),
                            U.begin() + static_cast<std::ptrdiff_t>(first_g + static_cast<std::size_t>(p + 1)));
    UnivariateBasis sb{KnotVector(std::move(seg), p)};
    out.emplace_back(sb, fn_offset);
    fn_offset += sb.num_functions();
    begin = first_g;
  }
  std::vector<double> tail(U.begin() + static_cast<std::ptrdiff_t>(begin), U.end());
  UnivariateBasis sb{KnotVector(std::move(tail), p)};
  out.emplace_back(sb, fn_offset);
  return out;
}

}  // namespace iwq
