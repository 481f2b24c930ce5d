#include "iwq/knot_vector.hpp"

#include <algorithm>
#include <cmath>

namespace iwq {

KnotVector::KnotVector(std::vector<double> knots, int degree)
    : knots_(std::move(knots)), degree_(degree) {
  if (degree_ < 0) throw std::invalid_argument("KnotVector: negative degree");
  if (static_cast<Index>(knots_.size()) < 2 * (degree_ + 1))
    throw std::invalid_argument("KnotVector: too few knots");
  for (std::size_t i = 0; i + 1 < knots_.size(); ++i)
    if (knots_[i] > knots_[i + 1]) throw std::invalid_argument("KnotVector: not non-decreasing");
}

KnotVector KnotVector::uniform_open(int degree, int num_elements, double a, double b) {
  std::vector<double> k;
  k.reserve(static_cast<std::size_t>(2 * (degree + 1) + num_elements - 1));
  for (int i = 0; i <= degree; ++i) k.push_back(a);
  const double h = (b - a) / num_elements;
  for (int e = 1; e < num_elements; ++e) k.push_back(a + e * h);
  for (int i = 0; i <= degree; ++i) k.push_back(b);
  return KnotVector(std::move(k), degree);
}

bool KnotVector::is_open() const {
  return multiplicity(front()) >= degree_ + 1 && multiplicity(back()) >= degree_ + 1;
}

Index KnotVector::find_span(double u) const {
  if (u < front() || u > back()) throw std::domain_error("find_span: u outside the domain");
  const Index n = num_functions();
  // Closed right end: the endpoint evaluates in the last nonempty span.
  if (u >= knots_[static_cast<std::size_t>(n)]) {
    Index s = n - 1;
    while (s > 0 && knots_[static_cast<std::size_t>(s)] == knots_[static_cast<std::size_t>(s + 1)]) --s;
    return s;
  }
  Index lo = degree_, hi = n;
  while (lo + 1 < hi) {
    const Index mid = (lo + hi) / 2;
    if (u < knots_[static_cast<std::size_t>(mid)])
      hi = mid;
    else
      lo = mid;
  }
  return lo;
}

int KnotVector::multiplicity(double u) const {
  int m = 0;
  for (double k : knots_)
    if (k == u) ++m;
  return m;
}

void KnotVector::breakpoints(std::vector<double>& values, std::vector<int>& mults) const {
  values.clear();
  mults.clear();
  for (double k : knots_) {
    if (values.empty() || values.back() != k) {
      values.push_back(k);
      mults.push_back(1);
    } else {
      ++mults.back();
    }
  }
}

UnivariateBasis::UnivariateBasis(KnotVector kv) : kv_(std::move(kv)) {
  const Index nk = kv_.num_knots();
  for (Index s = 0; s + 1 < nk; ++s)
    if (kv_[s] < kv_[s + 1]) element_span_.push_back(s);
  std::vector<int> mults;
  kv_.breakpoints(bp_values_, mults);
  regularity_.resize(mults.size());
  for (std::size_t c = 0; c < mults.size(); ++c) regularity_[c] = kv_.degree() - mults[c];
}

Index UnivariateBasis::element_of(double u) const {
  const Index s = kv_.find_span(u);
  auto it = std::lower_bound(element_span_.begin(), element_span_.end(), s);
  if (it == element_span_.end() || *it != s) throw std::logic_error("element_of: span not an element");
  return static_cast<Index>(it - element_span_.begin());
}

std::pair<Index, Index> UnivariateBasis::support_elements(Index i) const {
  const double lo = support_lo(i), hi = support_hi(i);
  Index first = 0, last = num_elements();
  while (first < last && element_hi(first) <= lo) ++first;
  while (last > first && element_lo(last - 1) >= hi) --last;
  return {first, last};
}

Index UnivariateBasis::eval(double u, int max_deriv, std::vector<std::vector<double>>& values) const {
  const int p = degree();
  if (max_deriv > p) throw std::invalid_argument("eval: max_deriv exceeds degree");
  const Index span = kv_.find_span(u);
  const auto& U = kv_.knots();

  // Triangular table of the nonzero functions of all degrees (NURBS-book
  // style) plus the inverted knot differences for the derivative recurrences.
  std::vector<std::vector<double>> ndu(static_cast<std::size_t>(p + 1),
                                       std::vector<double>(static_cast<std::size_t>(p + 1), 0.0));
  std::vector<double> left(static_cast<std::size_t>(p + 1)), right(static_cast<std::size_t>(p + 1));
  ndu[0][0] = 1.0;
  for (int j = 1; j <= p; ++j) {
    left[static_cast<std::size_t>(j)] = u - U[static_cast<std::size_t>(span + 1 - j)];
    right[static_cast<std::size_t>(j)] = U[static_cast<std::size_t>(span + j)] - u;
    double saved = 0.0;
    for (int r = 0; r < j; ++r) {
      ndu[static_cast<std::size_t>(j)][static_cast<std::size_t>(r)] =
          right[static_cast<std::size_t>(r + 1)] + left[static_cast<std::size_t>(j - r)];
      const double denom = ndu[static_cast<std::size_t>(j)][static_cast<std::size_t>(r)];
      const double temp = denom != 0.0 ? ndu[static_cast<std::size_t>(r)][static_cast<std::size_t>(j - 1)] / denom : 0.0;
      ndu[static_cast<std::size_t>(r)][static_cast<std::size_t>(j)] =
          saved + right[static_cast<std::size_t>(r + 1)] * temp;
      saved = left[static_cast<std::size_t>(j - r)] * temp;
    }
    ndu[static_cast<std::size_t>(j)][static_cast<std::size_t>(j)] = saved;
  }

  values.assign(static_cast<std::size_t>(max_deriv + 1),
                std::vector<double>(static_cast<std::size_t>(p + 1), 0.0));
  for (int j = 0; j <= p; ++j) values[0][static_cast<std::size_t>(j)] = ndu[static_cast<std::size_t>(j)][static_cast<std::size_t>(p)];

  if (max_deriv > 0) {
    std::vector<std::vector<double>> a(2, std::vector<double>(static_cast<std::size_t>(p + 1), 0.0));
    for (int r = 0; r <= p; ++r) {
      int s1 = 0, s2 = 1;
      a[0][0] = 1.0;
      for (int k = 1; k <= max_deriv; ++k) {
        double d = 0.0;
        const int rk = r - k, pk = p - k;
        if (r >= k) {
          const double denom = ndu[static_cast<std::size_t>(pk + 1)][static_cast<std::size_t>(rk)];
          a[static_cast<std::size_t>(s2)][0] = denom != 0.0 ? a[static_cast<std::size_t>(s1)][0] / denom : 0.0;
          d = a[static_cast<std::size_t>(s2)][0] * ndu[static_cast<std::size_t>(rk)][static_cast<std::size_t>(pk)];
        }
        const int j1 = (rk >= -1) ? 1 : -rk;
        const int j2 = (r - 1 <= pk) ? (k - 1) : (p - r);
        for (int j = j1; j <= j2; ++j) {
          const double denom = ndu[static_cast<std::size_t>(pk + 1)][static_cast<std::size_t>(rk + j)];
          a[static_cast<std::size_t>(s2)][static_cast<std::size_t>(j)] =
              denom != 0.0
                  ? (a[static_cast<std::size_t>(s1)][static_cast<std::size_t>(j)] -
                     a[static_cast<std::size_t>(s1)][static_cast<std::size_t>(j - 1)]) / denom
                  : 0.0;
          d += a[static_cast<std::size_t>(s2)][static_cast<std::size_t>(j)] *
               ndu[static_cast<std::size_t>(rk + j)][static_cast<std::size_t>(pk)];
        }
        if (r <= pk) {
          const double denom = ndu[static_cast<std::size_t>(pk + 1)][static_cast<std::size_t>(r)];
          a[static_cast<std::size_t>(s2)][static_cast<std::size_t>(k)] =
              denom != 0.0 ? -a[static_cast<std::size_t>(s1)][static_cast<std::size_t>(k - 1)] / denom : 0.0;
          d += a[static_cast<std::size_t>(s2)][static_cast<std::size_t>(k)] *
               ndu[static_cast<std::size_t>(r)][static_cast<std::size_t>(pk)];
        }
        values[static_cast<std::size_t>(k)][static_cast<std::size_t>(r)] = d;
        std::swap(s1, s2);
      }
    }
    double factor = p;
    for (int k = 1; k <= max_deriv; ++k) {
      for (int j = 0; j <= p; ++j) values[static_cast<std::size_t>(k)][static_cast<std::size_t>(j)] *= factor;
      factor *= (p - k);
    }
  }
  return span - p;
}

double UnivariateBasis::value(Index i, double u, int deriv) const {
  if (u < kv_.front() || u > kv_.back()) throw std::domain_error("value: u outside the domain");
  if (u < support_lo(i) || u > support_hi(i)) return 0.0;
  std::vector<std::vector<double>> vals;
  const Index first = eval(u, deriv, vals);
  const Index off = i - first;
  if (off < 0 || off > degree()) return 0.0;
  return vals[static_cast<std::size_t>(deriv)][static_cast<std::size_t>(off)];
}

std::pair<UnivariateBasis, UnivariateBasis::DerivCoeffs> derivative_basis(const UnivariateBasis& basis) {
  const int p = basis.degree();
  if (p < 1) throw std::invalid_argument("derivative_basis: degree 0 unsupported");
  const auto& U = basis.kv().knots();
  std::vector<double> trimmed(U.begin() + 1, U.end() - 1);
  UnivariateBasis lower{KnotVector(std::move(trimmed), p - 1)};

  const Index n = basis.num_functions();
  UnivariateBasis::DerivCoeffs c;
  c.a.resize(static_cast<std::size_t>(n));
  c.b.resize(static_cast<std::size_t>(n));
  for (Index i = 0; i < n; ++i) {
    const double da = U[static_cast<std::size_t>(i + p)] - U[static_cast<std::size_t>(i)];
    const double db = U[static_cast<std::size_t>(i + p + 1)] - U[static_cast<std::size_t>(i + 1)];
    c.a[static_cast<std::size_t>(i)] = da != 0.0 ? p / da : 0.0;  // 0/0 := 0
    c.b[static_cast<std::size_t>(i)] = db != 0.0 ? p / db : 0.0;
  }
  return {std::move(lower), std::move(c)};
}

UnivariateBasis reduce_regularity(const UnivariateBasis& basis) {
  const int p = basis.degree();
  const auto& kv = basis.kv();
  std::vector<double> values;
  std::vector<int> mults;
  kv.breakpoints(values, mults);
  std::vector<double> knots;
  for (std::size_t c = 0; c < values.size(); ++c) {
    int m = mults[c];
    if (c > 0 && c + 1 < values.size()) m = std::min(m + 1, p + 1);
    for (int r = 0; r < m; ++r) knots.push_back(values[c]);
  }
  return UnivariateBasis{KnotVector(std::move(knots), p)};
}

TensorBasis::TensorBasis(std::vector<UnivariateBasis> axes) : axes_(std::move(axes)) {
  const int d = static_cast<int>(axes_.size());
  if (d < 1 || d > 3) throw std::invalid_argument("TensorBasis: dim must be 1..3");
  std::array<Index, 3> fe{1, 1, 1}, ee{1, 1, 1};
  for (int i = 0; i < d; ++i) {
    fe[static_cast<std::size_t>(i)] = axes_[static_cast<std::size_t>(i)].num_functions();
    ee[static_cast<std::size_t>(i)] = axes_[static_cast<std::size_t>(i)].num_elements();
  }
  fn_indexer_ = GridIndexer(fe, d);
  el_indexer_ = GridIndexer(ee, d);
}

double TensorBasis::value(const std::array<Index, 3>& mi, const Vec3& x) const {
  double v = 1.0;
  for (int d = 0; d < dim(); ++d)
    v *= axes_[static_cast<std::size_t>(d)].value(mi[static_cast<std::size_t>(d)], x[static_cast<std::size_t>(d)]);
  return v;
}

}  // namespace iwq
