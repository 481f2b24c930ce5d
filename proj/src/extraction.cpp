#include "iwq/extraction.hpp"

#include <algorithm>
#include <cmath>

namespace iwq {

double greville(const UnivariateBasis& basis, Index i) {
  const int p = basis.degree();
  const auto& U = basis.kv().knots();
  double s = 0.0;
  for (int k = 1; k <= p; ++k) s += U[static_cast<std::size_t>(i + k)];
  return s / p;
}

namespace {

enum class Stability : std::uint8_t { exterior, inner, outer };

}  // namespace

ExtractionMatrix build_extraction(const TensorBasis& basis, const CartesianMesh& mesh,
                                  const std::vector<ElementClass>& classes, const DirichletFaces& bc) {
  const int dim = basis.dim();
  const Index nfn = basis.num_functions();
  const auto& fidx = basis.function_indexer();

  ExtractionMatrix ex;
  ex.dropped.assign(static_cast<std::size_t>(nfn), 0);
  for (Index f = 0; f < nfn; ++f) {
    const auto mi = fidx.unflat(f);
    for (int d = 0; d < dim; ++d) {
      if (bc.lo[static_cast<std::size_t>(d)] && mi[static_cast<std::size_t>(d)] == 0) ex.dropped[static_cast<std::size_t>(f)] = 1;
      if (bc.hi[static_cast<std::size_t>(d)] &&
          mi[static_cast<std::size_t>(d)] == basis.axis(d).num_functions() - 1)
        ex.dropped[static_cast<std::size_t>(f)] = 1;
    }
  }

  // Inner iff the support contains at least one interior element.
  std::vector<Stability> stab(static_cast<std::size_t>(nfn));
  for (Index f = 0; f < nfn; ++f) {
    const auto mi = fidx.unflat(f);
    std::array<std::pair<Index, Index>, 3> rng{{{0, 1}, {0, 1}, {0, 1}}};
    for (int d = 0; d < dim; ++d)
      rng[static_cast<std::size_t>(d)] = basis.axis(d).support_elements(mi[static_cast<std::size_t>(d)]);
    bool any_interior = false, any_valid = false;
    std::array<Index, 3> el{0, 0, 0};
    auto scan = [&](auto&& self, int d) -> void {
      if (d == dim) {
        const auto c = classes[static_cast<std::size_t>(mesh.indexer.flat(el))];
        any_interior |= c == ElementClass::interior;
        any_valid |= c != ElementClass::exterior;
        return;
      }
      for (el[static_cast<std::size_t>(d)] = rng[static_cast<std::size_t>(d)].first;
           el[static_cast<std::size_t>(d)] < rng[static_cast<std::size_t>(d)].second; ++el[static_cast<std::size_t>(d)])
        self(self, d + 1);
    };
    scan(scan, 0);
    stab[static_cast<std::size_t>(f)] =
        any_interior ? Stability::inner : (any_valid ? Stability::outer : Stability::exterior);
  }

  std::vector<Index> row_of(static_cast<std::size_t>(nfn), -1);
  for (Index f = 0; f < nfn; ++f)
    if (stab[static_cast<std::size_t>(f)] == Stability::inner && !ex.dropped[static_cast<std::size_t>(f)]) {
      row_of[static_cast<std::size_t>(f)] = static_cast<Index>(ex.stable_functions.size());
      ex.stable_functions.push_back(f);
    }
  if (ex.stable_functions.empty()) throw std::runtime_error("build_extraction: degenerate domain, no inner functions");

  auto window_all_stable = [&](const std::array<Index, 3>& w) {
    std::array<Index, 3> mi{0, 0, 0};
    const int p = basis.axis(0).degree();
    bool ok = true;
    auto scan = [&](auto&& self, int d) -> void {
      if (!ok) return;
      if (d == dim) {
        ok &= row_of[static_cast<std::size_t>(fidx.flat(mi))] >= 0;
        return;
      }
      const int pd = basis.axis(d).degree();
      (void)p;
      for (Index k = 0; ok && k <= pd; ++k) {
        mi[static_cast<std::size_t>(d)] = w[static_cast<std::size_t>(d)] + k;
        self(self, d + 1);
      }
    };
    scan(scan, 0);
    return ok;
  };

  std::vector<Eigen::Triplet<double>> trips;
  for (Index f = 0; f < nfn; ++f)
    if (row_of[static_cast<std::size_t>(f)] >= 0)
      trips.emplace_back(static_cast<int>(row_of[static_cast<std::size_t>(f)]), static_cast<int>(f), 1.0);

  for (Index f = 0; f < nfn; ++f) {
    if (stab[static_cast<std::size_t>(f)] != Stability::outer || ex.dropped[static_cast<std::size_t>(f)]) continue;
    const auto mi = fidx.unflat(f);

    // Nearest all-stable window box, preferring windows containing the outer
    // index on each axis (those axes contribute delta coefficients).
    std::array<Index, 3> best{-1, -1, -1};
    Index best_dist = -1;
    std::array<Index, 3> w{0, 0, 0};
    auto enumerate = [&](auto&& self, int d) -> void {
      if (d == dim) {
        if (!window_all_stable(w)) return;
        Index dist = 0;
        for (int e = 0; e < dim; ++e) {
          const int pe = basis.axis(e).degree();
          const Index lo = w[static_cast<std::size_t>(e)], hi = w[static_cast<std::size_t>(e)] + pe;
          dist += std::max<Index>({0, lo - mi[static_cast<std::size_t>(e)], mi[static_cast<std::size_t>(e)] - hi});
        }
        if (best_dist < 0 || dist < best_dist ||
            (dist == best_dist && std::lexicographical_compare(w.begin(), w.begin() + dim, best.begin(),
                                                               best.begin() + dim))) {
          best_dist = dist;
          best = w;
        }
        return;
      }
      const Index nw = basis.axis(d).num_functions() - basis.axis(d).degree();
      for (w[static_cast<std::size_t>(d)] = 0; w[static_cast<std::size_t>(d)] < nw; ++w[static_cast<std::size_t>(d)])
        self(self, d + 1);
    };
    enumerate(enumerate, 0);
    if (best_dist < 0) throw std::runtime_error("build_extraction: no stable window for an outer function");

    // Tensor Lagrange extension coefficients in the Greville nodes.
    std::array<std::vector<double>, 3> axis_coeff;
    for (int d = 0; d < dim; ++d) {
      const int pd = basis.axis(d).degree();
      const double xj = greville(basis.axis(d), mi[static_cast<std::size_t>(d)]);
      std::vector<double> nodes(static_cast<std::size_t>(pd + 1));
      for (int k = 0; k <= pd; ++k) nodes[static_cast<std::size_t>(k)] = greville(basis.axis(d), best[static_cast<std::size_t>(d)] + k);
      auto& cf = axis_coeff[static_cast<std::size_t>(d)];
      cf.resize(static_cast<std::size_t>(pd + 1));
      for (int k = 0; k <= pd; ++k) {
        double v = 1.0;
        for (int l = 0; l <= pd; ++l) {
          if (l == k) continue;
          v *= (xj - nodes[static_cast<std::size_t>(l)]) / (nodes[static_cast<std::size_t>(k)] - nodes[static_cast<std::size_t>(l)]);
        }
        cf[static_cast<std::size_t>(k)] = v;
      }
    }

    std::array<Index, 3> off{0, 0, 0};
    auto emit = [&](auto&& self, int d, double value) -> void {
      if (d == dim) {
        std::array<Index, 3> tgt{0, 0, 0};
        for (int e = 0; e < dim; ++e) tgt[static_cast<std::size_t>(e)] = best[static_cast<std::size_t>(e)] + off[static_cast<std::size_t>(e)];
        trips.emplace_back(static_cast<int>(row_of[static_cast<std::size_t>(fidx.flat(tgt))]),
                           static_cast<int>(f), value);
        return;
      }
      const int pd = basis.axis(d).degree();
      for (Index k = 0; k <= pd; ++k) {
        off[static_cast<std::size_t>(d)] = k;
        self(self, d + 1, value * axis_coeff[static_cast<std::size_t>(d)][static_cast<std::size_t>(k)]);
      }
    };
    emit(emit, 0, 1.0);
  }

  ex.C.resize(static_cast<Eigen::Index>(ex.stable_functions.size()), static_cast<Eigen::Index>(nfn));
  ex.C.setFromTriplets(trips.begin(), trips.end());
  ex.C.makeCompressed();
  return ex;
}

}  // namespace iwq
