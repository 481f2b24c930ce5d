#include "iwq/partition.hpp"

#include <algorithm>
#include <ostream>

#include "json.hpp"

namespace iwq {

Index BoxPartition::box_of_element(const std::array<Index, 3>& el, int dim) const {
  Index flat = 0;
  for (int d = dim - 1; d >= 0; --d) {
    const Index k = (el[static_cast<std::size_t>(d)] + shift[static_cast<std::size_t>(d)]) / h_b;
    flat = flat * boxes_per_axis[static_cast<std::size_t>(d)] + k;
  }
  return flat;
}

namespace {

BoxPartition build_partition(const CartesianMesh& mesh, const std::vector<ElementClass>& classes,
                             int h_b, const std::array<int, 3>& shift) {
  BoxPartition bp;
  bp.h_b = h_b;
  bp.shift = shift;
  const int dim = mesh.dim;
  Index nboxes = 1;
  for (int d = 0; d < dim; ++d) {
    const Index n = mesh.num_elements_on_axis(d);
    bp.boxes_per_axis[static_cast<std::size_t>(d)] =
        (n + shift[static_cast<std::size_t>(d)] + h_b - 1) / h_b;
    nboxes *= bp.boxes_per_axis[static_cast<std::size_t>(d)];
  }
  bp.admissible.assign(static_cast<std::size_t>(nboxes), true);

  const Index ne = mesh.num_elements();
  for (Index e = 0; e < ne; ++e) {
    if (classes[static_cast<std::size_t>(e)] == ElementClass::interior) continue;
    const auto mi = mesh.indexer.unflat(e);
    bp.admissible[static_cast<std::size_t>(bp.box_of_element(mi, dim))] = false;
  }

  bp.element_in_wq.assign(static_cast<std::size_t>(ne), false);
  bp.gauss_element_count = 0;
  for (Index e = 0; e < ne; ++e) {
    const auto mi = mesh.indexer.unflat(e);
    const bool adm = bp.admissible[static_cast<std::size_t>(bp.box_of_element(mi, dim))];
    bp.element_in_wq[static_cast<std::size_t>(e)] = adm;
    if (!adm && classes[static_cast<std::size_t>(e)] == ElementClass::interior) ++bp.gauss_element_count;
  }
  return bp;
}

void emit_facets(const CartesianMesh& mesh, BoxPartition& bp) {
  const int dim = mesh.dim;
  GridIndexer boxes(bp.boxes_per_axis, dim);
  auto box_range = [&](const std::array<Index, 3>& box, int d) {
    const Index lo = box[static_cast<std::size_t>(d)] * bp.h_b - bp.shift[static_cast<std::size_t>(d)];
    const Index hi = lo + bp.h_b;
    return std::pair<Index, Index>{std::max<Index>(lo, 0), std::min(hi, mesh.num_elements_on_axis(d))};
  };

  for (Index b = 0; b < boxes.size(); ++b) {
    if (!bp.admissible[static_cast<std::size_t>(b)]) continue;
    const auto box = boxes.unflat(b);
    for (int d = 0; d < dim; ++d) {
      for (int side = 0; side < 2; ++side) {
        auto nb = box;
        nb[static_cast<std::size_t>(d)] += side == 0 ? -1 : 1;
        bool neighbor_admissible = false;
        if (nb[static_cast<std::size_t>(d)] >= 0 &&
            nb[static_cast<std::size_t>(d)] < bp.boxes_per_axis[static_cast<std::size_t>(d)])
          neighbor_admissible = bp.admissible[static_cast<std::size_t>(boxes.flat(nb))];
        if (neighbor_admissible) continue;

        BoxPartition::Facet f;
        f.axis = d;
        const auto [lo_d, hi_d] = box_range(box, d);
        f.boundary = side == 0 ? lo_d : hi_d;
        f.lo = {0, 0, 0};
        f.hi = {1, 1, 1};
        for (int e = 0; e < dim; ++e) {
          if (e == d) continue;
          const auto [lo_e, hi_e] = box_range(box, e);
          f.lo[static_cast<std::size_t>(e)] = lo_e;
          f.hi[static_cast<std::size_t>(e)] = hi_e;
        }
        bp.facets.push_back(f);
      }
    }
  }
}

}  // namespace

BoxPartition global_box_partition(const CartesianMesh& mesh, const std::vector<ElementClass>& classes,
                                  int h_b) {
  if (h_b < 2) throw std::invalid_argument("global_box_partition: h_b must be >= 2");
  const int dim = mesh.dim;

  BoxPartition best;
  std::array<int, 3> best_shift{0, 0, 0};
  bool have = false;

  std::array<int, 3> shift{0, 0, 0};
  const int nshift = h_b - 1;
  int total = 1;
  for (int d = 0; d < dim; ++d) total *= nshift;
  for (int s = 0; s < total; ++s) {
    int rem = s;
    for (int d = 0; d < dim; ++d) {
      shift[static_cast<std::size_t>(d)] = rem % nshift;
      rem /= nshift;
    }
    BoxPartition cand = build_partition(mesh, classes, h_b, shift);
    // Lexicographic tie-break on (shift_1, shift_2, shift_3).
    const bool better =
        !have || cand.gauss_element_count < best.gauss_element_count ||
        (cand.gauss_element_count == best.gauss_element_count &&
         std::lexicographical_compare(shift.begin(), shift.begin() + dim, best_shift.begin(),
                                      best_shift.begin() + dim));
    if (better) {
      best = std::move(cand);
      best_shift = shift;
      have = true;
    }
  }
  emit_facets(mesh, best);
  return best;
}

std::array<Index, 4> FunctionClassification::counts() const {
  std::array<Index, 4> c{0, 0, 0, 0};
  for (auto k : cls) ++c[static_cast<std::size_t>(k)];
  return c;
}

namespace {

// Support element range [first, last) of function i_d on axis d.
std::pair<Index, Index> axis_support(const TensorBasis& basis, int d, Index i) {
  return basis.axis(d).support_elements(i);
}

}  // namespace

FunctionClassification classify_functions_global(const TensorBasis& basis, const CartesianMesh& mesh,
                                                 const std::vector<ElementClass>& classes,
                                                 const BoxPartition& partition) {
  const int dim = basis.dim();
  const Index nfn = basis.num_functions();
  FunctionClassification fc;
  fc.cls.resize(static_cast<std::size_t>(nfn));
  fc.gammas.resize(static_cast<std::size_t>(nfn));

  for (Index f = 0; f < nfn; ++f) {
    const auto mi = basis.function_indexer().unflat(f);
    std::array<std::pair<Index, Index>, 3> rng{{{0, 1}, {0, 1}, {0, 1}}};
    for (int d = 0; d < dim; ++d) rng[static_cast<std::size_t>(d)] = axis_support(basis, d, mi[static_cast<std::size_t>(d)]);

    bool all_exterior = true, all_wq = true, any_wq = false, any_valid = false;
    std::array<Index, 3> el{0, 0, 0};
    auto scan = [&](auto&& self, int d) -> void {
      if (d == dim) {
        const Index e = mesh.indexer.flat(el);
        const auto cls = classes[static_cast<std::size_t>(e)];
        const bool wq = partition.element_in_wq[static_cast<std::size_t>(e)];
        if (cls != ElementClass::exterior) {
          all_exterior = false;
          any_valid = true;
        }
        if (wq)
          any_wq = true;
        else
          all_wq = false;
        return;
      }
      for (el[static_cast<std::size_t>(d)] = rng[static_cast<std::size_t>(d)].first;
           el[static_cast<std::size_t>(d)] < rng[static_cast<std::size_t>(d)].second; ++el[static_cast<std::size_t>(d)])
        self(self, d + 1);
    };
    scan(scan, 0);

    FunctionClass k;
    if (all_exterior)
      k = FunctionClass::exterior;
    else if (all_wq)
      k = FunctionClass::interior;
    else if (!any_wq)
      k = FunctionClass::gauss;
    else
      k = FunctionClass::cut;
    fc.cls[static_cast<std::size_t>(f)] = k;

    if (k != FunctionClass::cut) continue;
    for (const auto& facet : partition.facets) {
      const int d = facet.axis;
      const auto [lo_d, hi_d] = rng[static_cast<std::size_t>(d)];
      if (facet.boundary <= lo_d || facet.boundary >= hi_d) continue;  // not in the open support
      bool overlaps = true;
      for (int e = 0; e < dim; ++e) {
        if (e == d) continue;
        const auto [lo_e, hi_e] = rng[static_cast<std::size_t>(e)];
        overlaps &= std::max(facet.lo[static_cast<std::size_t>(e)], lo_e) <
                    std::min(facet.hi[static_cast<std::size_t>(e)], hi_e);
      }
      if (!overlaps) continue;
      auto& g = fc.gammas[static_cast<std::size_t>(f)][static_cast<std::size_t>(d)];
      if (std::find(g.begin(), g.end(), facet.boundary) == g.end()) g.push_back(facet.boundary);
    }
    for (int d = 0; d < dim; ++d)
      std::sort(fc.gammas[static_cast<std::size_t>(f)][static_cast<std::size_t>(d)].begin(),
                fc.gammas[static_cast<std::size_t>(f)][static_cast<std::size_t>(d)].end());
  }
  return fc;
}

std::vector<FunctionClass> classify_functions_plain(const TensorBasis& basis, const CartesianMesh& mesh,
                                                    const std::vector<ElementClass>& classes) {
  const int dim = basis.dim();
  const Index nfn = basis.num_functions();
  std::vector<FunctionClass> out(static_cast<std::size_t>(nfn));
  for (Index f = 0; f < nfn; ++f) {
    const auto mi = basis.function_indexer().unflat(f);
    std::array<std::pair<Index, Index>, 3> rng{{{0, 1}, {0, 1}, {0, 1}}};
    for (int d = 0; d < dim; ++d) rng[static_cast<std::size_t>(d)] = axis_support(basis, d, mi[static_cast<std::size_t>(d)]);
    bool all_exterior = true, all_interior = true;
    std::array<Index, 3> el{0, 0, 0};
    auto scan = [&](auto&& self, int d) -> void {
      if (d == dim) {
        const auto cls = classes[static_cast<std::size_t>(mesh.indexer.flat(el))];
        if (cls != ElementClass::exterior) all_exterior = false;
        if (cls != ElementClass::interior) all_interior = false;
        return;
      }
      for (el[static_cast<std::size_t>(d)] = rng[static_cast<std::size_t>(d)].first;
           el[static_cast<std::size_t>(d)] < rng[static_cast<std::size_t>(d)].second; ++el[static_cast<std::size_t>(d)])
        self(self, d + 1);
    };
    scan(scan, 0);
    out[static_cast<std::size_t>(f)] = all_exterior ? FunctionClass::exterior
                                       : all_interior ? FunctionClass::interior
                                                      : FunctionClass::cut;
  }
  return out;
}

IndividualPlacement individual_placement(const TensorBasis& basis, const CartesianMesh& mesh,
                                         const std::vector<ElementClass>& classes,
                                         const std::array<Index, 3>& fn) {
  const int dim = basis.dim();
  std::array<std::pair<Index, Index>, 3> rng{{{0, 1}, {0, 1}, {0, 1}}};
  for (int d = 0; d < dim; ++d) rng[static_cast<std::size_t>(d)] = axis_support(basis, d, fn[static_cast<std::size_t>(d)]);

  auto all_interior = [&](const std::array<std::pair<Index, Index>, 3>& box) {
    std::array<Index, 3> el{0, 0, 0};
    bool ok = true;
    auto scan = [&](auto&& self, int d) -> void {
      if (!ok) return;
      if (d == dim) {
        ok &= classes[static_cast<std::size_t>(mesh.indexer.flat(el))] == ElementClass::interior;
        return;
      }
      for (el[static_cast<std::size_t>(d)] = box[static_cast<std::size_t>(d)].first;
           ok && el[static_cast<std::size_t>(d)] < box[static_cast<std::size_t>(d)].second; ++el[static_cast<std::size_t>(d)])
        self(self, d + 1);
    };
    scan(scan, 0);
    return ok;
  };
  auto box_count = [&](const std::array<std::pair<Index, Index>, 3>& box) {
    Index c = 1;
    for (int d = 0; d < dim; ++d)
      c *= box[static_cast<std::size_t>(d)].second - box[static_cast<std::size_t>(d)].first;
    return c;
  };

  // Candidate gammas per axis: element boundaries strictly inside the support
  // (at most p per direction), plus "none".
  std::array<std::vector<Index>, 3> candidates;
  for (int d = 0; d < dim; ++d) {
    candidates[static_cast<std::size_t>(d)].push_back(-1);
    for (Index b = rng[static_cast<std::size_t>(d)].first + 1; b < rng[static_cast<std::size_t>(d)].second; ++b)
      candidates[static_cast<std::size_t>(d)].push_back(b);
  }

  IndividualPlacement best;
  double best_center_dist = 0.0;
  int best_ngamma = 0;
  bool have = false;

  std::array<std::size_t, 3> pick{0, 0, 0};
  auto evaluate = [&]() {
    std::array<Index, 3> g{-1, -1, -1};
    for (int d = 0; d < dim; ++d)
      g[static_cast<std::size_t>(d)] = candidates[static_cast<std::size_t>(d)][pick[static_cast<std::size_t>(d)]];

    // Quadrants of the support split at the chosen boundaries.
    std::array<std::vector<std::pair<Index, Index>>, 3> parts;
    for (int d = 0; d < dim; ++d) {
      const auto [lo, hi] = rng[static_cast<std::size_t>(d)];
      if (g[static_cast<std::size_t>(d)] < 0)
        parts[static_cast<std::size_t>(d)] = {{lo, hi}};
      else
        parts[static_cast<std::size_t>(d)] = {{lo, g[static_cast<std::size_t>(d)]},
                                              {g[static_cast<std::size_t>(d)], hi}};
    }
    std::vector<std::array<std::pair<Index, Index>, 3>> retained;
    Index count = 0;
    std::array<std::size_t, 3> q{0, 0, 0};
    auto scan_quadrants = [&](auto&& self, int d) -> void {
      if (d == dim) {
        std::array<std::pair<Index, Index>, 3> box{{{0, 1}, {0, 1}, {0, 1}}};
        for (int e = 0; e < dim; ++e)
          box[static_cast<std::size_t>(e)] = parts[static_cast<std::size_t>(e)][q[static_cast<std::size_t>(e)]];
        if (all_interior(box)) {
          retained.push_back(box);
          count += box_count(box);
        }
        return;
      }
      for (q[static_cast<std::size_t>(d)] = 0; q[static_cast<std::size_t>(d)] < parts[static_cast<std::size_t>(d)].size();
           ++q[static_cast<std::size_t>(d)])
        self(self, d + 1);
    };
    scan_quadrants(scan_quadrants, 0);

    int ngamma = 0;
    double center_dist = 0.0;
    for (int d = 0; d < dim; ++d) {
      if (g[static_cast<std::size_t>(d)] < 0) continue;
      ++ngamma;
      const auto& bounds = mesh.bounds[static_cast<std::size_t>(d)];
      const double lo = bounds[static_cast<std::size_t>(rng[static_cast<std::size_t>(d)].first)];
      const double hi = bounds[static_cast<std::size_t>(rng[static_cast<std::size_t>(d)].second)];
      center_dist += std::abs(bounds[static_cast<std::size_t>(g[static_cast<std::size_t>(d)])] - 0.5 * (lo + hi));
    }

    const bool better =
        !have || count > best.wq_element_count ||
        (count == best.wq_element_count &&
         (ngamma < best_ngamma ||
          (ngamma == best_ngamma &&
           (center_dist < best_center_dist - 1e-15 ||
            (std::abs(center_dist - best_center_dist) <= 1e-15 &&
             std::lexicographical_compare(g.begin(), g.begin() + dim, best.gamma_boundary.begin(),
                                          best.gamma_boundary.begin() + dim))))));
    if (!better) return;
    best.gamma_boundary = g;
    best.regions = std::move(retained);
    best.wq_element_count = count;
    best_center_dist = center_dist;
    best_ngamma = ngamma;
    have = true;
  };
  auto enumerate = [&](auto&& self, int d) -> void {
    if (d == dim) {
      evaluate();
      return;
    }
    for (pick[static_cast<std::size_t>(d)] = 0; pick[static_cast<std::size_t>(d)] < candidates[static_cast<std::size_t>(d)].size();
         ++pick[static_cast<std::size_t>(d)])
      self(self, d + 1);
  };
  enumerate(enumerate, 0);

  // Interior support elements not covered by a retained quadrant.
  std::array<Index, 3> el{0, 0, 0};
  auto scan = [&](auto&& self, int d) -> void {
    if (d == dim) {
      const Index e = mesh.indexer.flat(el);
      if (classes[static_cast<std::size_t>(e)] != ElementClass::interior) return;
      for (const auto& box : best.regions) {
        bool in = true;
        for (int k = 0; k < dim; ++k)
          in &= el[static_cast<std::size_t>(k)] >= box[static_cast<std::size_t>(k)].first &&
                el[static_cast<std::size_t>(k)] < box[static_cast<std::size_t>(k)].second;
        if (in) return;
      }
      best.gauss_elements.push_back(e);
      return;
    }
    for (el[static_cast<std::size_t>(d)] = rng[static_cast<std::size_t>(d)].first;
         el[static_cast<std::size_t>(d)] < rng[static_cast<std::size_t>(d)].second; ++el[static_cast<std::size_t>(d)])
      self(self, d + 1);
  };
  scan(scan, 0);
  return best;
}

void dump_classification_json(std::ostream& os, const CartesianMesh& mesh, const BoxPartition& partition,
                              const FunctionClassification& fc) {
  nlohmann::json j;
  j["h_b"] = partition.h_b;
  j["shift"] = std::vector<int>(partition.shift.begin(), partition.shift.begin() + mesh.dim);
  j["boxes_per_axis"] =
      std::vector<Index>(partition.boxes_per_axis.begin(), partition.boxes_per_axis.begin() + mesh.dim);
  j["admissible"] = partition.admissible;
  j["gauss_element_count"] = partition.gauss_element_count;
  j["gamma_facets"] = nlohmann::json::array();
  for (const auto& f : partition.facets) {
    nlohmann::json jf;
    jf["axis"] = f.axis;
    jf["boundary"] = f.boundary;
    jf["lo"] = std::vector<Index>(f.lo.begin(), f.lo.begin() + mesh.dim);
    jf["hi"] = std::vector<Index>(f.hi.begin(), f.hi.begin() + mesh.dim);
    j["gamma_facets"].push_back(std::move(jf));
  }
  static const char* names[] = {"exterior", "interior", "cut", "gauss"};
  j["function_classes"] = nlohmann::json::array();
  for (auto c : fc.cls) j["function_classes"].push_back(names[static_cast<int>(c)]);
  const auto counts = fc.counts();
  j["counts"]["N_WQ"] = counts[1];
  j["counts"]["N_DWQ"] = counts[2];
  j["counts"]["exterior"] = counts[0];
  j["counts"]["gauss_functions"] = counts[3];
  os << j.dump(2) << "\n";
}

}  // namespace iwq
