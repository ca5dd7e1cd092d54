#pragma once

// Power complex construction by sequential halfspace clipping.
//
// Each cell starts as an axis-aligned box and is cut by the radical
// hyperplanes against every other site (O(n) cuts per cell, O(n^2) per
// diagram). Explicit vertex/facet geometry is produced for d = 2 (convex
// polygons) and d = 3 (convex polyhedra); any other d yields implicit
// cells that carry their halfspace lists only. An optional clip ball is
// kept as a separate constraint and consulted for adjacency, emptiness and
// power-vertex classification.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <utility>
#include <vector>

#include "hvd/error.hpp"
#include "hvd/power.hpp"
#include "hvd/scalar.hpp"
#include "hvd/vec.hpp"

namespace hvd {

template <class T>
struct Ball {
  Vec<T> center;
  T radius_sq{};
};

/// Negative labels name the sides of the initial bounding box.
template <class T>
struct LabeledHalfspace {
  int neighbor = -1;
  Halfspace<T> plane;
};

/// An edge (d = 2, two endpoints) or a polygonal face (d = 3, vertex loop
/// in cyclic order) of a cell, tagged with the neighbor that generates it.
template <class T>
struct Facet {
  int label = -1;
  std::vector<Vec<T>> vertices;
};

template <class T>
struct ConvexCell {
  std::size_t site_index = 0;
  std::vector<LabeledHalfspace<T>> halfspaces;
  std::vector<Vec<T>> vertices;  // d = 2: polygon loop in order
  std::vector<Facet<T>> facets;
  bool empty = false;
  bool touches_box = false;
};

template <class T>
struct PowerVertex {
  Vec<T> point;
  std::vector<std::size_t> sites;  // ascending
  bool inside_clip = true;
};

struct BuildOptions {
  bool explicit_geometry = true;
  double box_half_width = 0.0;  // 0: derive from the clip ball (or 1e6 when unclipped)
  double tolerance = 1e-12;     // float mode sign dead band, relative to the box size
  double vertex_tolerance = 1e-9;  // float mode relative tie tolerance for power vertices
};

template <class T>
struct PowerComplex {
  std::size_t dimension = 0;
  std::vector<WeightedSite<T>> sites;
  std::optional<Ball<T>> clip;
  bool explicit_geometry = false;
  T box_half_width{};
  std::vector<ConvexCell<T>> cells;
  std::vector<std::pair<std::size_t, std::size_t>> adjacency;  // i < j, sorted
  std::vector<PowerVertex<T>> power_vertices;

  bool adjacent(std::size_t i, std::size_t j) const {
    if (i > j) std::swap(i, j);
    return std::binary_search(adjacency.begin(), adjacency.end(), std::make_pair(i, j));
  }
};

namespace geom {

template <class T>
struct Tolerances {
  double sign_eps = 0.0;     // dead band for plane evaluations
  double length_eps = 0.0;   // minimum facet extent
  double vertex_rel = 0.0;   // relative tie tolerance for vertex incidence
};

template <class T>
bool same_point(const Vec<T>& a, const Vec<T>& b, double eps) {
  if constexpr (ScalarTraits<T>::exact) {
    return a == b;
  } else {
    for (std::size_t i = 0; i < a.size(); ++i)
      if (std::abs(a[i] - b[i]) > eps) return false;
    return true;
  }
}

/// Intersection of segment [a, b] with the plane, with endpoints ordered
/// canonically so both faces sharing an edge compute identical points.
template <class T>
Vec<T> intersect(const Vec<T>& a, const Vec<T>& b, const Halfspace<T>& h) {
  const bool swap = std::lexicographical_compare(b.begin(), b.end(), a.begin(), a.end());
  const Vec<T>& p = swap ? b : a;
  const Vec<T>& q = swap ? a : b;
  const T gp = h.evaluate(p);
  const T gq = h.evaluate(q);
  return lerp(p, q, T(gp / (gp - gq)));
}

template <class T>
void dedupe_cyclic(std::vector<Vec<T>>& loop, std::vector<int>* labels, double eps) {
  bool changed = true;
  while (changed && loop.size() > 1) {
    changed = false;
    for (std::size_t k = 0; k < loop.size(); ++k) {
      const std::size_t nxt = (k + 1) % loop.size();
      if (same_point(loop[k], loop[nxt], eps)) {
        if (labels) {
          (*labels)[k] = (*labels)[nxt];
          labels->erase(labels->begin() + static_cast<std::ptrdiff_t>(nxt));
        }
        loop.erase(loop.begin() + static_cast<std::ptrdiff_t>(nxt));
        changed = true;
        break;
      }
    }
  }
}

// ---- d = 2 ---------------------------------------------------------------

template <class T>
struct Polygon {
  std::vector<Vec<T>> v;
  std::vector<int> label;  // label[i] generates edge v[i] -> v[i+1]
  bool empty() const { return v.size() < 3; }
};

template <class T>
Polygon<T> box_polygon(const T& b) {
  Polygon<T> p;
  // Box side k (axis k / 2, lower side when k is even) carries label -1 - k.
  p.v = {{-b, -b}, {b, -b}, {b, b}, {-b, b}};
  p.label = {-3, -2, -4, -1};
  return p;
}

template <class T>
Polygon<T> clip(const Polygon<T>& poly, const Halfspace<T>& h, int label, double eps) {
  const std::size_t n = poly.v.size();
  std::vector<T> g(n);
  std::vector<int> s(n);
  bool any_out = false, any_in = false;
  for (std::size_t i = 0; i < n; ++i) {
    g[i] = h.evaluate(poly.v[i]);
    s[i] = ScalarTraits<T>::sign(g[i], eps);
    any_out |= s[i] > 0;
    any_in |= s[i] < 0;
  }
  if (!any_out) return poly;
  if (!any_in) return {};
  Polygon<T> out;
  auto push = [&](Vec<T> p, int l) {
    out.v.push_back(std::move(p));
    out.label.push_back(l);
  };
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t j = (i + 1) % n;
    const int e = poly.label[i];
    if (s[i] <= 0) {
      if (s[i] < 0 && s[j] > 0) {
        push(poly.v[i], e);
        push(intersect(poly.v[i], poly.v[j], h), label);
      } else if (s[i] == 0 && s[j] > 0) {
        push(poly.v[i], label);
      } else {
        push(poly.v[i], e);
      }
    } else if (s[j] < 0) {
      push(intersect(poly.v[i], poly.v[j], h), e);
    }
  }
  dedupe_cyclic(out.v, &out.label, eps);
  if (out.v.size() < 3) return {};
  return out;
}

// ---- d = 3 ---------------------------------------------------------------

template <class T>
struct Face {
  int label = -1;
  std::vector<Vec<T>> loop;
};

template <class T>
struct Polyhedron {
  std::vector<Face<T>> faces;
  bool empty() const { return faces.size() < 4; }
};

template <class T>
Vec<T> cross3(const Vec<T>& a, const Vec<T>& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

/// Twice the vector area of a planar loop.
template <class T>
Vec<T> area_vector(const std::vector<Vec<T>>& loop) {
  Vec<T> acc(3, T(0));
  for (std::size_t i = 1; i + 1 < loop.size(); ++i) {
    const Vec<T> c = cross3(sub(loop[i], loop[0]), sub(loop[i + 1], loop[0]));
    for (int k = 0; k < 3; ++k) acc[k] += c[k];
  }
  return acc;
}

template <class T>
Polyhedron<T> box_polyhedron(const T& b) {
  auto P = [&](int x, int y, int z) { return Vec<T>{T(x) * b, T(y) * b, T(z) * b}; };
  Polyhedron<T> p;
  p.faces = {
      {-1, {P(-1, -1, -1), P(-1, 1, -1), P(-1, 1, 1), P(-1, -1, 1)}},
      {-2, {P(1, -1, -1), P(1, -1, 1), P(1, 1, 1), P(1, 1, -1)}},
      {-3, {P(-1, -1, -1), P(-1, -1, 1), P(1, -1, 1), P(1, -1, -1)}},
      {-4, {P(-1, 1, -1), P(1, 1, -1), P(1, 1, 1), P(-1, 1, 1)}},
      {-5, {P(-1, -1, -1), P(1, -1, -1), P(1, 1, -1), P(-1, 1, -1)}},
      {-6, {P(-1, -1, 1), P(-1, 1, 1), P(1, 1, 1), P(1, -1, 1)}},
  };
  return p;
}

/// Orders coplanar points of a convex polygon cyclically around their
/// centroid (exact comparator for rationals).
template <class T>
void order_convex(std::vector<Vec<T>>& pts, const Vec<T>& normal) {
  std::size_t drop = 0;
  double best = -1.0;
  for (std::size_t k = 0; k < 3; ++k) {
    const double v = std::abs(ScalarTraits<T>::to_double(normal[k]));
    if (v > best) {
      best = v;
      drop = k;
    }
  }
  const std::size_t iu = drop == 0 ? 1 : 0;
  const std::size_t iv = drop == 2 ? 1 : 2;
  T cu = 0, cv = 0;
  for (const auto& p : pts) {
    cu += p[iu];
    cv += p[iv];
  }
  cu /= T(static_cast<long>(pts.size()));
  cv /= T(static_cast<long>(pts.size()));
  auto half = [&](const Vec<T>& p) {
    const T du = p[iu] - cu, dv = p[iv] - cv;
    return (dv > 0 || (dv == 0 && du > 0)) ? 0 : 1;
  };
  std::sort(pts.begin(), pts.end(), [&](const Vec<T>& a, const Vec<T>& b) {
    const int ha = half(a), hb = half(b);
    if (ha != hb) return ha < hb;
    const T cr = (a[iu] - cu) * (b[iv] - cv) - (a[iv] - cv) * (b[iu] - cu);
    return cr > 0;
  });
}

template <class T>
bool has_area(const std::vector<Vec<T>>& loop, double length_eps) {
  if (loop.size() < 3) return false;
  const T a2 = norm2(area_vector(loop));
  if constexpr (ScalarTraits<T>::exact) {
    return a2 > 0;
  } else {
    return a2 > length_eps * length_eps * length_eps * length_eps;
  }
}

template <class T>
Polyhedron<T> clip(const Polyhedron<T>& poly, const Halfspace<T>& h, int label, const Tolerances<T>& tol) {
  bool any_out = false, any_in = false;
  for (const auto& f : poly.faces)
    for (const auto& p : f.loop) {
      const int s = ScalarTraits<T>::sign(h.evaluate(p), tol.sign_eps);
      any_out |= s > 0;
      any_in |= s < 0;
    }
  if (!any_out) return poly;
  if (!any_in) return {};

  Polyhedron<T> out;
  std::vector<Vec<T>> cap;
  auto add_cap = [&](const Vec<T>& p) {
    for (const auto& c : cap)
      if (same_point(c, p, tol.sign_eps)) return;
    cap.push_back(p);
  };
  for (const auto& f : poly.faces) {
    const std::size_t n = f.loop.size();
    std::vector<T> g(n);
    std::vector<int> s(n);
    for (std::size_t i = 0; i < n; ++i) {
      g[i] = h.evaluate(f.loop[i]);
      s[i] = ScalarTraits<T>::sign(g[i], tol.sign_eps);
    }
    Face<T> nf{f.label, {}};
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t j = (i + 1) % n;
      if (s[i] <= 0) {
        nf.loop.push_back(f.loop[i]);
        if (s[i] == 0) add_cap(f.loop[i]);
      }
      if ((s[i] < 0 && s[j] > 0) || (s[i] > 0 && s[j] < 0)) {
        Vec<T> x = intersect(f.loop[i], f.loop[j], h);
        add_cap(x);
        nf.loop.push_back(std::move(x));
      }
    }
    dedupe_cyclic<T>(nf.loop, nullptr, tol.sign_eps);
    if (has_area(nf.loop, tol.length_eps)) out.faces.push_back(std::move(nf));
  }
  if (cap.size() >= 3) {
    order_convex(cap, h.normal);
    if (has_area(cap, tol.length_eps)) out.faces.push_back({label, std::move(cap)});
  }
  if (out.faces.size() < 4) return {};
  return out;
}

// ---- distances -----------------------------------------------------------

template <class T>
T point_segment_dist2(const Vec<T>& p, const Vec<T>& a, const Vec<T>& b) {
  const Vec<T> ab = sub(b, a);
  const T len2 = norm2(ab);
  if (len2 == 0) return dist2(p, a);
  T t = dot(sub(p, a), ab) / len2;
  if (t < 0) t = 0;
  if (t > 1) t = 1;
  return dist2(p, lerp(a, b, t));
}

template <class T>
T point_polygon3_dist2(const Vec<T>& p, const std::vector<Vec<T>>& loop) {
  const Vec<T> n = area_vector(loop);
  const T nn = norm2(n);
  T best = point_segment_dist2(p, loop.back(), loop.front());
  for (std::size_t i = 0; i + 1 < loop.size(); ++i) best = std::min(best, point_segment_dist2(p, loop[i], loop[i + 1]));
  if (nn == 0) return best;
  const T h = dot(sub(p, loop[0]), n);
  const Vec<T> proj = lerp(p, sub(p, n), T(h / nn));  // p - (h/nn) n
  int sgn = 0;
  for (std::size_t i = 0; i < loop.size(); ++i) {
    const Vec<T>& a = loop[i];
    const Vec<T>& b = loop[(i + 1) % loop.size()];
    const T side = dot(cross3(sub(b, a), sub(proj, a)), n);
    const int s = side > 0 ? 1 : (side < 0 ? -1 : 0);
    if (s == 0) continue;
    if (sgn == 0) sgn = s;
    if (s != sgn) return best;
  }
  return std::min(best, T(h * h / nn));
}

template <class T>
T facet_dist2(const Vec<T>& p, const Facet<T>& f) {
  if (f.vertices.size() == 2) return point_segment_dist2(p, f.vertices[0], f.vertices[1]);
  return point_polygon3_dist2(p, f.vertices);
}

template <class T>
bool facet_has_measure(const Facet<T>& f, double length_eps) {
  if (f.vertices.size() == 2) {
    const T l2 = dist2(f.vertices[0], f.vertices[1]);
    if constexpr (ScalarTraits<T>::exact) return l2 > 0;
    else return l2 > length_eps * length_eps;
  }
  return has_area(f.vertices, length_eps);
}

/// Strictly inside all planes of the cell.
template <class T>
bool strictly_inside(const ConvexCell<T>& cell, const Vec<T>& x, double eps) {
  for (const auto& lh : cell.halfspaces)
    if (ScalarTraits<T>::sign(lh.plane.evaluate(x), eps) >= 0) return false;
  return true;
}

template <class T>
bool inside_closed(const ConvexCell<T>& cell, const Vec<T>& x, double eps) {
  for (const auto& lh : cell.halfspaces)
    if (ScalarTraits<T>::sign(lh.plane.evaluate(x), eps) > 0) return false;
  return true;
}

template <class T>
T cell_dist2(const ConvexCell<T>& cell, const Vec<T>& x, double eps) {
  if (inside_closed(cell, x, eps)) return T(0);
  T best = facet_dist2(x, cell.facets.front());
  for (const auto& f : cell.facets) best = std::min(best, facet_dist2(x, f));
  return best;
}

/// Solves the d x d system of radical equations between sites[0] and
/// sites[1..d] (float mode refinement of a power vertex).
inline std::optional<Vec<double>> solve_power_vertex(const std::vector<WeightedSite<double>>& all,
                                                     const std::vector<std::size_t>& ids, std::size_t d) {
  if (ids.size() < d + 1) return std::nullopt;
  std::vector<std::vector<double>> m;
  const auto& s0 = all[ids[0]];
  for (std::size_t k = 1; k < ids.size() && m.size() < d; ++k) {
    const auto h = radical_hyperplane(s0, all[ids[k]]);
    std::vector<double> row(h.normal);
    row.push_back(-h.offset);
    m.push_back(std::move(row));
  }
  // Gaussian elimination with partial pivoting; fails on near-singular systems.
  for (std::size_t c = 0; c < d; ++c) {
    std::size_t piv = c;
    for (std::size_t r = c + 1; r < d; ++r)
      if (std::abs(m[r][c]) > std::abs(m[piv][c])) piv = r;
    if (std::abs(m[piv][c]) < 1e-9) return std::nullopt;
    std::swap(m[piv], m[c]);
    for (std::size_t r = 0; r < d; ++r) {
      if (r == c) continue;
      const double f = m[r][c] / m[c][c];
      for (std::size_t k = c; k <= d; ++k) m[r][k] -= f * m[c][k];
    }
  }
  Vec<double> x(d);
  for (std::size_t c = 0; c < d; ++c) x[c] = m[c][d] / m[c][c];
  return x;
}

}  // namespace geom

/// Tie set of the power minimization at x: exact for rationals, relative
/// tolerance for floats.
template <class T>
std::vector<std::size_t> power_tie_set(const std::vector<WeightedSite<T>>& sites, const Vec<T>& x, double rel_tol) {
  std::vector<T> values(sites.size());
  T best = power_distance(sites[0], x);
  for (std::size_t i = 0; i < sites.size(); ++i) {
    values[i] = power_distance(sites[i], x);
    if (values[i] < best) best = values[i];
  }
  double eps = 0.0;
  if constexpr (!ScalarTraits<T>::exact) eps = rel_tol * std::max(1.0, std::abs(best));
  std::vector<std::size_t> ties;
  for (std::size_t i = 0; i < sites.size(); ++i)
    if (ScalarTraits<T>::sign(values[i] - best, eps) == 0) ties.push_back(i);
  return ties;
}

template <class T>
PowerComplex<T> build_complex(const std::vector<WeightedSite<T>>& sites, const std::optional<Ball<T>>& clip_ball,
                              const BuildOptions& options = {}) {
  if (sites.empty()) fail(ErrorCode::EmptySites, "build_complex needs at least one site");
  const std::size_t d = sites[0].center.size();
  for (const auto& s : sites) require_same_arity(s.center.size(), d, "site dimension");
  if (clip_ball) require_same_arity(clip_ball->center.size(), d, "clip ball dimension");
  if (options.explicit_geometry && d != 2 && d != 3)
    fail(ErrorCode::DimensionUnsupported,
         "explicit cell geometry is available for d = 2 and d = 3 only (got d = " + std::to_string(d) + ")");
  for (std::size_t i = 0; i < sites.size(); ++i)
    for (std::size_t j = i + 1; j < sites.size(); ++j)
      if (sites[i].center == sites[j].center && sites[i].weight == sites[j].weight)
        fail(ErrorCode::DuplicateSites, "sites " + std::to_string(i) + " and " + std::to_string(j) + " coincide");

  PowerComplex<T> cx;
  cx.dimension = d;
  cx.sites = sites;
  cx.clip = clip_ball;
  cx.explicit_geometry = options.explicit_geometry;

  double box = options.box_half_width;
  if (box <= 0.0) {
    if (clip_ball) {
      double reach = std::sqrt(std::max(0.0, ScalarTraits<T>::to_double(clip_ball->radius_sq)));
      for (const auto& c : clip_ball->center) reach += std::abs(ScalarTraits<T>::to_double(c));
      box = std::ceil(reach) + 1.0;
    } else {
      box = 1e6;
    }
  }
  cx.box_half_width = ScalarTraits<T>::from_double(box);

  geom::Tolerances<T> tol;
  if constexpr (!ScalarTraits<T>::exact) {
    tol.sign_eps = options.tolerance * std::max(1.0, box);
    tol.length_eps = 1e-9 * std::max(1.0, box);
    tol.vertex_rel = options.vertex_tolerance;
  }

  const std::size_t n = sites.size();
  cx.cells.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    ConvexCell<T>& cell = cx.cells[i];
    cell.site_index = i;
    std::vector<LabeledHalfspace<T>> cuts;
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i) continue;
      Halfspace<T> h = radical_hyperplane(sites[i], sites[j]);
      if (h.is_constant()) {
        // Equal centers: the site with smaller weight loses everywhere.
        if (h.offset > 0) cell.empty = true;
        continue;
      }
      cuts.push_back({static_cast<int>(j), std::move(h)});
    }
    if (!options.explicit_geometry) {
      cell.halfspaces = std::move(cuts);
      continue;
    }
    if (cell.empty) continue;

    const T b = cx.box_half_width;
    std::map<int, Halfspace<T>> planes;
    for (std::size_t k = 0; k < 2 * d; ++k) {
      // box side k: axis k/2, sign (k odd: +, even: -) ; labels -1 - k
      Halfspace<T> hb;
      hb.normal.assign(d, T(0));
      hb.normal[k / 2] = (k % 2 == 0) ? T(-1) : T(1);
      hb.offset = -b;
      planes[-1 - static_cast<int>(k)] = hb;
    }
    for (const auto& c : cuts) planes[c.neighbor] = c.plane;

    if (d == 2) {
      geom::Polygon<T> poly = geom::box_polygon(b);
      for (const auto& c : cuts) {
        poly = geom::clip(poly, c.plane, c.neighbor, tol.sign_eps);
        if (poly.empty()) break;
      }
      if (poly.empty()) {
        cell.empty = true;
        continue;
      }
      cell.vertices = poly.v;
      for (std::size_t k = 0; k < poly.v.size(); ++k)
        cell.facets.push_back({poly.label[k], {poly.v[k], poly.v[(k + 1) % poly.v.size()]}});
    } else {
      geom::Polyhedron<T> poly = geom::box_polyhedron(b);
      for (const auto& c : cuts) {
        poly = geom::clip(poly, c.plane, c.neighbor, tol);
        if (poly.empty()) break;
      }
      if (poly.empty()) {
        cell.empty = true;
        continue;
      }
      for (auto& f : poly.faces) {
        for (const auto& p : f.loop) {
          bool seen = false;
          for (const auto& v : cell.vertices) seen = seen || geom::same_point(v, p, tol.sign_eps);
          if (!seen) cell.vertices.push_back(p);
        }
        cell.facets.push_back({f.label, std::move(f.loop)});
      }
    }

    std::set<int> used;
    for (const auto& f : cell.facets) used.insert(f.label);
    for (int l : used) {
      if (l < 0) cell.touches_box = true;
      cell.halfspaces.push_back({l, planes.at(l)});
    }
    // Neighbors first (ascending), then box sides.
    std::sort(cell.halfspaces.begin(), cell.halfspaces.end(), [](const auto& x, const auto& y) {
      auto key = [](int l) { return std::make_pair(l < 0, l < 0 ? -l : l); };
      return key(x.neighbor) < key(y.neighbor);
    });

    // Interior: the vertex centroid of a full-dimensional polytope is interior.
    Vec<T> centroid(d, T(0));
    for (const auto& v : cell.vertices)
      for (std::size_t k = 0; k < d; ++k) centroid[k] += v[k];
    for (auto& c : centroid) c /= T(static_cast<long>(cell.vertices.size()));
    if (!geom::strictly_inside(cell, centroid, tol.sign_eps)) cell.empty = true;

    if (!cell.empty && clip_ball) {
      const T dd = geom::cell_dist2(cell, clip_ball->center, tol.sign_eps);
      if (ScalarTraits<T>::sign(dd - clip_ball->radius_sq, tol.sign_eps) >= 0) cell.empty = true;
    }
  }

  if (!options.explicit_geometry) return cx;

  // Adjacency: facets of positive measure that reach into the open clip ball.
  std::set<std::pair<std::size_t, std::size_t>> adj;
  for (const auto& cell : cx.cells) {
    if (cell.empty) continue;
    for (const auto& f : cell.facets) {
      if (f.label < 0) continue;
      const auto j = static_cast<std::size_t>(f.label);
      if (cx.cells[j].empty) continue;
      if (!geom::facet_has_measure(f, tol.length_eps)) continue;
      if (clip_ball && ScalarTraits<T>::sign(geom::facet_dist2(clip_ball->center, f) - clip_ball->radius_sq,
                                             tol.sign_eps) >= 0)
        continue;
      adj.insert({std::min(cell.site_index, j), std::max(cell.site_index, j)});
    }
  }
  cx.adjacency.assign(adj.begin(), adj.end());

  // Power vertices, merged by incident-site set.
  std::map<std::vector<std::size_t>, std::pair<Vec<T>, std::size_t>> merged;
  for (const auto& cell : cx.cells) {
    if (cell.empty) continue;
    for (const auto& v : cell.vertices) {
      auto ties = power_tie_set(sites, v, tol.vertex_rel);
      if (ties.size() < d + 1) continue;
      auto [it, inserted] = merged.try_emplace(ties, v, std::size_t{1});
      if (!inserted) {
        if constexpr (!ScalarTraits<T>::exact) {
          for (std::size_t k = 0; k < d; ++k) it->second.first[k] += v[k];
          ++it->second.second;
        }
      }
    }
  }
  for (auto& [ids, acc] : merged) {
    PowerVertex<T> pv;
    pv.sites = ids;
    pv.point = acc.first;
    if constexpr (!ScalarTraits<T>::exact) {
      for (auto& c : pv.point) c /= static_cast<double>(acc.second);
      if (auto refined = geom::solve_power_vertex(sites, ids, d)) {
        if (dist2(*refined, pv.point) < 1e-12) pv.point = *refined;
      }
    }
    if (clip_ball)
      pv.inside_clip =
          ScalarTraits<T>::sign(dist2(pv.point, clip_ball->center) - clip_ball->radius_sq, tol.sign_eps) < 0;
    cx.power_vertices.push_back(std::move(pv));
  }
  return cx;
}

}  // namespace hvd
