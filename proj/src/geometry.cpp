// Copyright the cubeslice authors. Licensed under the Apache 2.0 license. See LICENSE in the project root.

#include "cubeslice/geometry.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numeric>
#include <unordered_set>

#include "cubeslice/errors.hpp"

namespace cubeslice {

namespace {

bool all_finite(std::span<const double> values) {
  return std::all_of(values.begin(), values.end(),
                     [](double v) { return std::isfinite(v); });
}

// Largest coordinate magnitude; used to scale tolerances.
double coord_scale(std::span<const double> coords) {
  double s = 1.0;
  for (double v : coords) s = std::max(s, std::abs(v));
  return s;
}

bool lex_less(std::span<const double> a, std::span<const double> b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

// ---------------------------------------------------------------------------
// Linear-feasibility test: is point p a convex combination of the points in
// `others`? Phase-1 simplex on  sum(l_i * (q_i - p)) = 0, sum(l_i) = 1,
// l >= 0, with Bland's rule. Coordinates are pre-scaled for conditioning.

bool in_convex_hull_lp(std::span<const double> coords, std::size_t dim,
                       std::size_t candidate, const std::vector<std::size_t>& others,
                       double scale) {
  const std::size_t m = dim + 1;          // equality constraints
  const std::size_t n = others.size();    // one multiplier per other vertex
  if (n == 0) return false;

  const double* p = coords.data() + candidate * dim;
  const std::size_t cols = n + m;         // structural + artificial
  std::vector<double> tab(m * (cols + 1), 0.0);
  auto at = [&](std::size_t r, std::size_t c) -> double& { return tab[r * (cols + 1) + c]; };

  for (std::size_t j = 0; j < n; ++j) {
    const double* q = coords.data() + others[j] * dim;
    for (std::size_t r = 0; r < dim; ++r) at(r, j) = (q[r] - p[r]) / scale;
    at(dim, j) = 1.0;
  }
  // rhs: zeros for the coordinate rows, 1 for the convexity row
  at(dim, cols) = 1.0;

  std::vector<std::size_t> basis(m);
  for (std::size_t r = 0; r < m; ++r) {
    at(r, n + r) = 1.0;
    basis[r] = n + r;
  }

  // Phase-1 objective row: sum of the constraint rows (artificials basic).
  std::vector<double> obj(cols + 1, 0.0);
  for (std::size_t r = 0; r < m; ++r)
    for (std::size_t c = 0; c <= cols; ++c) obj[c] += at(r, c);
  for (std::size_t r = 0; r < m; ++r) obj[n + r] = 0.0;

  const double tol = 1e-10;
  const std::size_t max_iters = 64 * (cols + 1);
  for (std::size_t iter = 0; iter < max_iters; ++iter) {
    // Bland: lowest-index column with positive reduced cost.
    std::size_t enter = cols;
    for (std::size_t c = 0; c < cols; ++c) {
      if (obj[c] > tol) { enter = c; break; }
    }
    if (enter == cols) break;

    std::size_t leave = m;
    double best_ratio = std::numeric_limits<double>::infinity();
    for (std::size_t r = 0; r < m; ++r) {
      double a = at(r, enter);
      if (a > tol) {
        double ratio = at(r, cols) / a;
        if (ratio < best_ratio - tol ||
            (ratio < best_ratio + tol && (leave == m || basis[r] < basis[leave]))) {
          best_ratio = ratio;
          leave = r;
        }
      }
    }
    if (leave == m) break;  // unbounded: cannot happen for phase 1, bail out

    double pivot = at(leave, enter);
    for (std::size_t c = 0; c <= cols; ++c) at(leave, c) /= pivot;
    for (std::size_t r = 0; r < m; ++r) {
      if (r == leave) continue;
      double f = at(r, enter);
      if (f == 0.0) continue;
      for (std::size_t c = 0; c <= cols; ++c) at(r, c) -= f * at(leave, c);
    }
    double fo = obj[enter];
    if (fo != 0.0)
      for (std::size_t c = 0; c <= cols; ++c) obj[c] -= fo * at(leave, c);
    basis[leave] = enter;
  }

  double infeasibility = 0.0;
  for (std::size_t r = 0; r < m; ++r)
    if (basis[r] >= n) infeasibility += at(r, cols);
  return infeasibility <= 1e-8;
}

// Drops every candidate expressible as a convex combination of the other
// points in `universe`. Extreme-ness of one point does not depend on which
// redundant points remain, so each test runs against the full universe.
std::vector<std::size_t> lp_extreme_filter(std::span<const double> coords, std::size_t dim,
                                           const std::vector<std::size_t>& candidates,
                                           const std::vector<std::size_t>& universe) {
  double scale = coord_scale(coords);
  std::vector<std::size_t> kept;
  std::vector<std::size_t> others;
  others.reserve(universe.size());
  for (std::size_t c : candidates) {
    others.clear();
    for (std::size_t u : universe)
      if (u != c) others.push_back(u);
    if (!in_convex_hull_lp(coords, dim, c, others, scale)) kept.push_back(c);
  }
  return kept;
}

// ---------------------------------------------------------------------------
// QuickHull, 2D. Works on indices into the flat coordinate array.

struct Hull2Ctx {
  std::span<const double> coords;
  std::size_t dim;  // stride; the two hull coordinates are at offsets 0 and 1
  double tol;
  std::vector<std::size_t> out;

  double x(std::size_t i) const { return coords[i * dim]; }
  double y(std::size_t i) const { return coords[i * dim + 1]; }
  // >0 when c lies left of the directed line a->b (twice the triangle area).
  double cross(std::size_t a, std::size_t b, std::size_t c) const {
    return (x(b) - x(a)) * (y(c) - y(a)) - (y(b) - y(a)) * (x(c) - x(a));
  }
};

void hull2_side(Hull2Ctx& ctx, std::size_t a, std::size_t b,
                const std::vector<std::size_t>& pts) {
  std::size_t far = pts.size();
  double best = ctx.tol;
  for (std::size_t k = 0; k < pts.size(); ++k) {
    double d = ctx.cross(a, b, pts[k]);
    if (d > best || (far != pts.size() && d == best &&
                     lex_less(ctx.coords.subspan(pts[far] * ctx.dim, ctx.dim),
                              ctx.coords.subspan(pts[k] * ctx.dim, ctx.dim)))) {
      best = d;
      far = k;
    }
  }
  if (far == pts.size()) return;  // no point strictly outside edge a->b
  std::size_t c = pts[far];
  std::vector<std::size_t> left_ac, left_cb;
  for (std::size_t p : pts) {
    if (p == c) continue;
    if (ctx.cross(a, c, p) > ctx.tol) left_ac.push_back(p);
    else if (ctx.cross(c, b, p) > ctx.tol) left_cb.push_back(p);
  }
  hull2_side(ctx, a, c, left_ac);
  ctx.out.push_back(c);
  hull2_side(ctx, c, b, left_cb);
}

std::vector<std::size_t> quickhull_2d(std::span<const double> coords, std::size_t dim,
                                      const std::vector<std::size_t>& idx) {
  Hull2Ctx ctx{coords, dim, 0.0, {}};
  double scale = coord_scale(coords);
  ctx.tol = 1e-12 * scale * scale;

  std::size_t lo = idx[0], hi = idx[0];
  for (std::size_t i : idx) {
    if (lex_less(coords.subspan(i * dim, dim), coords.subspan(lo * dim, dim))) lo = i;
    if (lex_less(coords.subspan(hi * dim, dim), coords.subspan(i * dim, dim))) hi = i;
  }
  if (lo == hi) return {lo};  // all points coincide

  std::vector<std::size_t> left, right;
  for (std::size_t i : idx) {
    if (i == lo || i == hi) continue;
    double d = ctx.cross(lo, hi, i);
    if (d > ctx.tol) left.push_back(i);
    else if (d < -ctx.tol) right.push_back(i);
  }
  ctx.out.push_back(lo);
  hull2_side(ctx, lo, hi, left);
  ctx.out.push_back(hi);
  hull2_side(ctx, hi, lo, right);
  return ctx.out;
}

// ---------------------------------------------------------------------------
// QuickHull, 3D. Faces carry outside-point conflict sets; visibility is
// resolved by signed plane distance and new faces are oriented against a
// fixed interior point. Degenerate inputs (collinear, coplanar) fall back
// to the lower-dimensional routines.

struct Face3 {
  std::array<std::size_t, 3> v;
  std::array<double, 3> normal;
  double offset;
  std::vector<std::size_t> outside;
  bool alive = true;
};

struct Hull3Ctx {
  std::span<const double> coords;
  std::size_t dim;
  double tol;
  std::array<double, 3> interior;

  std::array<double, 3> pt(std::size_t i) const {
    return {coords[i * dim], coords[i * dim + 1], coords[i * dim + 2]};
  }
};

std::array<double, 3> sub3(const std::array<double, 3>& a, const std::array<double, 3>& b) {
  return {a[0] - b[0], a[1] - b[1], a[2] - b[2]};
}
std::array<double, 3> cross3(const std::array<double, 3>& a, const std::array<double, 3>& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}
double dot3(const std::array<double, 3>& a, const std::array<double, 3>& b) {
  return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}
double norm3(const std::array<double, 3>& a) { return std::sqrt(dot3(a, a)); }

bool make_face(Hull3Ctx& ctx, std::size_t a, std::size_t b, std::size_t c, Face3& f) {
  auto pa = ctx.pt(a), pb = ctx.pt(b), pc = ctx.pt(c);
  auto n = cross3(sub3(pb, pa), sub3(pc, pa));
  double len = norm3(n);
  if (len <= 0.0) return false;
  for (double& x : n) x /= len;
  double off = dot3(n, pa);
  // Orient away from the interior reference point.
  if (dot3(n, ctx.interior) - off > 0.0) {
    std::swap(b, c);
    for (double& x : n) x = -x;
    off = -off;
  }
  f.v = {a, b, c};
  f.normal = n;
  f.offset = off;
  f.alive = true;
  return true;
}

double face_dist(const Hull3Ctx& ctx, const Face3& f, std::size_t i) {
  return dot3(f.normal, ctx.pt(i)) - f.offset;
}

// Farthest point from the line a->b; exact distance ties break to the
// lexicographically largest point so the winner is always extreme.
std::size_t farthest_from_line(const Hull3Ctx& ctx, std::size_t a, std::size_t b,
                               const std::vector<std::size_t>& idx, double& dist) {
  auto pa = ctx.pt(a);
  auto u = sub3(ctx.pt(b), pa);
  double ulen2 = dot3(u, u);
  std::size_t best = idx[0];
  dist = -1.0;
  for (std::size_t i : idx) {
    auto w = sub3(ctx.pt(i), pa);
    auto c = cross3(u, w);
    double d2 = dot3(c, c) / ulen2;
    if (d2 > dist ||
        (d2 == dist && lex_less(ctx.coords.subspan(best * ctx.dim, ctx.dim),
                                ctx.coords.subspan(i * ctx.dim, ctx.dim)))) {
      dist = d2;
      best = i;
    }
  }
  dist = std::sqrt(std::max(dist, 0.0));
  return best;
}

std::size_t farthest_from_plane(const Hull3Ctx& ctx, const Face3& f,
                                const std::vector<std::size_t>& idx, double& dist) {
  std::size_t best = idx[0];
  dist = -1.0;
  for (std::size_t i : idx) {
    double d = std::abs(face_dist(ctx, f, i));
    if (d > dist ||
        (d == dist && lex_less(ctx.coords.subspan(best * ctx.dim, ctx.dim),
                               ctx.coords.subspan(i * ctx.dim, ctx.dim)))) {
      dist = d;
      best = i;
    }
  }
  return best;
}

// Hull of points that all lie in one plane: build an in-plane 2D basis and
// delegate to the 2D routine.
std::vector<std::size_t> coplanar_hull(const Hull3Ctx& ctx, std::size_t a, std::size_t b,
                                       std::size_t c, const std::vector<std::size_t>& idx) {
  auto pa = ctx.pt(a);
  auto e1 = sub3(ctx.pt(b), pa);
  double l1 = norm3(e1);
  for (double& x : e1) x /= l1;
  auto n = cross3(e1, sub3(ctx.pt(c), pa));
  auto e2 = cross3(n, e1);
  double l2 = norm3(e2);
  for (double& x : e2) x /= l2;

  std::vector<double> plane(idx.size() * 2);
  for (std::size_t k = 0; k < idx.size(); ++k) {
    auto w = sub3(ctx.pt(idx[k]), pa);
    plane[2 * k] = dot3(w, e1);
    plane[2 * k + 1] = dot3(w, e2);
  }
  std::vector<std::size_t> local(idx.size());
  std::iota(local.begin(), local.end(), std::size_t{0});
  auto hull = quickhull_2d(plane, 2, local);
  std::vector<std::size_t> out;
  out.reserve(hull.size());
  for (std::size_t k : hull) out.push_back(idx[k]);
  return out;
}

std::vector<std::size_t> quickhull_3d(std::span<const double> coords, std::size_t dim,
                                      const std::vector<std::size_t>& idx) {
  Hull3Ctx ctx{coords, dim, 0.0, {}};
  double scale = coord_scale(coords);
  ctx.tol = 1e-10 * scale;

  std::size_t lo = idx[0], hi = idx[0];
  for (std::size_t i : idx) {
    if (lex_less(coords.subspan(i * dim, dim), coords.subspan(lo * dim, dim))) lo = i;
    if (lex_less(coords.subspan(hi * dim, dim), coords.subspan(i * dim, dim))) hi = i;
  }
  if (lo == hi) return {lo};

  double line_dist = 0.0;
  std::size_t apex = farthest_from_line(ctx, lo, hi, idx, line_dist);
  if (line_dist <= ctx.tol) {  // collinear: extreme points are the two ends
    return {lo, hi};
  }

  ctx.interior = {0, 0, 0};  // placeholder; not used until faces exist
  Face3 base;
  make_face(ctx, lo, hi, apex, base);
  double plane_dist = 0.0;
  std::size_t top = farthest_from_plane(ctx, base, idx, plane_dist);
  if (plane_dist <= ctx.tol) return coplanar_hull(ctx, lo, hi, apex, idx);

  auto p0 = ctx.pt(lo), p1 = ctx.pt(hi), p2 = ctx.pt(apex), p3 = ctx.pt(top);
  for (int k = 0; k < 3; ++k) ctx.interior[k] = (p0[k] + p1[k] + p2[k] + p3[k]) / 4.0;

  std::vector<Face3> faces(4);
  make_face(ctx, lo, hi, apex, faces[0]);
  make_face(ctx, lo, hi, top, faces[1]);
  make_face(ctx, lo, apex, top, faces[2]);
  make_face(ctx, hi, apex, top, faces[3]);

  for (std::size_t i : idx) {
    if (i == lo || i == hi || i == apex || i == top) continue;
    for (auto& f : faces) {
      if (face_dist(ctx, f, i) > ctx.tol) {
        f.outside.push_back(i);
        break;
      }
    }
  }

  for (std::size_t round = 0; round < idx.size() + 4; ++round) {
    std::size_t fi = faces.size();
    for (std::size_t k = 0; k < faces.size(); ++k) {
      if (faces[k].alive && !faces[k].outside.empty()) { fi = k; break; }
    }
    if (fi == faces.size()) break;

    double dist = 0.0;
    std::size_t far = farthest_from_plane(ctx, faces[fi], faces[fi].outside, dist);

    std::vector<std::size_t> visible;
    std::vector<std::size_t> orphans;
    for (std::size_t k = 0; k < faces.size(); ++k) {
      if (!faces[k].alive) continue;
      if (face_dist(ctx, faces[k], far) > ctx.tol) {
        visible.push_back(k);
        faces[k].alive = false;
        for (std::size_t o : faces[k].outside)
          if (o != far) orphans.push_back(o);
        faces[k].outside.clear();
      }
    }

    // Horizon: undirected edges used exactly once among the visible faces.
    std::vector<std::pair<std::size_t, std::size_t>> edges;
    for (std::size_t k : visible) {
      const auto& v = faces[k].v;
      for (int e = 0; e < 3; ++e) {
        std::size_t a = v[e], b = v[(e + 1) % 3];
        auto rev = std::find(edges.begin(), edges.end(), std::make_pair(b, a));
        if (rev != edges.end()) edges.erase(rev);
        else edges.emplace_back(a, b);
      }
    }

    std::vector<std::size_t> fresh;
    for (auto [a, b] : edges) {
      Face3 nf;
      if (!make_face(ctx, a, b, far, nf)) continue;  // degenerate sliver
      fresh.push_back(faces.size());
      faces.push_back(std::move(nf));
    }
    for (std::size_t o : orphans) {
      for (std::size_t k : fresh) {
        if (face_dist(ctx, faces[k], o) > ctx.tol) {
          faces[k].outside.push_back(o);
          break;
        }
      }
    }
  }

  std::vector<std::size_t> out;
  for (const auto& f : faces) {
    if (!f.alive) continue;
    for (std::size_t v : f.v) out.push_back(v);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  // QuickHull can leave a tie-vertex sitting inside a merged facet; a final
  // feasibility pass guarantees the output is extreme-only.
  return lp_extreme_filter(coords, dim, out, out);
}

}  // namespace

// ---------------------------------------------------------------------------

Polytope::Polytope(std::vector<std::string> axes, std::vector<double> coords)
    : axes_(std::move(axes)), coords_(std::move(coords)) {
  if (axes_.empty()) throw ValidationError("polytope needs at least one axis");
  for (std::size_t i = 0; i < axes_.size(); ++i)
    for (std::size_t j = i + 1; j < axes_.size(); ++j)
      if (axes_[i] == axes_[j])
        throw ValidationError("duplicate axis '" + axes_[i] + "' in polytope");
  if (coords_.empty() || coords_.size() % axes_.size() != 0)
    throw ValidationError("polytope coordinate count must be a non-zero multiple of its axis count");
  if (!all_finite(coords_))
    throw ValidationError("polytope coordinates must be finite");
}

Polytope Polytope::from_vertices(std::vector<std::string> axes,
                                 const std::vector<std::vector<double>>& vertices) {
  std::vector<double> flat;
  flat.reserve(vertices.size() * axes.size());
  for (const auto& v : vertices) {
    if (v.size() != axes.size())
      throw ValidationError("polytope vertex has " + std::to_string(v.size()) +
                            " coordinates, expected " + std::to_string(axes.size()));
    flat.insert(flat.end(), v.begin(), v.end());
  }
  return Polytope(std::move(axes), std::move(flat));
}

bool Polytope::has_axis(std::string_view name) const {
  return std::find(axes_.begin(), axes_.end(), name) != axes_.end();
}

std::size_t Polytope::axis_pos(std::string_view name) const {
  auto it = std::find(axes_.begin(), axes_.end(), name);
  if (it == axes_.end())
    throw ValidationError("axis '" + std::string(name) + "' is not in the polytope");
  return static_cast<std::size_t>(it - axes_.begin());
}

Polytope dedup_vertices(const Polytope& p, double eps) {
  if (!(eps > 0.0)) throw ValidationError("dedup tolerance must be positive");
  const std::size_t d = p.dim();
  std::vector<double> kept;
  kept.reserve(p.coords().size());
  for (std::size_t i = 0; i < p.vertex_count(); ++i) {
    auto v = p.vertex(i);
    bool dup = false;
    for (std::size_t k = 0; k < kept.size() / d && !dup; ++k) {
      bool close = true;
      for (std::size_t c = 0; c < d; ++c) {
        if (std::abs(kept[k * d + c] - v[c]) > eps) { close = false; break; }
      }
      dup = close;
    }
    if (!dup) kept.insert(kept.end(), v.begin(), v.end());
  }
  return Polytope(p.axes(), std::move(kept));
}

Extent extents(const Polytope& p, std::string_view axis_name) {
  const std::size_t pos = p.axis_pos(axis_name);
  double lo = p.coord(0, pos), hi = lo;
  for (std::size_t i = 1; i < p.vertex_count(); ++i) {
    double v = p.coord(i, pos);
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  return {lo, hi};
}

std::optional<Polytope> slice_polytope(const Polytope& p, std::string_view axis_name,
                                       double value, double eps, const HullConfig& hull) {
  if (!(eps > 0.0)) throw ValidationError("slice tolerance must be positive");
  if (p.dim() < 2)
    throw ValidationError("cannot slice a one-axis polytope; resolve it by index lookup");
  const std::size_t pos = p.axis_pos(axis_name);
  const std::size_t d = p.dim();

  std::vector<std::size_t> below, above, on;
  for (std::size_t i = 0; i < p.vertex_count(); ++i) {
    double c = p.coord(i, pos);
    if (std::abs(c - value) <= eps) on.push_back(i);
    else if (c < value) below.push_back(i);
    else above.push_back(i);
  }
  if (on.empty() && (below.empty() || above.empty())) return std::nullopt;

  std::vector<double> pts;  // intersection points with the sliced axis dropped
  pts.reserve((on.size() + below.size() * above.size()) * (d - 1));
  auto push_point = [&](std::span<const double> full, double t, std::span<const double> other) {
    for (std::size_t c = 0; c < d; ++c) {
      if (c == pos) continue;
      pts.push_back(t == 0.0 ? full[c] : full[c] + t * (other[c] - full[c]));
    }
  };
  for (std::size_t i : on) push_point(p.vertex(i), 0.0, {});
  for (std::size_t b : below) {
    auto vb = p.vertex(b);
    for (std::size_t a : above) {
      auto va = p.vertex(a);
      double t = (value - vb[pos]) / (va[pos] - vb[pos]);
      push_point(vb, t, va);
    }
  }

  std::vector<std::string> rest;
  rest.reserve(d - 1);
  for (std::size_t c = 0; c < d; ++c)
    if (c != pos) rest.push_back(p.axes()[c]);

  Polytope raw(std::move(rest), std::move(pts));
  Polytope unique = dedup_vertices(raw, eps);
  auto keep = convex_hull_indices(unique.coords(), unique.dim(), hull);
  std::vector<double> reduced;
  reduced.reserve(keep.size() * unique.dim());
  for (std::size_t i : keep) {
    auto v = unique.vertex(i);
    reduced.insert(reduced.end(), v.begin(), v.end());
  }
  return Polytope(unique.axes(), std::move(reduced));
}

std::vector<std::size_t> convex_hull_indices(std::span<const double> coords, std::size_t dim,
                                             const HullConfig& hull) {
  if (dim == 0) throw ValidationError("convex hull dimension must be positive");
  if (coords.empty() || coords.size() % dim != 0)
    throw ValidationError("convex hull input must be a non-empty multiple of dim");
  const std::size_t n = coords.size() / dim;

  // Exact-duplicate removal, keeping first occurrences.
  std::vector<std::size_t> unique;
  unique.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    bool dup = false;
    for (std::size_t u : unique) {
      if (std::equal(coords.begin() + i * dim, coords.begin() + (i + 1) * dim,
                     coords.begin() + u * dim)) {
        dup = true;
        break;
      }
    }
    if (!dup) unique.push_back(i);
  }

  std::vector<std::size_t> out;
  if (unique.size() <= 2) {
    out = unique;
  } else if (dim == 1) {
    std::size_t lo = unique[0], hi = unique[0];
    for (std::size_t i : unique) {
      if (coords[i] < coords[lo]) lo = i;
      if (coords[i] > coords[hi]) hi = i;
    }
    out = {lo, hi};
  } else if (dim == 2) {
    out = quickhull_2d(coords, dim, unique);
  } else if (dim == 3) {
    out = quickhull_3d(coords, dim, unique);
  } else if (dim <= hull.lp_dim_cutoff) {
    out = lp_extreme_filter(coords, dim, unique, unique);
  } else {
    out = unique;  // beyond the cutoff, only dedup
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<std::vector<double>> convex_hull(const std::vector<std::vector<double>>& vertices,
                                             std::size_t dim, const HullConfig& hull) {
  std::vector<double> flat;
  flat.reserve(vertices.size() * dim);
  for (const auto& v : vertices) {
    if (v.size() != dim)
      throw ValidationError("convex hull vertex has " + std::to_string(v.size()) +
                            " coordinates, expected " + std::to_string(dim));
    flat.insert(flat.end(), v.begin(), v.end());
  }
  auto keep = convex_hull_indices(flat, dim, hull);
  std::vector<std::vector<double>> out;
  out.reserve(keep.size());
  for (std::size_t i : keep) out.push_back(vertices[i]);
  return out;
}

}  // namespace cubeslice
