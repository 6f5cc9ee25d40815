// Copyright the cubeslice authors. Licensed under the Apache 2.0 license. See LICENSE in the project root.

#include "cubeslice/shapes.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <set>
#include <sstream>

#include <json.hpp>

#include "cubeslice/axes.hpp"
#include "cubeslice/errors.hpp"

namespace cubeslice {

namespace {

using nlohmann::json;
using Ring = std::vector<std::array<double, 2>>;

double ring_scale(const Ring& ring) {
  double s = 1.0;
  for (const auto& p : ring) s = std::max({s, std::abs(p[0]), std::abs(p[1])});
  return s;
}

double cross2(const std::array<double, 2>& o, const std::array<double, 2>& a,
              const std::array<double, 2>& b) {
  return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
}

// Twice the signed ring area (positive for counter-clockwise rings).
double ring_area2(const Ring& ring) {
  double a = 0.0;
  for (std::size_t i = 0; i < ring.size(); ++i) {
    const auto& p = ring[i];
    const auto& q = ring[(i + 1) % ring.size()];
    a += p[0] * q[1] - q[0] * p[1];
  }
  return a;
}

bool on_segment(const std::array<double, 2>& p, const std::array<double, 2>& q,
                const std::array<double, 2>& r) {
  return std::min(p[0], r[0]) <= q[0] && q[0] <= std::max(p[0], r[0]) &&
         std::min(p[1], r[1]) <= q[1] && q[1] <= std::max(p[1], r[1]);
}

// Whether segments ab and cd share any point.
bool segments_touch(const std::array<double, 2>& a, const std::array<double, 2>& b,
                    const std::array<double, 2>& c, const std::array<double, 2>& d,
                    double tol) {
  double d1 = cross2(a, b, c), d2 = cross2(a, b, d);
  double d3 = cross2(c, d, a), d4 = cross2(c, d, b);
  if (((d1 > tol && d2 < -tol) || (d1 < -tol && d2 > tol)) &&
      ((d3 > tol && d4 < -tol) || (d3 < -tol && d4 > tol)))
    return true;
  if (std::abs(d1) <= tol && on_segment(a, c, b)) return true;
  if (std::abs(d2) <= tol && on_segment(a, d, b)) return true;
  if (std::abs(d3) <= tol && on_segment(c, a, d)) return true;
  if (std::abs(d4) <= tol && on_segment(c, b, d)) return true;
  return false;
}

void check_simple_ring(const Ring& ring) {
  const std::size_t n = ring.size();
  double s = ring_scale(ring);
  double tol = 1e-12 * s * s;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      // Skip edges sharing a vertex.
      if (j == i + 1 || (i == 0 && j == n - 1)) continue;
      if (segments_touch(ring[i], ring[(i + 1) % n], ring[j], ring[(j + 1) % n], tol))
        throw ValidationError("polygon is self-intersecting (edges " + std::to_string(i) +
                              " and " + std::to_string(j) + " touch)");
    }
  }
}

// Strictly inside the triangle (boundary points do not count).
bool strictly_inside_triangle(const std::array<double, 2>& a, const std::array<double, 2>& b,
                              const std::array<double, 2>& c, const std::array<double, 2>& p,
                              double tol) {
  return cross2(a, b, p) > tol && cross2(b, c, p) > tol && cross2(c, a, p) > tol;
}

// Ear-clipping triangulation of a simple, counter-clockwise ring. Collinear
// corners are clipped without emitting a triangle.
std::vector<std::array<std::array<double, 2>, 3>> ear_clip(Ring ring) {
  double s = ring_scale(ring);
  double tol = 1e-12 * s * s;
  std::vector<std::array<std::array<double, 2>, 3>> triangles;

  std::vector<std::size_t> order(ring.size());
  for (std::size_t i = 0; i < ring.size(); ++i) order[i] = i;

  while (order.size() > 3) {
    bool clipped = false;
    for (std::size_t k = 0; k < order.size(); ++k) {
      const auto& prev = ring[order[(k + order.size() - 1) % order.size()]];
      const auto& cur = ring[order[k]];
      const auto& next = ring[order[(k + 1) % order.size()]];
      double turn = cross2(prev, cur, next);
      if (turn < -tol) continue;  // reflex corner
      if (turn <= tol) {          // collinear corner: drop silently
        order.erase(order.begin() + static_cast<std::ptrdiff_t>(k));
        clipped = true;
        break;
      }
      bool blocked = false;
      for (std::size_t m : order) {
        const auto& p = ring[m];
        if (&p == &prev || &p == &cur || &p == &next) continue;
        if (strictly_inside_triangle(prev, cur, next, p, tol)) {
          blocked = true;
          break;
        }
      }
      if (blocked) continue;
      triangles.push_back({prev, cur, next});
      order.erase(order.begin() + static_cast<std::ptrdiff_t>(k));
      clipped = true;
      break;
    }
    if (!clipped)
      throw ValidationError("polygon triangulation failed; is the ring simple?");
  }
  if (order.size() == 3) {
    const auto& a = ring[order[0]];
    const auto& b = ring[order[1]];
    const auto& c = ring[order[2]];
    if (std::abs(cross2(a, b, c)) > tol) triangles.push_back({a, b, c});
  }
  return triangles;
}

Polytope reduce_polytope(Polytope p, const DecomposeConfig& config) {
  Polytope unique = dedup_vertices(std::move(p), config.eps);
  auto keep = convex_hull_indices(unique.coords(), unique.dim(), config.hull);
  if (keep.size() == unique.vertex_count()) return unique;
  std::vector<double> coords;
  coords.reserve(keep.size() * unique.dim());
  for (std::size_t i : keep) {
    auto v = unique.vertex(i);
    coords.insert(coords.end(), v.begin(), v.end());
  }
  return Polytope(unique.axes(), std::move(coords));
}

ConvexPiece polytope_piece(Polytope p) {
  ConvexPiece piece;
  piece.polytope = std::move(p);
  return piece;
}

std::vector<ConvexPiece> decompose_box(const BoxShape& box, const DecomposeConfig& config) {
  const std::size_t d = box.axes.size();
  if (d == 0) throw ValidationError("box constrains no axes");
  if (box.lower.size() != d || box.upper.size() != d)
    throw ValidationError("box bounds must match its axis count");
  if (d > 20) throw ValidationError("box dimension is too high to enumerate corners");
  for (std::size_t k = 0; k < d; ++k)
    if (!(box.lower[k] <= box.upper[k]))
      throw ValidationError("box lower bound exceeds upper bound on axis '" + box.axes[k] + "'");

  const std::size_t corners = std::size_t{1} << d;
  std::vector<double> coords;
  coords.reserve(corners * d);
  for (std::size_t mask = 0; mask < corners; ++mask)
    for (std::size_t k = 0; k < d; ++k)
      coords.push_back((mask >> k) & 1 ? box.upper[k] : box.lower[k]);
  return {polytope_piece(dedup_vertices(Polytope(box.axes, std::move(coords)), config.eps))};
}

std::vector<ConvexPiece> decompose_polygon(const PolygonShape& poly,
                                           const DecomposeConfig& config) {
  Ring ring;
  for (const auto& p : poly.points) {
    if (!ring.empty() && p == ring.back()) continue;  // drop repeated points
    ring.push_back(p);
  }
  if (ring.size() > 1 && ring.front() == ring.back()) ring.pop_back();
  if (ring.size() < 3)
    throw ValidationError("polygon needs at least 3 distinct points");

  double area2 = ring_area2(ring);
  double s = ring_scale(ring);
  if (std::abs(area2) <= 1e-12 * s * s)
    throw ValidationError("polygon has zero area");
  if (area2 < 0) std::reverse(ring.begin(), ring.end());
  check_simple_ring(ring);

  std::vector<std::string> axes{poly.axes[0], poly.axes[1]};

  bool convex = true;
  double tol = 1e-12 * s * s;
  for (std::size_t i = 0; i < ring.size() && convex; ++i) {
    const auto& a = ring[i];
    const auto& b = ring[(i + 1) % ring.size()];
    const auto& c = ring[(i + 2) % ring.size()];
    if (cross2(a, b, c) < -tol) convex = false;
  }
  if (convex) {
    std::vector<double> coords;
    for (const auto& p : ring) {
      coords.push_back(p[0]);
      coords.push_back(p[1]);
    }
    return {polytope_piece(reduce_polytope(Polytope(axes, std::move(coords)), config))};
  }

  std::vector<ConvexPiece> pieces;
  for (const auto& tri : ear_clip(std::move(ring))) {
    std::vector<double> coords{tri[0][0], tri[0][1], tri[1][0], tri[1][1], tri[2][0], tri[2][1]};
    pieces.push_back(polytope_piece(Polytope(axes, std::move(coords))));
  }
  return pieces;
}

std::vector<ConvexPiece> decompose_path(const PathShape& path, const DecomposeConfig& config) {
  if (path.base.size() != 1) throw ValidationError("path needs exactly one base shape");
  if (path.waypoints.size() < 2) throw ValidationError("path needs at least 2 waypoints");

  auto base_pieces = decompose(path.base.front(), config);
  if (base_pieces.empty()) throw ValidationError("path base decomposes to nothing");
  for (const auto& piece : base_pieces)
    if (!piece.polytope || !piece.selections.empty() || !piece.all_axes.empty())
      throw ValidationError("path base must decompose to pure polytopes");

  const auto& base_axes = base_pieces.front().polytope->axes();
  std::vector<std::string> way_axes =
      path.waypoint_axes.empty() ? base_axes : path.waypoint_axes;

  // Base axes must coincide with the waypoint axes or be disjoint from them.
  std::vector<std::string> full_axes = base_axes;
  bool disjoint = true, equal = true;
  for (const auto& a : base_axes)
    if (std::find(way_axes.begin(), way_axes.end(), a) == way_axes.end()) equal = false;
  for (const auto& a : way_axes) {
    if (std::find(base_axes.begin(), base_axes.end(), a) == base_axes.end())
      full_axes.push_back(a);
    else
      disjoint = false;
  }
  if (way_axes.size() != base_axes.size()) equal = false;
  if (!equal && !disjoint)
    throw ValidationError("path base axes must equal the waypoint axes or be disjoint from them");

  for (const auto& w : path.waypoints)
    if (w.size() != way_axes.size())
      throw ValidationError("path waypoint has " + std::to_string(w.size()) +
                            " coordinates, expected " + std::to_string(way_axes.size()));

  const std::size_t full_dim = full_axes.size();
  auto way_pos = [&](const std::string& axis) {
    return static_cast<std::size_t>(
        std::find(way_axes.begin(), way_axes.end(), axis) - way_axes.begin());
  };
  std::vector<std::size_t> base_slot(base_axes.size()), way_slot(full_dim, full_dim);
  for (std::size_t k = 0; k < base_axes.size(); ++k) base_slot[k] = k;
  for (std::size_t k = 0; k < full_dim; ++k) {
    auto it = std::find(way_axes.begin(), way_axes.end(), full_axes[k]);
    if (it != way_axes.end()) way_slot[k] = way_pos(full_axes[k]);
  }

  std::vector<ConvexPiece> capsules;
  for (std::size_t seg = 0; seg + 1 < path.waypoints.size(); ++seg) {
    for (const auto& piece : base_pieces) {
      const Polytope& base = *piece.polytope;
      std::vector<double> coords;
      coords.reserve(base.vertex_count() * 2 * full_dim);
      for (int end = 0; end < 2; ++end) {
        const auto& w = path.waypoints[seg + end];
        for (std::size_t i = 0; i < base.vertex_count(); ++i) {
          auto v = base.vertex(i);
          for (std::size_t k = 0; k < full_dim; ++k) {
            double c = k < base_axes.size() ? v[base_slot[k]] : 0.0;
            if (way_slot[k] != full_dim) c += w[way_slot[k]];
            coords.push_back(c);
          }
        }
      }
      capsules.push_back(
          polytope_piece(reduce_polytope(Polytope(full_axes, std::move(coords)), config)));
    }
  }
  return capsules;
}

std::vector<ConvexPiece> decompose_union(const UnionShape& u, const DecomposeConfig& config) {
  if (u.members.empty()) throw ValidationError("union has no member shapes");
  std::set<std::string> first_axes;
  std::vector<ConvexPiece> pieces;
  for (std::size_t k = 0; k < u.members.size(); ++k) {
    auto axes = u.members[k].constrained_axes();
    std::set<std::string> axis_set(axes.begin(), axes.end());
    if (k == 0) first_axes = axis_set;
    else if (axis_set != first_axes)
      throw ValidationError("union member " + std::to_string(k) +
                            " constrains a different axis set");
    for (auto& piece : decompose(u.members[k], config)) pieces.push_back(std::move(piece));
  }
  return pieces;
}

// --- JSON request parsing ---------------------------------------------------

double num_or_timestamp(const json& v, const std::string& field) {
  if (v.is_number()) return v.get<double>();
  if (v.is_string()) {
    if (auto ts = try_parse_rfc3339(v.get<std::string>())) return *ts;
    throw ValidationError(field + ": '" + v.get<std::string>() +
                          "' is neither a number nor an RFC 3339 timestamp");
  }
  throw ValidationError(field + ": expected a number or timestamp string");
}

std::vector<double> coord_array(const json& v, const std::string& field) {
  if (!v.is_array() || v.empty())
    throw ValidationError(field + ": expected a non-empty array of coordinates");
  std::vector<double> out;
  for (std::size_t i = 0; i < v.size(); ++i)
    out.push_back(num_or_timestamp(v[i], field + "[" + std::to_string(i) + "]"));
  return out;
}

std::vector<std::string> string_array(const json& v, const std::string& field) {
  if (!v.is_array() || v.empty())
    throw ValidationError(field + ": expected a non-empty array of strings");
  std::vector<std::string> out;
  for (const auto& s : v) {
    if (!s.is_string()) throw ValidationError(field + ": entries must be strings");
    out.push_back(s.get<std::string>());
  }
  return out;
}

const json& require(const json& j, const std::string& key, const std::string& field) {
  if (!j.contains(key)) throw ValidationError(field + ": missing required field '" + key + "'");
  return j[key];
}

ShapeRequest shape_from_json(const json& j, const std::string& field);

std::array<std::string, 2> two_axes(const json& j, const std::string& field) {
  auto axes = string_array(j, field);
  if (axes.size() != 2) throw ValidationError(field + ": expected exactly 2 axis names");
  return {axes[0], axes[1]};
}

ShapeRequest shape_from_json(const json& j, const std::string& field) {
  if (!j.is_object()) throw ValidationError(field + ": shape must be an object");
  std::string type = require(j, "type", field).is_string()
                         ? j["type"].get<std::string>()
                         : throw ValidationError(field + ".type: must be a string");

  if (type == "box") {
    BoxShape s;
    s.axes = string_array(require(j, "axes", field + ".box"), field + ".box.axes");
    s.lower = coord_array(require(j, "lower", field + ".box"), field + ".box.lower");
    s.upper = coord_array(require(j, "upper", field + ".box"), field + ".box.upper");
    return {std::move(s)};
  }
  if (type == "disk") {
    DiskShape s;
    s.axes = two_axes(require(j, "axes", field + ".disk"), field + ".disk.axes");
    auto center = coord_array(require(j, "center", field + ".disk"), field + ".disk.center");
    auto radius = coord_array(require(j, "radius", field + ".disk"), field + ".disk.radius");
    if (center.size() != 2 || radius.size() != 2)
      throw ValidationError(field + ".disk: center and radius need 2 entries");
    s.center = {center[0], center[1]};
    s.radius = {radius[0], radius[1]};
    if (j.contains("segments")) {
      if (!j["segments"].is_number_unsigned())
        throw ValidationError(field + ".disk.segments: must be a non-negative integer");
      s.segments = j["segments"].get<std::size_t>();
    }
    return {std::move(s)};
  }
  if (type == "polygon") {
    PolygonShape s;
    s.axes = two_axes(require(j, "axes", field + ".polygon"), field + ".polygon.axes");
    const json& pts = require(j, "points", field + ".polygon");
    if (!pts.is_array()) throw ValidationError(field + ".polygon.points: expected an array");
    for (std::size_t i = 0; i < pts.size(); ++i) {
      auto p = coord_array(pts[i], field + ".polygon.points[" + std::to_string(i) + "]");
      if (p.size() != 2)
        throw ValidationError(field + ".polygon.points[" + std::to_string(i) +
                              "]: expected 2 coordinates");
      s.points.push_back({p[0], p[1]});
    }
    return {std::move(s)};
  }
  if (type == "span") {
    SpanShape s;
    const json& axis = require(j, "axis", field + ".span");
    if (!axis.is_string()) throw ValidationError(field + ".span.axis: must be a string");
    s.axis = axis.get<std::string>();
    s.lower = num_or_timestamp(require(j, "lower", field + ".span"), field + ".span.lower");
    s.upper = num_or_timestamp(require(j, "upper", field + ".span"), field + ".span.upper");
    return {std::move(s)};
  }
  if (type == "select") {
    SelectShape s;
    const json& axis = require(j, "axis", field + ".select");
    if (!axis.is_string()) throw ValidationError(field + ".select.axis: must be a string");
    s.axis = axis.get<std::string>();
    s.values = string_array(require(j, "values", field + ".select"), field + ".select.values");
    return {std::move(s)};
  }
  if (type == "point") {
    PointShape s;
    s.axes = string_array(require(j, "axes", field + ".point"), field + ".point.axes");
    s.coords = coord_array(require(j, "coords", field + ".point"), field + ".point.coords");
    return {std::move(s)};
  }
  if (type == "all") {
    AllShape s;
    const json& axis = require(j, "axis", field + ".all");
    if (!axis.is_string()) throw ValidationError(field + ".all.axis: must be a string");
    s.axis = axis.get<std::string>();
    return {std::move(s)};
  }
  if (type == "polytope") {
    PolytopeShape s;
    s.axes = string_array(require(j, "axes", field + ".polytope"), field + ".polytope.axes");
    const json& verts = require(j, "vertices", field + ".polytope");
    if (!verts.is_array() || verts.empty())
      throw ValidationError(field + ".polytope.vertices: expected a non-empty array");
    for (std::size_t i = 0; i < verts.size(); ++i)
      s.vertices.push_back(
          coord_array(verts[i], field + ".polytope.vertices[" + std::to_string(i) + "]"));
    return {std::move(s)};
  }
  if (type == "union") {
    UnionShape s;
    const json& members = require(j, "shapes", field + ".union");
    if (!members.is_array() || members.empty())
      throw ValidationError(field + ".union.shapes: expected a non-empty array");
    for (std::size_t i = 0; i < members.size(); ++i)
      s.members.push_back(
          shape_from_json(members[i], field + ".union.shapes[" + std::to_string(i) + "]"));
    return {std::move(s)};
  }
  if (type == "path") {
    PathShape s;
    s.base.push_back(shape_from_json(require(j, "base", field + ".path"), field + ".path.base"));
    const json& ways = require(j, "waypoints", field + ".path");
    if (!ways.is_array())
      throw ValidationError(field + ".path.waypoints: expected an array of coordinate tuples");
    for (std::size_t i = 0; i < ways.size(); ++i)
      s.waypoints.push_back(
          coord_array(ways[i], field + ".path.waypoints[" + std::to_string(i) + "]"));
    if (j.contains("axes"))
      s.waypoint_axes = string_array(j["axes"], field + ".path.axes");
    return {std::move(s)};
  }
  throw ValidationError(field + ".type: unknown shape type '" + type + "'");
}

}  // namespace

std::vector<std::string> ShapeRequest::constrained_axes() const {
  return std::visit(
      [](const auto& s) -> std::vector<std::string> {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, BoxShape> || std::is_same_v<T, PointShape> ||
                      std::is_same_v<T, PolytopeShape>) {
          return s.axes;
        } else if constexpr (std::is_same_v<T, DiskShape> || std::is_same_v<T, PolygonShape>) {
          return {s.axes[0], s.axes[1]};
        } else if constexpr (std::is_same_v<T, SpanShape> || std::is_same_v<T, SelectShape> ||
                             std::is_same_v<T, AllShape>) {
          return {s.axis};
        } else if constexpr (std::is_same_v<T, UnionShape>) {
          if (s.members.empty()) throw ValidationError("union has no member shapes");
          return s.members.front().constrained_axes();
        } else {
          // PathShape: base axes plus any waypoint-only axes.
          if (s.base.size() != 1) throw ValidationError("path needs exactly one base shape");
          auto axes = s.base.front().constrained_axes();
          for (const auto& a : s.waypoint_axes)
            if (std::find(axes.begin(), axes.end(), a) == axes.end()) axes.push_back(a);
          return axes;
        }
      },
      v_);
}

std::vector<ConvexPiece> decompose(const ShapeRequest& req, const DecomposeConfig& config) {
  return std::visit(
      [&](const auto& s) -> std::vector<ConvexPiece> {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, BoxShape>) {
          return decompose_box(s, config);
        } else if constexpr (std::is_same_v<T, DiskShape>) {
          std::size_t segments = s.segments ? s.segments : config.default_disk_segments;
          return decompose(make_disk(s.axes, s.center, s.radius, segments), config);
        } else if constexpr (std::is_same_v<T, PolygonShape>) {
          return decompose_polygon(s, config);
        } else if constexpr (std::is_same_v<T, SpanShape>) {
          if (!(s.lower <= s.upper))
            throw ValidationError("span on axis '" + s.axis + "' has lower > upper");
          return {polytope_piece(dedup_vertices(
              Polytope({s.axis}, {s.lower, s.upper}), config.eps))};
        } else if constexpr (std::is_same_v<T, SelectShape>) {
          if (s.values.empty())
            throw ValidationError("select on axis '" + s.axis + "' lists no values");
          ConvexPiece piece;
          piece.selections[s.axis] = s.values;
          return {std::move(piece)};
        } else if constexpr (std::is_same_v<T, PointShape>) {
          if (s.coords.size() != s.axes.size())
            throw ValidationError("point has " + std::to_string(s.coords.size()) +
                                  " coordinates for " + std::to_string(s.axes.size()) + " axes");
          return {polytope_piece(Polytope(s.axes, s.coords))};
        } else if constexpr (std::is_same_v<T, AllShape>) {
          ConvexPiece piece;
          piece.all_axes.push_back(s.axis);
          return {std::move(piece)};
        } else if constexpr (std::is_same_v<T, PolytopeShape>) {
          return {polytope_piece(
              reduce_polytope(Polytope::from_vertices(s.axes, s.vertices), config))};
        } else if constexpr (std::is_same_v<T, UnionShape>) {
          return decompose_union(s, config);
        } else {
          return decompose_path(s, config);
        }
      },
      req.value());
}

RequestPlan plan_request(const std::vector<ShapeRequest>& request,
                         const DecomposeConfig& config) {
  RequestPlan plan;
  std::set<std::string> seen;
  for (std::size_t k = 0; k < request.size(); ++k) {
    PieceGroup group;
    group.axes = request[k].constrained_axes();
    for (const auto& axis : group.axes)
      if (!seen.insert(axis).second)
        throw ValidationError("axis '" + axis + "' is constrained by more than one shape");
    group.pieces = decompose(request[k], config);
    plan.groups.push_back(std::move(group));
  }
  return plan;
}

ShapeRequest make_disk(const std::array<std::string, 2>& axes,
                       const std::array<double, 2>& center,
                       const std::array<double, 2>& radius, std::size_t segments) {
  if (segments < 3) throw ValidationError("disk needs at least 3 segments");
  if (!(radius[0] > 0.0) || !(radius[1] > 0.0))
    throw ValidationError("disk radius must be positive");
  PolygonShape poly;
  poly.axes = axes;
  poly.points.reserve(segments);
  for (std::size_t k = 0; k < segments; ++k) {
    double theta = 2.0 * std::numbers::pi * static_cast<double>(k) /
                   static_cast<double>(segments);
    poly.points.push_back(
        {center[0] + radius[0] * std::cos(theta), center[1] + radius[1] * std::sin(theta)});
  }
  return {std::move(poly)};
}

ShapeRequest make_path(ShapeRequest base, std::vector<std::vector<double>> waypoints,
                       std::vector<std::string> waypoint_axes) {
  PathShape s;
  s.base.push_back(std::move(base));
  s.waypoints = std::move(waypoints);
  s.waypoint_axes = std::move(waypoint_axes);
  if (s.waypoints.size() < 2) throw ValidationError("path needs at least 2 waypoints");
  return {std::move(s)};
}

std::vector<ShapeRequest> make_timeseries(const std::vector<std::string>& spatial_axes,
                                          const std::vector<double>& location,
                                          const std::string& time_axis, double t0, double t1) {
  if (!(t0 <= t1)) throw ValidationError("timeseries start exceeds its end");
  PointShape point{spatial_axes, location};
  SpanShape span{time_axis, t0, t1};
  return {ShapeRequest{std::move(point)}, ShapeRequest{std::move(span)}};
}

std::vector<ShapeRequest> make_vertical_profile(const std::vector<std::string>& spatial_axes,
                                                const std::vector<double>& location,
                                                const std::string& level_axis, double l0,
                                                double l1) {
  if (!(l0 <= l1)) throw ValidationError("profile lower level exceeds its upper level");
  PointShape point{spatial_axes, location};
  SpanShape span{level_axis, l0, l1};
  return {ShapeRequest{std::move(point)}, ShapeRequest{std::move(span)}};
}

std::vector<ShapeRequest> parse_request(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw ValidationError("request: malformed JSON: " + std::string(e.what()));
  }
  if (!j.is_object() || !j.contains("request") || !j["request"].is_array())
    throw ValidationError("request: document must be {\"request\": [ ... ]}");
  std::vector<ShapeRequest> shapes;
  const json& arr = j["request"];
  for (std::size_t i = 0; i < arr.size(); ++i)
    shapes.push_back(shape_from_json(arr[i], "request[" + std::to_string(i) + "]"));
  return shapes;
}

std::vector<ShapeRequest> parse_request_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open request file: " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_request(buf.str());
}

}  // namespace cubeslice
