// Copyright the cubeslice authors. Licensed under the Apache 2.0 license. See LICENSE in the project root.

#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace cubeslice {

// Closed numeric interval [low, high].
struct Extent {
  double low = 0.0;
  double high = 0.0;
};

// Settings for convex-hull vertex reduction. QuickHull handles dimensions
// 2 and 3. From dimension 4 up to lp_dim_cutoff, interior vertices are
// removed with a per-vertex linear-feasibility test; above the cutoff only
// duplicate removal is applied.
struct HullConfig {
  std::size_t lp_dim_cutoff = 8;
};

/// A convex polytope over a named subset of datacube axes, stored as its
/// vertex set. Vertices are kept vertex-major in one flat coordinate array;
/// the polytope is the convex hull of that set, so interior vertices are
/// legal (if redundant).
class Polytope {
 public:
  // coords holds vertex_count * axes.size() values, vertex-major.
  Polytope(std::vector<std::string> axes, std::vector<double> coords);

  static Polytope from_vertices(std::vector<std::string> axes,
                                const std::vector<std::vector<double>>& vertices);

  std::size_t dim() const { return axes_.size(); }
  std::size_t vertex_count() const { return coords_.size() / axes_.size(); }
  std::span<const double> vertex(std::size_t i) const {
    return {coords_.data() + i * dim(), dim()};
  }
  double coord(std::size_t vertex, std::size_t axis) const {
    return coords_[vertex * dim() + axis];
  }
  const std::vector<std::string>& axes() const { return axes_; }
  const std::vector<double>& coords() const { return coords_; }

  bool has_axis(std::string_view name) const;
  // Position of an axis within this polytope; throws ValidationError if absent.
  std::size_t axis_pos(std::string_view name) const;

 private:
  std::vector<std::string> axes_;
  std::vector<double> coords_;
};

// Removes vertices that lie within eps of an earlier vertex in every
// coordinate. Order of the surviving vertices is preserved.
Polytope dedup_vertices(const Polytope& p, double eps);

// Minimum and maximum vertex coordinate along the named axis.
Extent extents(const Polytope& p, std::string_view axis_name);

/// Intersects the polytope with the hyperplane {axis_name = value}.
///
/// Vertices within eps of the plane are taken as intersection points as-is;
/// every (below, above) vertex pair contributes its linear interpolant on
/// the plane. The result lives on the remaining axes and is reduced to its
/// hull vertices. Returns nothing when the plane misses the polytope.
std::optional<Polytope> slice_polytope(const Polytope& p, std::string_view axis_name,
                                       double value, double eps,
                                       const HullConfig& hull = {});

// Indices (into the flat coords array, ascending) of the vertices that are
// extreme points of the set. dim 1 reduces to min/max; exact duplicates keep
// their first occurrence. Degenerate (collinear/coplanar) sets return their
// extreme points without error.
std::vector<std::size_t> convex_hull_indices(std::span<const double> coords,
                                             std::size_t dim,
                                             const HullConfig& hull = {});

// Same reduction over a vertex list; every vertex must have dim coordinates.
std::vector<std::vector<double>> convex_hull(const std::vector<std::vector<double>>& vertices,
                                             std::size_t dim, const HullConfig& hull = {});

}  // namespace cubeslice
