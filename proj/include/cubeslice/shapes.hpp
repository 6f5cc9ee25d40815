// Copyright the cubeslice authors. Licensed under the Apache 2.0 license. See LICENSE in the project root.

#pragma once

#include <array>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "cubeslice/geometry.hpp"

namespace cubeslice {

class ShapeRequest;

// Axis-aligned box spanning [lower_k, upper_k] on each of its axes.
struct BoxShape {
  std::vector<std::string> axes;
  std::vector<double> lower, upper;
};

// Axis-aligned ellipse approximated by an inscribed polygon.
struct DiskShape {
  std::array<std::string, 2> axes;
  std::array<double, 2> center, radius;
  std::size_t segments = 0;  // 0: use the configured default
};

// Simple (non-self-intersecting) polygon ring, possibly concave.
struct PolygonShape {
  std::array<std::string, 2> axes;
  std::vector<std::array<double, 2>> points;
};

// Closed range on one ordered axis.
struct SpanShape {
  std::string axis;
  double lower = 0, upper = 0;
};

// Specific index selection on one categorical axis.
struct SelectShape {
  std::string axis;
  std::vector<std::string> values;
};

// Exact location on one or more ordered axes.
struct PointShape {
  std::vector<std::string> axes;
  std::vector<double> coords;
};

// Every index of one axis.
struct AllShape {
  std::string axis;
};

// Low-level vertex polytope.
struct PolytopeShape {
  std::vector<std::string> axes;
  std::vector<std::vector<double>> vertices;
};

// Set union of shapes constraining identical axis sets.
struct UnionShape {
  std::vector<ShapeRequest> members;
};

// Base shape swept along a sequence of waypoints; each consecutive waypoint
// pair contributes the convex hull of the base placed at both ends.
// waypoint_axes may extend the base axes; when empty, the waypoints are over
// the base's own axes.
struct PathShape {
  std::vector<ShapeRequest> base;  // exactly one element
  std::vector<std::vector<double>> waypoints;
  std::vector<std::string> waypoint_axes;
};

/// One user request shape. A full extraction request is a list of these,
/// each constraining a disjoint set of datacube axes.
class ShapeRequest {
 public:
  using Variant = std::variant<BoxShape, DiskShape, PolygonShape, SpanShape, SelectShape,
                               PointShape, AllShape, PolytopeShape, UnionShape, PathShape>;

  ShapeRequest(Variant v) : v_(std::move(v)) {}  // NOLINT: implicit by design

  const Variant& value() const { return v_; }
  // Axes this shape constrains, in declaration order.
  std::vector<std::string> constrained_axes() const;

 private:
  Variant v_;
};

struct DecomposeConfig {
  std::size_t default_disk_segments = 32;
  double eps = 1e-12;
  HullConfig hull{};
};

// One convex building block of a request: a polytope over ordered axes, or
// categorical index selections, or whole-axis markers. Selections never
// enter polytope coordinates.
struct ConvexPiece {
  std::optional<Polytope> polytope;
  std::map<std::string, std::vector<std::string>> selections;
  std::vector<std::string> all_axes;
};

// Breaks a shape into convex pieces covering exactly the requested region
// (up to the disk inscription tolerance).
std::vector<ConvexPiece> decompose(const ShapeRequest& req, const DecomposeConfig& config = {});

// Pieces of one top-level shape, all constraining the same axis set.
struct PieceGroup {
  std::vector<std::string> axes;
  std::vector<ConvexPiece> pieces;
};

// Decomposed form of a full request; every constrained axis belongs to
// exactly one group.
struct RequestPlan {
  std::vector<PieceGroup> groups;
};

RequestPlan plan_request(const std::vector<ShapeRequest>& request,
                         const DecomposeConfig& config = {});

// Inscribed-polygon approximation of an axis-aligned ellipse; vertex k sits
// at angle 2*pi*k/segments.
ShapeRequest make_disk(const std::array<std::string, 2>& axes,
                       const std::array<double, 2>& center,
                       const std::array<double, 2>& radius, std::size_t segments);

ShapeRequest make_path(ShapeRequest base, std::vector<std::vector<double>> waypoints,
                       std::vector<std::string> waypoint_axes = {});

// Point location on the spatial axes plus a closed span on the time axis.
std::vector<ShapeRequest> make_timeseries(const std::vector<std::string>& spatial_axes,
                                          const std::vector<double>& location,
                                          const std::string& time_axis, double t0, double t1);

// Point location plus a closed span on the level axis.
std::vector<ShapeRequest> make_vertical_profile(const std::vector<std::string>& spatial_axes,
                                                const std::vector<double>& location,
                                                const std::string& level_axis, double l0,
                                                double l1);

// Parses the JSON request document: {"request": [ {shape}, ... ]}.
// Coordinate fields accept numbers or RFC 3339 timestamp strings.
std::vector<ShapeRequest> parse_request(const std::string& text);
std::vector<ShapeRequest> parse_request_file(const std::filesystem::path& path);

}  // namespace cubeslice
