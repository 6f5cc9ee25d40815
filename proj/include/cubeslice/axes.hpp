// Copyright the cubeslice authors. Licensed under the Apache 2.0 license. See LICENSE in the project root.

#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "cubeslice/geometry.hpp"

namespace cubeslice {

enum class AxisKind { Ordered, Cyclic, Categorical };

/// One datacube dimension. Ordered and cyclic axes store strictly increasing
/// numeric indices (timestamps are held as epoch seconds); categorical axes
/// store distinct, unordered string indices. Indices may be irregular and
/// sparse. Immutable after construction.
class AxisSpec {
 public:
  static AxisSpec ordered(std::string name, std::vector<double> indices,
                          bool timestamp_indices = false);
  // Cyclic indices must all lie in [period.low, period.high).
  static AxisSpec cyclic(std::string name, std::vector<double> indices, Extent period);
  static AxisSpec categorical(std::string name, std::vector<std::string> categories);

  const std::string& name() const { return name_; }
  AxisKind kind() const { return kind_; }
  bool is_ordered() const { return kind_ != AxisKind::Categorical; }
  bool timestamp_indices() const { return timestamps_; }

  std::size_t size() const;
  const std::vector<double>& numeric_indices() const;    // ordered/cyclic only
  const std::vector<std::string>& categories() const;    // categorical only
  const Extent& period() const;                          // cyclic only
  std::optional<std::size_t> category_pos(std::string_view value) const;

  // Display form of the index at a position (RFC 3339 for timestamp axes).
  std::string index_string(std::size_t pos) const;

 private:
  AxisSpec() = default;

  std::string name_;
  AxisKind kind_ = AxisKind::Ordered;
  std::vector<double> numeric_;
  std::vector<std::string> categories_;
  Extent period_{};
  bool timestamps_ = false;
};

// Numeric form of a raw index value. Plain numbers map to themselves;
// RFC 3339 timestamps map to epoch seconds. The mapping is strictly
// monotone in the axis ordering. Categorical axes are rejected.
double to_numeric(const AxisSpec& axis, double raw);
double to_numeric(const AxisSpec& axis, std::string_view raw);

// Canonical sub-extents, all within [period.low, period.high), whose union
// is congruent to ext modulo the period. One extent for in-period or
// full-cover inputs, two when the input wraps.
std::vector<Extent> remap_cyclic(const AxisSpec& axis, const Extent& ext);

// Positions of every axis index inside the closed extent, ascending.
// Cyclic extents are remapped first and the pieces merged.
std::vector<std::size_t> find_index_positions(const AxisSpec& axis, const Extent& ext);

// Same lookup returning the index values themselves.
std::vector<double> find_indices(const AxisSpec& axis, const Extent& ext);

// Lookup for slicing: (position, slice value) pairs where the slice value is
// the representative of the stored index congruent into the given extent.
// For non-cyclic axes the slice value is the index itself.
std::vector<std::pair<std::size_t, double>> find_slice_points(const AxisSpec& axis,
                                                              const Extent& ext);

// Subset of the requested values present on the categorical axis, in request
// order with duplicates collapsed.
std::vector<std::string> select_categorical(const AxisSpec& axis,
                                            const std::vector<std::string>& requested);

// RFC 3339 timestamp (second resolution) <-> epoch seconds.
double parse_rfc3339(std::string_view text);
std::string format_rfc3339(double epoch_seconds);
// Non-throwing probe used by parsers that accept numbers or timestamps.
std::optional<double> try_parse_rfc3339(std::string_view text);

}  // namespace cubeslice
