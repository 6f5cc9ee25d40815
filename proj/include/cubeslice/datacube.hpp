// Copyright the cubeslice authors. Licensed under the Apache 2.0 license. See LICENSE in the project root.

#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "cubeslice/axes.hpp"

namespace cubeslice {

// A raw index value as it appears in paths and bundles: a number for
// ordered/cyclic axes, a string for categorical axes or timestamps.
using IndexValue = std::variant<double, std::string>;
using IndexPath = std::vector<std::pair<std::string, IndexValue>>;

/// Axis layout of a datacube: a run of axes in their natural order, with an
/// optional branch on the last root axis. Each index of a branching axis
/// selects its own list of follow-on axes, so different paths through the
/// cube can have different dimensionality. At most one branch level is
/// supported and the branching axis must be categorical.
class DatacubeSchema {
 public:
  static DatacubeSchema linear(std::vector<AxisSpec> axes);
  // arms[k] holds the follow-on axes for category k of the last root axis.
  static DatacubeSchema branched(std::vector<AxisSpec> root_axes,
                                 std::vector<std::vector<AxisSpec>> arms);

  bool has_branches() const { return !arms_.empty(); }
  const std::vector<AxisSpec>& root_axes() const { return root_; }
  const std::vector<std::vector<AxisSpec>>& arms() const { return arms_; }
  const AxisSpec& branch_axis() const;

  // Number of value arrays backing the cube: one per branch arm, or one for
  // a linear cube.
  std::size_t leaf_count() const { return has_branches() ? arms_.size() : 1; }

  // Axes that address values within one leaf array (the branching axis
  // selects the array and contributes no stride).
  std::vector<const AxisSpec*> leaf_grid_axes(std::size_t leaf) const;
  // All axes met along the path to a leaf, branching axis included.
  std::vector<const AxisSpec*> leaf_path_axes(std::size_t leaf) const;

  std::uint64_t leaf_value_count(std::size_t leaf) const;
  std::uint64_t total_values() const;

  // Remaining axes in natural order after assigning a prefix of axes, in
  // order, resolved through any branch the prefix has taken.
  std::vector<AxisSpec> next_axes(const IndexPath& path) const;

 private:
  DatacubeSchema() = default;
  void validate() const;

  std::vector<AxisSpec> root_;
  std::vector<std::vector<AxisSpec>> arms_;
};

// Value arrays, one per schema leaf, row-major over the leaf grid axes.
struct DatacubeStorage {
  std::vector<std::vector<double>> leaf_values;
  static constexpr std::uint64_t bytes_per_value = 8;
};

// Reads a datacube bundle directory: datacube.json plus raw little-endian
// float64 value files.
std::pair<DatacubeSchema, DatacubeStorage> load_datacube(const std::filesystem::path& dir);

// Writes a bundle in the same format.
void save_datacube(const std::filesystem::path& dir, const DatacubeSchema& schema,
                   const DatacubeStorage& storage);

// Value at a full path; the path must assign every axis along its branch
// (any order) to an existing index.
double get_value(const DatacubeStorage& storage, const DatacubeSchema& schema,
                 const IndexPath& path);

// Per-axis constraint used for baseline byte accounting. Exactly one of the
// members applies; unconstrained axes count in full.
struct AxisConstraint {
  std::optional<Extent> extent;
  std::optional<std::vector<std::string>> selection;
  bool all = false;
};

struct BaselineBytes {
  std::uint64_t whole_cube = 0;
  std::uint64_t bounding_box = 0;
};

// Byte counts a traditional whole-cube read and an orthogonal bounding-box
// read would fetch for the given constraints.
BaselineBytes baseline_bytes(const DatacubeSchema& schema,
                             const std::map<std::string, AxisConstraint>& constraints);

}  // namespace cubeslice
