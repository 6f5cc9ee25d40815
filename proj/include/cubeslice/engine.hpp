// Copyright the cubeslice authors. Licensed under the Apache 2.0 license. See LICENSE in the project root.

#pragma once

#include <chrono>
#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <span>
#include <vector>

#include "cubeslice/datacube.hpp"
#include "cubeslice/shapes.hpp"

namespace cubeslice {

/// One node of the layered result tree: an index assignment on one axis.
/// Children are unique per (axis, index) and sorted ascending for ordered
/// axes or in request order for categorical axes. Nodes flagged `complete`
/// are leaves whose root path assigns every axis along its branch.
struct IndexTreeNode {
  const AxisSpec* axis = nullptr;  // null only at the synthetic root
  std::int64_t pos = -1;           // position of the index on the axis
  bool complete = false;
  bool has_value = false;
  double value = std::numeric_limits<double>::quiet_NaN();
  std::vector<IndexTreeNode> children;

  double numeric_index() const { return axis->numeric_indices()[static_cast<std::size_t>(pos)]; }
  std::string index_string() const { return axis->index_string(static_cast<std::size_t>(pos)); }
};

class IndexTree {
 public:
  IndexTreeNode& root() { return root_; }
  const IndexTreeNode& root() const { return root_; }

  bool empty() const { return root_.children.empty(); }
  std::uint64_t leaf_count() const;

  // Depth-first visitation of complete leaves; the callback receives the
  // node path from the first axis down to the leaf.
  void visit_leaves(
      const std::function<void(const std::vector<const IndexTreeNode*>&)>& fn) const;

 private:
  IndexTreeNode root_;
};

struct ExtractionStats {
  // Number of ordered axes carrying polytope constraints.
  std::size_t shape_dims = 0;
  // In-extent index counts per ordered axis, natural order. For multi-piece
  // groups this is the sum over pieces, which keeps the slice bound valid.
  std::vector<std::size_t> n_per_axis;
  std::map<std::size_t, std::uint64_t> slices_by_dim;
  std::uint64_t total_slices = 0;
  std::uint64_t points_found = 0;
  std::uint64_t bytes_polytope = 0;
  std::uint64_t bytes_bbox = 0;
  std::uint64_t bytes_whole = 0;
  std::chrono::nanoseconds slicing_time{0};
  std::chrono::nanoseconds total_time{0};
};

struct ExtractOptions {
  double eps = 1e-12;
  HullConfig hull{};
};

struct ExtractionResult {
  IndexTree tree;
  ExtractionStats stats;
};

/// Runs the slicing extraction: walks the datacube axes in natural order,
/// slicing every live polytope at each in-extent index and growing the index
/// tree layer by layer. The resulting leaf set is exactly the grid points
/// contained in the union of the request's pieces (within eps).
ExtractionResult extract(const DatacubeSchema& schema, const RequestPlan& plan,
                         const ExtractOptions& options = {});

// Worst-case number of slices for per-axis in-extent index counts n:
// sum over i of the product n_1 * ... * n_i.
std::uint64_t slice_bound(std::span<const std::size_t> n_per_axis);

// Set-union of two index trees over the same schema; shared prefixes share
// nodes and child ordering is preserved.
IndexTree merge(const IndexTree& tree, const IndexTree& other);

// Annotates every complete leaf with its stored datacube value.
void attach_values(IndexTree& tree, const DatacubeStorage& storage,
                   const DatacubeSchema& schema);

}  // namespace cubeslice
