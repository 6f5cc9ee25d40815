// Copyright the cubeslice authors. Licensed under the Apache 2.0 license. See LICENSE in the project root.

#include "cubeslice/engine.hpp"

#include <algorithm>
#include <memory>
#include <set>

#include "cubeslice/errors.hpp"

namespace cubeslice {

namespace {

using Clock = std::chrono::steady_clock;
using PolytopeRef = std::shared_ptr<const Polytope>;
// Live sub-polytopes per piece group, carried from a tree node to its children.
using LiveMap = std::vector<std::vector<PolytopeRef>>;

constexpr std::size_t kNoGroup = static_cast<std::size_t>(-1);

struct GroupState {
  std::vector<PolytopeRef> polytopes;           // initial pieces (ordered axes)
  std::map<std::string, std::vector<std::string>> selections;
};

struct Walker {
  const DatacubeSchema& schema;
  const ExtractOptions& options;
  std::map<std::string, std::size_t> group_of_axis;
  std::vector<GroupState> groups;
  ExtractionStats stats;

  struct Entry {
    IndexTreeNode* node;
    LiveMap live;
  };

  std::size_t group_for(const AxisSpec& axis) const {
    auto it = group_of_axis.find(axis.name());
    return it == group_of_axis.end() ? kNoGroup : it->second;
  }

  // Selected category positions for a categorical axis, request order.
  std::vector<std::size_t> selected_positions(const AxisSpec& axis, std::size_t g) const {
    std::vector<std::size_t> out;
    auto it = groups[g].selections.find(axis.name());
    if (it == groups[g].selections.end()) return out;
    for (const auto& value : select_categorical(axis, it->second))
      out.push_back(*axis.category_pos(value));
    return out;
  }

  // One breadth-first layer: expands every frontier entry along `axis`.
  // `last` marks the final axis of the current path, whose children are
  // complete leaves.
  std::vector<Entry> process_axis(const AxisSpec& axis, std::vector<Entry> frontier,
                                  bool last) {
    const std::size_t g = group_for(axis);
    std::vector<Entry> next;

    if (axis.kind() == AxisKind::Categorical) {
      auto selected = selected_positions(axis, g);
      for (Entry& e : frontier) {
        if (selected.empty()) continue;
        e.node->children.reserve(selected.size());
        for (std::size_t pos : selected) {
          IndexTreeNode child;
          child.axis = &axis;
          child.pos = static_cast<std::int64_t>(pos);
          child.complete = last;
          e.node->children.push_back(std::move(child));
        }
        if (!last) {
          for (IndexTreeNode& child : e.node->children)
            next.push_back(Entry{&child, e.live});
        }
      }
      return next;
    }

    // Ordered axis: slice every live polytope of the owning group at every
    // in-extent index. Buckets collect (position, child polytope) pairs so
    // that all pieces land under one shared child per index.
    std::vector<std::pair<std::size_t, PolytopeRef>> bucket;
    for (Entry& e : frontier) {
      bucket.clear();
      const auto& live = e.live[g];

      auto t0 = Clock::now();
      for (const PolytopeRef& poly : live) {
        Extent ext = extents(*poly, axis.name());
        if (poly->dim() == 1) {
          // Final axis of this polytope: plain index lookups, counted as
          // one-dimensional slices.
          for (std::size_t pos : find_index_positions(axis, ext)) {
            bucket.emplace_back(pos, nullptr);
            ++stats.slices_by_dim[1];
          }
        } else {
          for (const auto& [pos, value] : find_slice_points(axis, ext)) {
            ++stats.slices_by_dim[poly->dim()];
            auto sliced = slice_polytope(*poly, axis.name(), value, options.eps, options.hull);
            if (sliced)
              bucket.emplace_back(pos, std::make_shared<const Polytope>(std::move(*sliced)));
          }
        }
      }
      stats.slicing_time += Clock::now() - t0;

      if (bucket.empty()) continue;
      std::stable_sort(bucket.begin(), bucket.end(),
                       [](const auto& a, const auto& b) { return a.first < b.first; });

      std::size_t child_count = 0;
      for (std::size_t k = 0; k < bucket.size(); ++k)
        if (k == 0 || bucket[k].first != bucket[k - 1].first) ++child_count;
      e.node->children.reserve(child_count);

      for (std::size_t k = 0; k < bucket.size();) {
        std::size_t pos = bucket[k].first;
        IndexTreeNode child;
        child.axis = &axis;
        child.pos = static_cast<std::int64_t>(pos);
        child.complete = last;
        e.node->children.push_back(std::move(child));
        if (!last) {
          Entry ne;
          ne.node = &e.node->children.back();
          ne.live = e.live;
          ne.live[g].clear();
          for (; k < bucket.size() && bucket[k].first == pos; ++k)
            if (bucket[k].second) ne.live[g].push_back(bucket[k].second);
          next.push_back(std::move(ne));
        } else {
          for (; k < bucket.size() && bucket[k].first == pos; ++k) {}
        }
      }
    }
    return next;
  }
};

// Drops subtrees that reach no complete leaf; returns whether the node stays.
bool prune(IndexTreeNode& node) {
  std::erase_if(node.children, [](IndexTreeNode& child) { return !prune(child); });
  return node.complete || !node.children.empty();
}

void count_leaves(const IndexTreeNode& node, std::uint64_t& n) {
  if (node.complete) ++n;
  for (const auto& child : node.children) count_leaves(child, n);
}

void visit_impl(const IndexTreeNode& node, std::vector<const IndexTreeNode*>& path,
                const std::function<void(const std::vector<const IndexTreeNode*>&)>& fn) {
  if (node.complete) fn(path);
  for (const auto& child : node.children) {
    path.push_back(&child);
    visit_impl(child, path, fn);
    path.pop_back();
  }
}

// Reachable branch arms under the plan's branch-axis selection.
std::vector<std::size_t> reachable_arms(const DatacubeSchema& schema, const Walker& walker) {
  if (!schema.has_branches()) return {0};
  const AxisSpec& branch = schema.branch_axis();
  std::size_t g = walker.group_for(branch);
  if (g == kNoGroup)
    throw ValidationError("axis '" + branch.name() + "' is not constrained by any shape");
  auto positions = walker.selected_positions(branch, g);
  if (positions.empty() && !walker.groups[g].selections.count(branch.name())) {
    // Constrained but not by a selection (e.g. a polytope): invalid for a
    // categorical axis and reported during group validation.
    throw ValidationError("branching axis '" + branch.name() +
                          "' must be constrained by an index selection");
  }
  return positions;
}

}  // namespace

std::uint64_t IndexTree::leaf_count() const {
  std::uint64_t n = 0;
  count_leaves(root_, n);
  return n;
}

void IndexTree::visit_leaves(
    const std::function<void(const std::vector<const IndexTreeNode*>&)>& fn) const {
  std::vector<const IndexTreeNode*> path;
  visit_impl(root_, path, fn);
}

std::uint64_t slice_bound(std::span<const std::size_t> n_per_axis) {
  std::uint64_t total = 0, product = 1;
  for (std::size_t n : n_per_axis) {
    product *= static_cast<std::uint64_t>(n);
    total += product;
  }
  return total;
}

ExtractionResult extract(const DatacubeSchema& schema, const RequestPlan& plan,
                         const ExtractOptions& options) {
  if (!(options.eps > 0.0)) throw ValidationError("extraction tolerance must be positive");
  auto t_start = Clock::now();

  Walker walker{schema, options, {}, {}, {}};

  // Resolve groups: polytopes over ordered axes, selections over categorical
  // axes, whole-axis markers materialized against the schema.
  auto find_schema_axis = [&](const std::string& name) -> const AxisSpec* {
    for (const auto& a : schema.root_axes())
      if (a.name() == name) return &a;
    for (const auto& arm : schema.arms())
      for (const auto& a : arm)
        if (a.name() == name) return &a;
    return nullptr;
  };

  for (const PieceGroup& group : plan.groups) {
    GroupState state;
    std::size_t gid = walker.groups.size();
    for (const std::string& axis_name : group.axes) {
      if (!find_schema_axis(axis_name))
        throw ValidationError("axis '" + axis_name + "' does not exist in the datacube");
      if (!walker.group_of_axis.emplace(axis_name, gid).second)
        throw ValidationError("axis '" + axis_name + "' is constrained twice");
    }
    for (const ConvexPiece& piece : group.pieces) {
      if (piece.polytope) {
        for (const auto& axis_name : piece.polytope->axes()) {
          const AxisSpec* axis = find_schema_axis(axis_name);
          if (axis && !axis->is_ordered())
            throw ValidationError("axis '" + axis_name +
                                  "' is categorical; only index selections can constrain it");
        }
        state.polytopes.push_back(std::make_shared<const Polytope>(
            dedup_vertices(*piece.polytope, options.eps)));
      }
      for (const auto& [axis_name, values] : piece.selections) {
        const AxisSpec* axis = find_schema_axis(axis_name);
        if (axis && axis->is_ordered())
          throw ValidationError("axis '" + axis_name +
                                "' is ordered; use a span or polytope to constrain it");
        auto& sel = state.selections[axis_name];
        for (const auto& v : values)
          if (std::find(sel.begin(), sel.end(), v) == sel.end()) sel.push_back(v);
      }
      for (const auto& axis_name : piece.all_axes) {
        const AxisSpec* axis = find_schema_axis(axis_name);
        if (!axis)
          throw ValidationError("axis '" + axis_name + "' does not exist in the datacube");
        if (axis->is_ordered()) {
          const auto& idx = axis->numeric_indices();
          state.polytopes.push_back(std::make_shared<const Polytope>(
              Polytope({axis_name}, idx.front() == idx.back()
                                        ? std::vector<double>{idx.front()}
                                        : std::vector<double>{idx.front(), idx.back()})));
        } else {
          state.selections[axis_name] = axis->categories();
        }
      }
    }
    walker.groups.push_back(std::move(state));
  }

  // Every axis reachable under the plan's branch choices must be constrained.
  auto arms = reachable_arms(schema, walker);
  std::vector<std::vector<const AxisSpec*>> routed_paths;
  if (!schema.has_branches()) {
    routed_paths.push_back(schema.leaf_path_axes(0));
  } else {
    for (std::size_t arm : arms) routed_paths.push_back(schema.leaf_path_axes(arm));
  }
  std::set<std::string> reachable_names;
  for (const auto& path : routed_paths)
    for (const AxisSpec* axis : path) {
      reachable_names.insert(axis->name());
      if (walker.group_for(*axis) == kNoGroup)
        throw ValidationError("axis '" + axis->name() + "' is not constrained by any shape");
    }
  for (const auto& [axis_name, gid] : walker.group_of_axis) {
    (void)gid;
    if (!reachable_names.count(axis_name))
      throw ValidationError("axis '" + axis_name +
                            "' is not reachable under the request's branch selection");
  }

  // Upfront accounting: per-axis in-extent counts (summed over pieces, and
  // over arms when an axis name recurs) and the bounding-box byte baseline.
  std::map<std::string, AxisConstraint> constraints;
  std::vector<std::string> counted_order;
  std::map<std::string, std::size_t> counted;
  for (const auto& path : routed_paths) {
    for (const AxisSpec* axis : path) {
      std::size_t g = walker.group_for(*axis);
      const GroupState& state = walker.groups[g];
      if (!axis->is_ordered()) {
        auto it = state.selections.find(axis->name());
        if (it != state.selections.end()) {
          AxisConstraint c;
          c.selection = it->second;
          constraints[axis->name()] = std::move(c);
        }
        continue;
      }
      std::size_t n = 0;
      bool any = false;
      Extent enclosing{0, 0};
      for (const PolytopeRef& poly : state.polytopes) {
        if (!poly->has_axis(axis->name())) continue;
        Extent ext = extents(*poly, axis->name());
        n += find_index_positions(*axis, ext).size();
        if (!any) enclosing = ext;
        enclosing.low = std::min(enclosing.low, ext.low);
        enclosing.high = std::max(enclosing.high, ext.high);
        any = true;
      }
      if (any) {
        if (!counted.count(axis->name())) counted_order.push_back(axis->name());
        counted[axis->name()] += n;
        AxisConstraint c;
        c.extent = enclosing;
        constraints[axis->name()] = std::move(c);
      }
    }
  }
  for (const auto& name : counted_order)
    walker.stats.n_per_axis.push_back(counted[name]);
  walker.stats.shape_dims = walker.stats.n_per_axis.size();

  BaselineBytes baseline = baseline_bytes(schema, constraints);
  walker.stats.bytes_whole = baseline.whole_cube;
  walker.stats.bytes_bbox = baseline.bounding_box;

  // The walk itself: root axes first, then each reachable arm.
  ExtractionResult result;
  LiveMap root_live(walker.groups.size());
  for (std::size_t g = 0; g < walker.groups.size(); ++g)
    root_live[g] = walker.groups[g].polytopes;

  std::vector<Walker::Entry> frontier{{&result.tree.root(), std::move(root_live)}};
  const auto& root_axes = schema.root_axes();
  const bool branched = schema.has_branches();
  for (std::size_t i = 0; i < root_axes.size() && !frontier.empty(); ++i) {
    bool last = !branched && i + 1 == root_axes.size();
    frontier = walker.process_axis(root_axes[i], std::move(frontier), last);
  }
  if (branched && !frontier.empty()) {
    // Frontier entries now sit on branch-axis children; finish each arm.
    for (std::size_t arm : arms) {
      std::vector<Walker::Entry> sub;
      for (const auto& e : frontier)
        if (static_cast<std::size_t>(e.node->pos) == arm) sub.push_back(e);
      const auto& arm_axes = schema.arms()[arm];
      if (arm_axes.empty()) {
        for (auto& e : sub) e.node->complete = true;
        continue;
      }
      for (std::size_t i = 0; i < arm_axes.size() && !sub.empty(); ++i)
        sub = walker.process_axis(arm_axes[i], std::move(sub), i + 1 == arm_axes.size());
    }
  }

  prune(result.tree.root());

  for (const auto& [dim, count] : walker.stats.slices_by_dim)
    walker.stats.total_slices += count;
  walker.stats.points_found = result.tree.leaf_count();
  walker.stats.bytes_polytope = walker.stats.points_found * DatacubeStorage::bytes_per_value;
  walker.stats.total_time = Clock::now() - t_start;
  result.stats = std::move(walker.stats);
  return result;
}

namespace {

void merge_into(IndexTreeNode& dst, const IndexTreeNode& src) {
  if ((dst.axis == nullptr) != (src.axis == nullptr) ||
      (dst.axis && src.axis && dst.axis->name() != src.axis->name()))
    throw ValidationError("cannot merge index trees over different schemas");
  dst.complete = dst.complete || src.complete;
  for (const IndexTreeNode& child : src.children) {
    auto match = std::find_if(dst.children.begin(), dst.children.end(),
                              [&](const IndexTreeNode& c) {
                                return c.pos == child.pos &&
                                       c.axis->name() == child.axis->name();
                              });
    if (match != dst.children.end()) {
      merge_into(*match, child);
      continue;
    }
    IndexTreeNode copy = child;
    if (child.axis->is_ordered()) {
      auto at = std::upper_bound(dst.children.begin(), dst.children.end(), child.pos,
                                 [](std::int64_t pos, const IndexTreeNode& c) {
                                   return pos < c.pos;
                                 });
      dst.children.insert(at, std::move(copy));
    } else {
      dst.children.push_back(std::move(copy));
    }
  }
}

void attach_impl(IndexTreeNode& node, const DatacubeStorage& storage,
                 const DatacubeSchema& schema, std::size_t arm, std::uint64_t offset) {
  if (node.complete) {
    node.value = storage.leaf_values.at(arm).at(offset);
    node.has_value = true;
    return;
  }
  const bool is_branch_axis =
      schema.has_branches() && !node.children.empty() &&
      node.children.front().axis->name() == schema.branch_axis().name();
  for (IndexTreeNode& child : node.children) {
    if (is_branch_axis)
      attach_impl(child, storage, schema, static_cast<std::size_t>(child.pos), offset);
    else
      attach_impl(child, storage, schema, arm,
                  offset * child.axis->size() + static_cast<std::uint64_t>(child.pos));
  }
}

}  // namespace

IndexTree merge(const IndexTree& tree, const IndexTree& other) {
  IndexTree out;
  merge_into(out.root(), tree.root());
  merge_into(out.root(), other.root());
  return out;
}

void attach_values(IndexTree& tree, const DatacubeStorage& storage,
                   const DatacubeSchema& schema) {
  attach_impl(tree.root(), storage, schema, 0, 0);
}

}  // namespace cubeslice
