// Copyright the cubeslice authors. Licensed under the Apache 2.0 license. See LICENSE in the project root.

#include "cubeslice/report.hpp"

#include <cmath>
#include <cstdio>
#include <vector>

namespace cubeslice {

namespace {

std::string json_escape(const std::string& s) {
  std::string out;
  out.reserve(s.size() + 2);
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      case '\t': out += "\\t"; break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof buf, "\\u%04x", c);
          out += buf;
        } else {
          out += c;
        }
    }
  }
  return out;
}

// Index rendered for a path object: numbers stay numbers, categorical and
// timestamp indices become strings.
std::string index_json(const IndexTreeNode& node) {
  if (node.axis->kind() == AxisKind::Categorical || node.axis->timestamp_indices())
    return "\"" + json_escape(node.index_string()) + "\"";
  return format_double(node.numeric_index());
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += "\"\"";
    else out += c;
  }
  out += "\"";
  return out;
}

std::string reduction_factor(std::uint64_t baseline, std::uint64_t polytope) {
  if (polytope == 0) return "\"∞\"";
  return format_double(static_cast<double>(baseline) / static_cast<double>(polytope));
}

void write_stats_json(std::ostream& out, const ExtractionStats& stats) {
  out << "{\"dimensions\":" << stats.shape_dims << ",\"n_per_axis\":[";
  for (std::size_t i = 0; i < stats.n_per_axis.size(); ++i)
    out << (i ? "," : "") << stats.n_per_axis[i];
  out << "],\"slices_by_dim\":{";
  bool first = true;
  for (const auto& [dim, count] : stats.slices_by_dim) {
    out << (first ? "" : ",") << "\"" << dim << "\":" << count;
    first = false;
  }
  out << "},\"total_slices\":" << stats.total_slices
      << ",\"points_found\":" << stats.points_found
      << ",\"bytes_polytope\":" << stats.bytes_polytope
      << ",\"bytes_bbox\":" << stats.bytes_bbox << ",\"bytes_whole\":" << stats.bytes_whole
      << ",\"reduction_factor_bbox\":" << reduction_factor(stats.bytes_bbox, stats.bytes_polytope)
      << ",\"reduction_factor_whole\":"
      << reduction_factor(stats.bytes_whole, stats.bytes_polytope) << "}";
}

}  // namespace

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  double parsed = std::strtod(buf, nullptr);
  // Prefer the shortest representation that still round-trips.
  for (int prec = 1; prec < 17; ++prec) {
    char probe[40];
    std::snprintf(probe, sizeof probe, "%.*g", prec, v);
    if (std::strtod(probe, nullptr) == parsed) return probe;
  }
  return buf;
}

void write_result_json(std::ostream& out, const IndexTree& tree, const ExtractionStats& stats,
                       bool include_stats) {
  out << "{\"points\":[";
  bool first = true;
  tree.visit_leaves([&](const std::vector<const IndexTreeNode*>& path) {
    out << (first ? "" : ",") << "{\"path\":{";
    for (std::size_t i = 0; i < path.size(); ++i) {
      out << (i ? "," : "") << "\"" << json_escape(path[i]->axis->name())
          << "\":" << index_json(*path[i]);
    }
    out << "}";
    if (path.back()->has_value) out << ",\"value\":" << format_double(path.back()->value);
    out << "}";
    first = false;
  });
  out << "]";
  if (include_stats) {
    out << ",\"stats\":";
    write_stats_json(out, stats);
  }
  out << "}\n";
}

void write_result_csv(std::ostream& out, const IndexTree& tree) {
  // Column order: axis names as first seen along depth-first leaf paths.
  std::vector<std::string> columns;
  tree.visit_leaves([&](const std::vector<const IndexTreeNode*>& path) {
    for (const IndexTreeNode* node : path) {
      const std::string& name = node->axis->name();
      if (std::find(columns.begin(), columns.end(), name) == columns.end())
        columns.push_back(name);
    }
  });

  for (std::size_t i = 0; i < columns.size(); ++i) out << (i ? "," : "") << csv_escape(columns[i]);
  out << (columns.empty() ? "value" : ",value") << "\n";

  tree.visit_leaves([&](const std::vector<const IndexTreeNode*>& path) {
    for (std::size_t i = 0; i < columns.size(); ++i) {
      if (i) out << ",";
      for (const IndexTreeNode* node : path) {
        if (node->axis->name() == columns[i]) {
          out << csv_escape(node->index_string());
          break;
        }
      }
    }
    out << ",";
    if (path.back()->has_value) out << format_double(path.back()->value);
    out << "\n";
  });
}

void write_stats_summary(std::ostream& out, const ExtractionStats& stats) {
  auto seconds = [](std::chrono::nanoseconds ns) {
    return format_double(std::chrono::duration<double>(ns).count());
  };
  out << "points found:      " << stats.points_found << "\n";
  out << "shape dimensions:  " << stats.shape_dims << "\n";
  out << "in-extent indices:";
  for (std::size_t n : stats.n_per_axis) out << " " << n;
  out << "\n";
  out << "slices by dim:    ";
  for (auto it = stats.slices_by_dim.rbegin(); it != stats.slices_by_dim.rend(); ++it)
    out << " " << it->first << "D=" << it->second;
  out << " (total " << stats.total_slices << ")\n";
  out << "bytes polytope:    " << stats.bytes_polytope << "\n";
  out << "bytes bbox:        " << stats.bytes_bbox << "\n";
  out << "bytes whole cube:  " << stats.bytes_whole << "\n";
  if (stats.bytes_polytope > 0) {
    out << "reduction vs bbox: "
        << format_double(static_cast<double>(stats.bytes_bbox) /
                         static_cast<double>(stats.bytes_polytope))
        << "x\n";
    out << "reduction vs cube: "
        << format_double(static_cast<double>(stats.bytes_whole) /
                         static_cast<double>(stats.bytes_polytope))
        << "x\n";
  }
  out << "slicing time:      " << seconds(stats.slicing_time) << " s\n";
  out << "total time:        " << seconds(stats.total_time) << " s\n";
}

}  // namespace cubeslice
