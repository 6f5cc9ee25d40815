// Copyright the cubeslice authors. Licensed under the Apache 2.0 license. See LICENSE in the project root.

#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "cubeslice/engine.hpp"

namespace cubeslice {

// One benchmark run: a synthetic grid cube plus a request to extract from it.
struct BenchRun {
  std::string family;
  std::vector<std::string> axis_names;  // defaults to x0..xN-1
  std::vector<std::size_t> grid;        // index count per axis (indices 0..n-1)
  std::vector<ShapeRequest> request;
  int repeat = 1;  // timings keep the best of `repeat` executions
};

struct BenchConfig {
  std::vector<BenchRun> runs;
  double eps = 1e-12;
};

struct BenchRow {
  std::string family;
  std::size_t dimension = 0;
  std::uint64_t points_found = 0;
  std::uint64_t total_slices = 0;
  std::uint64_t bound = 0;
  double slicing_seconds = 0;
  double total_seconds = 0;
  std::uint64_t bytes_polytope = 0;
  std::uint64_t bytes_bbox = 0;
};

// Regular ordered grid with indices 0..n-1 on each axis.
DatacubeSchema make_grid_schema(const std::vector<std::string>& axis_names,
                                const std::vector<std::size_t>& grid);

// Formula-valued storage for a schema: value = flat row-major offset.
DatacubeStorage make_formula_storage(const DatacubeSchema& schema);

// Config document: {"runs":[{"family":..,"grid":[..],"axes":[..]?,
// "request":[..shapes..],"repeat":N?}, ...], "eps":..?}
BenchConfig parse_bench_config(const std::string& text);

std::vector<BenchRow> run_bench(const BenchConfig& config);

void write_bench_csv(std::ostream& out, const std::vector<BenchRow>& rows);

}  // namespace cubeslice
