// Copyright the cubeslice authors. Licensed under the Apache 2.0 license. See LICENSE in the project root.

#pragma once

#include <ostream>
#include <string>

#include "cubeslice/engine.hpp"

namespace cubeslice {

// Shortest of the %.17g forms that round-trips the value.
std::string format_double(double v);

// Result document: {"points":[{"path":{axis:index,...},"value":...},...]}
// in depth-first tree order, plus a "stats" object when requested. Output is
// byte-deterministic for identical inputs; timings are reported on stderr
// only so files stay reproducible.
void write_result_json(std::ostream& out, const IndexTree& tree, const ExtractionStats& stats,
                       bool include_stats);

// One row per point: axis columns in first-seen path order, then "value".
void write_result_csv(std::ostream& out, const IndexTree& tree);

// Human-readable stats summary (for stderr), including timings.
void write_stats_summary(std::ostream& out, const ExtractionStats& stats);

}  // namespace cubeslice
