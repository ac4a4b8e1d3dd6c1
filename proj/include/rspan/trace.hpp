#pragma once

#include <iosfwd>
#include <string>

#include "rspan/spanner_gw.hpp"

namespace rspan {

/// Text serialization of a build: key-value params section, tree dump,
/// WSPD pairs, recursion entries with their shrink adjacency, groups, and
/// both edge sets.  Everything faults/verify need to run in a separate
/// process.
void save_trace(const BuildTrace& trace, std::ostream& out);
void save_trace_file(const BuildTrace& trace, const std::string& path);

BuildTrace load_trace(std::istream& in);
BuildTrace load_trace_file(const std::string& path);

}  // namespace rspan
