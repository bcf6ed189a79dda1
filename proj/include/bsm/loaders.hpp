#pragma once

#include <string>
#include <vector>

#include "bsm/coverage.hpp"
#include "bsm/digraph.hpp"
#include "bsm/oracle.hpp"

namespace bsm {

// All loaders read UTF-8 text, skip blank lines and lines whose first
// non-space character is '#', and report malformed input as "path:line:
// reason". String IDs map to dense indices in order of first appearance;
// the tables are returned so outputs can name things the way the files did.

struct LoadedGraph {
  Digraph graph;
  std::vector<std::string> node_ids;
};

// Edge list, one "src dst" pair per line (tab or space separated). With
// directed = false every line becomes two arcs.
LoadedGraph load_graph(const std::string& path, bool directed);

struct LoadedGroups {
  GroupedPopulation population;
  std::vector<std::string> labels;  // group index -> label, sorted
};

// Membership list, one "node_id group_label" pair per line. Every id in
// node_ids must be present exactly once; unknown ids are ignored so one
// groups file can serve graph subsets. Group indices follow sorted label
// order.
LoadedGroups load_groups(const std::string& path,
                         const std::vector<std::string>& node_ids);

struct LoadedPoints {
  std::vector<std::vector<double>> points;
  GroupedPopulation population;
  std::vector<std::string> ids;
  std::vector<std::string> labels;
};

// CSV rows "id,group,x1,...,xd"; dimension fixed by the first row.
LoadedPoints load_points(const std::string& path);

struct LoadedCoverage {
  CoverageInstance instance;
  std::vector<std::string> item_ids;
  std::vector<std::string> user_ids;
  std::vector<std::string> labels;
};

// Direct set-system input: the groups file enumerates the users (and fixes
// their order), then each cover line "item_id user_id" adds one element to an
// item's set.
LoadedCoverage load_coverage(const std::string& cover_path,
                             const std::string& groups_path);

}  // namespace bsm
