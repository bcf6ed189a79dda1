#include "bsm/loaders.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

namespace bsm {

namespace {

[[noreturn]] void fail_at(const std::string& path, int line, const std::string& why) {
  throw std::runtime_error(path + ":" + std::to_string(line) + ": " + why);
}

bool is_skippable(const std::string& line) {
  for (char ch : line) {
    if (std::isspace(static_cast<unsigned char>(ch))) continue;
    return ch == '#';
  }
  return true;  // blank
}

// Calls fn(line_number, fields) for every payload line, fields split on
// whitespace.
template <typename Fn>
void for_each_line(const std::string& path, Fn&& fn) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (is_skippable(line)) continue;
    std::vector<std::string> fields;
    std::istringstream ls(line);
    std::string field;
    while (ls >> field) fields.push_back(std::move(field));
    fn(number, fields);
  }
}

// First-appearance interning.
int intern(const std::string& id, std::map<std::string, int>& index,
           std::vector<std::string>& ids) {
  auto [it, inserted] = index.emplace(id, static_cast<int>(ids.size()));
  if (inserted) ids.push_back(id);
  return it->second;
}

struct GroupAssignment {
  std::vector<int> group_of;        // dense user index -> group index
  std::vector<std::string> labels;  // sorted
};

// Shared core of the group loaders: reads "id label" pairs, keeps those whose
// id appears in node_ids, checks exact coverage, maps labels to sorted order.
GroupAssignment read_groups(const std::string& path,
                            const std::vector<std::string>& node_ids) {
  std::map<std::string, int> node_index;
  for (size_t i = 0; i < node_ids.size(); ++i) {
    node_index.emplace(node_ids[i], static_cast<int>(i));
  }

  std::vector<std::string> label_of(node_ids.size());
  std::vector<char> seen(node_ids.size(), 0);
  for_each_line(path, [&](int line, const std::vector<std::string>& fields) {
    if (fields.size() != 2) fail_at(path, line, "expected \"node_id group_label\"");
    auto it = node_index.find(fields[0]);
    if (it == node_index.end()) return;  // serves a subset; extra ids are fine
    if (seen[it->second]) fail_at(path, line, "duplicate id " + fields[0]);
    seen[it->second] = 1;
    label_of[it->second] = fields[1];
  });
  for (size_t i = 0; i < node_ids.size(); ++i) {
    if (!seen[i]) {
      throw std::runtime_error(path + ": no group for id " + node_ids[i]);
    }
  }

  GroupAssignment out;
  out.labels.assign(label_of.begin(), label_of.end());
  std::sort(out.labels.begin(), out.labels.end());
  out.labels.erase(std::unique(out.labels.begin(), out.labels.end()),
                   out.labels.end());
  out.group_of.reserve(node_ids.size());
  for (const auto& label : label_of) {
    out.group_of.push_back(static_cast<int>(
        std::lower_bound(out.labels.begin(), out.labels.end(), label) -
        out.labels.begin()));
  }
  return out;
}

}  // namespace

LoadedGraph load_graph(const std::string& path, bool directed) {
  std::map<std::string, int> index;
  std::vector<std::string> ids;
  std::vector<std::pair<int, int>> edges;
  for_each_line(path, [&](int line, const std::vector<std::string>& fields) {
    if (fields.size() != 2) fail_at(path, line, "expected \"src dst\"");
    const int u = intern(fields[0], index, ids);
    const int v = intern(fields[1], index, ids);
    edges.emplace_back(u, v);
    if (!directed) edges.emplace_back(v, u);
  });
  if (ids.empty()) throw std::runtime_error(path + ": no edges");
  return {Digraph(static_cast<int>(ids.size()), std::move(edges)), std::move(ids)};
}

LoadedGroups load_groups(const std::string& path,
                         const std::vector<std::string>& node_ids) {
  GroupAssignment ga = read_groups(path, node_ids);
  return {GroupedPopulation(static_cast<int>(ga.labels.size()),
                            std::move(ga.group_of)),
          std::move(ga.labels)};
}

LoadedPoints load_points(const std::string& path) {
  std::vector<std::string> ids;
  std::vector<std::string> row_labels;
  std::vector<std::vector<double>> points;
  std::map<std::string, int> id_seen;
  size_t dim = 0;

  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (is_skippable(line)) continue;

    std::vector<std::string> fields;
    std::istringstream ls(line);
    std::string field;
    while (std::getline(ls, field, ',')) fields.push_back(field);
    if (fields.size() < 3) fail_at(path, number, "expected \"id,group,x1,...\"");
    if (dim == 0) {
      dim = fields.size() - 2;
    } else if (fields.size() - 2 != dim) {
      fail_at(path, number, "expected " + std::to_string(dim) + " coordinates");
    }
    if (!id_seen.emplace(fields[0], number).second) {
      fail_at(path, number, "duplicate id " + fields[0]);
    }
    ids.push_back(fields[0]);
    row_labels.push_back(fields[1]);
    std::vector<double> p(dim);
    for (size_t d = 0; d < dim; ++d) {
      try {
        size_t used = 0;
        p[d] = std::stod(fields[d + 2], &used);
        if (used != fields[d + 2].size()) throw std::invalid_argument("");
      } catch (const std::exception&) {
        fail_at(path, number, "bad coordinate \"" + fields[d + 2] + "\"");
      }
    }
    points.push_back(std::move(p));
  }
  if (points.empty()) throw std::runtime_error(path + ": no points");

  std::vector<std::string> labels = row_labels;
  std::sort(labels.begin(), labels.end());
  labels.erase(std::unique(labels.begin(), labels.end()), labels.end());
  std::vector<int> group_of;
  group_of.reserve(row_labels.size());
  for (const auto& label : row_labels) {
    group_of.push_back(static_cast<int>(
        std::lower_bound(labels.begin(), labels.end(), label) - labels.begin()));
  }
  return {std::move(points),
          GroupedPopulation(static_cast<int>(labels.size()), std::move(group_of)),
          std::move(ids), std::move(labels)};
}

LoadedCoverage load_coverage(const std::string& cover_path,
                             const std::string& groups_path) {
  // The groups file fixes the user universe and its order.
  std::vector<std::string> user_ids;
  {
    std::map<std::string, int> seen;
    for_each_line(groups_path, [&](int line, const std::vector<std::string>& fields) {
      if (fields.size() != 2) fail_at(groups_path, line, "expected \"user_id group_label\"");
      if (!seen.emplace(fields[0], line).second) {
        fail_at(groups_path, line, "duplicate id " + fields[0]);
      }
      user_ids.push_back(fields[0]);
    });
  }
  if (user_ids.empty()) throw std::runtime_error(groups_path + ": no users");
  GroupAssignment ga = read_groups(groups_path, user_ids);

  std::map<std::string, int> user_index;
  for (size_t i = 0; i < user_ids.size(); ++i) {
    user_index.emplace(user_ids[i], static_cast<int>(i));
  }

  std::map<std::string, int> item_index;
  std::vector<std::string> item_ids;
  std::vector<std::vector<int>> item_users;
  for_each_line(cover_path, [&](int line, const std::vector<std::string>& fields) {
    if (fields.size() != 2) fail_at(cover_path, line, "expected \"item_id user_id\"");
    const int item = intern(fields[0], item_index, item_ids);
    if (item == static_cast<int>(item_users.size())) item_users.emplace_back();
    auto it = user_index.find(fields[1]);
    if (it == user_index.end()) {
      fail_at(cover_path, line, "user " + fields[1] + " not in the groups file");
    }
    item_users[item].push_back(it->second);
  });
  if (item_ids.empty()) throw std::runtime_error(cover_path + ": no items");

  CoverageInstance instance(
      GroupedPopulation(static_cast<int>(ga.labels.size()), std::move(ga.group_of)),
      std::move(item_users));
  return {std::move(instance), std::move(item_ids), std::move(user_ids),
          std::move(ga.labels)};
}

}  // namespace bsm
