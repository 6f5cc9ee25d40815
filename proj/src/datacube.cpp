// Copyright the cubeslice authors. Licensed under the Apache 2.0 license. See LICENSE in the project root.

#include "cubeslice/datacube.hpp"

#include <algorithm>
#include <bit>
#include <cstring>
#include <fstream>
#include <set>

#include <json.hpp>

#include "cubeslice/errors.hpp"

namespace cubeslice {

namespace {

using nlohmann::json;

void check_unique_names(const std::vector<const AxisSpec*>& axes) {
  std::set<std::string> seen;
  for (const AxisSpec* a : axes)
    if (!seen.insert(a->name()).second)
      throw ValidationError("axis '" + a->name() + "' appears twice along one datacube path");
}

AxisSpec axis_from_json(const json& j) {
  if (!j.is_object()) throw ValidationError("datacube.json: axis entry must be an object");
  if (!j.contains("name") || !j["name"].is_string())
    throw ValidationError("datacube.json: axis is missing a string 'name'");
  std::string name = j["name"].get<std::string>();
  if (!j.contains("kind") || !j["kind"].is_string())
    throw ValidationError("datacube.json: axis '" + name + "' is missing a string 'kind'");
  std::string kind = j["kind"].get<std::string>();
  if (!j.contains("indices") || !j["indices"].is_array() || j["indices"].empty())
    throw ValidationError("datacube.json: axis '" + name + "' needs a non-empty 'indices' array");

  if (kind == "categorical") {
    std::vector<std::string> cats;
    for (const auto& v : j["indices"]) {
      if (!v.is_string())
        throw ValidationError("datacube.json: categorical axis '" + name +
                              "' indices must be strings");
      cats.push_back(v.get<std::string>());
    }
    return AxisSpec::categorical(std::move(name), std::move(cats));
  }
  if (kind != "ordered" && kind != "cyclic")
    throw ValidationError("datacube.json: axis '" + name + "' has unknown kind '" + kind + "'");

  std::vector<double> numeric;
  bool timestamps = false;
  for (const auto& v : j["indices"]) {
    if (v.is_number()) {
      numeric.push_back(v.get<double>());
    } else if (v.is_string()) {
      numeric.push_back(parse_rfc3339(v.get<std::string>()));
      timestamps = true;
    } else {
      throw ValidationError("datacube.json: axis '" + name +
                            "' indices must be numbers or RFC 3339 strings");
    }
  }
  if (kind == "cyclic") {
    if (!j.contains("period") || !j["period"].is_array() || j["period"].size() != 2 ||
        !j["period"][0].is_number() || !j["period"][1].is_number())
      throw ValidationError("datacube.json: cyclic axis '" + name +
                            "' needs a two-number 'period'");
    return AxisSpec::cyclic(std::move(name), std::move(numeric),
                            Extent{j["period"][0].get<double>(), j["period"][1].get<double>()});
  }
  if (j.contains("period"))
    throw ValidationError("datacube.json: axis '" + name + "' is not cyclic but has a 'period'");
  return AxisSpec::ordered(std::move(name), std::move(numeric), timestamps);
}

json axis_to_json(const AxisSpec& axis) {
  json j;
  j["name"] = axis.name();
  switch (axis.kind()) {
    case AxisKind::Ordered: j["kind"] = "ordered"; break;
    case AxisKind::Cyclic: j["kind"] = "cyclic"; break;
    case AxisKind::Categorical: j["kind"] = "categorical"; break;
  }
  json idx = json::array();
  if (axis.kind() == AxisKind::Categorical) {
    for (const auto& c : axis.categories()) idx.push_back(c);
  } else if (axis.timestamp_indices()) {
    for (double v : axis.numeric_indices()) idx.push_back(format_rfc3339(v));
  } else {
    for (double v : axis.numeric_indices()) idx.push_back(v);
  }
  j["indices"] = std::move(idx);
  if (axis.kind() == AxisKind::Cyclic)
    j["period"] = {axis.period().low, axis.period().high};
  return j;
}

std::vector<double> read_values_file(const std::filesystem::path& path,
                                     std::uint64_t expected_count) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open value file: " + path.string());
  in.seekg(0, std::ios::end);
  auto bytes = static_cast<std::uint64_t>(in.tellg());
  if (bytes != expected_count * 8)
    throw ValidationError("value file " + path.filename().string() + " holds " +
                          std::to_string(bytes / 8) + " values but the declared grid needs " +
                          std::to_string(expected_count));
  in.seekg(0);
  std::vector<double> values(expected_count);
  in.read(reinterpret_cast<char*>(values.data()), static_cast<std::streamsize>(bytes));
  if (!in) throw IoError("short read on value file: " + path.string());
  if constexpr (std::endian::native == std::endian::big) {
    for (double& v : values) {
      auto* b = reinterpret_cast<unsigned char*>(&v);
      std::reverse(b, b + sizeof(double));
    }
  }
  return values;
}

void write_values_file(const std::filesystem::path& path, const std::vector<double>& values) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write value file: " + path.string());
  if constexpr (std::endian::native == std::endian::big) {
    for (double v : values) {
      auto* b = reinterpret_cast<unsigned char*>(&v);
      std::reverse(b, b + sizeof(double));
      out.write(reinterpret_cast<const char*>(&v), sizeof(double));
    }
  } else {
    out.write(reinterpret_cast<const char*>(values.data()),
              static_cast<std::streamsize>(values.size() * sizeof(double)));
  }
  if (!out) throw IoError("short write on value file: " + path.string());
}

// Position of a raw index value on an axis; exact match required.
std::size_t index_pos(const AxisSpec& axis, const IndexValue& value) {
  if (axis.kind() == AxisKind::Categorical) {
    if (!std::holds_alternative<std::string>(value))
      throw ValidationError("axis '" + axis.name() + "' expects a string index");
    auto pos = axis.category_pos(std::get<std::string>(value));
    if (!pos)
      throw ValidationError("axis '" + axis.name() + "' has no index '" +
                            std::get<std::string>(value) + "'");
    return *pos;
  }
  double v = std::holds_alternative<double>(value)
                 ? to_numeric(axis, std::get<double>(value))
                 : to_numeric(axis, std::get<std::string>(value));
  const auto& idx = axis.numeric_indices();
  auto it = std::lower_bound(idx.begin(), idx.end(), v);
  if (it == idx.end() || *it != v)
    throw ValidationError("axis '" + axis.name() + "' has no index " + std::to_string(v));
  return static_cast<std::size_t>(it - idx.begin());
}

}  // namespace

DatacubeSchema DatacubeSchema::linear(std::vector<AxisSpec> axes) {
  DatacubeSchema s;
  s.root_ = std::move(axes);
  s.validate();
  return s;
}

DatacubeSchema DatacubeSchema::branched(std::vector<AxisSpec> root_axes,
                                        std::vector<std::vector<AxisSpec>> arms) {
  DatacubeSchema s;
  s.root_ = std::move(root_axes);
  s.arms_ = std::move(arms);
  s.validate();
  return s;
}

void DatacubeSchema::validate() const {
  if (root_.empty()) throw ValidationError("datacube needs at least one axis");
  if (!arms_.empty()) {
    const AxisSpec& branch = root_.back();
    if (branch.kind() != AxisKind::Categorical)
      throw ValidationError("branching axis '" + branch.name() + "' must be categorical");
    if (arms_.size() != branch.size())
      throw ValidationError("branching axis '" + branch.name() + "' has " +
                            std::to_string(branch.size()) + " indices but " +
                            std::to_string(arms_.size()) + " branch arms");
  }
  for (std::size_t leaf = 0; leaf < leaf_count(); ++leaf)
    check_unique_names(leaf_path_axes(leaf));
}

const AxisSpec& DatacubeSchema::branch_axis() const {
  if (!has_branches()) throw ValidationError("datacube has no branching axis");
  return root_.back();
}

std::vector<const AxisSpec*> DatacubeSchema::leaf_grid_axes(std::size_t leaf) const {
  std::vector<const AxisSpec*> out;
  if (!has_branches()) {
    for (const auto& a : root_) out.push_back(&a);
    return out;
  }
  for (std::size_t i = 0; i + 1 < root_.size(); ++i) out.push_back(&root_[i]);
  for (const auto& a : arms_.at(leaf)) out.push_back(&a);
  return out;
}

std::vector<const AxisSpec*> DatacubeSchema::leaf_path_axes(std::size_t leaf) const {
  std::vector<const AxisSpec*> out;
  for (const auto& a : root_) out.push_back(&a);
  if (has_branches())
    for (const auto& a : arms_.at(leaf)) out.push_back(&a);
  return out;
}

std::uint64_t DatacubeSchema::leaf_value_count(std::size_t leaf) const {
  std::uint64_t n = 1;
  for (const AxisSpec* a : leaf_grid_axes(leaf)) n *= a->size();
  return n;
}

std::uint64_t DatacubeSchema::total_values() const {
  std::uint64_t n = 0;
  for (std::size_t leaf = 0; leaf < leaf_count(); ++leaf) n += leaf_value_count(leaf);
  return n;
}

std::vector<AxisSpec> DatacubeSchema::next_axes(const IndexPath& path) const {
  std::size_t arm = leaf_count();  // unresolved
  std::size_t depth = 0;
  for (const auto& [name, value] : path) {
    const AxisSpec* expected = nullptr;
    if (depth < root_.size()) {
      expected = &root_[depth];
    } else if (arm < arms_.size() && depth - root_.size() < arms_[arm].size()) {
      expected = &arms_[arm][depth - root_.size()];
    } else {
      throw ValidationError("path is longer than the datacube axis chain");
    }
    if (expected->name() != name)
      throw ValidationError("path axis '" + name + "' does not match the natural ordering (expected '" +
                            expected->name() + "')");
    std::size_t pos = index_pos(*expected, value);
    if (has_branches() && depth == root_.size() - 1) arm = pos;
    ++depth;
  }

  std::vector<AxisSpec> rest;
  for (std::size_t i = depth; i < root_.size(); ++i) rest.push_back(root_[i]);
  if (has_branches() && depth >= root_.size()) {
    for (std::size_t i = depth - root_.size(); i < arms_[arm].size(); ++i)
      rest.push_back(arms_[arm][i]);
  }
  return rest;
}

std::pair<DatacubeSchema, DatacubeStorage> load_datacube(const std::filesystem::path& dir) {
  const auto meta_path = dir / "datacube.json";
  std::ifstream in(meta_path);
  if (!in) throw IoError("cannot open " + meta_path.string());
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception& e) {
    throw ValidationError("datacube.json: malformed JSON: " + std::string(e.what()));
  }
  if (!j.is_object() || !j.contains("axes") || !j["axes"].is_array() || j["axes"].empty())
    throw ValidationError("datacube.json: needs a non-empty 'axes' array");

  std::vector<AxisSpec> root;
  for (const auto& a : j["axes"]) root.push_back(axis_from_json(a));

  DatacubeSchema schema = DatacubeSchema::linear(root);
  std::vector<std::string> value_files;

  if (j.contains("branches")) {
    if (!j["branches"].is_object() || j["branches"].empty())
      throw ValidationError("datacube.json: 'branches' must be a non-empty object");
    if (j.contains("values"))
      throw ValidationError("datacube.json: branched cubes name their value files per arm");
    const AxisSpec& branch = root.back();
    if (branch.kind() != AxisKind::Categorical)
      throw ValidationError("datacube.json: branching axis '" + branch.name() +
                            "' must be categorical");
    std::vector<std::vector<AxisSpec>> arms(branch.size());
    std::vector<std::string> files(branch.size());
    std::vector<bool> covered(branch.size(), false);
    for (const auto& [key, arm_json] : j["branches"].items()) {
      auto sep = key.find('/');
      if (sep == std::string::npos)
        throw ValidationError("datacube.json: branch key '" + key + "' must be '<axis>/<index>'");
      std::string axis_name = key.substr(0, sep), index = key.substr(sep + 1);
      if (axis_name != branch.name())
        throw ValidationError("datacube.json: branch key '" + key + "' names axis '" + axis_name +
                              "' but only the last axis '" + branch.name() + "' may branch");
      auto pos = branch.category_pos(index);
      if (!pos)
        throw ValidationError("datacube.json: branch key '" + key + "' uses unknown index '" +
                              index + "'");
      if (covered[*pos])
        throw ValidationError("datacube.json: branch index '" + index + "' appears twice");
      covered[*pos] = true;
      if (!arm_json.is_object() || !arm_json.contains("axes") || !arm_json["axes"].is_array())
        throw ValidationError("datacube.json: branch '" + key + "' needs an 'axes' array");
      for (const auto& a : arm_json["axes"]) arms[*pos].push_back(axis_from_json(a));
      if (!arm_json.contains("values") || !arm_json["values"].is_string())
        throw ValidationError("datacube.json: branch '" + key + "' needs a 'values' file name");
      files[*pos] = arm_json["values"].get<std::string>();
    }
    for (std::size_t k = 0; k < covered.size(); ++k)
      if (!covered[k])
        throw ValidationError("datacube.json: branch axis index '" + branch.categories()[k] +
                              "' has no branch entry");
    schema = DatacubeSchema::branched(std::move(root), std::move(arms));
    value_files = std::move(files);
  } else {
    if (!j.contains("values") || !j["values"].is_string())
      throw ValidationError("datacube.json: needs a 'values' file name");
    value_files.push_back(j["values"].get<std::string>());
  }

  DatacubeStorage storage;
  for (std::size_t leaf = 0; leaf < schema.leaf_count(); ++leaf)
    storage.leaf_values.push_back(
        read_values_file(dir / value_files[leaf], schema.leaf_value_count(leaf)));
  return {std::move(schema), std::move(storage)};
}

void save_datacube(const std::filesystem::path& dir, const DatacubeSchema& schema,
                   const DatacubeStorage& storage) {
  if (storage.leaf_values.size() != schema.leaf_count())
    throw ValidationError("storage has " + std::to_string(storage.leaf_values.size()) +
                          " value arrays but the schema has " +
                          std::to_string(schema.leaf_count()) + " leaves");
  for (std::size_t leaf = 0; leaf < schema.leaf_count(); ++leaf)
    if (storage.leaf_values[leaf].size() != schema.leaf_value_count(leaf))
      throw ValidationError("value array " + std::to_string(leaf) +
                            " does not match the declared grid");

  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("cannot create bundle directory: " + dir.string());

  json j;
  json axes = json::array();
  for (const auto& a : schema.root_axes()) axes.push_back(axis_to_json(a));
  j["axes"] = std::move(axes);
  if (schema.has_branches()) {
    const AxisSpec& branch = schema.branch_axis();
    json branches = json::object();
    for (std::size_t k = 0; k < schema.arms().size(); ++k) {
      json arm;
      json arm_axes = json::array();
      for (const auto& a : schema.arms()[k]) arm_axes.push_back(axis_to_json(a));
      arm["axes"] = std::move(arm_axes);
      std::string file = "values_" + std::to_string(k) + ".bin";
      arm["values"] = file;
      branches[branch.name() + "/" + branch.categories()[k]] = std::move(arm);
      write_values_file(dir / file, storage.leaf_values[k]);
    }
    j["branches"] = std::move(branches);
  } else {
    j["values"] = "values.bin";
    write_values_file(dir / "values.bin", storage.leaf_values[0]);
  }

  std::ofstream out(dir / "datacube.json", std::ios::trunc);
  if (!out) throw IoError("cannot write " + (dir / "datacube.json").string());
  out << j.dump(2) << "\n";
  if (!out) throw IoError("short write on " + (dir / "datacube.json").string());
}

double get_value(const DatacubeStorage& storage, const DatacubeSchema& schema,
                 const IndexPath& path) {
  // Resolve the branch arm first so the full axis list is known.
  std::size_t arm = 0;
  if (schema.has_branches()) {
    const AxisSpec& branch = schema.branch_axis();
    const IndexValue* chosen = nullptr;
    for (const auto& [name, value] : path)
      if (name == branch.name()) chosen = &value;
    if (!chosen)
      throw ValidationError("path does not assign the branching axis '" + branch.name() + "'");
    arm = index_pos(branch, *chosen);
  }

  auto grid = schema.leaf_grid_axes(arm);
  std::size_t expected = grid.size() + (schema.has_branches() ? 1 : 0);
  if (path.size() != expected)
    throw ValidationError("path assigns " + std::to_string(path.size()) + " axes but " +
                          std::to_string(expected) + " are required");

  std::uint64_t offset = 0;
  for (const AxisSpec* axis : grid) {
    const IndexValue* value = nullptr;
    for (const auto& [name, v] : path)
      if (name == axis->name()) {
        if (value) throw ValidationError("path assigns axis '" + axis->name() + "' twice");
        value = &v;
      }
    if (!value) throw ValidationError("path does not assign axis '" + axis->name() + "'");
    offset = offset * axis->size() + index_pos(*axis, *value);
  }
  return storage.leaf_values.at(arm).at(offset);
}

BaselineBytes baseline_bytes(const DatacubeSchema& schema,
                             const std::map<std::string, AxisConstraint>& constraints) {
  auto axis_count = [&](const AxisSpec& axis) -> std::uint64_t {
    auto it = constraints.find(axis.name());
    if (it == constraints.end() || it->second.all) return axis.size();
    const AxisConstraint& c = it->second;
    if (c.extent) {
      if (axis.kind() == AxisKind::Categorical)
        throw ValidationError("axis '" + axis.name() + "' is categorical; extents do not apply");
      return find_index_positions(axis, *c.extent).size();
    }
    if (c.selection) return select_categorical(axis, *c.selection).size();
    return axis.size();
  };

  BaselineBytes out;
  out.whole_cube = schema.total_values() * DatacubeStorage::bytes_per_value;

  // Arms whose branch index survives the branch-axis constraint.
  std::vector<std::size_t> reachable;
  if (schema.has_branches()) {
    const AxisSpec& branch = schema.branch_axis();
    auto it = constraints.find(branch.name());
    if (it == constraints.end() || it->second.all || !it->second.selection) {
      for (std::size_t k = 0; k < schema.leaf_count(); ++k) reachable.push_back(k);
    } else {
      for (const auto& v : select_categorical(branch, *it->second.selection))
        reachable.push_back(*branch.category_pos(v));
    }
  } else {
    reachable.push_back(0);
  }

  for (std::size_t leaf : reachable) {
    std::uint64_t n = 1;
    for (const AxisSpec* axis : schema.leaf_grid_axes(leaf)) n *= axis_count(*axis);
    out.bounding_box += n * DatacubeStorage::bytes_per_value;
  }
  return out;
}

}  // namespace cubeslice
