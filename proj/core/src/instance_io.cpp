#include "snl/instance_io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "snl/error.hpp"

namespace snl {

using nlohmann::json;

namespace {

json matrix_rows(const Matrix& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

Matrix rows_matrix(const json& rows, Eigen::Index cols_hint) {
  require(rows.is_array(), ErrorKind::InvalidInstance, "expected an array of rows");
  const auto r = static_cast<Eigen::Index>(rows.size());
  const Eigen::Index c = r > 0 ? static_cast<Eigen::Index>(rows[0].size()) : cols_hint;
  Matrix m(r, c);
  for (Eigen::Index i = 0; i < r; ++i) {
    require(rows[i].is_array() && static_cast<Eigen::Index>(rows[i].size()) == c,
            ErrorKind::InvalidInstance, "ragged matrix rows");
    for (Eigen::Index j = 0; j < c; ++j) m(i, j) = rows[i][j].get<double>();
  }
  return m;
}

template <typename T>
std::vector<std::vector<T>> nested(const json& j, const char* field) {
  require(j.contains(field) && j[field].is_array(), ErrorKind::InvalidInstance,
          std::string("missing array field '") + field + "'");
  return j[field].get<std::vector<std::vector<T>>>();
}

}  // namespace

std::string instance_to_json(const ProblemInstance& inst) {
  json j;
  j["d"] = inst.d;
  j["n"] = inst.n;
  j["m"] = inst.m;
  j["anchors"] = matrix_rows(inst.anchors);
  j["sensor_neighbors"] = inst.sensor_neighbors;
  j["anchor_neighbors"] = inst.anchor_neighbors;
  j["dist_ss"] = inst.dist_ss;
  j["dist_sa"] = inst.dist_sa;
  if (inst.truth) j["truth"] = matrix_rows(*inst.truth);
  return j.dump(1);
}

ProblemInstance instance_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    fail(ErrorKind::InvalidInstance, std::string("instance JSON: ") + e.what());
  }
  ProblemInstance inst;
  try {
    inst.d = j.at("d").get<int>();
    inst.n = j.at("n").get<int>();
    inst.m = j.at("m").get<int>();
    inst.anchors = rows_matrix(j.at("anchors"), inst.d);
    inst.sensor_neighbors = nested<int>(j, "sensor_neighbors");
    inst.anchor_neighbors = nested<int>(j, "anchor_neighbors");
    inst.dist_ss = nested<double>(j, "dist_ss");
    inst.dist_sa = nested<double>(j, "dist_sa");
    if (j.contains("truth") && !j["truth"].is_null()) inst.truth = rows_matrix(j["truth"], inst.d);
  } catch (const json::exception& e) {
    fail(ErrorKind::InvalidInstance, std::string("instance JSON: ") + e.what());
  }
  inst.validate();
  return inst;
}

ProblemInstance load_instance(const std::filesystem::path& path) {
  return instance_from_json(read_file(path));
}

void save_instance(const ProblemInstance& instance, const std::filesystem::path& path) {
  write_file(path, instance_to_json(instance));
}

std::string matrix_to_json(const Matrix& m) { return matrix_rows(m).dump(); }

Matrix matrix_from_json(const std::string& text) {
  try {
    return rows_matrix(json::parse(text), 0);
  } catch (const json::exception& e) {
    fail(ErrorKind::InvalidArgument, std::string("matrix JSON: ") + e.what());
  }
}

Matrix adjacency_from_edge_list(const std::string& text, int nodes) {
  std::vector<std::pair<int, int>> edges;
  std::istringstream in(text);
  std::string line;
  int max_index = -1;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream ls(line);
    int a = -1;
    int b = -1;
    require(static_cast<bool>(ls >> a >> b) && a >= 0 && b >= 0, ErrorKind::InvalidArgument,
            "edge list line " + std::to_string(line_no) + ": expected two indices");
    edges.emplace_back(a, b);
    max_index = std::max({max_index, a, b});
  }
  const int count = nodes >= 0 ? nodes : max_index + 1;
  require(count >= 1, ErrorKind::InvalidArgument, "edge list is empty");
  Matrix adj = Matrix::Zero(count, count);
  for (auto [a, b] : edges) {
    require(a < count && b < count, ErrorKind::InvalidArgument, "edge index out of range");
    require(a != b, ErrorKind::InvalidArgument,
            "edge list contains the self loop " + std::to_string(a));
    adj(a, b) = 1.0;
    adj(b, a) = 1.0;
  }
  return adj;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  require(static_cast<bool>(in), ErrorKind::Io, "cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::filesystem::path& path, const std::string& contents) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  require(static_cast<bool>(out), ErrorKind::Io, "cannot write " + path.string());
  out << contents;
  require(static_cast<bool>(out), ErrorKind::Io, "write failed for " + path.string());
}

}  // namespace snl
