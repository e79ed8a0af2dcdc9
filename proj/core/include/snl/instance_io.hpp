#pragma once

#include <filesystem>
#include <string>

#include "snl/problem.hpp"

namespace snl {

// Instance files are a single JSON document:
//   {"d": 2, "n": 30, "m": 6,
//    "anchors": [[x, y], ...],
//    "sensor_neighbors": [[j, ...], ...], "anchor_neighbors": [[k, ...], ...],
//    "dist_ss": [[...], ...], "dist_sa": [[...], ...],
//    "truth": [[x, y], ...]}            <- optional
// Arrays are row-major, indices 0-based. The loader runs
// ProblemInstance::validate().
std::string instance_to_json(const ProblemInstance& instance);
ProblemInstance instance_from_json(const std::string& text);

ProblemInstance load_instance(const std::filesystem::path& path);
void save_instance(const ProblemInstance& instance, const std::filesystem::path& path);

// n x d matrix as a JSON array of rows, and back.
std::string matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const std::string& text);

// Undirected edge list, one "i j" pair per line (0-based). Blank lines and
// lines starting with '#' are ignored. Node count is 1 + the largest index
// unless `nodes` is given.
Matrix adjacency_from_edge_list(const std::string& text, int nodes = -1);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, const std::string& contents);

}  // namespace snl
