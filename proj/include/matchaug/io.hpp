#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "matchaug/graph.hpp"

namespace matchaug {

// Instance text format (bit-exact, diffable):
//   line 1: "n m"
//   then m lines "u v c" with 1-based node ids and c in {0,1}
// '#' starts a comment; blank lines are ignored; edge ids are line order.
MapInstance read_instance_text(std::istream& in);
MapInstance read_instance_file(const std::string& path);
std::string write_instance_text(const MapInstance& inst);
void write_instance_file(const MapInstance& inst, const std::string& path);

// Solution files are a list of 1-based edge ids (instance line order), one
// per line, '#' comments allowed.
std::vector<int> read_solution_text(std::istream& in);
std::vector<int> read_solution_file(const std::string& path);
std::string write_solution_text(const std::vector<int>& edge_ids);
void write_solution_file(const std::vector<int>& edge_ids, const std::string& path);

}  // namespace matchaug
