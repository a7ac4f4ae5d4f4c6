#include "matchaug/io.hpp"

#include <fstream>
#include <sstream>

#include "matchaug/errors.hpp"

namespace matchaug {

namespace {

std::string strip_comment(const std::string& line) {
    auto pos = line.find('#');
    return pos == std::string::npos ? line : line.substr(0, pos);
}

std::ifstream open_or_throw(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw validation_error("cannot open file: " + path);
    return in;
}

}  // namespace

MapInstance read_instance_text(std::istream& in) {
    MapInstance inst;
    std::string line;
    long long n = -1, m = -1;
    long long seen = 0;
    while (std::getline(in, line)) {
        std::istringstream ls(strip_comment(line));
        if (n < 0) {
            if (!(ls >> n >> m)) {
                std::string rest;
                if (ls >> rest) throw validation_error("malformed header line");
                continue;  // blank / comment-only line before the header
            }
            if (n < 0 || m < 0) throw validation_error("negative header values");
            inst.node_count = static_cast<int>(n);
            continue;
        }
        long long u, v, c;
        if (!(ls >> u >> v >> c)) {
            std::string rest;
            if (ls >> rest) throw validation_error("malformed edge line: " + line);
            continue;
        }
        if (u < 1 || v < 1 || u > n || v > n)
            throw validation_error("edge endpoint out of range on line: " + line);
        if (c != 0 && c != 1) throw validation_error("edge cost outside {0,1} on line: " + line);
        inst.edges.push_back({static_cast<int>(u - 1), static_cast<int>(v - 1), static_cast<int>(c)});
        ++seen;
    }
    if (n < 0) throw validation_error("missing header line");
    if (seen != m) throw validation_error("header announces " + std::to_string(m) + " edges, file has " +
                                          std::to_string(seen));
    return inst;
}

MapInstance read_instance_file(const std::string& path) {
    auto in = open_or_throw(path);
    return read_instance_text(in);
}

std::string write_instance_text(const MapInstance& inst) {
    std::ostringstream out;
    out << inst.node_count << ' ' << inst.edge_count() << '\n';
    for (const Edge& e : inst.edges) out << e.u + 1 << ' ' << e.v + 1 << ' ' << e.cost << '\n';
    return out.str();
}

void write_instance_file(const MapInstance& inst, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw validation_error("cannot write file: " + path);
    out << write_instance_text(inst);
}

std::vector<int> read_solution_text(std::istream& in) {
    std::vector<int> ids;
    std::string line;
    while (std::getline(in, line)) {
        std::istringstream ls(strip_comment(line));
        long long id;
        while (ls >> id) {
            if (id < 1) throw validation_error("solution edge ids are 1-based");
            ids.push_back(static_cast<int>(id - 1));
        }
    }
    return ids;
}

std::vector<int> read_solution_file(const std::string& path) {
    auto in = open_or_throw(path);
    return read_solution_text(in);
}

std::string write_solution_text(const std::vector<int>& edge_ids) {
    std::ostringstream out;
    for (int id : edge_ids) out << id + 1 << '\n';
    return out.str();
}

void write_solution_file(const std::vector<int>& edge_ids, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw validation_error("cannot write file: " + path);
    out << write_solution_text(edge_ids);
}

}  // namespace matchaug
