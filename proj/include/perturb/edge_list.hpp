#pragma once

#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "perturb/graph.hpp"

namespace perturb {

// Text format: header line "<n> <edge count>", then one "u v" pair per line,
// 0-indexed. Loops, out-of-range ids and duplicate pairs are rejected.
inline Graph read_edge_list(std::istream& in) {
    long long n = -1;
    long long count = -1;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        std::istringstream header(line);
        if (!(header >> n >> count) || n < 1 || count < 0)
            throw std::runtime_error("edge list: malformed header on line " + std::to_string(line_no));
        break;
    }
    if (n < 0) throw std::runtime_error("edge list: missing header");
    if (count > static_cast<long long>(pair_count(static_cast<std::uint64_t>(n))))
        throw std::runtime_error("edge list: edge count exceeds n(n-1)/2");

    Graph g(static_cast<int>(n));
    long long seen = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        std::istringstream pair(line);
        long long u = 0;
        long long v = 0;
        std::string extra;
        if (!(pair >> u >> v) || (pair >> extra))
            throw std::runtime_error("edge list: malformed pair on line " + std::to_string(line_no));
        if (u < 0 || v < 0 || u >= n || v >= n)
            throw std::runtime_error("edge list: vertex out of range on line " + std::to_string(line_no));
        if (u == v) throw std::runtime_error("edge list: self-loop on line " + std::to_string(line_no));
        if (!g.add_edge(static_cast<int>(u), static_cast<int>(v)))
            throw std::runtime_error("edge list: duplicate edge on line " + std::to_string(line_no));
        ++seen;
    }
    if (seen != count)
        throw std::runtime_error("edge list: header promises " + std::to_string(count) + " edges, found " +
                                 std::to_string(seen));
    return g;
}

inline void write_edge_list(std::ostream& out, const Graph& g) {
    out << g.order() << ' ' << g.edge_count() << '\n';
    for (const Edge& e : g.edges()) out << e.u << ' ' << e.v << '\n';
}

}  // namespace perturb
