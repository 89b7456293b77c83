#pragma once

#include <string>
#include <vector>

#include "mbqc/open_graph.hpp"

namespace fixtures {

using mbqc::OpenGraph;
using mbqc::Vertex;
using mbqc::VertexSet;

inline std::string data_path(std::string const& name) { return std::string{MBQC_DATA_DIR} + "/" + name; }

// v1..v6 = indices 0..5.
inline OpenGraph fig1() {
    return OpenGraph::with_default_labels(6, {{0, 1}, {0, 5}, {1, 5}, {1, 4}, {5, 3}, {2, 3}, {2, 4}, {3, 4}}, {0},
                                          {4, 5});
}

inline OpenGraph path(std::size_t n, VertexSet inputs = {}, VertexSet outputs = {}) {
    std::vector<std::pair<Vertex, Vertex>> edges;
    for (Vertex v = 0; v + 1 < n; ++v) edges.emplace_back(v, v + 1);
    return OpenGraph::with_default_labels(n, edges, inputs, outputs);
}

inline OpenGraph triangle(VertexSet inputs = {}, VertexSet outputs = {2}) {
    return OpenGraph::with_default_labels(3, {{0, 1}, {1, 2}, {0, 2}}, inputs, outputs);
}

// a1 a2 a3 / b1 b2 b3 = indices 0..5, as in data/grid_2x3.graph.
inline OpenGraph grid(VertexSet inputs = {}, VertexSet outputs = {}) {
    return OpenGraph({"a1", "a2", "a3", "b1", "b2", "b3"}, {{0, 1}, {1, 2}, {3, 4}, {4, 5}, {0, 3}, {1, 4}, {2, 5}},
                     inputs, outputs);
}

}  // namespace fixtures
