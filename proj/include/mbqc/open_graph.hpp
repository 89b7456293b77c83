#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include "mbqc/gf2.hpp"

namespace mbqc {

using Vertex = std::size_t;

/// Hard limit imposed by the 64-bit VertexSet representation.
inline constexpr std::size_t kMaxVertices = 64;
/// Above this size, exhaustive subset enumeration is impractical; parsing warns.
inline constexpr std::size_t kSoftVertexCap = 32;

/// Subset of the vertices of an open graph, as a membership mask.
class VertexSet {
public:
    class iterator {
    public:
        using value_type = Vertex;
        using difference_type = std::ptrdiff_t;

        iterator() = default;
        explicit iterator(std::uint64_t rest) : _rest{rest} {}
        Vertex operator*() const { return static_cast<Vertex>(std::countr_zero(_rest)); }
        iterator& operator++() {
            _rest &= _rest - 1;
            return *this;
        }
        iterator operator++(int) {
            auto tmp = *this;
            ++*this;
            return tmp;
        }
        friend bool operator==(iterator, iterator) = default;

    private:
        std::uint64_t _rest = 0;
    };

    constexpr VertexSet() = default;
    constexpr explicit VertexSet(std::uint64_t mask) : _mask{mask} {}
    VertexSet(std::initializer_list<Vertex> vertices) {
        for (auto v : vertices) insert(v);
    }

    /// {0, ..., n-1}
    static constexpr VertexSet full(std::size_t n) {
        return VertexSet(n >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1);
    }
    static VertexSet single(Vertex v) { return VertexSet(bit(v)); }

    [[nodiscard]] constexpr std::uint64_t mask() const { return _mask; }
    [[nodiscard]] constexpr bool empty() const { return _mask == 0; }
    [[nodiscard]] std::size_t size() const { return static_cast<std::size_t>(std::popcount(_mask)); }
    [[nodiscard]] bool contains(Vertex v) const { return v < 64 && (_mask >> v) & 1u; }
    [[nodiscard]] bool subset_of(VertexSet other) const { return (_mask & ~other._mask) == 0; }
    [[nodiscard]] bool intersects(VertexSet other) const { return (_mask & other._mask) != 0; }
    /// Smallest member. Precondition: non-empty.
    [[nodiscard]] Vertex front() const { return static_cast<Vertex>(std::countr_zero(_mask)); }

    void insert(Vertex v) { _mask |= bit(v); }
    void erase(Vertex v) { _mask &= ~bit(v); }
    void toggle(Vertex v) { _mask ^= bit(v); }

    [[nodiscard]] iterator begin() const { return iterator{_mask}; }
    [[nodiscard]] iterator end() const { return iterator{}; }
    [[nodiscard]] std::vector<Vertex> members() const { return {begin(), end()}; }

    friend constexpr VertexSet operator|(VertexSet a, VertexSet b) { return VertexSet(a._mask | b._mask); }
    friend constexpr VertexSet operator&(VertexSet a, VertexSet b) { return VertexSet(a._mask & b._mask); }
    friend constexpr VertexSet operator^(VertexSet a, VertexSet b) { return VertexSet(a._mask ^ b._mask); }
    /// Set difference.
    friend constexpr VertexSet operator-(VertexSet a, VertexSet b) { return VertexSet(a._mask & ~b._mask); }
    VertexSet& operator|=(VertexSet o) { return *this = *this | o; }
    VertexSet& operator&=(VertexSet o) { return *this = *this & o; }
    VertexSet& operator^=(VertexSet o) { return *this = *this ^ o; }
    VertexSet& operator-=(VertexSet o) { return *this = *this - o; }
    friend constexpr bool operator==(VertexSet, VertexSet) = default;

private:
    static std::uint64_t bit(Vertex v) {
        if (v >= 64) throw std::out_of_range("VertexSet: vertex index exceeds 63");
        return std::uint64_t{1} << v;
    }

    std::uint64_t _mask = 0;
};

/// Lexicographic order on the ascending member lists.
[[nodiscard]] bool lex_less(VertexSet a, VertexSet b);
/// Order used for every reported list of sets: size first, then lex_less.
[[nodiscard]] bool size_lex_less(VertexSet a, VertexSet b);

/// Simple undirected graph with designated input and output vertices.
///
/// Immutable after construction. Inputs and outputs may overlap.
class OpenGraph {
public:
    OpenGraph() = default;
    /// Throws std::invalid_argument on self-loops, duplicate edges, out of range
    /// endpoints, duplicate labels or more than kMaxVertices vertices.
    OpenGraph(std::vector<std::string> labels, std::vector<std::pair<Vertex, Vertex>> const& edges,
              VertexSet inputs, VertexSet outputs);

    /// Graph with default labels v1..vn.
    static OpenGraph with_default_labels(std::size_t n, std::vector<std::pair<Vertex, Vertex>> const& edges,
                                         VertexSet inputs = {}, VertexSet outputs = {});

    [[nodiscard]] std::size_t size() const { return _labels.size(); }
    [[nodiscard]] std::string const& label(Vertex v) const { return _labels.at(v); }
    [[nodiscard]] std::vector<std::string> const& labels() const { return _labels; }
    [[nodiscard]] std::optional<Vertex> find(std::string_view label) const;

    [[nodiscard]] VertexSet neighbors(Vertex v) const { return _adjacency.at(v); }
    [[nodiscard]] bool adjacent(Vertex u, Vertex v) const { return _adjacency.at(u).contains(v); }
    [[nodiscard]] std::size_t degree(Vertex v) const { return _adjacency.at(v).size(); }
    /// Edges as (u, v) with u < v, sorted.
    [[nodiscard]] std::vector<std::pair<Vertex, Vertex>> edges() const;
    [[nodiscard]] std::size_t edge_count() const;

    [[nodiscard]] VertexSet vertices() const { return VertexSet::full(size()); }
    [[nodiscard]] VertexSet inputs() const { return _inputs; }
    [[nodiscard]] VertexSet outputs() const { return _outputs; }
    /// O^C: the measured vertices.
    [[nodiscard]] VertexSet non_outputs() const { return vertices() - _outputs; }
    /// I^C: the vertices prepared in |+>.
    [[nodiscard]] VertexSet non_inputs() const { return vertices() - _inputs; }

    /// Same graph, different input/output sets.
    [[nodiscard]] OpenGraph with_io(VertexSet inputs, VertexSet outputs) const;

    [[nodiscard]] std::string format_set(VertexSet s) const;

    friend bool operator==(OpenGraph const&, OpenGraph const&) = default;

private:
    std::vector<std::string> _labels;
    std::vector<VertexSet> _adjacency;
    VertexSet _inputs;
    VertexSet _outputs;
};

/// Vertices with an odd number of neighbours in s.
[[nodiscard]] VertexSet odd_neighborhood(OpenGraph const& g, VertexSet s);
/// L(w) = Odd(w) u w.
[[nodiscard]] VertexSet local_set(OpenGraph const& g, VertexSet w);
/// Number of edges with both endpoints in s.
[[nodiscard]] std::size_t internal_edge_count(OpenGraph const& g, VertexSet s);

/// Adjacency submatrix with rows indexed by row_set and columns by col_set,
/// both in ascending vertex order. Labels carry the vertex indices.
[[nodiscard]] gf2::BitMatrix induced_adjacency_matrix(OpenGraph const& g, VertexSet row_set, VertexSet col_set);
/// Rows O^C, columns I^C.
[[nodiscard]] gf2::BitMatrix induced_adjacency_matrix(OpenGraph const& g);

/// Indicator of s over the ascending members of `domain`.
[[nodiscard]] gf2::BitVector indicator(VertexSet s, VertexSet domain);
/// Inverse of indicator().
[[nodiscard]] VertexSet from_indicator(gf2::BitVector const& v, VertexSet domain);

/// Replaces every input i by a fresh pendant input i' attached to i, then every
/// output o by a fresh pendant output o'. Fresh vertices are appended after all
/// original vertices, inputs first, and are labelled with a trailing "'"
/// (repeated until the label is unused, so a vertex in I n O yields v' and v'').
[[nodiscard]] OpenGraph io_extension(OpenGraph const& g);
/// The open graph induced on `keep`, with inputs and outputs restricted to it.
/// Vertex order and labels are preserved.
[[nodiscard]] OpenGraph induced_subgraph(OpenGraph const& g, VertexSet keep);
/// (G, O, I).
[[nodiscard]] OpenGraph swapped(OpenGraph const& g);
[[nodiscard]] bool is_connected(OpenGraph const& g);

class ParseError : public std::runtime_error {
public:
    ParseError(std::size_t line, std::string const& what);
    [[nodiscard]] std::size_t line() const { return _line; }

private:
    std::size_t _line;
};

/// Parses the line-oriented graph format:
///
///     # comment
///     vertices: v1 v2 v3
///     edge: v1 v2
///     inputs: v1
///     outputs: v3
///
/// Sections may appear in any order. Without a `vertices:` line, vertices are
/// numbered in order of first appearance in edge lines. Graphs larger than
/// kSoftVertexCap trigger a warning on `warnings` when it is non-null.
[[nodiscard]] OpenGraph parse_open_graph(std::string_view text, std::ostream* warnings = nullptr);
[[nodiscard]] OpenGraph load_open_graph(std::string const& path, std::ostream* warnings = nullptr);
/// Inverse of parse_open_graph.
[[nodiscard]] std::string to_text(OpenGraph const& g);

[[nodiscard]] nlohmann::json to_json(OpenGraph const& g);
[[nodiscard]] OpenGraph open_graph_from_json(nlohmann::json const& j);

struct DotOptions {
    /// Extra directed edges drawn over the graph, e.g. a gflow DAG.
    std::vector<std::pair<Vertex, Vertex>> arcs;
    std::string arc_color = "red";
};

/// Graphviz rendering: inputs are boxes, outputs are left unfilled, every
/// other vertex is filled black.
[[nodiscard]] std::string to_dot(OpenGraph const& g, DotOptions const& options = {});

}  // namespace mbqc
