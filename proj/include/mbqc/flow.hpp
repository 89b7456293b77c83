#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

#include <json.hpp>

#include "mbqc/open_graph.hpp"

namespace mbqc {

class FlowError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Correction function together with its partial order.
///
/// The order is stored as a layer per vertex: outputs sit in layer 0 and
/// u precedes v (u is measured before v) iff layer(u) > layer(v).
struct GFlow {
    /// Indexed by vertex; entries for outputs are empty.
    std::vector<VertexSet> correction;
    std::vector<std::size_t> layer;

    [[nodiscard]] bool precedes(Vertex u, Vertex v) const { return layer[u] > layer[v]; }
    [[nodiscard]] std::size_t depth() const;
};

/// Correction function whose odd neighbourhoods meet the non-outputs only at
/// the corrected vertex, with an acyclic successor relation. The invariants
/// are checked on construction.
class FocusedGFlow {
public:
    /// Throws FlowError if `correction` is not a focused gflow of g.
    FocusedGFlow(OpenGraph const& g, std::vector<VertexSet> correction);

    [[nodiscard]] std::vector<VertexSet> const& correction() const { return _correction; }
    [[nodiscard]] VertexSet operator()(Vertex u) const { return _correction.at(u); }
    [[nodiscard]] std::size_t size() const { return _correction.size(); }

    /// Longest-path layering of the successor DAG, outputs at layer 0.
    [[nodiscard]] GFlow to_gflow() const;

    friend bool operator==(FocusedGFlow const&, FocusedGFlow const&) = default;

private:
    std::vector<VertexSet> _correction;
};

/// Directed graph on V(G), as out-neighbourhoods.
struct Dag {
    std::vector<VertexSet> successors;

    [[nodiscard]] bool is_acyclic() const;
    [[nodiscard]] std::vector<std::pair<Vertex, Vertex>> arcs() const;
    /// Restriction of the adjacency matrix to rows `row_set` and columns
    /// `col_set`: entry (v, u) is set iff u -> v.
    [[nodiscard]] gf2::BitMatrix restricted_matrix(VertexSet row_set, VertexSet col_set) const;
};

/// True iff the relation u -> v for v in successors(u) has no directed cycle.
[[nodiscard]] bool is_acyclic(std::vector<VertexSet> const& successors);

/// Backward layer peeling: outputs form layer 0, then every unassigned u for
/// which some K within the assigned non-inputs has Odd(K) meeting the
/// unassigned vertices exactly in {u} joins the next layer.
[[nodiscard]] std::optional<GFlow> find_gflow(OpenGraph const& g);

/// Checks the three gflow conditions under the layer order of f.
[[nodiscard]] bool verify_gflow(OpenGraph const& g, GFlow const& f);

/// Focuses a gflow by induction on depth. Throws FlowError if f is not a
/// gflow of g.
[[nodiscard]] FocusedGFlow focus(OpenGraph const& g, GFlow const& f);

[[nodiscard]] Dag focused_to_dag(FocusedGFlow const& f);
/// Reads u -> N+(u) restricted to I^C as a focused gflow. Throws FlowError when
/// the DAG has a cycle or its restricted matrix is not a right inverse of the
/// induced adjacency matrix.
[[nodiscard]] FocusedGFlow dag_to_focused(OpenGraph const& g, Dag const& d);

/// Focused gflow of (G, O, I), obtained by transposing the DAG of the forward
/// focused gflow. Requires |I| = |O| (throws FlowError otherwise).
[[nodiscard]] std::optional<FocusedGFlow> reverse_gflow(OpenGraph const& g);

/// For |I| = |O|: inverts the square induced adjacency matrix and accepts the
/// unique inverse when its successor relation is acyclic. Throws FlowError when
/// |I| != |O|.
[[nodiscard]] std::optional<FocusedGFlow> find_gflow_square(OpenGraph const& g);

/// find_gflow followed by focus.
[[nodiscard]] std::optional<FocusedGFlow> find_focused_gflow(OpenGraph const& g);

[[nodiscard]] nlohmann::json to_json(OpenGraph const& g, GFlow const& f);
[[nodiscard]] nlohmann::json to_json(OpenGraph const& g, FocusedGFlow const& f);
[[nodiscard]] GFlow gflow_from_json(OpenGraph const& g, nlohmann::json const& j);

}  // namespace mbqc
