#pragma once

#include <optional>
#include <vector>

#include <json.hpp>

#include "mbqc/classify.hpp"
#include "mbqc/flow.hpp"
#include "mbqc/open_graph.hpp"

namespace mbqc {

/// Automorphism enumeration is brute force; refused above this size.
inline constexpr std::size_t kAutomorphismCap = 10;

/// All nonempty S with Odd(S) n S^C n A^C empty: the internal sets that lie
/// outside A once A is taken as the input set.
struct ViolatingCollection {
    VertexSet base;
    std::vector<VertexSet> sets;
};

/// Inputs and outputs of g are ignored. Sets are ordered by size, then
/// lexicographically. Throws CapExceeded when n > cap.
[[nodiscard]] ViolatingCollection violating_collection(OpenGraph const& g, VertexSet a,
                                                       std::size_t cap = kDefaultEnumerationCap);

[[nodiscard]] bool is_transversal(VertexSet s, ViolatingCollection const& c);

/// Inclusion-minimal transversals with at most size_cap vertices, ordered by
/// size then lexicographically. Branches on the elements of the first set not
/// yet hit, excluding elements already tried at the same branch point.
[[nodiscard]] std::vector<VertexSet> minimal_transversals(ViolatingCollection const& c, std::size_t size_cap);

struct IoPlacement {
    VertexSet inputs;
    VertexSet outputs;
    bool has_gflow = false;
    std::optional<FocusedGFlow> gflow;
    /// Set by mark_representatives on the representative of each orbit.
    bool representative = false;
    /// Set on the first representative whose input set starts a new orbit of
    /// input sets.
    bool input_representative = false;
};

struct OrbitCount {
    /// Orbits of (I, O) pairs.
    std::size_t placements = 0;
    /// Orbits of the input sets alone.
    std::size_t input_choices = 0;
};

/// Every (I, O) with |I| = |O| = k, I and O disjoint, I hitting E_empty and O
/// hitting E_I. Each candidate's gflow is computed and must agree with the
/// transversal criterion (std::logic_error otherwise). Throws
/// std::invalid_argument for k > n.
[[nodiscard]] std::vector<IoPlacement> choose_io(OpenGraph const& g, std::size_t k,
                                                 std::size_t cap = kDefaultEnumerationCap);

/// All permutations p of the vertices with u ~ v iff p(u) ~ p(v). Throws
/// CapExceeded above kAutomorphismCap vertices.
[[nodiscard]] std::vector<std::vector<Vertex>> automorphisms(OpenGraph const& g);

/// One placement per orbit of the automorphism group acting on (I, O): the
/// lexicographically least member of the orbit found in the list.
[[nodiscard]] std::vector<IoPlacement> dedupe_by_symmetry(OpenGraph const& g, std::vector<IoPlacement> const& placements);

/// Marks the orbit representatives in place and counts both kinds of orbit.
OrbitCount mark_representatives(OpenGraph const& g, std::vector<IoPlacement>& placements);

/// Whether (G, i2, o2) is uniformly equiprobable, for i2 within I and o2
/// containing O. Throws std::invalid_argument otherwise.
[[nodiscard]] bool monotonicity_check(OpenGraph const& g, VertexSet i2, VertexSet o2,
                                      std::size_t cap = kDefaultEnumerationCap);

[[nodiscard]] nlohmann::json to_json(OpenGraph const& g, IoPlacement const& placement);

}  // namespace mbqc
