#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "mbqc/flow.hpp"
#include "mbqc/open_graph.hpp"

namespace mbqc {

/// Default bound on the number of non-outputs for subset enumeration.
inline constexpr std::size_t kDefaultEnumerationCap = 24;

class CapExceeded : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Nonempty W within the non-outputs with Odd(W) inside W u I.
[[nodiscard]] bool is_internal_set(OpenGraph const& g, VertexSet w);
/// Internal set whose local set meets the inputs.
[[nodiscard]] bool is_strongly_internal_set(OpenGraph const& g, VertexSet w);

/// All internal sets, ordered by size then lexicographically. Throws
/// CapExceeded when |O^C| > cap.
[[nodiscard]] std::vector<VertexSet> internal_sets(OpenGraph const& g, std::size_t cap = kDefaultEnumerationCap);
[[nodiscard]] std::vector<VertexSet> strongly_internal_sets(OpenGraph const& g,
                                                            std::size_t cap = kDefaultEnumerationCap);
/// Cheaper emptiness tests; stop at the first set found.
[[nodiscard]] std::optional<VertexSet> first_internal_set(OpenGraph const& g, std::size_t cap = kDefaultEnumerationCap);
[[nodiscard]] std::optional<VertexSet> first_strongly_internal_set(OpenGraph const& g,
                                                                   std::size_t cap = kDefaultEnumerationCap);

struct ClassificationReport {
    bool has_gflow = false;
    bool equiprobable = false;
    bool constant_probability = false;
    std::optional<FocusedGFlow> gflow;
    std::vector<VertexSet> internal_sets;
    std::vector<VertexSet> strongly_internal_sets;
    std::string notes;
};

/// Decides all three classes. Throws std::logic_error if the verdicts break
/// the chain gflow => equiprobable => constant probability.
[[nodiscard]] ClassificationReport classify(OpenGraph const& g, std::size_t cap = kDefaultEnumerationCap);

[[nodiscard]] nlohmann::json to_json(OpenGraph const& g, ClassificationReport const& report);

/// For |I| = |O|: true iff "no internal set" and "has gflow" agree.
[[nodiscard]] bool collapse_check(OpenGraph const& g, std::size_t cap = kDefaultEnumerationCap);

struct Decomposition {
    VertexSet kept;
    VertexSet removed;
    /// Sets removed, in removal order.
    std::vector<VertexSet> steps;
};

/// Repeatedly removes internal sets (which, under constant probability, have
/// no odd neighbours outside themselves) until the remaining open graph has a
/// gflow. Requires |I| = |O| and constant probability.
[[nodiscard]] Decomposition decompose(OpenGraph const& g, std::size_t cap = kDefaultEnumerationCap);

/// For one input and one output, both of degree 1: true iff every vertex that
/// is neither input nor output has even degree in G.
[[nodiscard]] bool eulerian_test(OpenGraph const& g);

enum class Pauli { I, X, Y };
enum class InputState { Plus, Minus, Zero, One };

[[nodiscard]] char const* to_string(Pauli p);
[[nodiscard]] char const* to_string(InputState s);

/// Measurement setting under which some branches provably never occur.
struct WitnessPlan {
    VertexSet w0;
    /// Indexed by vertex.
    std::vector<Pauli> pauli;
    /// Indexed by vertex; meaningful for inputs only.
    std::vector<InputState> input_state;
    /// Indexed by vertex; meaningful for non-outputs only.
    std::vector<double> angles;
    /// Branches whose outcomes on w0 sum to this parity have probability 0.
    int forbidden_parity = 0;

    /// Whether outcome string s, given per vertex, lies in the forbidden class.
    [[nodiscard]] bool forbids(std::vector<int> const& outcome_by_vertex) const;
};

/// Zero-probability witness built from an internal set. Throws
/// std::invalid_argument when w0 is not internal.
[[nodiscard]] WitnessPlan make_witness(OpenGraph const& g, VertexSet w0);

/// Pair of plans differing only in the state of one input u0, the least vertex
/// of L(w0) n I. Branches allowed under the first plan are forbidden under the
/// second. Throws std::invalid_argument when w0 is not strongly internal.
[[nodiscard]] std::pair<WitnessPlan, WitnessPlan> make_distinguishing_witness(OpenGraph const& g, VertexSet w0);
[[nodiscard]] Vertex distinguishing_input(OpenGraph const& g, VertexSet w0);

[[nodiscard]] nlohmann::json to_json(OpenGraph const& g, WitnessPlan const& plan);

}  // namespace mbqc
