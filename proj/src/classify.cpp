#include "mbqc/classify.hpp"

#include <algorithm>
#include <bit>
#include <numbers>

namespace mbqc {

bool is_internal_set(OpenGraph const& g, VertexSet w) {
    return !w.empty() && w.subset_of(g.non_outputs()) && odd_neighborhood(g, w).subset_of(w | g.inputs());
}

bool is_strongly_internal_set(OpenGraph const& g, VertexSet w) {
    return is_internal_set(g, w) && local_set(g, w).intersects(g.inputs());
}

namespace {

// Visits every nonempty W within the non-outputs in Gray-code order, passing
// W and Odd(W). Stops early when the visitor returns false.
template <typename Visitor>
void for_each_nonempty_subset(OpenGraph const& g, std::size_t cap, Visitor&& visit) {
    auto const domain = g.non_outputs().members();
    if (domain.size() > cap) {
        throw CapExceeded("subset enumeration over " + std::to_string(domain.size()) +
                          " non-outputs exceeds the cap of " + std::to_string(cap) + " (raise it with --cap)");
    }
    VertexSet w;
    VertexSet odd;
    std::uint64_t const count = std::uint64_t{1} << domain.size();
    for (std::uint64_t i = 1; i < count; ++i) {
        Vertex const v = domain[static_cast<std::size_t>(std::countr_zero(i))];
        w.toggle(v);
        odd ^= g.neighbors(v);
        if (!visit(w, odd)) return;
    }
}

std::vector<VertexSet> sorted(std::vector<VertexSet> sets) {
    std::sort(sets.begin(), sets.end(), size_lex_less);
    return sets;
}

}  // namespace

std::vector<VertexSet> internal_sets(OpenGraph const& g, std::size_t cap) {
    std::vector<VertexSet> out;
    VertexSet const inputs = g.inputs();
    for_each_nonempty_subset(g, cap, [&](VertexSet w, VertexSet odd) {
        if (odd.subset_of(w | inputs)) out.push_back(w);
        return true;
    });
    return sorted(std::move(out));
}

std::vector<VertexSet> strongly_internal_sets(OpenGraph const& g, std::size_t cap) {
    std::vector<VertexSet> out;
    VertexSet const inputs = g.inputs();
    for_each_nonempty_subset(g, cap, [&](VertexSet w, VertexSet odd) {
        if (odd.subset_of(w | inputs) && (odd | w).intersects(inputs)) out.push_back(w);
        return true;
    });
    return sorted(std::move(out));
}

std::optional<VertexSet> first_internal_set(OpenGraph const& g, std::size_t cap) {
    std::optional<VertexSet> found;
    VertexSet const inputs = g.inputs();
    for_each_nonempty_subset(g, cap, [&](VertexSet w, VertexSet odd) {
        if (odd.subset_of(w | inputs)) found = w;
        return !found;
    });
    return found;
}

std::optional<VertexSet> first_strongly_internal_set(OpenGraph const& g, std::size_t cap) {
    std::optional<VertexSet> found;
    VertexSet const inputs = g.inputs();
    for_each_nonempty_subset(g, cap, [&](VertexSet w, VertexSet odd) {
        if (odd.subset_of(w | inputs) && (odd | w).intersects(inputs)) found = w;
        return !found;
    });
    return found;
}

ClassificationReport classify(OpenGraph const& g, std::size_t cap) {
    ClassificationReport r;
    r.internal_sets = internal_sets(g, cap);
    VertexSet const inputs = g.inputs();
    for (auto w : r.internal_sets) {
        if (local_set(g, w).intersects(inputs)) r.strongly_internal_sets.push_back(w);
    }
    r.gflow = find_focused_gflow(g);
    r.has_gflow = r.gflow.has_value();
    r.equiprobable = r.internal_sets.empty();
    r.constant_probability = r.strongly_internal_sets.empty();

    if ((r.has_gflow && !r.equiprobable) || (r.equiprobable && !r.constant_probability)) {
        throw std::logic_error("classify: verdicts violate gflow => equiprobable => constant probability");
    }

    if (r.has_gflow) {
        r.notes = "gflow found: uniformly strongly deterministic";
    } else if (r.equiprobable) {
        r.notes = "no gflow, but no internal set: uniformly equiprobable";
    } else if (r.constant_probability) {
        r.notes = "internal sets exist, all away from the inputs: uniformly constant probability";
    } else {
        r.notes = "strongly internal set exists: branch probabilities can depend on the input";
    }
    if (g.inputs().size() > g.outputs().size()) r.notes += "; |I| > |O| rules out a gflow";
    if (g.inputs().size() == g.outputs().size() && r.equiprobable != r.has_gflow) {
        throw std::logic_error("classify: |I| = |O| but equiprobability and gflow disagree");
    }
    return r;
}

namespace {

nlohmann::json labels_of(OpenGraph const& g, VertexSet s) {
    nlohmann::json out = nlohmann::json::array();
    for (Vertex v : s) out.push_back(g.label(v));
    return out;
}

}  // namespace

nlohmann::json to_json(OpenGraph const& g, ClassificationReport const& report) {
    nlohmann::json internal = nlohmann::json::array();
    for (auto w : report.internal_sets) internal.push_back(labels_of(g, w));
    nlohmann::json strongly = nlohmann::json::array();
    for (auto w : report.strongly_internal_sets) strongly.push_back(labels_of(g, w));
    return {
        {"has_gflow", report.has_gflow},
        {"equiprobable", report.equiprobable},
        {"constant_probability", report.constant_probability},
        {"gflow", report.gflow ? to_json(g, *report.gflow) : nlohmann::json(nullptr)},
        {"internal_sets", internal},
        {"strongly_internal_sets", strongly},
        {"notes", report.notes},
    };
}

bool collapse_check(OpenGraph const& g, std::size_t cap) {
    if (g.inputs().size() != g.outputs().size()) throw std::invalid_argument("collapse_check requires |I| = |O|");
    bool const no_internal = !first_internal_set(g, cap).has_value();
    bool const gflow = find_gflow(g).has_value();
    return no_internal == gflow;
}

Decomposition decompose(OpenGraph const& g, std::size_t cap) {
    if (g.inputs().size() != g.outputs().size()) throw std::invalid_argument("decompose requires |I| = |O|");
    if (first_strongly_internal_set(g, cap)) {
        throw std::invalid_argument("decompose requires uniform constant probability");
    }
    Decomposition d{g.vertices(), {}, {}};
    while (true) {
        auto const sub = induced_subgraph(g, d.kept);
        auto const w = first_internal_set(sub, cap);
        if (!w) break;
        auto const kept_members = d.kept.members();
        VertexSet removed;
        for (Vertex v : *w) removed.insert(kept_members[v]);
        d.kept -= removed;
        d.removed |= removed;
        d.steps.push_back(removed);
        if (odd_neighborhood(g, removed).intersects(d.kept)) {
            throw std::logic_error("decompose: removed set has odd neighbours in the kept part");
        }
    }
    if (!find_gflow(induced_subgraph(g, d.kept))) throw std::logic_error("decompose: kept part has no gflow");
    return d;
}

bool eulerian_test(OpenGraph const& g) {
    if (g.inputs().size() != 1 || g.outputs().size() != 1 || g.inputs() == g.outputs()) {
        throw std::invalid_argument("eulerian_test requires one input and one distinct output");
    }
    Vertex const i = g.inputs().front();
    Vertex const o = g.outputs().front();
    if (g.degree(i) != 1 || g.degree(o) != 1) {
        throw std::invalid_argument("eulerian_test requires input and output of degree 1 (apply io_extension first)");
    }
    for (Vertex v : g.vertices() - g.inputs() - g.outputs()) {
        if (g.degree(v) % 2 != 0) return false;
    }
    return true;
}

char const* to_string(Pauli p) {
    switch (p) {
        case Pauli::I: return "I";
        case Pauli::X: return "X";
        case Pauli::Y: return "Y";
    }
    return "?";
}

char const* to_string(InputState s) {
    switch (s) {
        case InputState::Plus: return "plus";
        case InputState::Minus: return "minus";
        case InputState::Zero: return "zero";
        case InputState::One: return "one";
    }
    return "?";
}

bool WitnessPlan::forbids(std::vector<int> const& outcome_by_vertex) const {
    int parity = 0;
    for (Vertex v : w0) parity ^= outcome_by_vertex.at(v) & 1;
    return parity == forbidden_parity;
}

WitnessPlan make_witness(OpenGraph const& g, VertexSet w0) {
    if (!is_internal_set(g, w0)) throw std::invalid_argument("make_witness: " + g.format_set(w0) + " is not internal");
    auto const n = g.size();
    VertexSet const odd = odd_neighborhood(g, w0);
    WitnessPlan plan{w0, std::vector<Pauli>(n, Pauli::I), std::vector<InputState>(n, InputState::Zero),
                     std::vector<double>(n, 0.0), 0};
    for (Vertex v : w0) {
        bool const in_odd = odd.contains(v);
        plan.pauli[v] = in_odd ? Pauli::Y : Pauli::X;
        plan.angles[v] = in_odd ? std::numbers::pi / 2 : 0.0;
    }
    for (Vertex v : g.inputs() & w0) plan.input_state[v] = InputState::Plus;
    // Each Y contributes a factor -i to the stabilizer product; there is an
    // even number of them.
    std::size_t const y_count = (w0 & odd).size();
    plan.forbidden_parity = static_cast<int>((1 + internal_edge_count(g, w0) + y_count / 2) % 2);
    return plan;
}

Vertex distinguishing_input(OpenGraph const& g, VertexSet w0) {
    if (!is_strongly_internal_set(g, w0)) {
        throw std::invalid_argument("make_distinguishing_witness: " + g.format_set(w0) + " is not strongly internal");
    }
    return (local_set(g, w0) & g.inputs()).front();
}

std::pair<WitnessPlan, WitnessPlan> make_distinguishing_witness(OpenGraph const& g, VertexSet w0) {
    Vertex const u0 = distinguishing_input(g, w0);
    WitnessPlan first = make_witness(g, w0);
    WitnessPlan second = first;
    // The stabilizer acts on u0 as X when u0 is in w0 and as Z otherwise; its
    // two eigenstates flip the parity of the allowed outcomes.
    if (w0.contains(u0)) {
        first.input_state[u0] = InputState::Plus;
        second.input_state[u0] = InputState::Minus;
    } else {
        first.input_state[u0] = InputState::Zero;
        second.input_state[u0] = InputState::One;
    }
    second.forbidden_parity ^= 1;
    return {first, second};
}

nlohmann::json to_json(OpenGraph const& g, WitnessPlan const& plan) {
    nlohmann::json pauli = nlohmann::json::object();
    nlohmann::json inputs = nlohmann::json::object();
    nlohmann::json angles = nlohmann::json::object();
    for (Vertex v = 0; v < g.size(); ++v) {
        pauli[g.label(v)] = to_string(plan.pauli[v]);
        if (g.inputs().contains(v)) inputs[g.label(v)] = to_string(plan.input_state[v]);
        if (!g.outputs().contains(v)) angles[g.label(v)] = plan.angles[v];
    }
    return {
        {"w0", labels_of(g, plan.w0)},
        {"pauli", pauli},
        {"input_state", inputs},
        {"angles", angles},
        {"forbidden_parity", plan.forbidden_parity},
    };
}

}  // namespace mbqc
