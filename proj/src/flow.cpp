#include "mbqc/flow.hpp"

#include <algorithm>
#include <numeric>

namespace mbqc {

std::size_t GFlow::depth() const {
    return layer.empty() ? 0 : *std::max_element(layer.begin(), layer.end());
}

bool is_acyclic(std::vector<VertexSet> const& successors) {
    // Kahn's algorithm.
    auto const n = successors.size();
    std::vector<std::size_t> indegree(n, 0);
    for (auto const& s : successors) {
        for (Vertex v : s) {
            if (v >= n) throw FlowError("successor out of range");
            ++indegree[v];
        }
    }
    std::vector<Vertex> ready;
    for (Vertex v = 0; v < n; ++v) {
        if (indegree[v] == 0) ready.push_back(v);
    }
    std::size_t visited = 0;
    while (!ready.empty()) {
        Vertex const u = ready.back();
        ready.pop_back();
        ++visited;
        for (Vertex v : successors[u]) {
            if (--indegree[v] == 0) ready.push_back(v);
        }
    }
    return visited == n;
}

namespace {

// Longest path to a sink, sinks at 0. Precondition: acyclic.
std::vector<std::size_t> longest_path_layers(std::vector<VertexSet> const& successors) {
    auto const n = successors.size();
    std::vector<std::size_t> layer(n, 0);
    std::vector<bool> done(n, false);
    // n <= 64, so a fixed-point sweep is cheap enough.
    bool changed = true;
    while (changed) {
        changed = false;
        for (Vertex u = 0; u < n; ++u) {
            std::size_t best = 0;
            for (Vertex v : successors[u]) best = std::max(best, layer[v] + 1);
            if (best != layer[u]) {
                layer[u] = best;
                changed = true;
            }
        }
    }
    return layer;
}

void check_shape(OpenGraph const& g, std::vector<VertexSet> const& correction) {
    if (correction.size() != g.size()) throw FlowError("correction function has the wrong number of entries");
    for (Vertex u = 0; u < g.size(); ++u) {
        if (g.outputs().contains(u)) {
            if (!correction[u].empty()) throw FlowError("output " + g.label(u) + " has a correction set");
        } else if (!correction[u].subset_of(g.non_inputs())) {
            throw FlowError("correction set of " + g.label(u) + " contains an input");
        }
    }
}

}  // namespace

FocusedGFlow::FocusedGFlow(OpenGraph const& g, std::vector<VertexSet> correction) : _correction{std::move(correction)} {
    check_shape(g, _correction);
    if (!is_acyclic(_correction)) throw FlowError("successor relation of the correction function has a cycle");
    for (Vertex u : g.non_outputs()) {
        if ((odd_neighborhood(g, _correction[u]) & g.non_outputs()) != VertexSet::single(u)) {
            throw FlowError("Odd(g(" + g.label(u) + ")) does not meet the non-outputs exactly in {" + g.label(u) + "}");
        }
    }
}

GFlow FocusedGFlow::to_gflow() const {
    auto layer = longest_path_layers(_correction);
    // Every non-output precedes every output; non-outputs already have a
    // successor so they sit at layer >= 1.
    return GFlow{_correction, std::move(layer)};
}

bool Dag::is_acyclic() const { return mbqc::is_acyclic(successors); }

std::vector<std::pair<Vertex, Vertex>> Dag::arcs() const {
    std::vector<std::pair<Vertex, Vertex>> out;
    for (Vertex u = 0; u < successors.size(); ++u) {
        for (Vertex v : successors[u]) out.emplace_back(u, v);
    }
    return out;
}

gf2::BitMatrix Dag::restricted_matrix(VertexSet row_set, VertexSet col_set) const {
    auto const rows = row_set.members();
    auto const cols = col_set.members();
    gf2::BitMatrix m(rows.size(), cols.size());
    for (std::size_t c = 0; c < cols.size(); ++c) {
        for (std::size_t r = 0; r < rows.size(); ++r) {
            if (successors.at(cols[c]).contains(rows[r])) m.set(r, c);
        }
    }
    m.set_labels(rows, cols);
    return m;
}

std::optional<GFlow> find_gflow(OpenGraph const& g) {
    auto const n = g.size();
    GFlow f{std::vector<VertexSet>(n), std::vector<std::size_t>(n, 0)};
    VertexSet assigned = g.outputs();
    std::size_t layer = 0;
    while (true) {
        VertexSet const unassigned = g.vertices() - assigned;
        VertexSet const candidates = assigned & g.non_inputs();
        if (unassigned.empty()) break;
        auto const system = induced_adjacency_matrix(g, unassigned, candidates);
        VertexSet solved;
        for (Vertex u : unassigned) {
            auto const k = gf2::solve(system, indicator(VertexSet::single(u), unassigned));
            if (!k) continue;
            f.correction[u] = from_indicator(*k, candidates);
            solved.insert(u);
        }
        if (solved.empty()) return std::nullopt;
        ++layer;
        for (Vertex u : solved) f.layer[u] = layer;
        assigned |= solved;
    }
    if (!verify_gflow(g, f)) throw std::logic_error("find_gflow produced an invalid gflow");
    return f;
}

bool verify_gflow(OpenGraph const& g, GFlow const& f) {
    if (f.correction.size() != g.size() || f.layer.size() != g.size()) return false;
    for (Vertex u = 0; u < g.size(); ++u) {
        if (g.outputs().contains(u)) {
            if (!f.correction[u].empty()) return false;
            continue;
        }
        VertexSet const gu = f.correction[u];
        if (!gu.subset_of(g.non_inputs())) return false;
        for (Vertex v : gu) {
            if (!f.precedes(u, v)) return false;
        }
        VertexSet const odd = odd_neighborhood(g, gu);
        if (!odd.contains(u)) return false;
        for (Vertex v : odd - VertexSet::single(u)) {
            if (!f.precedes(u, v)) return false;
        }
    }
    return true;
}

FocusedGFlow focus(OpenGraph const& g, GFlow const& f) {
    if (!verify_gflow(g, f)) throw FlowError("focus: input is not a gflow of the open graph");
    std::vector<Vertex> order = g.non_outputs().members();
    // Corrections of v with u < v are finished before u is visited.
    std::stable_sort(order.begin(), order.end(), [&](Vertex a, Vertex b) { return f.layer[a] < f.layer[b]; });
    std::vector<VertexSet> focused(g.size());
    for (Vertex u : order) {
        VertexSet gu = f.correction[u];
        VertexSet const extra = (odd_neighborhood(g, f.correction[u]) & g.non_outputs()) - VertexSet::single(u);
        for (Vertex v : extra) gu ^= focused[v];
        focused[u] = gu;
    }
    return FocusedGFlow{g, std::move(focused)};
}

Dag focused_to_dag(FocusedGFlow const& f) { return Dag{f.correction()}; }

FocusedGFlow dag_to_focused(OpenGraph const& g, Dag const& d) {
    if (d.successors.size() != g.size()) throw FlowError("dag_to_focused: DAG has the wrong number of vertices");
    if (!d.is_acyclic()) throw FlowError("dag_to_focused: directed graph has a cycle");
    auto const product = induced_adjacency_matrix(g) * d.restricted_matrix(g.non_inputs(), g.non_outputs());
    if (!product.is_identity()) throw FlowError("dag_to_focused: not a right inverse of the induced adjacency matrix");
    std::vector<VertexSet> correction(g.size());
    for (Vertex u : g.non_outputs()) correction[u] = d.successors[u] & g.non_inputs();
    return FocusedGFlow{g, std::move(correction)};
}

std::optional<FocusedGFlow> find_focused_gflow(OpenGraph const& g) {
    auto f = find_gflow(g);
    if (!f) return std::nullopt;
    return focus(g, *f);
}

std::optional<FocusedGFlow> reverse_gflow(OpenGraph const& g) {
    if (g.inputs().size() != g.outputs().size()) throw FlowError("reverse_gflow requires |I| = |O|");
    auto const forward = find_focused_gflow(g);
    if (!forward) return std::nullopt;
    std::vector<VertexSet> reversed(g.size());
    for (Vertex u : g.non_outputs()) {
        for (Vertex v : (*forward)(u)) reversed[v].insert(u);
    }
    return FocusedGFlow{swapped(g), std::move(reversed)};
}

std::optional<FocusedGFlow> find_gflow_square(OpenGraph const& g) {
    if (g.inputs().size() != g.outputs().size()) throw FlowError("find_gflow_square requires |I| = |O|");
    auto const inverse = gf2::invert(induced_adjacency_matrix(g));
    if (!inverse) return std::nullopt;
    // Rows of the inverse are I^C, columns O^C; column u lists g(u).
    auto const rows = g.non_inputs().members();
    auto const cols = g.non_outputs().members();
    std::vector<VertexSet> correction(g.size());
    for (std::size_t c = 0; c < cols.size(); ++c) {
        for (std::size_t r = 0; r < rows.size(); ++r) {
            if ((*inverse)(r, c)) correction[cols[c]].insert(rows[r]);
        }
    }
    if (!is_acyclic(correction)) return std::nullopt;
    return FocusedGFlow{g, std::move(correction)};
}

nlohmann::json to_json(OpenGraph const& g, GFlow const& f) {
    nlohmann::json corr = nlohmann::json::object();
    nlohmann::json layers = nlohmann::json::object();
    for (Vertex v = 0; v < g.size(); ++v) {
        if (!g.outputs().contains(v)) {
            std::vector<std::string> names;
            for (Vertex w : f.correction[v]) names.push_back(g.label(w));
            corr[g.label(v)] = names;
        }
        layers[g.label(v)] = f.layer[v];
    }
    return {{"g", corr}, {"layers", layers}};
}

nlohmann::json to_json(OpenGraph const& g, FocusedGFlow const& f) { return to_json(g, f.to_gflow()); }

GFlow gflow_from_json(OpenGraph const& g, nlohmann::json const& j) {
    auto lookup = [&](std::string const& name) {
        auto v = g.find(name);
        if (!v) throw FlowError("gflow JSON: unknown vertex '" + name + "'");
        return *v;
    };
    GFlow f{std::vector<VertexSet>(g.size()), std::vector<std::size_t>(g.size(), 0)};
    for (auto const& [key, value] : j.at("g").items()) {
        Vertex const u = lookup(key);
        for (auto const& name : value) f.correction[u].insert(lookup(name.get<std::string>()));
    }
    for (auto const& [key, value] : j.at("layers").items()) f.layer[lookup(key)] = value.get<std::size_t>();
    return f;
}

}  // namespace mbqc
