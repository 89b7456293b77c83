#include "mbqc/chooser.hpp"

#include <algorithm>
#include <bit>
#include <map>

namespace mbqc {

ViolatingCollection violating_collection(OpenGraph const& g, VertexSet a, std::size_t cap) {
    auto const n = g.size();
    if (n > cap) {
        throw CapExceeded("violating collection over " + std::to_string(n) + " vertices exceeds the cap of " +
                          std::to_string(cap));
    }
    ViolatingCollection c{a, {}};
    VertexSet s;
    VertexSet odd;
    for (std::uint64_t i = 1; i < (std::uint64_t{1} << n); ++i) {
        Vertex const v = static_cast<Vertex>(std::countr_zero(i));
        s.toggle(v);
        odd ^= g.neighbors(v);
        if (((odd - s) - a).empty()) c.sets.push_back(s);
    }
    std::sort(c.sets.begin(), c.sets.end(), size_lex_less);
    return c;
}

bool is_transversal(VertexSet s, ViolatingCollection const& c) {
    return std::all_of(c.sets.begin(), c.sets.end(), [&](VertexSet member) { return member.intersects(s); });
}

namespace {

struct TransversalSearch {
    std::vector<VertexSet> const& sets;
    std::size_t size_cap;
    std::vector<VertexSet> found;

    void run(VertexSet chosen, VertexSet excluded) {
        auto const unhit = std::find_if(sets.begin(), sets.end(), [&](VertexSet s) { return !s.intersects(chosen); });
        if (unhit == sets.end()) {
            found.push_back(chosen);
            return;
        }
        if (chosen.size() == size_cap) return;
        for (Vertex v : *unhit - excluded) {
            run(chosen | VertexSet::single(v), excluded);
            excluded.insert(v);
        }
    }
};

bool is_minimal(VertexSet t, std::vector<VertexSet> const& sets) {
    for (Vertex v : t) {
        VertexSet const smaller = t - VertexSet::single(v);
        bool const still_hits =
            std::all_of(sets.begin(), sets.end(), [&](VertexSet s) { return s.intersects(smaller); });
        if (still_hits) return false;
    }
    return true;
}

}  // namespace

std::vector<VertexSet> minimal_transversals(ViolatingCollection const& c, std::size_t size_cap) {
    if (size_cap == 0) throw std::invalid_argument("minimal_transversals: size cap must be at least 1");
    TransversalSearch search{c.sets, size_cap, {}};
    search.run({}, {});
    std::vector<VertexSet> out;
    for (auto t : search.found) {
        if (is_minimal(t, c.sets)) out.push_back(t);
    }
    std::sort(out.begin(), out.end(), size_lex_less);
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

namespace {

std::vector<VertexSet> k_subsets(std::size_t n, std::size_t k) {
    std::vector<VertexSet> out;
    for (std::uint64_t m = 0; m < (std::uint64_t{1} << n); ++m) {
        if (static_cast<std::size_t>(std::popcount(m)) == k) out.emplace_back(m);
    }
    std::sort(out.begin(), out.end(), lex_less);
    return out;
}

}  // namespace

std::vector<IoPlacement> choose_io(OpenGraph const& g, std::size_t k, std::size_t cap) {
    auto const n = g.size();
    if (k > n) throw std::invalid_argument("choose_io: k exceeds the number of vertices");
    auto const bare = g.with_io({}, {});
    auto const hits_empty = violating_collection(bare, {}, cap);
    auto const candidates = k_subsets(n, k);
    std::vector<IoPlacement> out;
    for (auto inputs : candidates) {
        bool const inputs_ok = is_transversal(inputs, hits_empty);
        auto const hits_inputs = violating_collection(bare, inputs, cap);
        for (auto outputs : candidates) {
            if (inputs.intersects(outputs)) continue;
            bool const criterion = inputs_ok && is_transversal(outputs, hits_inputs);
            auto const open = bare.with_io(inputs, outputs);
            auto gflow = find_focused_gflow(open);
            if (criterion != gflow.has_value()) {
                throw std::logic_error("choose_io: transversal criterion and gflow disagree on I = " +
                                       g.format_set(inputs) + ", O = " + g.format_set(outputs));
            }
            if (criterion) out.push_back(IoPlacement{inputs, outputs, true, std::move(gflow), false});
        }
    }
    return out;
}

std::vector<std::vector<Vertex>> automorphisms(OpenGraph const& g) {
    auto const n = g.size();
    if (n > kAutomorphismCap) {
        throw CapExceeded("automorphism enumeration over " + std::to_string(n) + " vertices exceeds the cap of " +
                          std::to_string(kAutomorphismCap));
    }
    std::vector<std::vector<Vertex>> out;
    std::vector<Vertex> image(n, 0);
    VertexSet used;
    auto extend = [&](auto&& self, Vertex v) -> void {
        if (v == n) {
            out.push_back(image);
            return;
        }
        for (Vertex w = 0; w < n; ++w) {
            if (used.contains(w) || g.degree(w) != g.degree(v)) continue;
            bool consistent = true;
            for (Vertex u = 0; u < v && consistent; ++u) consistent = g.adjacent(u, v) == g.adjacent(image[u], w);
            if (!consistent) continue;
            image[v] = w;
            used.insert(w);
            self(self, v + 1);
            used.erase(w);
        }
    };
    extend(extend, 0);
    return out;
}

namespace {

VertexSet apply(std::vector<Vertex> const& perm, VertexSet s) {
    VertexSet out;
    for (Vertex v : s) out.insert(perm[v]);
    return out;
}

bool placement_less(std::pair<VertexSet, VertexSet> const& a, std::pair<VertexSet, VertexSet> const& b) {
    if (a.first != b.first) return lex_less(a.first, b.first);
    return lex_less(a.second, b.second);
}

}  // namespace

OrbitCount mark_representatives(OpenGraph const& g, std::vector<IoPlacement>& placements) {
    auto const group = automorphisms(g);
    // Orbit key: least image under the group.
    std::vector<std::pair<VertexSet, VertexSet>> keys;
    keys.reserve(placements.size());
    for (auto const& p : placements) {
        std::pair<VertexSet, VertexSet> best{p.inputs, p.outputs};
        for (auto const& perm : group) {
            std::pair<VertexSet, VertexSet> const img{apply(perm, p.inputs), apply(perm, p.outputs)};
            if (placement_less(img, best)) best = img;
        }
        keys.push_back(best);
    }
    // Representative: least member of each orbit present in the list.
    std::map<std::pair<std::uint64_t, std::uint64_t>, std::size_t> chosen;
    for (std::size_t i = 0; i < placements.size(); ++i) {
        auto const key = std::make_pair(keys[i].first.mask(), keys[i].second.mask());
        auto it = chosen.find(key);
        std::pair<VertexSet, VertexSet> const mine{placements[i].inputs, placements[i].outputs};
        if (it == chosen.end()) {
            chosen.emplace(key, i);
        } else {
            auto const& other = placements[it->second];
            if (placement_less(mine, {other.inputs, other.outputs})) it->second = i;
        }
    }
    for (auto& p : placements) p.representative = p.input_representative = false;
    for (auto const& [key, index] : chosen) placements[index].representative = true;

    std::vector<std::uint64_t> seen_inputs;
    for (std::size_t i = 0; i < placements.size(); ++i) {
        auto& p = placements[i];
        if (!p.representative) continue;
        VertexSet least = p.inputs;
        for (auto const& perm : group) {
            VertexSet const img = apply(perm, p.inputs);
            if (lex_less(img, least)) least = img;
        }
        if (std::find(seen_inputs.begin(), seen_inputs.end(), least.mask()) != seen_inputs.end()) continue;
        seen_inputs.push_back(least.mask());
        p.input_representative = true;
    }
    return {chosen.size(), seen_inputs.size()};
}

std::vector<IoPlacement> dedupe_by_symmetry(OpenGraph const& g, std::vector<IoPlacement> const& placements) {
    auto marked = placements;
    mark_representatives(g, marked);
    std::vector<IoPlacement> out;
    for (auto& p : marked) {
        if (p.representative) out.push_back(std::move(p));
    }
    return out;
}

bool monotonicity_check(OpenGraph const& g, VertexSet i2, VertexSet o2, std::size_t cap) {
    if (!i2.subset_of(g.inputs()) || !g.outputs().subset_of(o2) || !o2.subset_of(g.vertices())) {
        throw std::invalid_argument("monotonicity_check requires I' within I and O' containing O");
    }
    return !first_internal_set(g.with_io(i2, o2), cap).has_value();
}

nlohmann::json to_json(OpenGraph const& g, IoPlacement const& placement) {
    auto labels = [&](VertexSet s) {
        nlohmann::json out = nlohmann::json::array();
        for (Vertex v : s) out.push_back(g.label(v));
        return out;
    };
    auto const open = g.with_io(placement.inputs, placement.outputs);
    return {
        {"inputs", labels(placement.inputs)},
        {"outputs", labels(placement.outputs)},
        {"has_gflow", placement.has_gflow},
        {"representative", placement.representative},
        {"input_representative", placement.input_representative},
        {"gflow", placement.gflow ? to_json(open, *placement.gflow) : nlohmann::json(nullptr)},
    };
}

}  // namespace mbqc
