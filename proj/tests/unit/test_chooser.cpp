#include <doctest.h>

#include <algorithm>

#include "../support/enumerate.hpp"
#include "fixtures.hpp"
#include "mbqc/chooser.hpp"

using namespace mbqc;
using mbqc::testing::for_each_open_graph;

namespace {

std::vector<VertexSet> violating_by_definition(OpenGraph const& g, VertexSet a) {
    std::vector<VertexSet> out;
    for (std::uint64_t m = 1; m < (std::uint64_t{1} << g.size()); ++m) {
        VertexSet const s(m);
        if (odd_neighborhood(g, s).subset_of(s | a)) out.push_back(s);
    }
    std::sort(out.begin(), out.end(), size_lex_less);
    return out;
}

ViolatingCollection collection(std::vector<VertexSet> sets) { return {VertexSet{}, std::move(sets)}; }

}  // namespace

TEST_CASE("violating collections") {
    auto const p = fixtures::path(2);
    CHECK(violating_collection(p, {}).sets == std::vector<VertexSet>{{0, 1}});
    CHECK(violating_collection(p, {0}).sets == std::vector<VertexSet>{{1}, {0, 1}});

    auto const grid = fixtures::grid();
    for (std::uint64_t a = 0; a < 64; a += 5) {
        auto const c = violating_collection(grid, VertexSet(a));
        CHECK(c.base == VertexSet(a));
        CHECK(c.sets == violating_by_definition(grid, VertexSet(a)));
    }
    CHECK_THROWS_AS((void)violating_collection(grid, {}, 5), CapExceeded);
}

TEST_CASE("transversals") {
    auto const c = collection({{0, 1}, {1, 2}});
    CHECK(is_transversal({1}, c));
    CHECK(is_transversal({0, 2}, c));
    CHECK_FALSE(is_transversal({0}, c));
    CHECK(minimal_transversals(c, 3) == std::vector<VertexSet>{{1}, {0, 2}});
    CHECK(minimal_transversals(c, 1) == std::vector<VertexSet>{{1}});
    CHECK(minimal_transversals(collection({}), 2) == std::vector<VertexSet>{{}});
    CHECK_THROWS_AS((void)minimal_transversals(c, 0), std::invalid_argument);
}

TEST_CASE("minimal transversals agree with exhaustive search") {
    auto const grid = fixtures::grid();
    for (std::uint64_t a = 0; a < 64; a += 3) {
        auto const c = violating_collection(grid, VertexSet(a));
        std::vector<VertexSet> expected;
        for (std::uint64_t m = 0; m < 64; ++m) {
            VertexSet const t(m);
            if (!is_transversal(t, c)) continue;
            bool minimal = true;
            for (Vertex v : t) {
                VertexSet smaller = t;
                smaller.erase(v);
                if (is_transversal(smaller, c)) minimal = false;
            }
            if (minimal) expected.push_back(t);
        }
        std::sort(expected.begin(), expected.end(), size_lex_less);
        CHECK(minimal_transversals(c, 6) == expected);
    }
}

TEST_CASE("output transversals decide equiprobability") {
    for_each_open_graph(5, false, false, [&](OpenGraph const& g) {
        auto const c = violating_collection(g.with_io({}, {}), g.inputs());
        CHECK(is_transversal(g.outputs(), c) == !first_internal_set(g).has_value());
    });
}

TEST_CASE("choose_io on a path") {
    auto const placements = choose_io(fixtures::path(2), 1);
    REQUIRE(placements.size() == 2);
    CHECK(placements[0].inputs == VertexSet{0});
    CHECK(placements[0].outputs == VertexSet{1});
    CHECK(placements[1].inputs == VertexSet{1});
    CHECK(placements[1].outputs == VertexSet{0});
    CHECK(dedupe_by_symmetry(fixtures::path(2), placements).size() == 1);
    CHECK_THROWS_AS((void)choose_io(fixtures::path(2), 3), std::invalid_argument);
}

TEST_CASE("choose_io on the 2x3 grid") {
    auto const grid = fixtures::grid();
    CHECK(choose_io(grid, 1).empty());

    auto placements = choose_io(grid, 2);
    CHECK(placements.size() == 18);
    for (auto const& p : placements) {
        CHECK(p.has_gflow);
        REQUIRE(p.gflow);
        CHECK(verify_gflow(grid.with_io(p.inputs, p.outputs), p.gflow->to_gflow()));
        CHECK_FALSE(p.inputs.intersects(p.outputs));
    }
    auto const counts = mark_representatives(grid, placements);
    CHECK(counts.placements == 5);
    CHECK(counts.input_choices == 3);
    CHECK(std::count_if(placements.begin(), placements.end(), [](auto const& p) { return p.representative; }) == 5);
    CHECK(std::count_if(placements.begin(), placements.end(),
                        [](auto const& p) { return p.input_representative; }) == 3);
    CHECK(dedupe_by_symmetry(grid, placements).size() == 5);

    auto const j = to_json(grid, placements.front());
    CHECK(j.at("inputs").size() == 2);
    CHECK(j.at("gflow").is_object());
}

TEST_CASE("automorphisms") {
    CHECK(automorphisms(fixtures::grid()).size() == 4);
    CHECK(automorphisms(fixtures::path(2)).size() == 2);
    CHECK(automorphisms(fixtures::triangle()).size() == 6);
    CHECK_THROWS_AS((void)automorphisms(OpenGraph::with_default_labels(11, {})), CapExceeded);

    auto const asymmetric =
        OpenGraph::with_default_labels(6, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {2, 5}, {3, 5}});
    REQUIRE(automorphisms(asymmetric).size() == 1);
    std::vector<IoPlacement> all;
    for (std::uint64_t i = 0; i < 6; ++i) {
        all.push_back(IoPlacement{VertexSet::single(static_cast<Vertex>(i)),
                                  VertexSet::single(static_cast<Vertex>((i + 1) % 6)), false, std::nullopt});
    }
    CHECK(dedupe_by_symmetry(asymmetric, all).size() == all.size());
}

TEST_CASE("monotonicity") {
    for_each_open_graph(5, true, false, [&](OpenGraph const& g) {
        if (first_internal_set(g)) return;
        std::uint64_t const in = g.inputs().mask();
        std::uint64_t const free = g.vertices().mask() & ~g.outputs().mask();
        for (std::uint64_t i = in;; i = (i - 1) & in) {
            for (std::uint64_t extra = free;; extra = (extra - 1) & free) {
                CHECK(monotonicity_check(g, VertexSet(i), g.outputs() | VertexSet(extra)));
                if (extra == 0) break;
            }
            if (i == 0) break;
        }
    });
    auto const p = fixtures::path(2, {0}, {1});
    CHECK_THROWS_AS((void)monotonicity_check(p, {1}, {1}), std::invalid_argument);
    CHECK_THROWS_AS((void)monotonicity_check(p, {0}, {}), std::invalid_argument);
}
