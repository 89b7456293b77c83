#include <doctest.h>

#include <algorithm>
#include <numbers>

#include "../support/enumerate.hpp"
#include "fixtures.hpp"
#include "mbqc/classify.hpp"

using namespace mbqc;
using mbqc::testing::for_each_open_graph;

TEST_CASE("internal sets") {
    CHECK(internal_sets(fixtures::fig1()).empty());

    auto const isolated = OpenGraph::with_default_labels(1, {});
    CHECK(internal_sets(isolated) == std::vector<VertexSet>{{0}});

    auto const tri = fixtures::triangle();
    CHECK(odd_neighborhood(tri, {0, 1}) == VertexSet{0, 1});
    CHECK(internal_sets(tri) == std::vector<VertexSet>{{0, 1}});
    CHECK(first_internal_set(tri) == VertexSet{0, 1});
}

TEST_CASE("strongly internal sets") {
    CHECK(strongly_internal_sets(fixtures::triangle()).empty());
    auto const input = OpenGraph::with_default_labels(1, {}, {0}, {});
    CHECK(strongly_internal_sets(input) == std::vector<VertexSet>{{0}});
    CHECK_FALSE(first_strongly_internal_set(fixtures::fig1()));
}

TEST_CASE("set enumeration agrees with the definition") {
    for_each_open_graph(5, false, false, [&](OpenGraph const& g) {
        auto const all = internal_sets(g);
        auto const strong = strongly_internal_sets(g);
        CHECK(all.empty() == !mbqc::testing::has_internal_set_brute_force(g, false));
        CHECK(strong.empty() == !mbqc::testing::has_internal_set_brute_force(g, true));
        CHECK(first_internal_set(g).has_value() == !all.empty());
        CHECK(first_strongly_internal_set(g).has_value() == !strong.empty());
        for (auto w : all) CHECK(is_internal_set(g, w));
        for (auto w : strong) CHECK(std::find(all.begin(), all.end(), w) != all.end());
        CHECK(std::is_sorted(all.begin(), all.end(), size_lex_less));
    });
}

TEST_CASE("enumeration cap") {
    auto const big = OpenGraph::with_default_labels(26, {});
    CHECK_THROWS_AS((void)internal_sets(big), CapExceeded);
    CHECK_THROWS_AS((void)classify(big), CapExceeded);
    auto const p = fixtures::path(3, {0}, {2});
    CHECK_FALSE(first_internal_set(p, 2).has_value());
    CHECK_THROWS_AS((void)first_internal_set(p, 1), CapExceeded);
    try {
        (void)internal_sets(big);
    } catch (CapExceeded const& e) {
        CHECK(std::string{e.what()}.find("--cap") != std::string::npos);
    }
}

TEST_CASE("classification") {
    auto const fig = classify(fixtures::fig1());
    CHECK_FALSE(fig.has_gflow);
    CHECK(fig.equiprobable);
    CHECK(fig.constant_probability);

    auto const p = classify(fixtures::path(2, {0}, {1}));
    CHECK(p.has_gflow);
    CHECK(p.equiprobable);
    CHECK(p.constant_probability);
    REQUIRE(p.gflow);
    CHECK((*p.gflow)(0) == VertexSet{1});

    auto const j = to_json(fixtures::fig1(), fig);
    CHECK(j.at("equiprobable") == true);
    CHECK(j.at("has_gflow") == false);
}

TEST_CASE("implication chain over every open graph up to six vertices") {
    for_each_open_graph(6, true, false, [&](OpenGraph const& g) {
        auto const r = classify(g);
        CHECK((!r.has_gflow || r.equiprobable));
        CHECK((!r.equiprobable || r.constant_probability));
        CHECK(r.equiprobable == r.internal_sets.empty());
        CHECK(r.constant_probability == r.strongly_internal_sets.empty());
    });
}

TEST_CASE("collapse for |I| = |O|") {
    CHECK(collapse_check(fixtures::path(2, {0}, {1})));
    CHECK_THROWS_AS((void)collapse_check(fixtures::fig1()), std::invalid_argument);
    CHECK(collapse_check(fixtures::grid({0, 3}, {2, 5})));
    CHECK(collapse_check(fixtures::grid({1, 2}, {3, 4})));
    CHECK(collapse_check(fixtures::grid({1, 3}, {0, 4})));
    for_each_open_graph(6, false, true, [&](OpenGraph const& g) { CHECK(collapse_check(g)); });
}

TEST_CASE("decomposition") {
    auto const p = fixtures::path(2, {0}, {1});
    auto const d = decompose(p);
    CHECK(d.removed.empty());
    CHECK(d.kept == p.vertices());

    // Path v1-v2 next to a separate triangle c1 c2 c3.
    auto const g = OpenGraph({"v1", "v2", "c1", "c2", "c3"}, {{0, 1}, {2, 3}, {3, 4}, {2, 4}}, {0}, {1});
    auto const split = decompose(g);
    CHECK(split.removed == VertexSet{2, 3, 4});
    CHECK(split.kept == VertexSet{0, 1});
    CHECK(find_gflow(induced_subgraph(g, split.kept)));

    CHECK_THROWS_AS((void)decompose(fixtures::fig1()), std::invalid_argument);
    CHECK_THROWS_AS((void)decompose(OpenGraph::with_default_labels(2, {}, {0}, {1})), std::invalid_argument);
}

TEST_CASE("decomposition over every qualifying open graph up to six vertices") {
    std::size_t qualifying = 0;
    for_each_open_graph(6, false, true, [&](OpenGraph const& g) {
        if (first_strongly_internal_set(g)) return;
        ++qualifying;
        auto const d = decompose(g);
        CHECK((d.kept | d.removed) == g.vertices());
        CHECK_FALSE(d.kept.intersects(d.removed));
        CHECK(find_gflow(induced_subgraph(g, d.kept)));
        VertexSet gone;
        for (auto step : d.steps) {
            gone |= step;
            CHECK_FALSE(odd_neighborhood(g, gone).intersects(g.vertices() - gone));
        }
        CHECK(gone == d.removed);
    });
    CHECK(qualifying > 1000);
}

TEST_CASE("Eulerian test") {
    // i' - a - o'
    CHECK(eulerian_test(fixtures::path(3, {0}, {2})));
    // i' - a - b - o': a and b have degree 2 in G, and the path has a gflow.
    auto const longer = fixtures::path(4, {0}, {3});
    CHECK(eulerian_test(longer));
    CHECK(strongly_internal_sets(longer).empty());
    // A triangle hanging off the interior: a has degree 4, b and c degree 2.
    auto const lollipop = OpenGraph({"i", "a", "b", "c", "o"}, {{0, 1}, {1, 2}, {2, 3}, {1, 3}, {1, 4}}, {0}, {4});
    CHECK(eulerian_test(lollipop));
    // A pendant interior vertex has odd degree.
    auto const spur = OpenGraph({"i", "a", "b", "o"}, {{0, 1}, {1, 2}, {1, 3}}, {0}, {3});
    CHECK_FALSE(eulerian_test(spur));
    CHECK_FALSE(strongly_internal_sets(spur).empty());

    CHECK_THROWS_AS((void)eulerian_test(fixtures::fig1()), std::invalid_argument);
    CHECK_THROWS_AS((void)eulerian_test(fixtures::triangle({0}, {2})), std::invalid_argument);
}

TEST_CASE("witness plans") {
    auto const isolated = OpenGraph::with_default_labels(1, {});
    auto const w = make_witness(isolated, {0});
    CHECK(w.pauli[0] == Pauli::X);
    CHECK(w.angles[0] == 0.0);
    CHECK(w.forbidden_parity == 1);
    CHECK(w.forbids({1}));
    CHECK_FALSE(w.forbids({0}));

    auto const tri = fixtures::triangle();
    auto const t = make_witness(tri, {0, 1});
    CHECK(t.pauli == std::vector<Pauli>{Pauli::Y, Pauli::Y, Pauli::I});
    CHECK(t.angles[0] == doctest::Approx(std::numbers::pi / 2));
    CHECK(t.angles[1] == doctest::Approx(std::numbers::pi / 2));
    // One internal edge plus one pair of Y factors.
    CHECK(t.forbidden_parity == 1);

    auto const fig = fixtures::fig1();
    CHECK_THROWS_AS((void)make_witness(fig, {0}), std::invalid_argument);

    auto const inputs = OpenGraph::with_default_labels(3, {{0, 1}}, {0, 2}, {});
    auto const plan = make_witness(inputs, {0, 1});
    CHECK(plan.input_state[0] == InputState::Plus);
    CHECK(plan.input_state[2] == InputState::Zero);
}

TEST_CASE("distinguishing witnesses") {
    auto const input = OpenGraph::with_default_labels(1, {}, {0}, {});
    CHECK(distinguishing_input(input, {0}) == 0);
    auto const [first, second] = make_distinguishing_witness(input, {0});
    CHECK(first.input_state[0] == InputState::Plus);
    CHECK(second.input_state[0] == InputState::Minus);
    CHECK(first.forbidden_parity != second.forbidden_parity);

    // u0 outside W0: W0 = {b} on the path a - b with a the input, b measured.
    auto const g = OpenGraph({"a", "b", "c"}, {{0, 1}}, {0}, {2});
    REQUIRE(is_strongly_internal_set(g, {1}));
    auto const [p0, p1] = make_distinguishing_witness(g, {1});
    CHECK(p0.input_state[0] == InputState::Zero);
    CHECK(p1.input_state[0] == InputState::One);

    CHECK_THROWS_AS((void)make_distinguishing_witness(fixtures::triangle(), {0, 1}), std::invalid_argument);
}
