#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "../support/enumerate.hpp"
#include "fixtures.hpp"
#include "mbqc/sim.hpp"

using namespace mbqc;
using namespace mbqc::sim;
using mbqc::testing::for_each_open_graph;

namespace {

using Complex = std::complex<double>;
constexpr double kPi = std::numbers::pi;

bool bit(std::size_t index, std::size_t n, std::size_t position) { return (index >> (n - 1 - position)) & 1u; }

// N as a 2^n x 2^|I| matrix, written from the closed form
// N|x> = 2^{-|I^C|/2} sum over y extending x of (-1)^{q(y)} |y>.
Matrix open_graph_state(OpenGraph const& g) {
    auto const n = g.size();
    auto const inputs = g.inputs().members();
    double const norm = std::pow(2.0, -0.5 * static_cast<double>(n - inputs.size()));
    Matrix out = Matrix::Zero(std::size_t{1} << n, std::size_t{1} << inputs.size());
    for (std::size_t y = 0; y < out.rows(); ++y) {
        std::size_t x = 0;
        for (auto v : inputs) x = (x << 1) | bit(y, n, v);
        int q = 0;
        for (auto [u, v] : g.edges()) q += bit(y, n, u) && bit(y, n, v);
        out(y, x) = norm * (q % 2 ? -1.0 : 1.0);
    }
    return out;
}

// Applies the 2x2 matrix a to qubit `position` of every column.
Matrix on_qubit(Matrix const& m, std::size_t n, std::size_t position, Eigen::Matrix2cd const& a) {
    Matrix out = Matrix::Zero(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i) {
        int const b = bit(i, n, position);
        std::size_t const flipped = i ^ (std::size_t{1} << (n - 1 - position));
        out.row(i) += a(b, b) * m.row(i);
        out.row(flipped) += a(1 - b, b) * m.row(i);
    }
    return out;
}

// Branch map by explicit full-register operators: each measurement becomes
// |0><+_theta| on its qubit, and the amplitudes with all measured qubits at 0
// are read off at the end.
Matrix branch_oracle(OpenGraph const& g, MeasurementPlan const& plan, std::size_t s) {
    auto const n = g.size();
    auto const measured = g.non_outputs().members();
    Matrix m = open_graph_state(g);
    Eigen::Matrix2cd x, z;
    x << 0, 1, 1, 0;
    z << 1, 0, 0, -1;
    for (Vertex u : plan.order) {
        auto const k = static_cast<std::size_t>(std::find(measured.begin(), measured.end(), u) - measured.begin());
        int const outcome = (s >> k) & 1u;
        double const theta = plan.angles[u] + outcome * kPi;
        Eigen::Matrix2cd project;
        project << 1.0 / std::sqrt(2.0), std::exp(Complex(0, -theta)) / std::sqrt(2.0), 0, 0;
        m = on_qubit(m, n, u, project);
        if (!outcome) continue;
        for (Vertex v : plan.x[u]) m = on_qubit(m, n, v, x);
        for (Vertex v : plan.z[u]) m = on_qubit(m, n, v, z);
        if (plan.sign[u]) m = -m;
    }
    auto const outputs = g.outputs().members();
    Matrix out = Matrix::Zero(std::size_t{1} << outputs.size(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i) {
        bool const measured_zero =
            std::all_of(measured.begin(), measured.end(), [&](Vertex v) { return !bit(i, n, v); });
        if (!measured_zero) continue;
        std::size_t row = 0;
        for (auto v : outputs) row = (row << 1) | bit(i, n, v);
        out.row(row) = m.row(i);
    }
    return out;
}

MeasurementPlan random_plan(OpenGraph const& g, std::mt19937_64& rng) {
    auto plan = uncorrected_plan(g, random_angles(g, rng));
    std::shuffle(plan.order.begin(), plan.order.end(), rng);
    std::bernoulli_distribution coin(0.5);
    VertexSet later = g.outputs();
    for (auto it = plan.order.rbegin(); it != plan.order.rend(); ++it) {
        for (Vertex v : later) {
            if (coin(rng)) plan.x[*it].insert(v);
            if (coin(rng)) plan.z[*it].insert(v);
        }
        plan.sign[*it] = coin(rng);
        later.insert(*it);
    }
    return plan;
}

Vector basis(std::size_t dim, std::size_t i) {
    Vector v = Vector::Zero(dim);
    v(i) = 1;
    return v;
}

}  // namespace

TEST_CASE("preparation") {
    auto const p = fixtures::path(2, {0}, {1});
    double const h = 1 / std::sqrt(2.0);
    auto const zero = prepare(p, basis(2, 0));
    CHECK(zero.qubits == std::vector<Vertex>{0, 1});
    CHECK((zero.amplitudes - Vector{{h, h, 0, 0}}).norm() < 1e-12);
    auto const one = prepare(p, basis(2, 1));
    CHECK((one.amplitudes - Vector{{0, 0, h, -h}}).norm() < 1e-12);
    CHECK(zero.bit_of(0) == 1);
    CHECK(zero.bit_of(1) == 0);
    CHECK_THROWS_AS((void)prepare(p, basis(4, 0)), SimError);

    std::mt19937_64 rng(7);
    for_each_open_graph(4, false, false, [&](OpenGraph const& g) {
        auto const phi = random_state(g.inputs().size(), rng);
        CHECK((prepare(g, phi).amplitudes - open_graph_state(g) * phi).norm() < 1e-12);
    });
}

TEST_CASE("single-qubit operations") {
    auto state = prepare(OpenGraph::with_default_labels(1, {}), Vector{{1.0}});
    auto const dropped = project(state, 0, 0.0);
    CHECK(dropped.qubits.empty());
    CHECK(std::abs(dropped.amplitudes(0) - 1.0) < 1e-12);
    CHECK(std::abs(project(state, 0, kPi).amplitudes(0)) < 1e-12);
    apply_z(state, 0);
    CHECK(std::abs(project(state, 0, kPi).amplitudes(0) - 1.0) < 1e-12);
    apply_x(state, 0);
    CHECK(std::abs(project(state, 0, kPi).amplitudes(0) + 1.0) < 1e-12);
}

TEST_CASE("branch maps agree with the explicit operator product") {
    std::mt19937_64 rng(11);
    for_each_open_graph(4, false, false, [&](OpenGraph const& g) {
        auto const plan = random_plan(g, rng);
        auto const table = run_branches(g, plan);
        CHECK(table.branch_count() == (std::size_t{1} << g.non_outputs().size()));
        for (std::size_t s = 0; s < table.branch_count(); ++s) {
            CHECK((table.maps[s] - branch_oracle(g, plan, s)).norm() < 1e-12);
        }
        CHECK(completeness_error(table) < 1e-12);
    });
}

TEST_CASE("output corrections do not change branch probabilities") {
    std::mt19937_64 rng(3);
    for_each_open_graph(4, true, false, [&](OpenGraph const& g) {
        auto corrected = random_plan(g, rng);
        for (Vertex u : g.non_outputs()) {
            corrected.x[u] = corrected.x[u] & g.outputs();
            corrected.z[u] = corrected.z[u] & g.outputs();
        }
        auto bare = uncorrected_plan(g, corrected.angles);
        bare.order = corrected.order;
        auto const phi = random_state(g.inputs().size(), rng);
        auto const p = run_branches(g, corrected).probabilities(phi);
        auto const q = run_branches(g, bare).probabilities(phi);
        for (std::size_t s = 0; s < p.size(); ++s) CHECK(p[s] == doctest::Approx(q[s]).epsilon(1e-9));
    });
}

TEST_CASE("gflow corrections make runs strongly deterministic") {
    auto const p = fixtures::path(3, {0}, {2});
    auto const f = find_focused_gflow(p);
    REQUIRE(f);
    auto plan = corrections_from_gflow(p, *f);
    plan.angles = {0.3, 1.1, 0.0};
    auto const check = check_strong_determinism(run_branches(p, plan));
    CHECK(check.deterministic);
    CHECK(check.residual < 1e-9);
    CHECK(check.isometry_error < 1e-9);

    auto const bare = uncorrected_plan(p, plan.angles);
    auto const loose = check_strong_determinism(run_branches(p, bare));
    CHECK_FALSE(loose.deterministic);
    CHECK(loose.residual > 0.1);

    std::mt19937_64 rng(5);
    for_each_open_graph(4, false, false, [&](OpenGraph const& g) {
        auto const flow = find_focused_gflow(g);
        if (!flow) return;
        auto det = corrections_from_gflow(g, *flow);
        det.angles = random_angles(g, rng);
        CHECK(check_strong_determinism(run_branches(g, det)).deterministic);
    });
}

TEST_CASE("all-output graphs have a single branch") {
    auto const g = fixtures::path(2, {}, {0, 1});
    auto const table = run_branches(g, uncorrected_plan(g, {0.0, 0.0}));
    CHECK(table.branch_count() == 1);
    CHECK(table.maps[0].rows() == 4);
    CHECK(table.maps[0].cols() == 1);
}

TEST_CASE("branch outcomes") {
    auto const g = fixtures::path(3, {0}, {2});
    auto const table = run_branches(g, uncorrected_plan(g, {0.0, 0.0, 0.0}));
    CHECK(table.measured == std::vector<Vertex>{0, 1});
    CHECK(table.outcome(1, 0) == 1);
    CHECK(table.outcome(1, 1) == 0);
    CHECK(table.outcome(2, 1) == 1);
}

TEST_CASE("the Fig. 1 graph is equiprobable") {
    auto const g = fixtures::fig1();
    std::mt19937_64 rng(1);
    auto const table = run_branches(g, uncorrected_plan(g, random_angles(g, rng)));
    for (int trial = 0; trial < 5; ++trial) {
        for (double p : table.probabilities(random_state(1, rng))) CHECK(p == doctest::Approx(1.0 / 16));
    }
    CHECK(check_equiprobability(g).passed);
    CHECK(check_constant_probability(g).passed);
    CHECK_FALSE(check_equiprobability(fixtures::triangle()).passed);
}

TEST_CASE("witness plans run as predicted") {
    auto const tri = fixtures::triangle();
    auto const confirmation = confirm_witness(tri, make_witness(tri, {0, 1}));
    CHECK(confirmation.max_forbidden_probability < 1e-12);
    CHECK(confirmation.max_allowed_probability > 0.1);

    auto const g = OpenGraph({"a", "b", "c"}, {{0, 1}}, {0}, {2});
    auto const [first, second] = make_distinguishing_witness(g, {1});
    CHECK(distinguishing_gap(g, first, second) > 0.4);
    auto shifted = second;
    shifted.angles[0] += 0.1;
    CHECK_THROWS_AS((void)distinguishing_gap(g, first, shifted), SimError);
}

TEST_CASE("plan validation") {
    auto const g = fixtures::path(3, {0}, {2});
    auto plan = uncorrected_plan(g, {0.0, 0.0, 0.0});
    CHECK_NOTHROW(validate_plan(g, plan));

    auto missing = plan;
    missing.order = {0};
    CHECK_THROWS_AS(validate_plan(g, missing), SimError);

    auto backwards = plan;
    backwards.x[1] = {0};
    CHECK_THROWS_AS(validate_plan(g, backwards), SimError);
    CHECK_THROWS_AS((void)run_branches(g, backwards), SimError);

    auto output = plan;
    output.z[2] = {1};
    CHECK_THROWS_AS(validate_plan(g, output), SimError);

    CHECK_THROWS_AS((void)uncorrected_plan(g, {0.0}), SimError);
    auto const big = OpenGraph::with_default_labels(kMaxQubits + 1, {});
    CHECK_THROWS_AS((void)run_branches(big, uncorrected_plan(big, std::vector<double>(kMaxQubits + 1, 0.0))), SimError);
}

TEST_CASE("plan JSON") {
    auto const g = fixtures::path(3, {0}, {2});
    auto const f = find_focused_gflow(g);
    REQUIRE(f);
    auto plan = corrections_from_gflow(g, *f);
    plan.angles = {0.25, 0.5, 0.0};
    auto const back = plan_from_json(g, to_json(g, plan));
    CHECK(back.order == plan.order);
    CHECK(back.x == plan.x);
    CHECK(back.z == plan.z);
    CHECK(back.sign == plan.sign);
    CHECK(back.angles[0] == doctest::Approx(0.25));
    CHECK(back.angles[1] == doctest::Approx(0.5));

    auto bad = to_json(g, plan);
    bad["order"] = {"nope"};
    CHECK_THROWS_AS((void)plan_from_json(g, bad), SimError);

    auto const table = run_branches(g, plan);
    auto const j = to_json(g, table, basis(2, 0), true);
    REQUIRE(j.at("branches").size() == 4);
    double total = 0;
    for (auto const& b : j.at("branches")) total += b.at("probability").get<double>();
    CHECK(total == doctest::Approx(1.0));
    CHECK(j.at("branches")[0].at("matrix").at("rows") == 2);
}
