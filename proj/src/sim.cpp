#include "mbqc/sim.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace mbqc::sim {

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;

std::size_t position_of(std::vector<Vertex> const& list, Vertex v) {
    auto it = std::find(list.begin(), list.end(), v);
    if (it == list.end()) throw SimError("vertex is not in the register");
    return static_cast<std::size_t>(it - list.begin());
}

}  // namespace

std::size_t StateVector::bit_of(Vertex v) const { return qubits.size() - 1 - position_of(qubits, v); }

StateVector prepare(OpenGraph const& g, Vector const& input) {
    auto const n = g.size();
    if (n > kMaxQubits) throw SimError("prepare: more than 20 qubits");
    auto const inputs = g.inputs().members();
    if (input.size() != static_cast<Eigen::Index>(std::size_t{1} << inputs.size())) {
        throw SimError("prepare: input state does not match the number of inputs");
    }
    StateVector state{g.vertices().members(), Vector::Zero(static_cast<Eigen::Index>(std::size_t{1} << n))};
    double const norm = std::pow(kInvSqrt2, static_cast<double>(n - inputs.size()));
    // |phi>_I (x) |+>_{I^C}, interleaved in vertex order.
    for (std::size_t x = 0; x < (std::size_t{1} << n); ++x) {
        std::size_t in_index = 0;
        for (Vertex v : inputs) in_index = (in_index << 1) | ((x >> (n - 1 - v)) & 1u);
        state.amplitudes[static_cast<Eigen::Index>(x)] = norm * input[static_cast<Eigen::Index>(in_index)];
    }
    for (auto [u, v] : g.edges()) {
        std::size_t const both = (std::size_t{1} << (n - 1 - u)) | (std::size_t{1} << (n - 1 - v));
        for (std::size_t x = 0; x < (std::size_t{1} << n); ++x) {
            if ((x & both) == both) state.amplitudes[static_cast<Eigen::Index>(x)] *= -1.0;
        }
    }
    return state;
}

StateVector project(StateVector const& state, Vertex v, double theta) {
    auto const pos = position_of(state.qubits, v);
    auto const m = state.qubits.size();
    auto const b = m - 1 - pos;
    StateVector out;
    out.qubits = state.qubits;
    out.qubits.erase(out.qubits.begin() + static_cast<std::ptrdiff_t>(pos));
    auto const half = std::size_t{1} << (m - 1);
    out.amplitudes.resize(static_cast<Eigen::Index>(half));
    Scalar const phase = std::polar(kInvSqrt2, -theta);
    std::size_t const low_mask = (std::size_t{1} << b) - 1;
    for (std::size_t i = 0; i < half; ++i) {
        std::size_t const i0 = ((i & ~low_mask) << 1) | (i & low_mask);
        std::size_t const i1 = i0 | (std::size_t{1} << b);
        out.amplitudes[static_cast<Eigen::Index>(i)] = kInvSqrt2 * state.amplitudes[static_cast<Eigen::Index>(i0)] +
                                                       phase * state.amplitudes[static_cast<Eigen::Index>(i1)];
    }
    return out;
}

void apply_x(StateVector& state, Vertex v) {
    std::size_t const bit = std::size_t{1} << state.bit_of(v);
    for (std::size_t i = 0; i < static_cast<std::size_t>(state.amplitudes.size()); ++i) {
        if ((i & bit) == 0) std::swap(state.amplitudes[static_cast<Eigen::Index>(i)], state.amplitudes[static_cast<Eigen::Index>(i | bit)]);
    }
}

void apply_z(StateVector& state, Vertex v) {
    std::size_t const bit = std::size_t{1} << state.bit_of(v);
    for (std::size_t i = 0; i < static_cast<std::size_t>(state.amplitudes.size()); ++i) {
        if ((i & bit) != 0) state.amplitudes[static_cast<Eigen::Index>(i)] *= -1.0;
    }
}

MeasurementPlan uncorrected_plan(OpenGraph const& g, std::vector<double> angles) {
    if (angles.size() != g.size()) throw SimError("uncorrected_plan: one angle per vertex expected");
    auto const n = g.size();
    return MeasurementPlan{std::move(angles), std::vector<VertexSet>(n), std::vector<VertexSet>(n),
                           std::vector<bool>(n, false), g.non_outputs().members()};
}

void validate_plan(OpenGraph const& g, MeasurementPlan const& plan) {
    auto const n = g.size();
    if (plan.angles.size() != n || plan.x.size() != n || plan.z.size() != n || plan.sign.size() != n) {
        throw SimError("plan: per-vertex tables have the wrong size");
    }
    VertexSet seen;
    for (Vertex u : plan.order) {
        if (u >= n || g.outputs().contains(u) || seen.contains(u)) {
            throw SimError("plan: measurement order must list every non-output exactly once");
        }
        seen.insert(u);
    }
    if (seen != g.non_outputs()) throw SimError("plan: measurement order must list every non-output exactly once");
    VertexSet unmeasured = g.vertices();
    for (Vertex u : plan.order) {
        unmeasured.erase(u);
        if (!(plan.x[u] | plan.z[u]).subset_of(unmeasured)) {
            throw SimError("plan: correction of " + g.label(u) + " targets a vertex that is already measured");
        }
    }
    for (Vertex o : g.outputs()) {
        if (!plan.x[o].empty() || !plan.z[o].empty()) throw SimError("plan: outputs cannot have corrections");
    }
}

std::vector<double> BranchTable::probabilities(Vector const& input) const {
    std::vector<double> p;
    p.reserve(maps.size());
    for (auto const& chi : maps) p.push_back((chi * input).squaredNorm());
    return p;
}

int BranchTable::outcome(std::size_t s, Vertex v) const {
    return static_cast<int>((s >> position_of(measured, v)) & 1u);
}

std::string BranchTable::outcome_string(std::size_t s) const {
    std::string out;
    for (std::size_t k = 0; k < measured.size(); ++k) out.push_back(((s >> k) & 1u) ? '1' : '0');
    return out;
}

namespace {

struct BranchRunner {
    MeasurementPlan const& plan;
    std::vector<std::size_t> const& outcome_bit;
    BranchTable& table;
    Eigen::Index column;

    void run(StateVector const& state, std::size_t depth, std::size_t s) {
        if (depth == plan.order.size()) {
            table.maps[s].col(column) = state.amplitudes;
            return;
        }
        Vertex const u = plan.order[depth];
        for (int b = 0; b < 2; ++b) {
            auto next = project(state, u, plan.angles[u] + b * std::numbers::pi);
            if (b == 1) {
                for (Vertex v : plan.x[u]) apply_x(next, v);
                for (Vertex v : plan.z[u]) apply_z(next, v);
                if (plan.sign[u]) next.amplitudes *= -1.0;
            }
            run(next, depth + 1, s | (static_cast<std::size_t>(b) << outcome_bit[u]));
        }
    }
};

}  // namespace

BranchTable run_branches(OpenGraph const& g, MeasurementPlan const& plan) {
    validate_plan(g, plan);
    if (g.size() > kMaxQubits) throw SimError("run_branches: more than 20 qubits");
    BranchTable table{g.inputs().members(), g.outputs().members(), g.non_outputs().members(), {}};
    auto const in_dim = std::size_t{1} << table.inputs.size();
    auto const out_dim = std::size_t{1} << table.outputs.size();
    table.maps.assign(std::size_t{1} << table.measured.size(),
                      Matrix::Zero(static_cast<Eigen::Index>(out_dim), static_cast<Eigen::Index>(in_dim)));
    std::vector<std::size_t> outcome_bit(g.size(), 0);
    for (std::size_t k = 0; k < table.measured.size(); ++k) outcome_bit[table.measured[k]] = k;
    for (std::size_t j = 0; j < in_dim; ++j) {
        Vector basis = Vector::Zero(static_cast<Eigen::Index>(in_dim));
        basis[static_cast<Eigen::Index>(j)] = 1.0;
        BranchRunner runner{plan, outcome_bit, table, static_cast<Eigen::Index>(j)};
        runner.run(prepare(g, basis), 0, 0);
    }
    return table;
}

double completeness_error(BranchTable const& table) {
    if (table.maps.empty()) return 0.0;
    auto const dim = table.maps.front().cols();
    Matrix sum = Matrix::Zero(dim, dim);
    for (auto const& chi : table.maps) sum += chi.adjoint() * chi;
    return (sum - Matrix::Identity(dim, dim)).cwiseAbs().maxCoeff();
}

MeasurementPlan corrections_from_gflow(OpenGraph const& g, FocusedGFlow const& f) {
    auto const layers = f.to_gflow().layer;
    auto plan = uncorrected_plan(g, std::vector<double>(g.size(), 0.0));
    std::stable_sort(plan.order.begin(), plan.order.end(), [&](Vertex a, Vertex b) { return layers[a] > layers[b]; });
    for (Vertex u : g.non_outputs()) {
        plan.x[u] = f(u);
        plan.z[u] = odd_neighborhood(g, f(u)) - VertexSet::single(u);
        plan.sign[u] = internal_edge_count(g, f(u)) % 2 == 1;
    }
    validate_plan(g, plan);
    return plan;
}

DeterminismCheck check_strong_determinism(BranchTable const& table, double tol) {
    DeterminismCheck check;
    auto const& first = table.maps.front();
    for (auto const& chi : table.maps) check.residual = std::max(check.residual, (chi - first).norm());
    Matrix const u = std::sqrt(static_cast<double>(table.maps.size())) * first;
    check.isometry_error = (u.adjoint() * u - Matrix::Identity(u.cols(), u.cols())).cwiseAbs().maxCoeff();
    check.deterministic = check.residual <= tol && check.isometry_error <= tol;
    return check;
}

Vector random_state(std::size_t qubits, std::mt19937_64& rng) {
    std::normal_distribution<double> normal;
    Vector v(static_cast<Eigen::Index>(std::size_t{1} << qubits));
    for (Eigen::Index i = 0; i < v.size(); ++i) v[i] = Scalar{normal(rng), normal(rng)};
    return v / v.norm();
}

std::vector<double> random_angles(OpenGraph const& g, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> uniform(0.0, 2 * std::numbers::pi);
    std::vector<double> angles(g.size(), 0.0);
    for (Vertex u : g.non_outputs()) angles[u] = uniform(rng);
    return angles;
}

ProbabilityCheck check_equiprobability(OpenGraph const& g, ProbabilityCheckOptions const& options) {
    std::mt19937_64 rng(options.seed);
    double const expected = std::ldexp(1.0, -static_cast<int>(g.non_outputs().size()));
    ProbabilityCheck check;
    for (std::size_t a = 0; a < options.angle_trials; ++a) {
        auto const table = run_branches(g, uncorrected_plan(g, random_angles(g, rng)));
        for (std::size_t t = 0; t < options.input_trials; ++t) {
            for (double p : table.probabilities(random_state(g.inputs().size(), rng))) {
                check.worst = std::max(check.worst, std::abs(p - expected));
            }
        }
    }
    check.passed = check.worst <= options.tol;
    return check;
}

ProbabilityCheck check_constant_probability(OpenGraph const& g, ProbabilityCheckOptions const& options) {
    std::mt19937_64 rng(options.seed);
    ProbabilityCheck check;
    for (std::size_t a = 0; a < options.angle_trials; ++a) {
        auto const table = run_branches(g, uncorrected_plan(g, random_angles(g, rng)));
        auto const branches = table.branch_count();
        std::vector<double> sum(branches, 0.0);
        std::vector<double> sum_sq(branches, 0.0);
        for (std::size_t t = 0; t < options.input_trials; ++t) {
            auto const p = table.probabilities(random_state(g.inputs().size(), rng));
            for (std::size_t s = 0; s < branches; ++s) {
                sum[s] += p[s];
                sum_sq[s] += p[s] * p[s];
            }
        }
        auto const trials = static_cast<double>(std::max<std::size_t>(options.input_trials, 1));
        for (std::size_t s = 0; s < branches; ++s) {
            double const mean = sum[s] / trials;
            check.worst = std::max(check.worst, std::max(0.0, sum_sq[s] / trials - mean * mean));
        }
    }
    check.passed = check.worst <= options.tol;
    return check;
}

Vector product_input(OpenGraph const& g, std::vector<InputState> const& per_vertex) {
    if (per_vertex.size() != g.size()) throw SimError("product_input: one state per vertex expected");
    Vector state = Vector::Ones(1);
    for (Vertex v : g.inputs()) {
        Vector q(2);
        switch (per_vertex[v]) {
            case InputState::Plus: q << kInvSqrt2, kInvSqrt2; break;
            case InputState::Minus: q << kInvSqrt2, -kInvSqrt2; break;
            case InputState::Zero: q << 1.0, 0.0; break;
            case InputState::One: q << 0.0, 1.0; break;
        }
        Vector next(state.size() * 2);
        for (Eigen::Index i = 0; i < state.size(); ++i) {
            next[2 * i] = state[i] * q[0];
            next[2 * i + 1] = state[i] * q[1];
        }
        state = std::move(next);
    }
    return state;
}

MeasurementPlan plan_from_witness(OpenGraph const& g, WitnessPlan const& witness) {
    return uncorrected_plan(g, witness.angles);
}

namespace {

std::vector<int> outcomes_by_vertex(OpenGraph const& g, BranchTable const& table, std::size_t s) {
    std::vector<int> out(g.size(), 0);
    for (Vertex v : table.measured) out[v] = table.outcome(s, v);
    return out;
}

}  // namespace

WitnessConfirmation confirm_witness(OpenGraph const& g, WitnessPlan const& witness) {
    auto const table = run_branches(g, plan_from_witness(g, witness));
    auto const p = table.probabilities(product_input(g, witness.input_state));
    WitnessConfirmation c;
    for (std::size_t s = 0; s < p.size(); ++s) {
        auto& slot = witness.forbids(outcomes_by_vertex(g, table, s)) ? c.max_forbidden_probability
                                                                      : c.max_allowed_probability;
        slot = std::max(slot, p[s]);
    }
    return c;
}

double distinguishing_gap(OpenGraph const& g, WitnessPlan const& first, WitnessPlan const& second) {
    if (first.angles != second.angles) throw SimError("distinguishing_gap: plans must share their angles");
    auto const table = run_branches(g, plan_from_witness(g, first));
    auto const p0 = table.probabilities(product_input(g, first.input_state));
    auto const p1 = table.probabilities(product_input(g, second.input_state));
    double gap = 0.0;
    for (std::size_t s = 0; s < p0.size(); ++s) gap = std::max(gap, std::abs(p0[s] - p1[s]));
    return gap;
}

namespace {

nlohmann::json labels_of(OpenGraph const& g, VertexSet s) {
    nlohmann::json out = nlohmann::json::array();
    for (Vertex v : s) out.push_back(g.label(v));
    return out;
}

Vertex lookup(OpenGraph const& g, std::string const& name) {
    auto v = g.find(name);
    if (!v) throw SimError("plan JSON: unknown vertex '" + name + "'");
    return *v;
}

}  // namespace

nlohmann::json to_json(OpenGraph const& g, MeasurementPlan const& plan) {
    nlohmann::json angles = nlohmann::json::object();
    nlohmann::json x = nlohmann::json::object();
    nlohmann::json z = nlohmann::json::object();
    nlohmann::json sign = nlohmann::json::object();
    for (Vertex u : g.non_outputs()) {
        angles[g.label(u)] = plan.angles[u];
        x[g.label(u)] = labels_of(g, plan.x[u]);
        z[g.label(u)] = labels_of(g, plan.z[u]);
        if (plan.sign[u]) sign[g.label(u)] = true;
    }
    nlohmann::json order = nlohmann::json::array();
    for (Vertex u : plan.order) order.push_back(g.label(u));
    nlohmann::json j = {{"angles", angles}, {"x", x}, {"z", z}, {"order", order}};
    if (!sign.empty()) j["sign"] = sign;
    return j;
}

MeasurementPlan plan_from_json(OpenGraph const& g, nlohmann::json const& j) {
    auto plan = uncorrected_plan(g, std::vector<double>(g.size(), 0.0));
    for (auto const& [key, value] : j.at("angles").items()) plan.angles[lookup(g, key)] = value.get<double>();
    auto read_map = [&](char const* field, std::vector<VertexSet>& target) {
        if (!j.contains(field)) return;
        for (auto const& [key, value] : j.at(field).items()) {
            for (auto const& name : value) target[lookup(g, key)].insert(lookup(g, name.get<std::string>()));
        }
    };
    read_map("x", plan.x);
    read_map("z", plan.z);
    if (j.contains("sign")) {
        for (auto const& [key, value] : j.at("sign").items()) plan.sign[lookup(g, key)] = value.get<bool>();
    }
    if (j.contains("order")) {
        plan.order.clear();
        for (auto const& name : j.at("order")) plan.order.push_back(lookup(g, name.get<std::string>()));
    }
    validate_plan(g, plan);
    return plan;
}

nlohmann::json to_json(OpenGraph const& g, BranchTable const& table, Vector const& input, bool include_maps) {
    nlohmann::json measured = nlohmann::json::array();
    for (Vertex v : table.measured) measured.push_back(g.label(v));
    auto const p = table.probabilities(input);
    nlohmann::json branches = nlohmann::json::array();
    for (std::size_t s = 0; s < table.branch_count(); ++s) {
        nlohmann::json b = {{"s", table.outcome_string(s)}, {"probability", p[s]}};
        if (include_maps) {
            nlohmann::json flat = nlohmann::json::array();
            auto const& chi = table.maps[s];
            for (Eigen::Index r = 0; r < chi.rows(); ++r) {
                for (Eigen::Index c = 0; c < chi.cols(); ++c) flat.push_back({chi(r, c).real(), chi(r, c).imag()});
            }
            b["matrix"] = {{"rows", chi.rows()}, {"cols", chi.cols()}, {"entries", flat}};
        }
        branches.push_back(b);
    }
    return {{"measured", measured}, {"branches", branches}};
}

}  // namespace mbqc::sim
