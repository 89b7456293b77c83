#pragma once

#include <complex>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>
#include <json.hpp>

#include "mbqc/classify.hpp"
#include "mbqc/flow.hpp"
#include "mbqc/open_graph.hpp"

namespace mbqc::sim {

/// Hard cap on the number of qubits held in a dense state vector.
inline constexpr std::size_t kMaxQubits = 20;

using Scalar = std::complex<double>;
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

class SimError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Amplitudes over the listed qubits. The first qubit is the most significant
/// bit of the basis index.
struct StateVector {
    std::vector<Vertex> qubits;
    Vector amplitudes;

    [[nodiscard]] std::size_t bit_of(Vertex v) const;
};

/// N|phi>: |phi> on the inputs, |+> on every other vertex, then a controlled-Z
/// per edge. `input` is indexed over the inputs in ascending vertex order; the
/// result is over all vertices in ascending order.
[[nodiscard]] StateVector prepare(OpenGraph const& g, Vector const& input);

/// Projects qubit v onto <+_theta| = (<0| + e^{-i theta} <1|) / sqrt(2) and
/// drops it from the register.
[[nodiscard]] StateVector project(StateVector const& state, Vertex v, double theta);
void apply_x(StateVector& state, Vertex v);
void apply_z(StateVector& state, Vertex v);

/// Angles and corrective maps of an MBQC run.
///
/// After qubit u is measured with outcome 1, X is applied to x[u] and then Z
/// to z[u], multiplied by -1 when sign[u] is set. Outcome 0 projects onto
/// <+_alpha| and outcome 1 onto <+_{alpha + pi}|.
struct MeasurementPlan {
    /// All indexed by vertex.
    std::vector<double> angles;
    std::vector<VertexSet> x;
    std::vector<VertexSet> z;
    std::vector<bool> sign;
    /// The non-outputs, in measurement order.
    std::vector<Vertex> order;
};

/// Non-outputs measured in ascending order, no corrections.
[[nodiscard]] MeasurementPlan uncorrected_plan(OpenGraph const& g, std::vector<double> angles);

/// Throws SimError unless the order lists every non-output exactly once and
/// every corrector of u is an output or is measured after u.
void validate_plan(OpenGraph const& g, MeasurementPlan const& plan);

/// Branch maps chi_s for every outcome string s.
///
/// Outcome index s: bit k holds the outcome of the k-th non-output in
/// ascending vertex order. maps[s] is 2^|O| x 2^|I|, with outputs and inputs in
/// ascending vertex order.
struct BranchTable {
    std::vector<Vertex> inputs;
    std::vector<Vertex> outputs;
    std::vector<Vertex> measured;
    std::vector<Matrix> maps;

    [[nodiscard]] std::size_t branch_count() const { return maps.size(); }
    /// p_s = |chi_s phi|^2 for every s.
    [[nodiscard]] std::vector<double> probabilities(Vector const& input) const;
    /// Outcome of vertex v in branch s.
    [[nodiscard]] int outcome(std::size_t s, Vertex v) const;
    [[nodiscard]] std::string outcome_string(std::size_t s) const;
};

/// Runs the plan on every computational basis input, measuring and correcting
/// in plan order. Throws SimError for invalid plans or more than kMaxQubits.
[[nodiscard]] BranchTable run_branches(OpenGraph const& g, MeasurementPlan const& plan);

/// max |sum_s chi_s^dagger chi_s - I|, entrywise.
[[nodiscard]] double completeness_error(BranchTable const& table);

/// x(u) = g(u), z(u) = Odd(g(u)) \ {u}, measured in decreasing layer order.
/// sign(u) is the parity of the number of edges inside g(u), which makes every
/// branch equal to the all-zero branch rather than equal up to a sign.
[[nodiscard]] MeasurementPlan corrections_from_gflow(OpenGraph const& g, FocusedGFlow const& f);

struct DeterminismCheck {
    bool deterministic = false;
    /// max_s |chi_s - chi_0|_F
    double residual = 0.0;
    /// max |U^dagger U - I| with U = sqrt(2^|O^C|) chi_0
    double isometry_error = 0.0;
};

[[nodiscard]] DeterminismCheck check_strong_determinism(BranchTable const& table, double tol = 1e-9);

struct ProbabilityCheckOptions {
    std::size_t input_trials = 20;
    std::size_t angle_trials = 20;
    double tol = 1e-9;
    std::uint64_t seed = 42;
};

struct ProbabilityCheck {
    bool passed = false;
    /// Equiprobability: max |p_s - 2^-|O^C||. Constant probability: max
    /// variance of p_s over the random inputs.
    double worst = 0.0;
};

/// Every branch has probability 2^-|O^C| for random inputs and angles.
[[nodiscard]] ProbabilityCheck check_equiprobability(OpenGraph const& g, ProbabilityCheckOptions const& options = {});
/// For random angles, every branch probability has variance at most tol over
/// random inputs.
[[nodiscard]] ProbabilityCheck check_constant_probability(OpenGraph const& g,
                                                          ProbabilityCheckOptions const& options = {});

/// Normalised vector with independent complex Gaussian amplitudes.
[[nodiscard]] Vector random_state(std::size_t qubits, std::mt19937_64& rng);
[[nodiscard]] std::vector<double> random_angles(OpenGraph const& g, std::mt19937_64& rng);

/// Product state over the inputs (ascending), one single-qubit state each.
[[nodiscard]] Vector product_input(OpenGraph const& g, std::vector<InputState> const& per_vertex);

[[nodiscard]] MeasurementPlan plan_from_witness(OpenGraph const& g, WitnessPlan const& witness);

struct WitnessConfirmation {
    /// Largest probability among forbidden branches.
    double max_forbidden_probability = 0.0;
    /// Largest probability among allowed branches.
    double max_allowed_probability = 0.0;
};

[[nodiscard]] WitnessConfirmation confirm_witness(OpenGraph const& g, WitnessPlan const& witness);

/// Largest |p_s(first) - p_s(second)| over branches.
[[nodiscard]] double distinguishing_gap(OpenGraph const& g, WitnessPlan const& first, WitnessPlan const& second);

[[nodiscard]] nlohmann::json to_json(OpenGraph const& g, MeasurementPlan const& plan);
[[nodiscard]] MeasurementPlan plan_from_json(OpenGraph const& g, nlohmann::json const& j);
/// Per-branch probabilities for `input`; flattened [re, im] matrices when
/// include_maps is set.
[[nodiscard]] nlohmann::json to_json(OpenGraph const& g, BranchTable const& table, Vector const& input,
                                     bool include_maps = false);

}  // namespace mbqc::sim
