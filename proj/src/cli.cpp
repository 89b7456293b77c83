#include "mbqc/cli.hpp"

#include <fstream>
#include <iomanip>
#include <memory>
#include <ostream>
#include <random>
#include <sstream>

#include <CLI11.hpp>

#include "mbqc/chooser.hpp"
#include "mbqc/classify.hpp"
#include "mbqc/flow.hpp"
#include "mbqc/open_graph.hpp"
#include "mbqc/sim.hpp"

namespace mbqc::cli {

namespace {

struct CommonOptions {
    std::string graph_path;
    bool json = false;
    std::uint64_t seed = 42;
    std::size_t cap = kDefaultEnumerationCap;
    double tol = 1e-9;
};

void add_common(CLI::App& cmd, CommonOptions& o) {
    cmd.add_option("--graph", o.graph_path, "Graph description file")->required();
    cmd.add_flag("--json", o.json, "Machine-readable JSON output");
    cmd.add_option("--seed", o.seed, "Seed for randomized checks")->capture_default_str();
    cmd.add_option("--cap", o.cap, "Limit on the size of exhaustive subset enumerations")->capture_default_str();
    cmd.add_option("--tol", o.tol, "Numerical tolerance")->capture_default_str();
}

std::string yes_no(bool b) { return b ? "yes" : "no"; }

std::string set_list(OpenGraph const& g, std::vector<VertexSet> const& sets, std::size_t limit = 20) {
    std::string out;
    for (std::size_t i = 0; i < sets.size() && i < limit; ++i) out += "  " + g.format_set(sets[i]) + "\n";
    if (sets.size() > limit) out += "  ... (" + std::to_string(sets.size() - limit) + " more)\n";
    return out;
}

void print_gflow(std::ostream& out, OpenGraph const& g, FocusedGFlow const& f) {
    auto const layered = f.to_gflow();
    for (Vertex u : g.non_outputs()) {
        out << "  g(" << g.label(u) << ") = " << g.format_set(f(u)) << "   layer " << layered.layer[u] << "\n";
    }
}

struct SimCrossCheck {
    bool run = false;
    bool equiprobable = false;
    bool constant_probability = false;
    std::optional<bool> deterministic;
};

SimCrossCheck cross_check(OpenGraph const& g, ClassificationReport const& r, CommonOptions const& o) {
    SimCrossCheck c;
    if (g.size() > 10) return c;
    c.run = true;
    sim::ProbabilityCheckOptions opts{5, 5, 1e-6, o.seed};
    c.equiprobable = sim::check_equiprobability(g, opts).passed;
    c.constant_probability = sim::check_constant_probability(g, opts).passed;
    if (r.gflow) {
        std::mt19937_64 rng(o.seed);
        auto plan = sim::corrections_from_gflow(g, *r.gflow);
        plan.angles = sim::random_angles(g, rng);
        c.deterministic = sim::check_strong_determinism(sim::run_branches(g, plan), 1e-9).deterministic;
    }
    return c;
}

int cmd_analyze(CommonOptions const& o, std::ostream& out, std::ostream& err) {
    auto const g = load_open_graph(o.graph_path, &err);
    auto const report = classify(g, o.cap);
    auto const check = cross_check(g, report, o);
    bool const consistent = !check.run || (check.equiprobable == report.equiprobable &&
                                           check.constant_probability == report.constant_probability &&
                                           check.deterministic.value_or(true));
    if (o.json) {
        auto j = to_json(g, report);
        j["graph"] = to_json(g);
        if (check.run) {
            j["simulation"] = {{"equiprobable", check.equiprobable},
                               {"constant_probability", check.constant_probability},
                               {"strongly_deterministic", check.deterministic ? nlohmann::json(*check.deterministic)
                                                                              : nlohmann::json(nullptr)},
                               {"consistent", consistent}};
        }
        out << j.dump(2) << "\n";
    } else {
        out << "open graph: " << g.size() << " vertices, " << g.edge_count() << " edges\n"
            << "inputs:  " << g.format_set(g.inputs()) << "\n"
            << "outputs: " << g.format_set(g.outputs()) << "\n\n"
            << "gflow:                         " << yes_no(report.has_gflow) << "\n"
            << "uniformly equiprobable:        " << yes_no(report.equiprobable) << "\n"
            << "uniformly constant probability: " << yes_no(report.constant_probability) << "\n"
            << report.notes << "\n";
        if (report.gflow) {
            out << "\nfocused gflow:\n";
            print_gflow(out, g, *report.gflow);
        }
        if (!report.internal_sets.empty()) {
            out << "\ninternal sets (" << report.internal_sets.size() << "):\n" << set_list(g, report.internal_sets);
        }
        if (!report.strongly_internal_sets.empty()) {
            out << "\nstrongly internal sets (" << report.strongly_internal_sets.size() << "):\n"
                << set_list(g, report.strongly_internal_sets);
        }
        if (check.run) {
            out << "\nsimulator cross-check: equiprobable " << yes_no(check.equiprobable) << ", constant probability "
                << yes_no(check.constant_probability);
            if (check.deterministic) out << ", strongly deterministic " << yes_no(*check.deterministic);
            out << (consistent ? "  [consistent]" : "  [MISMATCH]") << "\n";
        }
    }
    return consistent ? kSuccess : kFailure;
}

int cmd_classify(CommonOptions const& o, std::ostream& out, std::ostream& err) {
    auto const g = load_open_graph(o.graph_path, &err);
    auto const report = classify(g, o.cap);
    if (o.json) {
        out << to_json(g, report).dump(2) << "\n";
        return kSuccess;
    }
    out << "gflow: " << yes_no(report.has_gflow) << "\n"
        << "equiprobable: " << yes_no(report.equiprobable) << "\n"
        << "constant probability: " << yes_no(report.constant_probability) << "\n"
        << report.notes << "\n";
    return kSuccess;
}

int cmd_gflow(CommonOptions const& o, bool reverse, std::ostream& out, std::ostream& err) {
    auto const g = load_open_graph(o.graph_path, &err);
    auto const raw = find_gflow(g);
    std::optional<FocusedGFlow> focused;
    if (raw) focused = focus(g, *raw);
    std::optional<FocusedGFlow> backwards;
    bool const square = g.inputs().size() == g.outputs().size();
    if (reverse && !square) {
        err << "error: --reverse requires as many inputs as outputs\n";
        return kFailure;
    }
    if (reverse) backwards = reverse_gflow(g);

    if (o.json) {
        nlohmann::json j = {{"has_gflow", raw.has_value()}};
        j["gflow"] = raw ? to_json(g, *raw) : nlohmann::json(nullptr);
        j["focused"] = focused ? to_json(g, *focused) : nlohmann::json(nullptr);
        if (reverse) j["reverse"] = backwards ? to_json(swapped(g), *backwards) : nlohmann::json(nullptr);
        out << j.dump(2) << "\n";
        return kSuccess;
    }
    if (!raw) {
        out << "no gflow\n";
        return kSuccess;
    }
    out << "gflow (layer peeling):\n";
    for (Vertex u : g.non_outputs()) {
        out << "  g(" << g.label(u) << ") = " << g.format_set(raw->correction[u]) << "   layer " << raw->layer[u]
            << "\n";
    }
    out << "focused gflow:\n";
    print_gflow(out, g, *focused);
    if (reverse && backwards) {
        out << "reverse focused gflow of (G, O, I):\n";
        print_gflow(out, swapped(g), *backwards);
    }
    return kSuccess;
}

int cmd_choose_io(CommonOptions const& o, std::size_t k, bool all_orbits, std::ostream& out, std::ostream& err) {
    auto const g = load_open_graph(o.graph_path, &err);
    if (!g.inputs().empty() || !g.outputs().empty()) err << "warning: inputs/outputs in the graph file are ignored\n";
    if (k > g.size()) {
        err << "error: k = " << k << " exceeds the number of vertices (" << g.size() << ")\n";
        return kResourceError;
    }
    auto placements = choose_io(g, k, o.cap);
    auto const orbits = mark_representatives(g, placements);
    if (o.json) {
        nlohmann::json list = nlohmann::json::array();
        for (auto const& p : placements) {
            if (all_orbits || p.representative) list.push_back(to_json(g, p));
        }
        out << nlohmann::json{{"k", k}, {"orbits", orbits.placements}, {"input_orbits", orbits.input_choices}, {"total", placements.size()}, {"placements", list}}.dump(2)
            << "\n";
        return kSuccess;
    }
    out << placements.size() << " placement(s) with |I| = |O| = " << k << ": " << orbits.placements
        << " up to symmetry, " << orbits.input_choices << " distinct input choice(s) up to symmetry\n";
    for (auto const& p : placements) {
        if (!all_orbits && !p.representative) continue;
        out << "  I = " << g.format_set(p.inputs) << "  O = " << g.format_set(p.outputs)
            << (p.input_representative ? "  [new input choice]" : "") << "\n";
    }
    return kSuccess;
}

int cmd_witness(CommonOptions const& o, bool constant, std::ostream& out, std::ostream& err) {
    auto const g = load_open_graph(o.graph_path, &err);
    if (!constant) {
        auto const w0 = first_internal_set(g, o.cap);
        if (!w0) {
            err << "no witness exists: the open graph is uniformly equiprobable\n";
            return kNoWitness;
        }
        auto const plan = make_witness(g, *w0);
        auto const confirmation = sim::confirm_witness(g, plan);
        bool const confirmed = confirmation.max_forbidden_probability < o.tol;
        if (o.json) {
            out << nlohmann::json{{"plan", to_json(g, plan)},
                                  {"max_forbidden_probability", confirmation.max_forbidden_probability},
                                  {"confirmed", confirmed}}
                       .dump(2)
                << "\n";
        } else {
            out << "internal set W0 = " << g.format_set(*w0) << "\n"
                << to_json(g, plan).dump(2) << "\n"
                << "largest forbidden-branch probability: " << confirmation.max_forbidden_probability
                << (confirmed ? "  [confirmed]" : "  [NOT confirmed]") << "\n";
        }
        return confirmed ? kSuccess : kFailure;
    }
    auto const w0 = first_strongly_internal_set(g, o.cap);
    if (!w0) {
        err << "no witness exists: the open graph guarantees uniformly constant probability\n";
        return kNoWitness;
    }
    auto const [first, second] = make_distinguishing_witness(g, *w0);
    double const gap = sim::distinguishing_gap(g, first, second);
    auto const c0 = sim::confirm_witness(g, first);
    auto const c1 = sim::confirm_witness(g, second);
    bool const confirmed = c0.max_forbidden_probability < o.tol && c1.max_forbidden_probability < o.tol && gap > o.tol;
    if (o.json) {
        out << nlohmann::json{{"plans", {to_json(g, first), to_json(g, second)}},
                              {"u0", g.label(distinguishing_input(g, *w0))},
                              {"probability_gap", gap},
                              {"confirmed", confirmed}}
                   .dump(2)
            << "\n";
    } else {
        out << "strongly internal set W0 = " << g.format_set(*w0) << ", u0 = " << g.label(distinguishing_input(g, *w0))
            << "\n"
            << "plan 0:\n" << to_json(g, first).dump(2) << "\nplan 1:\n" << to_json(g, second).dump(2) << "\n"
            << "largest branch probability gap: " << gap << (confirmed ? "  [confirmed]" : "  [NOT confirmed]")
            << "\n";
    }
    return confirmed ? kSuccess : kFailure;
}

int cmd_simulate(CommonOptions const& o, std::string const& plan_path, bool gflow_corrections, bool matrices,
                 std::ostream& out, std::ostream& err) {
    auto const g = load_open_graph(o.graph_path, &err);
    std::mt19937_64 rng(o.seed);
    sim::MeasurementPlan plan;
    if (!plan_path.empty()) {
        std::ifstream in(plan_path);
        if (!in) throw ParseError(0, "cannot open '" + plan_path + "'");
        try {
            plan = sim::plan_from_json(g, nlohmann::json::parse(in));
        } catch (nlohmann::json::exception const& e) {
            throw ParseError(0, std::string{"plan JSON: "} + e.what());
        }
    } else if (gflow_corrections) {
        auto const f = find_focused_gflow(g);
        if (!f) {
            err << "error: the open graph has no gflow\n";
            return kFailure;
        }
        plan = sim::corrections_from_gflow(g, *f);
        plan.angles = sim::random_angles(g, rng);
    } else {
        plan = sim::uncorrected_plan(g, sim::random_angles(g, rng));
    }
    auto const table = sim::run_branches(g, plan);
    auto const input = sim::random_state(g.inputs().size(), rng);
    auto const det = sim::check_strong_determinism(table, o.tol);
    double const completeness = sim::completeness_error(table);
    if (o.json) {
        auto j = sim::to_json(g, table, input, matrices);
        j["plan"] = sim::to_json(g, plan);
        j["completeness_error"] = completeness;
        j["strong_determinism"] = {{"deterministic", det.deterministic},
                                   {"residual", det.residual},
                                   {"isometry_error", det.isometry_error}};
        out << j.dump(2) << "\n";
        return kSuccess;
    }
    out << "branches: " << table.branch_count() << " (outcomes ordered as";
    for (Vertex v : table.measured) out << " " << g.label(v);
    out << ")\n";
    auto const p = table.probabilities(input);
    out << std::setprecision(10);
    for (std::size_t s = 0; s < p.size(); ++s) out << "  s=" << table.outcome_string(s) << "  p=" << p[s] << "\n";
    out << "completeness error: " << completeness << "\n"
        << "strongly deterministic: " << yes_no(det.deterministic) << " (residual " << det.residual << ")\n";
    return kSuccess;
}

int cmd_export_dot(CommonOptions const& o, std::string const& highlight, std::ostream& out, std::ostream& err) {
    auto const g = load_open_graph(o.graph_path, &err);
    DotOptions options;
    if (highlight == "gflow") {
        if (auto f = find_focused_gflow(g)) {
            options.arcs = focused_to_dag(*f).arcs();
        } else {
            err << "warning: no gflow to highlight\n";
        }
    } else if (!highlight.empty()) {
        err << "error: unknown highlight '" << highlight << "'\n";
        return kFailure;
    }
    out << to_dot(g, options);
    return kSuccess;
}

}  // namespace

int run(std::vector<std::string> const& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Open graph analysis for measurement-based quantum computation"};
    app.require_subcommand(1);
    CommonOptions o;

    auto* analyze = app.add_subcommand("analyze", "Classify, extract a gflow and cross-check with the simulator");
    auto* gflow = app.add_subcommand("gflow", "Find a gflow and its focused form");
    auto* classify_cmd = app.add_subcommand("classify", "Decide the three computation classes");
    auto* choose = app.add_subcommand("choose-io", "Search input/output placements on a bare graph");
    auto* witness = app.add_subcommand("witness", "Build and confirm a witness that a class is not guaranteed");
    auto* simulate = app.add_subcommand("simulate", "Run the branch simulator");
    auto* dot = app.add_subcommand("export-dot", "Write the graph in Graphviz format");
    for (auto* cmd : {analyze, gflow, classify_cmd, choose, witness, simulate, dot}) add_common(*cmd, o);

    bool reverse = false;
    gflow->add_flag("--reverse", reverse, "Also compute the reverse focused gflow (needs |I| = |O|)");

    std::size_t k = 0;
    bool all_orbits = false;
    choose->add_option("--k", k, "Number of inputs and of outputs")->required();
    choose->add_flag("--all-orbits", all_orbits, "List every placement, not one per symmetry orbit");

    bool equi = false;
    bool constant = false;
    auto* equi_flag = witness->add_flag("--equi", equi, "Zero-probability witness against equiprobability (default)");
    witness->add_flag("--const", constant, "Distinguishing witness against constant probability")->excludes(equi_flag);

    std::string plan_path;
    bool gflow_corrections = false;
    bool matrices = false;
    simulate->add_option("--plan", plan_path, "Measurement plan JSON");
    simulate->add_flag("--gflow-corrections", gflow_corrections, "Use corrections derived from the focused gflow");
    simulate->add_flag("--matrices", matrices, "Include the branch maps in JSON output");

    std::string highlight;
    dot->add_option("--highlight", highlight, "Overlay: 'gflow' draws the focused gflow DAG");

    std::vector<char const*> argv;
    argv.reserve(args.size());
    for (auto const& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (CLI::CallForHelp const&) {
        out << app.help();
        return kSuccess;
    } catch (CLI::ParseError const& e) {
        err << "error: " << e.what() << "\n";
        return kFailure;
    }

    try {
        if (analyze->parsed()) return cmd_analyze(o, out, err);
        if (gflow->parsed()) return cmd_gflow(o, reverse, out, err);
        if (classify_cmd->parsed()) return cmd_classify(o, out, err);
        if (choose->parsed()) return cmd_choose_io(o, k, all_orbits, out, err);
        if (witness->parsed()) return cmd_witness(o, constant, out, err);
        if (simulate->parsed()) return cmd_simulate(o, plan_path, gflow_corrections, matrices, out, err);
        if (dot->parsed()) return cmd_export_dot(o, highlight, out, err);
    } catch (ParseError const& e) {
        err << "parse error: " << e.what() << "\n";
        return kParseError;
    } catch (CapExceeded const& e) {
        err << "error: " << e.what() << "\n";
        return kResourceError;
    } catch (sim::SimError const& e) {
        err << "error: " << e.what() << "\n";
        return kResourceError;
    } catch (std::exception const& e) {
        err << "error: " << e.what() << "\n";
        return kFailure;
    }
    return kFailure;
}

}  // namespace mbqc::cli
