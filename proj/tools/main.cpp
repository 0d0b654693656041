// airynet command line: verify, generate and simulate vertex couplings for
// the third-order dispersive equation u_t = alpha u_xxx + beta u_x on
// metric graphs.
//
// Exit codes: 0 success, 1 input error, 2 mathematical rejection,
// 3 runtime instability.

#include <CLI11.hpp>

#include <cstdio>
#include <iostream>
#include <optional>
#include <sstream>

#include "airynet/convergence.hpp"
#include "airynet/evolution.hpp"
#include "airynet/initial.hpp"
#include "airynet/io.hpp"
#include "airynet/lift.hpp"
#include "airynet/random.hpp"

using namespace airynet;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInput = 1;
constexpr int kExitRejected = 2;
constexpr int kExitUnstable = 3;

struct CaseInputs {
    std::string graph_path;
    std::string bc_path;
    std::string builtin_name;
};

void add_case_options(CLI::App* cmd, CaseInputs& in) {
    auto* g = cmd->add_option("--graph", in.graph_path, "graph JSON file");
    cmd->add_option("--bc", in.bc_path, "boundary-condition JSON file");
    auto* bi = cmd->add_option("--builtin", in.builtin_name,
                               "builtin case: loop_periodic[(alpha,beta)], loop_diag(a,b), "
                               "two_halflines_unitary, star(n_in,n_out)");
    bi->excludes(g);
}

BuiltinCase resolve_case(const CaseInputs& in, bool need_bc) {
    BuiltinCase out;
    if (!in.builtin_name.empty()) {
        out = builtin(in.builtin_name);
        if (!in.bc_path.empty()) out.bc = io::load_bc(in.bc_path);
        return out;
    }
    if (in.graph_path.empty()) throw Error("provide either --graph or --builtin");
    out.graph = io::load_graph(in.graph_path);
    if (!in.bc_path.empty())
        out.bc = io::load_bc(in.bc_path);
    else if (need_bc)
        throw Error("provide --bc with --graph");
    return out;
}

int require_valid(const MetricGraph& g) {
    const ValidationReport rep = validate_graph(g);
    if (rep.ok()) return kExitOk;
    for (const auto& v : rep.violations) std::cerr << "invalid graph: " << v << "\n";
    return kExitInput;
}

Eigen::VectorXcd build_init(const DiscreteSystem& sys, const std::string& spec,
                            const MetricGraph& g) {
    std::istringstream is(spec);
    std::string kind;
    std::getline(is, kind, ':');
    std::string rest;
    std::getline(is, rest);
    if (kind == "plane_wave") {
        const int k = rest.empty() ? 1 : std::stoi(rest);
        double period = 1.0;
        if (g.edges().size() == 1 && g.edges()[0].left_finite() && g.edges()[0].right_finite())
            period = g.edges()[0].length();
        return plane_wave_state(sys, k, period);
    }
    if (kind == "gaussian") {
        double center = 0.5, width = 0.1;
        if (!rest.empty()) {
            std::istringstream rs(rest);
            std::string tok;
            std::getline(rs, tok, ',');
            center = std::stod(tok);
            if (std::getline(rs, tok, ',')) width = std::stod(tok);
        }
        return gaussian_state(sys, center, width);
    }
    if (kind == "lifted") {
        // rest: JSON file {"side": "left"|"right", "values": [[re,im],...]}
        const auto j = io::parse_file(rest);
        const Side side = j.at("side").get<std::string>() == "left" ? Side::Left : Side::Right;
        TraceVector tv;
        tv.side = side;
        const auto& vals = j.at("values");
        tv.values.resize(vals.size());
        for (std::size_t i = 0; i < vals.size(); ++i)
            tv.values[i] = Complex(vals[i][0].get<double>(), vals[i][1].get<double>());
        return lifted_state(sys, lift_traces(sys.graph, side, tv));
    }
    if (kind == "file") {
        // rest: JSON {"edges": {"e1": [[re,im] per node], ...}}
        const auto j = io::parse_file(rest);
        Eigen::VectorXcd u = Eigen::VectorXcd::Zero(sys.total_nodes);
        for (std::size_t e = 0; e < sys.grids.size(); ++e) {
            const auto& arr = j.at("edges").at(sys.grids[e].edge_id);
            if (static_cast<Eigen::Index>(arr.size()) != sys.grids[e].nodes.size())
                throw Error("node count mismatch for edge '" + sys.grids[e].edge_id + "'");
            for (Eigen::Index i = 0; i < sys.grids[e].nodes.size(); ++i)
                u[sys.offsets[e] + i] = Complex(arr[i][0].get<double>(), arr[i][1].get<double>());
        }
        return u;
    }
    throw Error("unknown init spec '" + spec + "'");
}

int cmd_check(const CaseInputs& in, double tol, const std::string& out_path) {
    const BuiltinCase cs = resolve_case(in, true);
    if (const int rc = require_valid(cs.graph); rc != kExitOk) return rc;
    const ClassifyReport rep = classify(cs.graph, cs.bc, tol);
    const io::json j = io::to_json(rep);
    if (!out_path.empty()) io::save_json(j, out_path);
    std::cout << j.dump(2) << "\n";
    const Verdict v = rep.combined_verdict;
    return (v == Verdict::Unitary || v == Verdict::BiContractive) ? kExitOk : kExitRejected;
}

int cmd_generate(const CaseInputs& in, const std::string& kind, std::uint64_t seed,
                 double strictness, const std::string& out_path) {
    const BuiltinCase cs = resolve_case(in, false);
    if (const int rc = require_valid(cs.graph); rc != kExitOk) return rc;
    BoundaryOperator bc;
    for (const auto& v : cs.graph.vertices()) {
        const Incidence inc = incidence(cs.graph, v);
        if (inc.left.empty() && inc.right.empty()) continue;
        const std::uint64_t vertex_seed = seed ^ fnv1a(v);
        if (kind == "unitary")
            bc.vertex_blocks[v] = sample_unitary(cs.graph, v, vertex_seed);
        else if (kind == "bicontractive")
            bc.vertex_blocks[v] = sample_bicontraction(cs.graph, v, vertex_seed, strictness);
        else
            throw Error("unknown kind '" + kind + "'");
    }
    const io::json j = io::to_json(bc);
    if (!out_path.empty())
        io::save_json(j, out_path);
    else
        std::cout << j.dump(2) << "\n";
    return kExitOk;
}

int cmd_simulate(const CaseInputs& in, int order, double dt, double t_end,
                 const std::string& scheme, const std::string& init_spec,
                 const std::string& out_prefix, double truncate_len, bool fourier) {
    BuiltinCase cs = resolve_case(in, true);
    if (const int rc = require_valid(cs.graph); rc != kExitOk) return rc;

    bool has_halflines = false;
    for (const Edge& e : cs.graph.edges())
        if (!e.left_finite() || !e.right_finite()) has_halflines = true;
    if (has_halflines) {
        cs = truncate_halflines(cs.graph, cs.bc, truncate_len);
        std::cerr << "note: semi-infinite edges truncated to length " << truncate_len
                  << " with absorbing closures\n";
    }

    const ClassifyReport rep = classify(cs.graph, cs.bc);
    std::cout << "classification: " << verdict_name(rep.combined_verdict) << "\n";

    const DiscreteSystem sys = fourier ? build_fourier_loop(cs.graph, cs.bc, order)
                                       : build_generator(cs.graph, cs.bc, order);
    EvolutionConfig cfg;
    cfg.dt = dt;
    cfg.t_end = t_end;
    cfg.scheme = parse_scheme(scheme);
    const Eigen::VectorXcd u0 = build_init(sys, init_spec, cs.graph);

    RunRecord rec;
    try {
        rec = run(sys, u0, cfg);
    } catch (const InstabilityError& e) {
        std::cerr << "instability: " << e.what() << " (step " << e.step_index << ")\n";
        return kExitUnstable;
    }

    if (!out_prefix.empty()) {
        io::save_text(io::run_record_to_csv(rec), out_prefix + ".csv");
        io::save_json(io::run_record_to_json(rec), out_prefix + ".json");
    }
    // trapezoid of the predicted rate against the actual norm^2 change
    double predicted_change = 0.0;
    for (std::size_t k = 0; k + 1 < rec.times.size(); ++k)
        predicted_change += 0.5 *
                            (rec.dissipation_predicted[k] + rec.dissipation_predicted[k + 1]) *
                            (rec.times[k + 1] - rec.times[k]);
    const double measured_change = rec.norm2.empty() ? 0.0 : rec.norm2.back() - rec.norm2.front();
    const double scale = std::max(std::abs(measured_change), 1e-30);
    std::printf("final norm ratio        %.12g\n", rec.norm_ratio());
    std::printf("projection residual     %.3g\n", rec.projection_residual);
    std::printf("constraint residual     %.3g\n", rec.max_constraint_residual);
    std::printf("dissipation agreement   measured %.6g vs predicted %.6g (rel gap %.3g)\n",
                measured_change, predicted_change,
                std::abs(measured_change - predicted_change) / scale);
    if (!out_prefix.empty())
        std::cout << "wrote " << out_prefix << ".csv and " << out_prefix << ".json\n";
    return kExitOk;
}

int cmd_verify_form(const CaseInputs& in, int samples, int quad_order, std::uint64_t seed) {
    const BuiltinCase cs = resolve_case(in, false);
    if (const int rc = require_valid(cs.graph); rc != kExitOk) return rc;
    if (quad_order < 4) {
        std::cerr << "quadrature order too low\n";
        return kExitInput;
    }
    for (const Edge& e : cs.graph.edges())
        if (!e.left_finite() || !e.right_finite()) {
            std::cerr << "verify-form needs a finite-edge graph\n";
            return kExitInput;
        }
    Rng rng(seed);
    double worst = 0.0;
    for (int trial = 0; trial < samples; ++trial) {
        const auto pick = [&](Side side) {
            const auto side_edges =
                side == Side::Left ? cs.graph.left_edges() : cs.graph.right_edges();
            const std::size_t i =
                side_edges[static_cast<std::size_t>(rng.uniform() * side_edges.size())];
            const std::array<Complex, 3> triple = {Complex(rng.gauss(), rng.gauss()),
                                                   Complex(rng.gauss(), rng.gauss()),
                                                   Complex(rng.gauss(), rng.gauss())};
            return LiftedFunction(cs.graph.edge(i), side, triple, cs.graph.min_edge_length());
        };
        const Side su = rng.uniform() < 0.5 ? Side::Left : Side::Right;
        const Side sv = rng.uniform() < 0.5 ? Side::Left : Side::Right;
        worst = std::max(worst, check_greens_identity(cs.graph, pick(su), pick(sv), quad_order));
    }
    std::printf("max residual %.3g over %d lifted pairs (quadrature order %d)\n", worst, samples,
                quad_order);
    return worst <= 1e-8 ? kExitOk : kExitRejected;
}

int cmd_convergence(const CaseInputs& in, int wave, std::vector<int> orders,
                    std::vector<double> dts, double t_end, const std::string& out_path) {
    const BuiltinCase cs = resolve_case(in, true);
    if (const int rc = require_valid(cs.graph); rc != kExitOk) return rc;
    const ConvergenceTable table = convergence_study(cs.graph, cs.bc, wave, orders, dts, t_end);
    const std::string csv = table.to_csv();
    if (!out_path.empty()) io::save_text(csv, out_path);
    std::cout << csv;
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"boundary conditions and dynamics for the dispersive third-order equation "
                 "on metric graphs"};
    app.require_subcommand(1);

    CaseInputs check_in;
    double check_tol = 1e-10;
    std::string check_out;
    auto* check = app.add_subcommand("check", "classify a boundary condition");
    add_case_options(check, check_in);
    check->add_option("--tol", check_tol, "relative tolerance");
    check->add_option("--out", check_out, "write the JSON report here");

    CaseInputs gen_in;
    std::string gen_kind = "unitary";
    std::uint64_t gen_seed = 0;
    double gen_strictness = 1.0;
    std::string gen_out;
    auto* gen = app.add_subcommand("generate", "sample an admissible boundary condition");
    add_case_options(gen, gen_in);
    gen->add_option("--kind", gen_kind, "unitary | bicontractive");
    gen->add_option("--seed", gen_seed, "random seed");
    gen->add_option("--strictness", gen_strictness, "bi-contraction strictness in [0,1]");
    gen->add_option("--out", gen_out, "output bc JSON path");

    CaseInputs sim_in;
    int sim_order = 48;
    double sim_dt = 1e-4, sim_tend = 0.1, sim_trunc = 20.0;
    std::string sim_scheme = "crank_nicolson", sim_init = "gaussian:0.5,0.1", sim_out;
    bool sim_fourier = false;
    auto* sim = app.add_subcommand("simulate", "integrate the constrained dynamics");
    add_case_options(sim, sim_in);
    sim->add_option("-n,--order", sim_order, "polynomial order per edge (Fourier: grid size)");
    sim->add_option("--dt", sim_dt, "time step");
    sim->add_option("--t-end", sim_tend, "final time");
    sim->add_option("--scheme", sim_scheme, "crank_nicolson | matrix_exponential");
    sim->add_option("--init", sim_init,
                    "plane_wave:k | gaussian:center,width | lifted:file | file:path");
    sim->add_option("--out", sim_out, "output prefix for .csv/.json records");
    sim->add_option("--truncate", sim_trunc, "truncation length for semi-infinite edges");
    sim->add_flag("--fourier", sim_fourier,
                  "use the periodic Fourier path (loop with identity condition)");

    CaseInputs vf_in;
    int vf_samples = 100, vf_quad = 32;
    std::uint64_t vf_seed = 0;
    auto* vf =
        app.add_subcommand("verify-form", "check the integration-by-parts boundary identity");
    add_case_options(vf, vf_in);
    vf->add_option("--samples", vf_samples, "number of random lifted pairs");
    vf->add_option("--quad-order", vf_quad, "Gauss-Legendre points per panel");
    vf->add_option("--seed", vf_seed, "random seed");

    CaseInputs cv_in;
    int cv_wave = 1;
    std::vector<int> cv_orders = {16, 24, 32};
    std::vector<double> cv_dts = {4e-4, 2e-4, 1e-4};
    double cv_tend = 0.02;
    std::string cv_out;
    auto* cv = app.add_subcommand("convergence", "grid and time-step refinement study");
    add_case_options(cv, cv_in);
    cv->add_option("--wave", cv_wave, "plane-wave number");
    cv->add_option("--orders", cv_orders, "polynomial orders to sweep")->expected(-1);
    cv->add_option("--dts", cv_dts, "time steps to sweep")->expected(-1);
    cv->add_option("--t-end", cv_tend, "final time");
    cv->add_option("--out", cv_out, "CSV output path");

    CLI11_PARSE(app, argc, argv);

    try {
        if (check->parsed()) return cmd_check(check_in, check_tol, check_out);
        if (gen->parsed())
            return cmd_generate(gen_in, gen_kind, gen_seed, gen_strictness, gen_out);
        if (sim->parsed())
            return cmd_simulate(sim_in, sim_order, sim_dt, sim_tend, sim_scheme, sim_init,
                                sim_out, sim_trunc, sim_fourier);
        if (vf->parsed()) return cmd_verify_form(vf_in, vf_samples, vf_quad, vf_seed);
        if (cv->parsed())
            return cmd_convergence(cv_in, cv_wave, cv_orders, cv_dts, cv_tend, cv_out);
    } catch (const Error& e) {
        const std::string what = e.what();
        std::cerr << "error: " << what << "\n";
        if (what.find("no Krein-unitary exists") != std::string::npos ||
            what.find("dangling right endpoint") != std::string::npos)
            return kExitRejected;
        return kExitInput;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    }
    return kExitOk;
}
