#include <CLI11.hpp>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "uqsg/errors.hpp"
#include "uqsg/output.hpp"
#include "uqsg/reference.hpp"
#include "uqsg/scenario.hpp"
#include "uqsg/solver.hpp"

namespace {

using namespace uqsg;

enum ExitCode { Ok = 0, Usage = 1, NonConvergence = 2, HyperbolicityLoss = 3, Blowup = 4 };

Scenario load_scenario(const std::string& path, const std::vector<std::string>& overrides) {
    Scenario scenario = Scenario::load(path);
    for (const auto& o : overrides) scenario.apply_override(o);
    return scenario;
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigurationError("cannot write '" + path + "'");
    out << text;
}

std::string out_path(const std::string& dir, const std::string& name) { return dir + "/" + name; }

int run_command(const std::string& path, const std::vector<std::string>& overrides,
                const std::string& out_override) {
    const Scenario scenario = load_scenario(path, overrides);
    const ScenarioSettings& s = scenario.settings();
    const std::string dir = out_override.empty() ? s.output_dir : out_override;
    ensure_directory(dir);
    Solver solver(make_problem(s), make_solver_config(s));

    int snapshot = 0;
    std::ostringstream index;
    index.precision(17);
    index << "snapshot,time\n";
    SnapshotCallback callback;
    if (s.snapshot_every > 0.0) {
        callback = [&](double time, const MomentField& moments) {
            const std::string name = "snapshot_" + std::to_string(snapshot) + ".csv";
            index << snapshot++ << ',' << time << '\n';
            std::ostringstream text;
            write_field_csv(text, solver.mesh(), moments);
            write_file(out_path(dir, name), text.str());
        };
    }
    const RunReport report = solver.run(callback, s.snapshot_every);
    if (snapshot > 0) write_file(out_path(dir, "snapshots.csv"), index.str());
    const MomentField result = solver.solution();

    std::ostringstream fields, mean, variance;
    write_field_csv(fields, solver.mesh(), result);
    write_statistic_csv(mean, solver.mesh(), result, false);
    write_statistic_csv(variance, solver.mesh(), result, true);
    write_file(out_path(dir, "fields.csv"), fields.str());
    write_file(out_path(dir, "mean.csv"), mean.str());
    write_file(out_path(dir, "variance.csv"), variance.str());
    write_file(out_path(dir, "report.json"), run_report_json(s, report, solver));
    write_file(out_path(dir, "scenario.used"), scenario.to_string());
    std::cout << "completed " << report.steps << " steps to t=" << report.final_time << " in "
              << report.wall_seconds << " s; output in " << dir << '\n';
    return Ok;
}

std::vector<ConvergenceCase> parse_methods(const std::string& list, const ScenarioSettings& s) {
    std::vector<ConvergenceCase> methods;
    std::istringstream in(list);
    std::string token;
    while (std::getline(in, token, ',')) {
        ConvergenceCase method;
        if (token == "sg") {
        } else if (token == "ipm") {
            method.closure = ClosureKind::IPM;
        } else {
            method.filter.kind = filter_kind_from_string(token);
            method.filter.lambda = s.filter.lambda;
        }
        methods.push_back(method);
    }
    if (methods.empty()) throw ConfigurationError("no methods given");
    return methods;
}

int converge_command(const std::string& path, const std::vector<std::string>& overrides,
                     const std::string& out_override, const std::vector<int>& orders,
                     const std::string& methods, int nodes, int refine, int state,
                     bool walltime) {
    const Scenario scenario = load_scenario(path, overrides);
    const ScenarioSettings& s = scenario.settings();
    const std::string dir = out_override.empty() ? s.output_dir : out_override;
    const auto cases = parse_methods(methods, s);
    ensure_directory(dir);
    const ReferenceField reference = collocation_reference(s, nodes, refine);
    const ConvergenceTable table = convergence_table(s, orders, cases, reference, state);
    std::ostringstream csv, slopes;
    write_convergence_csv(csv, table, walltime);
    write_file(out_path(dir, "convergence.csv"), csv.str());
    if (!table.slopes.empty()) {
        write_slopes_csv(slopes, table);
        write_file(out_path(dir, "convergence_slopes.csv"), slopes.str());
    }
    std::cout << csv.str() << slopes.str();
    return Ok;
}

int reference_command(const std::string& path, const std::vector<std::string>& overrides,
                      const std::string& out_override, int nodes, int refine) {
    const Scenario scenario = load_scenario(path, overrides);
    const ScenarioSettings& s = scenario.settings();
    const std::string dir = out_override.empty() ? s.output_dir : out_override;
    ensure_directory(dir);
    const ReferenceField reference = collocation_reference(s, nodes, refine);
    std::ostringstream csv;
    write_reference_csv(csv, reference);
    write_file(out_path(dir, "reference.csv"), csv.str());
    std::cout << "reference with " << nodes << " nodes written to " << dir << '\n';
    return Ok;
}

int slice_command(const std::string& path, double x, double y, int points, const std::string& out) {
    std::ifstream in(path);
    if (!in) throw ConfigurationError("cannot open '" + path + "'");
    const FieldTable table = read_field_csv(in);
    std::ostringstream csv;
    write_slice_csv(csv, table, x, y, points);
    if (out.empty()) {
        std::cout << csv.str();
    } else {
        write_file(out, csv.str());
    }
    return Ok;
}

int classify(const std::exception_ptr& error) {
    try {
        std::rethrow_exception(error);
    } catch (const CollocationError& e) {
        std::cerr << "error: " << e.what() << '\n';
        if (e.cause()) {
            std::ostringstream sink;
            auto* old = std::cerr.rdbuf(sink.rdbuf());
            const int code = classify(e.cause());
            std::cerr.rdbuf(old);
            return code;
        }
        return Usage;
    } catch (const NonConvergenceError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return NonConvergence;
    } catch (const NonRealizableError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return NonConvergence;
    } catch (const HyperbolicityLossError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return HyperbolicityLoss;
    } catch (const NumericalBlowupError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return Blowup;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return Usage;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Filtered stochastic Galerkin and IPM solver for uncertain conservation laws"};
    app.require_subcommand(1);

    std::vector<std::string> overrides;
    int threads = 0;
    std::string out_dir;
    app.add_option("--threads", threads, "OpenMP thread count (0 keeps the default)")
        ->check(CLI::NonNegativeNumber);

    std::string scenario_path;
    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("scenario", scenario_path, "scenario file")->required();
        cmd->add_option("--override", overrides, "section.key=value (repeatable)");
        cmd->add_option("--out", out_dir, "output directory (defaults to output.dir)");
        cmd->add_option("--threads", threads, "OpenMP thread count")->check(CLI::NonNegativeNumber);
    };

    auto* run = app.add_subcommand("run", "integrate a scenario and write field files");
    add_common(run);

    std::vector<int> orders{5, 10, 15, 20};
    std::string methods = "sg,lasso_adaptive";
    int nodes = 40;
    int refine = 4;
    int state = 0;
    bool no_walltime = false;
    auto* converge = app.add_subcommand("converge", "error table over truncation orders");
    add_common(converge);
    converge->add_option("--orders", orders, "truncation orders")->delimiter(',');
    converge->add_option("--methods", methods, "comma list of sg, ipm or filter kinds");
    converge->add_option("--nodes", nodes, "collocation nodes of the reference");
    converge->add_option("--refine", refine, "reference mesh refinement factor");
    converge->add_option("--state", state, "state index for the errors");
    converge->add_flag("--no-walltime", no_walltime, "leave the walltime column empty");

    auto* reference = app.add_subcommand("reference", "collocation reference statistics");
    add_common(reference);
    reference->add_option("--nodes", nodes, "collocation nodes");
    reference->add_option("--refine", refine, "mesh refinement factor");

    std::string field_path;
    double x = 0.0, y = 0.0;
    int points = 201;
    std::string slice_out;
    auto* slice = app.add_subcommand("slice", "xi-profile of a field file at a fixed position");
    slice->add_option("fields", field_path, "field CSV written by run")->required();
    slice->add_option("--x", x, "position x*")->required();
    slice->add_option("--y", y, "position y* (2D fields)");
    slice->add_option("--points", points, "xi samples");
    slice->add_option("--out", slice_out, "output CSV (stdout when omitted)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? Ok : Usage;
    }

#ifdef _OPENMP
    if (threads > 0) omp_set_num_threads(threads);
#endif

    try {
        if (*run) return run_command(scenario_path, overrides, out_dir);
        if (*converge) {
            return converge_command(scenario_path, overrides, out_dir, orders, methods, nodes, refine,
                                    state, !no_walltime);
        }
        if (*reference) return reference_command(scenario_path, overrides, out_dir, nodes, refine);
        if (*slice) return slice_command(field_path, x, y, points, slice_out);
    } catch (...) {
        return classify(std::current_exception());
    }
    return Usage;
}
