// Command-line front end: solve MAP instances, scan for obstructions, run
// the exact oracle, verify solutions, generate fixture families, and print
// approximation-gap tables.

#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "json.hpp"
#include "matchaug/errors.hpp"
#include "matchaug/generators.hpp"
#include "matchaug/io.hpp"
#include "matchaug/obstructions.hpp"
#include "matchaug/oracle.hpp"
#include "matchaug/pipeline.hpp"
#include "matchaug/two_edge_cover.hpp"

namespace {

constexpr int kExitValidation = 2;
constexpr int kExitTheoremViolation = 3;

matchaug::MapInstance load_checked(const std::string& path, bool require_2ec) {
    matchaug::MapInstance inst = matchaug::read_instance_file(path);
    matchaug::ValidationReport rep = matchaug::validate_instance(inst, require_2ec);
    if (!rep.ok()) throw matchaug::validation_error(rep.joined());
    return inst;
}

void print_obstruction(const matchaug::Obstruction& o) {
    std::cout << matchaug::obstruction_kind_name(o.kind) << " nodes=";
    for (size_t i = 0; i < o.nodes.size(); ++i) std::cout << (i ? "," : "") << o.nodes[i] + 1;
    if (!o.edges.empty()) {
        std::cout << " edges=";
        for (size_t i = 0; i < o.edges.size(); ++i) std::cout << (i ? "," : "") << o.edges[i] + 1;
    }
    std::cout << '\n';
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"matchaug: 5/3-approximation toolkit for the matching augmentation problem"};
    app.require_subcommand(1);

    std::string input, output, solution_path, report_json, family = "random";
    int param = 1;
    int budget_nodes = 16;
    std::uint64_t seed = 1;
    double density = 0.4;
    int random_n = 12;
    bool trace = false;

    auto add_common = [&](CLI::App* cmd, bool with_input) {
        if (with_input) cmd->add_option("--input", input, "instance file")->required();
        cmd->add_option("--budget-nodes", budget_nodes, "exact-oracle node cap (default 16)");
    };

    CLI::App* solve_cmd = app.add_subcommand("solve", "solve an instance end to end");
    add_common(solve_cmd, true);
    solve_cmd->add_option("--output", output, "write the solution edge ids here");
    solve_cmd->add_option("--report-json", report_json, "write a machine-readable report here");
    solve_cmd->add_flag("--trace", trace, "print decomposition/bridge/glue traces");

    CLI::App* scan_cmd = app.add_subcommand("scan", "list all obstructions");
    add_common(scan_cmd, true);

    CLI::App* oracle_cmd = app.add_subcommand("oracle", "exact opt and min 2-edge cover");
    add_common(oracle_cmd, true);

    CLI::App* verify_cmd = app.add_subcommand("verify", "check a claimed solution");
    add_common(verify_cmd, true);
    verify_cmd->add_option("--solution", solution_path, "solution file")->required();

    CLI::App* gen_cmd = app.add_subcommand("gen", "generate a fixture instance");
    gen_cmd->add_option("--family", family, "tight-s3 | g1 | g2 | g3 | random | planted")->required();
    gen_cmd->add_option("--param", param, "family parameter (copies / k / n for random)");
    gen_cmd->add_option("--seed", seed, "random seed");
    gen_cmd->add_option("--density", density, "unit-edge density for random");
    gen_cmd->add_option("--output", output, "output file (default stdout)");
    (void)random_n;

    CLI::App* ratio_cmd = app.add_subcommand("ratio", "approximation gap table for a family");
    ratio_cmd->add_option("--family", family, "tight-s3 | g2 | g3 | random")->required();
    ratio_cmd->add_option("--param", param, "largest parameter, rows run 1..param");
    ratio_cmd->add_option("--budget-nodes", budget_nodes, "exact-oracle node cap");

    CLI11_PARSE(app, argc, argv);

    try {
        matchaug::OracleBudget budget;
        budget.max_nodes = budget_nodes;

        if (solve_cmd->parsed()) {
            matchaug::MapInstance inst = load_checked(input, true);
            matchaug::SolveOptions opts;
            opts.budget = budget;
            opts.collect_traces = trace;
            matchaug::SolveReport rep = matchaug::solve(inst, opts);
            if (trace) {
                for (const auto& line : rep.decompose_trace) std::cout << "trace decompose: " << line << '\n';
                for (const auto& line : rep.bridge_trace) std::cout << "trace bridge: " << line << '\n';
                for (const auto& line : rep.glue_trace) std::cout << "trace glue: " << line << '\n';
            }
            std::cout << "cost " << rep.cost << '\n';
            std::cout << "d2_cost " << rep.d2_cost << '\n';
            if (rep.opt) {
                std::cout << "opt " << *rep.opt << '\n';
                std::cout << "bound_ok " << (*rep.bound_ok ? "yes" : "no") << '\n';
            } else {
                std::cout << "opt unknown (budget)\n";
            }
            std::cout << "edges " << rep.solution.size() << '\n';
            if (!report_json.empty()) {
                nlohmann::json doc;
                doc["instance"] = input;
                doc["cost"] = rep.cost;
                doc["d2_cost"] = rep.d2_cost;
                if (rep.opt) {
                    doc["opt"] = *rep.opt;
                    doc["bound_ok"] = *rep.bound_ok;
                } else {
                    doc["opt"] = nullptr;
                    doc["bound_ok"] = nullptr;
                }
                nlohmann::json ids = nlohmann::json::array();
                for (int id : rep.solution) ids.push_back(id + 1);
                doc["solution_edges"] = ids;
                if (trace) {
                    doc["decompose_trace"] = rep.decompose_trace;
                    doc["bridge_trace"] = rep.bridge_trace;
                    doc["glue_trace"] = rep.glue_trace;
                }
                std::ofstream out_json(report_json);
                out_json << doc.dump(2) << '\n';
            }
            if (!output.empty())
                matchaug::write_solution_file(rep.solution, output);
            else
                std::cout << matchaug::write_solution_text(rep.solution);
            return 0;
        }
        if (scan_cmd->parsed()) {
            matchaug::MapInstance inst = load_checked(input, false);
            auto all = matchaug::scan_all(inst, budget);
            std::cout << "obstructions " << all.size() << '\n';
            for (const auto& o : all) print_obstruction(o);
            std::cout << (matchaug::is_well_structured(inst, budget) ? "well-structured\n"
                                                                     : "not well-structured\n");
            return 0;
        }
        if (oracle_cmd->parsed()) {
            matchaug::MapInstance inst = load_checked(input, true);
            auto opt = matchaug::opt_2ecss(inst, budget);
            std::cout << "opt " << opt.cost << '\n';
            auto cover = matchaug::min_2edge_cover(inst, budget);
            std::cout << "min_2edge_cover " << cover.cost << '\n';
            auto d2 = matchaug::compute_d2(inst);
            std::cout << "d2_matching_backend " << d2.cover.cost << '\n';
            return 0;
        }
        if (verify_cmd->parsed()) {
            matchaug::MapInstance inst = load_checked(input, false);
            std::vector<int> ids = matchaug::read_solution_file(solution_path);
            matchaug::Verdict verdict = matchaug::verify_solution(inst, ids);
            if (verdict.pass()) {
                std::cout << "pass cost=" << inst.cost_of(ids) << '\n';
                return 0;
            }
            for (const auto& f : verdict.failures) std::cout << "fail " << f << '\n';
            return kExitValidation;
        }
        if (gen_cmd->parsed()) {
            matchaug::MapInstance inst;
            if (family == "tight-s3")
                inst = matchaug::gen_tight_s3(param);
            else if (family == "g1")
                inst = matchaug::gen_g1();
            else if (family == "g2")
                inst = matchaug::gen_g2(param);
            else if (family == "g3")
                inst = matchaug::gen_g3(param);
            else if (family == "random")
                inst = matchaug::gen_random(param, density, seed);
            else if (family == "planted")
                inst = matchaug::gen_planted(seed);
            else
                throw matchaug::validation_error("unknown family: " + family);
            if (!output.empty())
                matchaug::write_instance_file(inst, output);
            else
                std::cout << matchaug::write_instance_text(inst);
            return 0;
        }
        if (ratio_cmd->parsed()) {
            auto rows = matchaug::ratio_report(family, param, budget);
            std::cout << matchaug::format_ratio_table(rows);
            return 0;
        }
    } catch (const matchaug::theorem_violation& e) {
        std::cerr << "theorem violation: " << e.what() << '\n';
        if (!e.instance_dump().empty()) std::cerr << "offending instance:\n" << e.instance_dump();
        return kExitTheoremViolation;
    } catch (const matchaug::validation_error& e) {
        std::cerr << "validation error: " << e.what() << '\n';
        return kExitValidation;
    } catch (const matchaug::budget_exceeded& e) {
        std::cerr << "budget exceeded: " << e.what() << '\n';
        return kExitValidation;
    }
    return 0;
}
