#include <iostream>

#include "CLI11.hpp"

#include "commands.hpp"

int main(int argc, char** argv) {
    using namespace plumb::cli;

    CLI::App app{"Invariants of negative-definite plumbing trees"};
    app.require_subcommand(1);
    app.set_version_flag("--version", "plumb 0.1.0");

    AnalyzeArgs analyze;
    auto* analyze_cmd = app.add_subcommand("analyze", "Compute every invariant of one graph");
    analyze_cmd->add_option("file", analyze.file, "Input .plumb file")->required();
    analyze_cmd->add_flag("--json", analyze.json, "Emit the JSON report");
    analyze_cmd->add_flag("--trace", analyze.trace, "Include Laufer and discharge traces");
    analyze_cmd->add_flag("--uncertified", analyze.uncertified,
                          "Evaluate d on non-rational graphs (values marked uncertified)");

    VerifyArgs verify;
    auto* verify_cmd = app.add_subcommand("verify", "Check mubar = -4d on random rational graphs");
    verify_cmd->add_option("--random", verify.random, "Number of graphs")->required();
    verify_cmd->add_option("--max-vertices", verify.max_vertices, "Largest graph size")->capture_default_str();
    verify_cmd->add_option("--weight-min", verify.weight_min, "Most negative weight")->capture_default_str();
    verify_cmd->add_option("--seed", verify.seed, "Generator seed")->capture_default_str();
    verify_cmd->add_option("--report", verify.report_path, "Where to write a counterexample")
        ->capture_default_str();
    verify_cmd->add_option("--jobs", verify.jobs, "Worker threads (0: all cores)")->capture_default_str();

    BatchArgs batch;
    auto* batch_cmd = app.add_subcommand("batch", "Analyze many files");
    batch_cmd->add_option("paths", batch.paths, "Files or directories of .plumb files")->required();
    batch_cmd->add_flag("--json", batch.json, "Emit one JSON document");
    batch_cmd->add_option("--jobs", batch.jobs, "Worker threads (0: all cores)")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kInputError;
    }

    if (*analyze_cmd) return run_analyze(analyze, std::cout, std::cerr);
    if (*verify_cmd) return run_verify(verify, std::cout, std::cerr);
    return run_batch(batch, std::cout, std::cerr);
}
