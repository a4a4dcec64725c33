// Command line front end: run experiment plans, fit PV models, sweep the
// fractional order, run the ablation matrix, or re-aggregate saved results.

#include <cstdio>
#include <filesystem>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "mfodbo/harness.hpp"
#include "mfodbo/pv.hpp"

namespace {

using namespace mfodbo;

struct CommonOptions {
    std::uint64_t seed = 42;
    int runs = 30;
    int iters = 500;
    int pop = 30;
    double delta = 0.1;
    int memory = 4;
    std::string out_dir = "out";
    int workers = 0;
};

void add_common(CLI::App* cmd, CommonOptions& options) {
    cmd->add_option("--seed", options.seed, "Base seed of the published seed schedule");
    cmd->add_option("--runs", options.runs, "Independent runs per cell")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--iters", options.iters, "Iteration budget per run")
        ->check(CLI::NonNegativeNumber);
    cmd->add_option("--pop", options.pop, "Population size")->check(CLI::PositiveNumber);
    cmd->add_option("--delta", options.delta, "Fractional order in (0, 1]");
    cmd->add_option("--memory", options.memory, "Memory depth m")->check(CLI::PositiveNumber);
    cmd->add_option("--out-dir", options.out_dir, "Directory for report artifacts");
    cmd->add_option("--workers", options.workers,
                    "Worker threads for independent runs (0 = hardware)");
}

void apply_common(harness::ExperimentPlan& plan, const CommonOptions& options) {
    plan.runs = options.runs;
    plan.population = options.pop;
    plan.iterations = options.iters;
    plan.seed_base = options.seed;
    plan.workers = options.workers;
}

std::vector<harness::ObjectiveRef> parse_objectives(const std::vector<std::string>& specs) {
    std::vector<harness::ObjectiveRef> out;
    for (const auto& spec : specs)
        out.push_back({spec});
    return out;
}

int cmd_run(const std::string& plan_file, const CommonOptions& options, bool override_matrix) {
    harness::ExperimentPlan plan = harness::load_plan(plan_file);
    if (override_matrix)
        apply_common(plan, options);
    const auto report = harness::run_plan(plan);
    harness::write_report(report, options.out_dir);
    int errors = 0;
    for (const auto& cell : report.cells)
        if (!cell.error.empty())
            ++errors;
    std::printf("ran %zu cells (%d failed); report written to %s\n", report.cells.size(),
                errors, options.out_dir.c_str());
    return errors == 0 ? 0 : 1;
}

int cmd_fit_pv(const std::string& model_name, const std::string& dataset,
               const CommonOptions& options) {
    pv::ModelKind model;
    if (model_name == "sdm")
        model = pv::ModelKind::sdm;
    else if (model_name == "ddm")
        model = pv::ModelKind::ddm;
    else if (model_name == "module")
        model = pv::ModelKind::module;
    else {
        std::fprintf(stderr, "unknown model '%s' (expected sdm, ddm or module)\n",
                     model_name.c_str());
        return 2;
    }
    const pv::IvDataset data = pv::load_iv_csv(dataset);
    harness::PvFitConfig config;
    config.runs = options.runs;
    config.population = options.pop;
    config.iterations = options.iters;
    config.delta = options.delta;
    config.memory = options.memory;
    config.seed_base = options.seed;
    config.workers = options.workers;
    const auto result = harness::fit_pv(model, data, config);
    harness::write_pv_fit(result, data, options.out_dir);

    std::printf("%s fit over %d runs: best RMSE %.8e (run %d)\n", model_name.c_str(),
                options.runs, result.rmse, result.best_run);
    const auto names = pv::parameter_names(model);
    for (std::size_t i = 0; i < names.size(); ++i)
        std::printf("  %-8s %.8g\n", names[i].c_str(), result.params[i]);
    std::printf("artifacts written to %s\n", options.out_dir.c_str());
    return 0;
}

int cmd_sweep_delta(const std::vector<std::string>& objectives, const CommonOptions& options) {
    harness::ExperimentPlan plan;
    plan.objectives = parse_objectives(objectives);
    apply_common(plan, options);
    std::vector<double> deltas;
    for (int d = 1; d <= 10; ++d)
        deltas.push_back(0.1 * d);
    const auto rows = harness::sweep_delta(plan, deltas);
    std::filesystem::create_directories(options.out_dir);
    std::vector<std::string> names;
    for (const auto& objective : plan.objectives)
        names.push_back(objective.name());
    const std::string path =
        (std::filesystem::path(options.out_dir) / "delta_sweep.csv").string();
    harness::write_delta_sweep(rows, names, path);
    std::printf("delta   mean_rank\n");
    for (const auto& row : rows)
        std::printf("%.1f     %.4f\n", row.delta, row.mean_rank);
    std::printf("table written to %s\n", path.c_str());
    return 0;
}

int cmd_ablation(const std::vector<std::string>& objectives, const CommonOptions& options) {
    harness::ExperimentPlan plan;
    plan.objectives = parse_objectives(objectives);
    plan.variants = harness::standard_variants();
    for (auto& variant : plan.variants) {
        variant.delta = options.delta;
        variant.memory = options.memory;
    }
    apply_common(plan, options);
    const auto report = harness::run_plan(plan);
    harness::write_report(report, options.out_dir);
    std::printf("%-22s %-18s %-14s %-14s\n", "variant", "objective", "mean", "best");
    for (const auto& row : report.summary)
        std::printf("%-22s %-18s %.6e %.6e\n", row.variant.c_str(), row.objective.c_str(),
                    row.mean, row.best);
    std::printf("report written to %s\n", options.out_dir.c_str());
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Dung beetle optimizer toolkit: seeded engines, PV model fitting and "
                 "experiment reports"};
    app.require_subcommand(1);

    CommonOptions options;

    std::string plan_file;
    auto* run = app.add_subcommand("run", "Execute an experiment plan file");
    run->add_option("plan", plan_file, "Plan file (key = value lines)")->required();
    bool override_matrix = false;
    run->add_flag("--override", override_matrix,
                  "Let --runs/--iters/--pop/--seed override the plan file");
    add_common(run, options);

    std::string model_name;
    std::string dataset;
    auto* fit = app.add_subcommand("fit-pv", "Fit a PV model to an I-V dataset");
    fit->add_option("--model", model_name, "sdm, ddm or module")->required();
    fit->add_option("--dataset", dataset, "I-V CSV path")->required();
    add_common(fit, options);

    std::vector<std::string> sweep_objectives{"builtin:rastrigin:10", "builtin:ackley:10"};
    auto* sweep = app.add_subcommand("sweep-delta",
                                     "Rank the full variant across delta = 0.1..1.0");
    sweep->add_option("--objectives", sweep_objectives, "Objective specs");
    add_common(sweep, options);

    std::vector<std::string> ablation_objectives{"builtin:rastrigin:10", "builtin:ackley:10",
                                                 "builtin:griewank:10"};
    auto* ablation = app.add_subcommand(
        "ablation", "Run the DBO / DBO1 / DBO2 / DBO3 / MFO-DBO matrix");
    ablation->add_option("--objectives", ablation_objectives, "Objective specs");
    add_common(ablation, options);

    std::string results_csv;
    auto* stats_cmd = app.add_subcommand("stats", "Re-aggregate a saved results.csv");
    stats_cmd->add_option("results", results_csv, "results.csv from a previous run")
        ->required();
    add_common(stats_cmd, options);

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed())
            return cmd_run(plan_file, options, override_matrix);
        if (fit->parsed())
            return cmd_fit_pv(model_name, dataset, options);
        if (sweep->parsed())
            return cmd_sweep_delta(sweep_objectives, options);
        if (ablation->parsed())
            return cmd_ablation(ablation_objectives, options);
        if (stats_cmd->parsed()) {
            harness::reaggregate_results(results_csv, options.out_dir);
            std::printf("summary.csv and stats.txt written to %s\n", options.out_dir.c_str());
            return 0;
        }
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 0;
}
