#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mfodbo/dbo.hpp"
#include "mfodbo/pv.hpp"
#include "mfodbo/types.hpp"

namespace mfodbo::harness {

/// A named engine configuration inside a plan.
struct VariantSpec {
    std::string name;
    dbo::VariantFlags flags;
    double delta = 0.1;
    int memory = 4;
};

/// DBO, DBO1 (+init), DBO2 (+memory), DBO3 (+perturbation), MFO-DBO (all).
std::vector<VariantSpec> standard_variants();
VariantSpec variant_by_name(const std::string& name);

/// Objective reference as written in a plan file:
///   builtin:<name>:<dim>
///   pv:<sdm|ddm|module>:<csv path>
///   external:<dim>:<lower>:<upper>:<command...>
struct ObjectiveRef {
    std::string spec;
    ObjectiveSpec resolve() const;
    std::string name() const;
};

struct ExperimentPlan {
    std::vector<ObjectiveRef> objectives;
    std::vector<VariantSpec> variants;
    int runs = 30;
    int population = 30;
    int iterations = 500;
    std::uint64_t seed_base = 42;
    int workers = 0; // 0 = hardware concurrency
};

/// Plain-text plan: '#' comments, `key = value` lines (runs, population,
/// iterations, seed, workers) and repeatable `objective = ...` /
/// `variant = <name>[:delta=<x>][:m=<k>]` lines.
ExperimentPlan load_plan(const std::string& path);

/// Published seed schedule: seed_base + FNV-1a 64 of
/// "<variant>|<objective>|<run index>". Any cell can be reproduced in
/// isolation from these four ingredients.
std::uint64_t run_seed(std::uint64_t seed_base, const std::string& variant,
                       const std::string& objective, int run);

struct CellResult {
    std::string variant;
    std::string objective;
    int run = 0;
    std::uint64_t seed = 0;
    double final_fitness = 0.0;
    std::string error; // empty on success
    dbo::RunTrace trace;
};

struct SummaryRow {
    std::string variant;
    std::string objective;
    double mean = 0.0;
    double stddev = 0.0;
    double best = 0.0;
    double worst = 0.0;
    double median = 0.0;
    int runs = 0;
};

struct ExperimentReport {
    ExperimentPlan plan;
    std::vector<CellResult> cells; // sorted by (variant, objective, run)
    std::vector<SummaryRow> summary;
};

/// Executes the variant x objective x run matrix. Independent runs may be
/// spread over a bounded worker pool; aggregation sorts by (variant,
/// objective, run) so the report does not depend on scheduling. A failing
/// cell is recorded and the rest of the matrix continues.
ExperimentReport run_plan(const ExperimentPlan& plan);

/// One CSV row per iteration: iteration,best_fitness,exploration_pct,
/// exploitation_pct. Byte-identical on re-emission.
void emit_convergence(const dbo::RunTrace& trace, const std::string& path);

/// Writes summary.csv, results.csv, stats.txt (pairwise B|S|W, rank-sum
/// verdicts and Friedman mean ranks) and one convergence CSV per cell of the
/// best run per (variant, objective).
void write_report(const ExperimentReport& report, const std::string& out_dir);

/// Re-derives stats.txt and summary.csv from a previously written
/// results.csv.
void reaggregate_results(const std::string& results_csv, const std::string& out_dir);

struct PvFitConfig {
    int runs = 30;
    int population = 30;
    int iterations = 500;
    double delta = 0.1;
    int memory = 4;
    std::uint64_t seed_base = 42;
    int workers = 0;
    VariantSpec variant = variant_by_name("MFO-DBO");
};

struct PvFitResult {
    pv::ModelKind model;
    std::vector<double> params;
    double rmse = 0.0;
    int best_run = 0;
    std::uint64_t best_seed = 0;
    std::vector<double> run_rmse; // per run, in run order
    dbo::RunTrace best_trace;
};

/// Fits a PV model with `runs` independent optimizer runs and keeps the best.
PvFitResult fit_pv(pv::ModelKind model, const pv::IvDataset& data, const PvFitConfig& config);

/// Writes fitted parameters plus a per-point
/// (V, I_measured, I_model, P_model) table for plotting.
void write_pv_fit(const PvFitResult& result, const pv::IvDataset& data,
                  const std::string& out_dir);

/// Delta sweep: the full-variant engine at each delta in `deltas` over the
/// plan's objectives; emits a per-delta mean table plus mean ranks.
struct DeltaSweepRow {
    double delta = 0.0;
    std::vector<double> means; // per objective
    double mean_rank = 0.0;
};

std::vector<DeltaSweepRow> sweep_delta(const ExperimentPlan& base,
                                       const std::vector<double>& deltas);
void write_delta_sweep(const std::vector<DeltaSweepRow>& rows,
                       const std::vector<std::string>& objective_names, const std::string& path);

} // namespace mfodbo::harness
