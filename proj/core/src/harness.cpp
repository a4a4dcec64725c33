#include "mfodbo/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <thread>
#include <tuple>

#include "mfodbo/benchfns.hpp"
#include "mfodbo/stats.hpp"

namespace mfodbo::harness {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos)
        return {};
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep, std::size_t max_fields = 0) {
    std::vector<std::string> out;
    std::size_t pos = 0;
    while (pos <= s.size()) {
        if (max_fields && out.size() + 1 == max_fields) {
            out.push_back(s.substr(pos));
            break;
        }
        const auto next = s.find(sep, pos);
        if (next == std::string::npos) {
            out.push_back(s.substr(pos));
            break;
        }
        out.push_back(s.substr(pos, next - pos));
        pos = next + 1;
    }
    return out;
}

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::runtime_error("cannot open for writing: " + path);
    return out;
}

const char* verdict_symbol(stats::Verdict v) {
    switch (v) {
    case stats::Verdict::plus: return "+";
    case stats::Verdict::minus: return "-";
    case stats::Verdict::tie: return "~";
    }
    return "?";
}

const char* comparison_symbol(stats::Comparison c) {
    switch (c) {
    case stats::Comparison::better: return "B";
    case stats::Comparison::similar: return "S";
    case stats::Comparison::worse: return "W";
    }
    return "?";
}

} // namespace

std::vector<VariantSpec> standard_variants() {
    return {
        {"DBO", dbo::VariantFlags::classic(), 0.1, 4},
        {"DBO1", {true, false, false}, 0.1, 4},
        {"DBO2", {false, true, false}, 0.1, 4},
        {"DBO3", {false, false, true}, 0.1, 4},
        {"MFO-DBO", dbo::VariantFlags::full(), 0.1, 4},
    };
}

VariantSpec variant_by_name(const std::string& name) {
    for (const auto& v : standard_variants())
        if (v.name == name)
            return v;
    throw std::invalid_argument("unknown variant '" + name +
                                "' (expected DBO, DBO1, DBO2, DBO3 or MFO-DBO)");
}

ObjectiveSpec ObjectiveRef::resolve() const {
    const auto fields = split(spec, ':');
    if (fields.empty())
        throw std::invalid_argument("empty objective spec");
    const std::string& kind = fields[0];
    if (kind == "builtin") {
        if (fields.size() != 3)
            throw std::invalid_argument("objective '" + spec +
                                        "': expected builtin:<name>:<dim>");
        return benchfns::to_objective(
            benchfns::builtin(fields[1], static_cast<std::size_t>(std::stoul(fields[2]))));
    }
    if (kind == "pv") {
        if (fields.size() < 3)
            throw std::invalid_argument("objective '" + spec +
                                        "': expected pv:<sdm|ddm|module>:<csv path>");
        const std::string& model = fields[1];
        // The path may itself contain ':'; re-join the remainder.
        std::string path = fields[2];
        for (std::size_t i = 3; i < fields.size(); ++i)
            path += ":" + fields[i];
        pv::ModelKind mk;
        if (model == "sdm")
            mk = pv::ModelKind::sdm;
        else if (model == "ddm")
            mk = pv::ModelKind::ddm;
        else if (model == "module")
            mk = pv::ModelKind::module;
        else
            throw std::invalid_argument("objective '" + spec + "': unknown PV model");
        return pv::make_objective(mk, pv::load_iv_csv(path));
    }
    if (kind == "external") {
        if (fields.size() < 5)
            throw std::invalid_argument(
                "objective '" + spec + "': expected external:<dim>:<lower>:<upper>:<command>");
        const auto dim = static_cast<std::size_t>(std::stoul(fields[1]));
        const double lo = std::stod(fields[2]);
        const double hi = std::stod(fields[3]);
        std::string command = fields[4];
        for (std::size_t i = 5; i < fields.size(); ++i)
            command += ":" + fields[i];
        return benchfns::external_objective(command, SearchSpace::cube(dim, lo, hi));
    }
    throw std::invalid_argument("objective '" + spec + "': unknown kind '" + kind + "'");
}

std::string ObjectiveRef::name() const {
    const auto fields = split(spec, ':');
    if (fields.size() >= 3 && fields[0] == "builtin")
        return fields[1] + ":" + fields[2];
    if (fields.size() >= 3 && fields[0] == "pv") {
        std::filesystem::path p(fields[2]);
        return fields[1] + ":" + p.stem().string();
    }
    if (!fields.empty() && fields[0] == "external")
        return "external";
    return spec;
}

ExperimentPlan load_plan(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open plan file: " + path);
    ExperimentPlan plan;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string text = trim(line);
        if (text.empty() || text[0] == '#')
            continue;
        const auto eq = text.find('=');
        if (eq == std::string::npos)
            throw std::runtime_error("plan line " + std::to_string(line_no) +
                                     ": expected key = value");
        const std::string key = trim(text.substr(0, eq));
        const std::string value = trim(text.substr(eq + 1));
        try {
            if (key == "runs")
                plan.runs = std::stoi(value);
            else if (key == "population" || key == "pop")
                plan.population = std::stoi(value);
            else if (key == "iterations" || key == "iters")
                plan.iterations = std::stoi(value);
            else if (key == "seed")
                plan.seed_base = std::stoull(value);
            else if (key == "workers")
                plan.workers = std::stoi(value);
            else if (key == "objective")
                plan.objectives.push_back({value});
            else if (key == "variant") {
                const auto parts = split(value, ':');
                VariantSpec v = variant_by_name(parts[0]);
                for (std::size_t i = 1; i < parts.size(); ++i) {
                    const auto opt = split(parts[i], '=', 2);
                    if (opt.size() != 2)
                        throw std::invalid_argument("bad variant option");
                    if (opt[0] == "delta") {
                        v.delta = std::stod(opt[1]);
                        v.name += ":delta=" + opt[1];
                    } else if (opt[0] == "m") {
                        v.memory = std::stoi(opt[1]);
                        v.name += ":m=" + opt[1];
                    } else {
                        throw std::invalid_argument("bad variant option");
                    }
                }
                plan.variants.push_back(std::move(v));
            } else
                throw std::invalid_argument("unknown key");
        } catch (const std::exception& e) {
            throw std::runtime_error("plan line " + std::to_string(line_no) + ": " + e.what());
        }
    }
    if (plan.objectives.empty())
        throw std::runtime_error("plan has no objectives");
    if (plan.variants.empty())
        plan.variants = standard_variants();
    return plan;
}

std::uint64_t run_seed(std::uint64_t seed_base, const std::string& variant,
                       const std::string& objective, int run) {
    // FNV-1a 64 over "<variant>|<objective>|<run>".
    const std::string key = variant + "|" + objective + "|" + std::to_string(run);
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : key) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return seed_base + h;
}

namespace {

dbo::OptimizerConfig cell_config(const ExperimentPlan& plan, const VariantSpec& variant,
                                 std::uint64_t seed) {
    dbo::OptimizerConfig config;
    config.population = plan.population;
    config.roles = dbo::partition_roles(plan.population);
    config.iterations = plan.iterations;
    config.seed = seed;
    config.variants = variant.flags;
    config.delta = variant.delta;
    config.memory = variant.memory;
    return config;
}

} // namespace

ExperimentReport run_plan(const ExperimentPlan& plan) {
    if (plan.runs < 1)
        throw std::invalid_argument("run_plan: runs must be >= 1");
    {
        std::vector<std::string> names;
        for (const auto& obj : plan.objectives)
            names.push_back(obj.name());
        std::sort(names.begin(), names.end());
        if (std::adjacent_find(names.begin(), names.end()) != names.end())
            throw std::invalid_argument("run_plan: duplicate objective names in plan");
        names.clear();
        for (const auto& variant : plan.variants)
            names.push_back(variant.name);
        std::sort(names.begin(), names.end());
        if (std::adjacent_find(names.begin(), names.end()) != names.end())
            throw std::invalid_argument("run_plan: duplicate variant names in plan");
    }

    struct Cell {
        std::size_t variant;
        std::size_t objective;
        int run;
    };
    std::vector<Cell> cells;
    for (std::size_t v = 0; v < plan.variants.size(); ++v)
        for (std::size_t o = 0; o < plan.objectives.size(); ++o)
            for (int r = 0; r < plan.runs; ++r)
                cells.push_back({v, o, r});

    // Objectives resolved once, shared read-only across workers.
    std::vector<ObjectiveSpec> objectives;
    objectives.reserve(plan.objectives.size());
    for (const auto& ref : plan.objectives)
        objectives.push_back(ref.resolve());

    std::vector<CellResult> results(cells.size());
    std::atomic<std::size_t> cursor{0};
    const auto worker = [&] {
        for (;;) {
            const std::size_t i = cursor.fetch_add(1);
            if (i >= cells.size())
                return;
            const Cell& cell = cells[i];
            const VariantSpec& variant = plan.variants[cell.variant];
            const std::string objective_name = plan.objectives[cell.objective].name();
            CellResult& out = results[i];
            out.variant = variant.name;
            out.objective = objective_name;
            out.run = cell.run;
            out.seed = run_seed(plan.seed_base, variant.name, objective_name, cell.run);
            try {
                dbo::OptimizerConfig config = cell_config(plan, variant, out.seed);
                out.trace = dbo::run(objectives[cell.objective], config);
                out.final_fitness = out.trace.best.fitness;
            } catch (const std::exception& e) {
                out.error = e.what();
                out.final_fitness = std::numeric_limits<double>::quiet_NaN();
            }
        }
    };

    unsigned workers = plan.workers > 0 ? static_cast<unsigned>(plan.workers)
                                        : std::max(1u, std::thread::hardware_concurrency());
    workers = std::min<unsigned>(workers, static_cast<unsigned>(cells.size()));
    if (workers <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (unsigned t = 0; t < workers; ++t)
            pool.emplace_back(worker);
        for (auto& t : pool)
            t.join();
    }

    ExperimentReport report;
    report.plan = plan;
    report.cells = std::move(results);
    std::sort(report.cells.begin(), report.cells.end(),
              [](const CellResult& a, const CellResult& b) {
                  return std::tie(a.variant, a.objective, a.run) <
                         std::tie(b.variant, b.objective, b.run);
              });

    // Summaries follow the sorted cell order, so a re-aggregation from
    // results.csv reproduces them byte for byte.
    std::size_t begin = 0;
    while (begin < report.cells.size()) {
        std::size_t end = begin;
        std::vector<double> finals;
        while (end < report.cells.size() &&
               report.cells[end].variant == report.cells[begin].variant &&
               report.cells[end].objective == report.cells[begin].objective) {
            if (report.cells[end].error.empty())
                finals.push_back(report.cells[end].final_fitness);
            ++end;
        }
        if (!finals.empty()) {
            SummaryRow row;
            row.variant = report.cells[begin].variant;
            row.objective = report.cells[begin].objective;
            row.runs = static_cast<int>(finals.size());
            row.mean = stats::mean(finals);
            row.stddev = stats::sample_std(finals);
            row.best = *std::min_element(finals.begin(), finals.end());
            row.worst = *std::max_element(finals.begin(), finals.end());
            row.median = stats::median(finals);
            report.summary.push_back(std::move(row));
        }
        begin = end;
    }
    return report;
}

void emit_convergence(const dbo::RunTrace& trace, const std::string& path) {
    auto out = open_out(path);
    out << "iteration,best_fitness,exploration_pct,exploitation_pct\n";
    for (std::size_t t = 0; t < trace.best_fitness.size(); ++t)
        out << (t + 1) << ',' << format_double(trace.best_fitness[t]) << ','
            << format_double(trace.exploration_pct[t]) << ','
            << format_double(trace.exploitation_pct[t]) << '\n';
}

namespace {

struct GroupedResults {
    // (variant -> objective -> final fitnesses in run order)
    std::map<std::string, std::map<std::string, std::vector<double>>> finals;
    std::vector<std::string> variants;   // first-seen order
    std::vector<std::string> objectives; // first-seen order

    void add(const std::string& variant, const std::string& objective, double value) {
        if (finals.find(variant) == finals.end())
            variants.push_back(variant);
        auto& per_objective = finals[variant];
        if (per_objective.find(objective) == per_objective.end() &&
            std::find(objectives.begin(), objectives.end(), objective) == objectives.end())
            objectives.push_back(objective);
        per_objective[objective].push_back(value);
    }
};

void write_summary_csv(const std::vector<SummaryRow>& summary, const std::string& path) {
    auto out = open_out(path);
    out << "variant,objective,runs,mean,std,best,worst,median\n";
    for (const auto& row : summary)
        out << row.variant << ',' << row.objective << ',' << row.runs << ','
            << format_double(row.mean) << ',' << format_double(row.stddev) << ','
            << format_double(row.best) << ',' << format_double(row.worst) << ','
            << format_double(row.median) << '\n';
}

void write_stats_text(const GroupedResults& grouped, const std::string& path) {
    auto out = open_out(path);
    const auto& variants = grouped.variants;

    out << "Pairwise comparisons (row vs column; B = better, S = similar, W = worse;\n"
        << "rank-sum verdicts at alpha = 0.05: + better, - worse, ~ no evidence)\n\n";
    for (const auto& objective : grouped.objectives) {
        out << "objective " << objective << "\n";
        for (const auto& row : variants) {
            const auto row_it = grouped.finals.at(row).find(objective);
            if (row_it == grouped.finals.at(row).end())
                continue; // every run of this cell failed
            const auto& row_runs = row_it->second;
            out << "  " << row << ":";
            for (const auto& col : variants) {
                if (col == row)
                    continue;
                const auto col_it = grouped.finals.at(col).find(objective);
                if (col_it == grouped.finals.at(col).end())
                    continue;
                const auto& col_runs = col_it->second;
                const auto bsw = stats::bsw_compare(row_runs, col_runs);
                std::string wilcoxon = "n/a";
                if (row_runs.size() >= 5 && col_runs.size() >= 5) {
                    const auto w = stats::wilcoxon_rank_sum(row_runs, col_runs);
                    char buf[48];
                    std::snprintf(buf, sizeof(buf), "%s p=%.6g", verdict_symbol(w.verdict),
                                  w.p_value);
                    wilcoxon = buf;
                }
                out << "  vs " << col << " [" << comparison_symbol(bsw) << ", " << wilcoxon
                    << "]";
            }
            out << "\n";
        }
        out << "\n";
    }

    bool complete = true;
    for (const auto& variant : variants)
        for (const auto& objective : grouped.objectives)
            if (grouped.finals.at(variant).find(objective) == grouped.finals.at(variant).end())
                complete = false;
    if (complete && grouped.objectives.size() >= 2 && variants.size() >= 2) {
        std::vector<std::vector<double>> means(variants.size());
        for (std::size_t v = 0; v < variants.size(); ++v)
            for (const auto& objective : grouped.objectives)
                means[v].push_back(stats::mean(grouped.finals.at(variants[v]).at(objective)));
        const auto ranks = stats::friedman_ranks(means);
        out << "Friedman mean ranks (lower is better)\n";
        for (std::size_t v = 0; v < variants.size(); ++v) {
            char buf[32];
            std::snprintf(buf, sizeof(buf), "%.4f", ranks[v]);
            out << "  " << variants[v] << ": " << buf << "\n";
        }
    }
}

std::string sanitize_filename(std::string name) {
    for (char& c : name)
        if (c == '/' || c == ':' || c == ' ' || c == '\\')
            c = '_';
    return name;
}

} // namespace

void write_report(const ExperimentReport& report, const std::string& out_dir) {
    std::filesystem::create_directories(out_dir);
    const std::filesystem::path dir(out_dir);

    {
        auto out = open_out((dir / "results.csv").string());
        out << "variant,objective,run,seed,final_fitness,error\n";
        for (const auto& cell : report.cells)
            out << cell.variant << ',' << cell.objective << ',' << cell.run << ',' << cell.seed
                << ',' << format_double(cell.final_fitness) << ',' << cell.error << '\n';
    }
    write_summary_csv(report.summary, (dir / "summary.csv").string());

    GroupedResults grouped;
    for (const auto& cell : report.cells)
        if (cell.error.empty())
            grouped.add(cell.variant, cell.objective, cell.final_fitness);
    write_stats_text(grouped, (dir / "stats.txt").string());

    // Convergence curve of the best run per (variant, objective).
    std::map<std::pair<std::string, std::string>, const CellResult*> best;
    for (const auto& cell : report.cells) {
        if (!cell.error.empty())
            continue;
        const auto key = std::make_pair(cell.variant, cell.objective);
        auto it = best.find(key);
        if (it == best.end() || cell.final_fitness < it->second->final_fitness)
            best[key] = &cell;
    }
    for (const auto& [key, cell] : best) {
        const std::string name =
            "convergence_" + sanitize_filename(key.first) + "_" + sanitize_filename(key.second) +
            ".csv";
        emit_convergence(cell->trace, (dir / name).string());
    }
}

void reaggregate_results(const std::string& results_csv, const std::string& out_dir) {
    std::ifstream in(results_csv);
    if (!in)
        throw std::runtime_error("cannot open " + results_csv);
    std::string line;
    if (!std::getline(in, line))
        throw std::runtime_error("empty results file " + results_csv);

    GroupedResults grouped;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty())
            continue;
        const auto fields = split(line, ',', 6);
        if (fields.size() < 5)
            throw std::runtime_error(results_csv + " line " + std::to_string(line_no) +
                                     ": expected at least 5 fields");
        const std::string error = fields.size() >= 6 ? trim(fields[5]) : "";
        if (!error.empty())
            continue;
        grouped.add(fields[0], fields[1], std::stod(fields[4]));
    }

    std::filesystem::create_directories(out_dir);
    const std::filesystem::path dir(out_dir);
    std::vector<SummaryRow> summary;
    for (const auto& variant : grouped.variants) {
        for (const auto& objective : grouped.objectives) {
            const auto it = grouped.finals.at(variant).find(objective);
            if (it == grouped.finals.at(variant).end() || it->second.empty())
                continue;
            SummaryRow row;
            row.variant = variant;
            row.objective = objective;
            row.runs = static_cast<int>(it->second.size());
            row.mean = stats::mean(it->second);
            row.stddev = stats::sample_std(it->second);
            row.best = *std::min_element(it->second.begin(), it->second.end());
            row.worst = *std::max_element(it->second.begin(), it->second.end());
            row.median = stats::median(it->second);
            summary.push_back(std::move(row));
        }
    }
    write_summary_csv(summary, (dir / "summary.csv").string());
    write_stats_text(grouped, (dir / "stats.txt").string());
}

PvFitResult fit_pv(pv::ModelKind model, const pv::IvDataset& data, const PvFitConfig& config) {
    ExperimentPlan plan;
    plan.runs = config.runs;
    plan.population = config.population;
    plan.iterations = config.iterations;
    plan.seed_base = config.seed_base;
    plan.workers = config.workers;

    VariantSpec variant = config.variant;
    variant.delta = config.delta;
    variant.memory = config.memory;

    const ObjectiveSpec objective = pv::make_objective(model, data);

    std::vector<CellResult> cells(static_cast<std::size_t>(config.runs));
    std::atomic<int> cursor{0};
    const auto worker = [&] {
        for (;;) {
            const int r = cursor.fetch_add(1);
            if (r >= config.runs)
                return;
            auto& out = cells[static_cast<std::size_t>(r)];
            out.variant = variant.name;
            out.objective = objective.name;
            out.run = r;
            out.seed = run_seed(plan.seed_base, variant.name, objective.name, r);
            dbo::OptimizerConfig run_config = cell_config(plan, variant, out.seed);
            out.trace = dbo::run(objective, run_config);
            out.final_fitness = out.trace.best.fitness;
        }
    };
    unsigned workers = config.workers > 0 ? static_cast<unsigned>(config.workers)
                                          : std::max(1u, std::thread::hardware_concurrency());
    workers = std::min<unsigned>(workers, static_cast<unsigned>(config.runs));
    if (workers <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < workers; ++t)
            pool.emplace_back(worker);
        for (auto& t : pool)
            t.join();
    }

    PvFitResult result;
    result.model = model;
    result.run_rmse.reserve(cells.size());
    std::size_t best_index = 0;
    for (std::size_t r = 0; r < cells.size(); ++r) {
        result.run_rmse.push_back(cells[r].final_fitness);
        if (cells[r].final_fitness < cells[best_index].final_fitness)
            best_index = r;
    }
    result.params = cells[best_index].trace.best.position;
    result.rmse = cells[best_index].final_fitness;
    result.best_run = static_cast<int>(best_index);
    result.best_seed = cells[best_index].seed;
    result.best_trace = std::move(cells[best_index].trace);
    return result;
}

void write_pv_fit(const PvFitResult& result, const pv::IvDataset& data,
                  const std::string& out_dir) {
    std::filesystem::create_directories(out_dir);
    const std::filesystem::path dir(out_dir);
    const std::string model = pv::to_string(result.model);

    {
        auto out = open_out((dir / ("fit_" + model + ".csv")).string());
        out << "parameter,value\n";
        const auto names = pv::parameter_names(result.model);
        for (std::size_t i = 0; i < names.size(); ++i)
            out << names[i] << ',' << format_double(result.params[i]) << '\n';
        out << "rmse," << format_double(result.rmse) << '\n';
        out << "best_run," << result.best_run << '\n';
        out << "best_seed," << result.best_seed << '\n';
    }
    {
        auto out = open_out((dir / ("curve_" + model + ".csv")).string());
        out << "voltage,current_measured,current_model,power_model\n";
        for (const auto& point : data.points) {
            const double i_model = pv::solve_current(result.params, result.model, data,
                                                     point.voltage, point.current);
            out << format_double(point.voltage) << ',' << format_double(point.current) << ','
                << format_double(i_model) << ',' << format_double(point.voltage * i_model)
                << '\n';
        }
    }
    emit_convergence(result.best_trace, (dir / ("convergence_" + model + ".csv")).string());
}

std::vector<DeltaSweepRow> sweep_delta(const ExperimentPlan& base,
                                       const std::vector<double>& deltas) {
    if (deltas.empty())
        throw std::invalid_argument("sweep_delta: no delta values");
    ExperimentPlan plan = base;
    plan.variants.clear();
    for (double d : deltas) {
        VariantSpec v = variant_by_name("MFO-DBO");
        char buf[32];
        std::snprintf(buf, sizeof(buf), "MFO-DBO:delta=%g", d);
        v.name = buf;
        v.delta = d;
        plan.variants.push_back(std::move(v));
    }
    const ExperimentReport report = run_plan(plan);

    std::vector<DeltaSweepRow> rows(deltas.size());
    std::vector<std::vector<double>> means(deltas.size());
    for (std::size_t i = 0; i < deltas.size(); ++i) {
        rows[i].delta = deltas[i];
        for (const auto& objective : base.objectives) { // plan order, not sorted order
            const std::string objective_name = objective.name();
            for (const auto& row : report.summary)
                if (row.variant == plan.variants[i].name && row.objective == objective_name)
                    means[i].push_back(row.mean);
        }
        rows[i].means = means[i];
    }
    if (base.objectives.size() >= 2 && deltas.size() >= 2) {
        const auto ranks = stats::friedman_ranks(means);
        for (std::size_t i = 0; i < deltas.size(); ++i)
            rows[i].mean_rank = ranks[i];
    } else {
        // Single objective: rank the means directly.
        std::vector<std::size_t> order(deltas.size());
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            return means[a].front() < means[b].front();
        });
        for (std::size_t pos = 0; pos < order.size(); ++pos)
            rows[order[pos]].mean_rank = static_cast<double>(pos + 1);
    }
    return rows;
}

void write_delta_sweep(const std::vector<DeltaSweepRow>& rows,
                       const std::vector<std::string>& objective_names, const std::string& path) {
    auto out = open_out(path);
    out << "delta";
    for (const auto& name : objective_names)
        out << ",mean:" << name;
    out << ",mean_rank\n";
    for (const auto& row : rows) {
        out << format_double(row.delta);
        for (double m : row.means)
            out << ',' << format_double(m);
        char buf[32];
        std::snprintf(buf, sizeof(buf), "%.4f", row.mean_rank);
        out << ',' << buf << '\n';
    }
}

} // namespace mfodbo::harness
