#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "sprayopt/artifact_io.hpp"
#include "sprayopt/problems.hpp"
#include "sprayopt/registry.hpp"
#include "sprayopt/solution_io.hpp"
#include "sprayopt/svg.hpp"

namespace {

using namespace sprayopt;
using nlohmann::json;

std::string fmt9(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.9g", v);
    return buf;
}

std::uint64_t default_seed() {
    if (const char* env = std::getenv("SPRAYOPT_SEED")) {
        try {
            return std::stoull(env);
        } catch (const std::exception&) {
            std::cerr << "warning: ignoring non-numeric SPRAYOPT_SEED='" << env << "'\n";
        }
    }
    return 0;
}

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::string item;
    std::istringstream ss(s);
    while (std::getline(ss, item, ',')) out.push_back(item);
    return out;
}

std::string replace_extension(const std::string& path, const std::string& ext) {
    const auto dot = path.find_last_of('.');
    const auto slash = path.find_last_of('/');
    if (dot == std::string::npos || (slash != std::string::npos && dot < slash))
        return path + ext;
    return path.substr(0, dot) + ext;
}

struct OptimizeArgs {
    std::string problem_name;
    std::string config_path;
    std::string models_path;
    std::string method;
    std::string out;
    std::uint64_t seed = 0;
    bool seed_given = false;
    int pop = 0, gens = 0, multistart = 0, restarts = 0;
    double step = 0.0;
    bool svg = false;
    bool progress = false;
};

std::shared_ptr<const ModelRegistry> load_registry(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw std::invalid_argument("cannot read model registry '" + path + "'");
    json doc;
    is >> doc;
    return std::make_shared<const ModelRegistry>(ModelRegistry::from_json(doc));
}

ProblemSpec load_problem(const OptimizeArgs& args) {
    ProblemSpec problem = [&] {
        if (!args.config_path.empty()) {
            std::ifstream is(args.config_path);
            if (!is)
                throw std::invalid_argument("cannot read config '" + args.config_path + "'");
            json doc;
            is >> doc;
            return ProblemSpec::from_json(doc);
        }
        return builtin_problem(args.problem_name);
    }();
    if (!args.models_path.empty()) {
        problem.models = load_registry(args.models_path);
        problem.validate();
    }
    return problem;
}

void write_front_svgs(const SolutionSet& front, const std::string& csv_path,
                      std::vector<std::string>& outputs) {
    const std::size_t k = front.labels.size();
    std::vector<std::vector<double>> cols(k);
    for (const auto& c : front.candidates)
        for (std::size_t l = 0; l < k; ++l) cols[l].push_back(c.objectives.raw_values[l]);
    if (front.candidates.empty()) return;
    if (k == 2) {
        const std::string path = replace_extension(csv_path, ".svg");
        atomic_write_file(path, svg_scatter(cols[0], cols[1], front.labels[0], front.labels[1],
                                            "front: " + front.labels[0] + " vs " +
                                                front.labels[1]));
        outputs.push_back(path);
        return;
    }
    for (std::size_t a = 0; a < k; ++a) {
        for (std::size_t b = a + 1; b < k; ++b) {
            const std::string path = replace_extension(
                csv_path, "_" + front.labels[a] + "_" + front.labels[b] + ".svg");
            atomic_write_file(path,
                              svg_scatter(cols[a], cols[b], front.labels[a], front.labels[b],
                                          "front projection: " + front.labels[a] + " vs " +
                                              front.labels[b]));
            outputs.push_back(path);
        }
    }
}

int run_predict(const std::vector<std::string>& model_names, bool all,
                const std::string& models_path, double pfr, double sod, double lambda, double cv,
                double tgf) {
    std::shared_ptr<const ModelRegistry> custom;
    if (!models_path.empty()) custom = load_registry(models_path);
    const ModelRegistry& reg = custom ? *custom : ModelRegistry::builtin();
    const auto& space = ParameterSpace::wc_10co_4cr();
    const ParameterVector x{pfr, sod, lambda, cv, tgf};
    if (!x.finite()) throw std::invalid_argument("parameter values must be finite");
    if (!space.contains(x))
        std::cerr << "warning: point lies outside the WC-10Co-4Cr parameter box\n";

    std::vector<std::string> names = all ? reg.names() : model_names;
    if (names.empty()) throw std::invalid_argument("no models requested (use --model or --all)");
    const Vec5 coded = space.normalize(x);
    for (const auto& name : names) {
        const auto& model = reg.at(name);  // throws on unknown model
        std::cout << name << " = " << fmt9(model.predict(coded)) << ' ' << model.unit() << '\n';
    }
    return 0;
}

int run_optimize(const OptimizeArgs& args) {
    ProblemSpec problem = load_problem(args);
    const std::uint64_t seed = args.seed_given ? args.seed : default_seed();
    const auto t0 = std::chrono::steady_clock::now();

    RunManifest manifest;
    manifest.command = "optimize";
    manifest.problem = args.config_path.empty() ? problem.name : args.config_path;
    manifest.method = args.method;
    manifest.seed = seed;

    json summary;
    summary["command"] = "optimize";
    summary["problem"] = manifest.problem;
    summary["method"] = args.method;
    summary["seed"] = seed;
    summary["tool_version"] = kToolVersion;

    std::vector<std::string> outputs;
    std::string out = args.out;

    if (args.method == "weighted-sum") {
        if (out.empty()) out = "front.csv";
        if (args.step > 0.0) problem.weighted_sum.step = args.step;
        if (args.multistart > 0) problem.weighted_sum.sqp.multistart = args.multistart;
        const auto lattice =
            weight_lattice(static_cast<int>(problem.k()), problem.weighted_sum.step);
        SweepSummary sweep;
        SolutionSet front =
            weighted_sum_sweep(problem, lattice, problem.weighted_sum.sqp, seed, &sweep);

        json hp;
        hp["step"] = problem.weighted_sum.step;
        hp["xtol"] = problem.weighted_sum.sqp.xtol;
        hp["max_iterations"] = problem.weighted_sum.sqp.max_iterations;
        hp["multistart"] = problem.weighted_sum.sqp.multistart;
        manifest.hyperparameters = hp;
        summary["hyperparameters"] = hp;
        summary["front_size"] = front.size();
        summary["skipped_weights"] = sweep.skipped_weights;
        if (sweep.skipped_weights > 0)
            summary["warnings"] = {"some weights failed to converge and were skipped"};
        json recs = json::array();
        for (const auto& r : sweep.records)
            recs.push_back({{"weight_index", r.weight_index},
                            {"weights", r.weights},
                            {"converged", r.converged},
                            {"iterations", r.iterations},
                            {"value", r.value},
                            {"retained", r.retained}});
        summary["weights"] = recs;

        atomic_write_file(out, solution_csv_string(front));
        outputs.push_back(out);
        if (args.svg) write_front_svgs(front, out, outputs);
    } else if (args.method == "nsga2") {
        if (out.empty()) out = "front.csv";
        if (args.pop > 0) problem.nsga.population = args.pop;
        if (args.gens > 0) problem.nsga.generations = args.gens;
        problem.nsga.seed = seed;
        std::vector<GenerationRecord> history;
        SolutionSet front = nsga2_run(problem, problem.nsga, &history);
        assign_rank_and_crowding(front);

        if (args.progress) {
            for (const auto& rec : history) {
                json line = {{"generation", rec.generation}, {"front_size", rec.front_size}};
                if (std::isfinite(rec.hypervolume)) line["hypervolume"] = rec.hypervolume;
                std::cout << line.dump() << '\n';
            }
        }

        json hp;
        hp["population"] = problem.nsga.population;
        hp["generations"] = problem.nsga.generations;
        hp["crossover_prob"] = problem.nsga.crossover_prob;
        hp["eta_crossover"] = problem.nsga.eta_crossover;
        hp["mutation_prob"] = problem.nsga.mutation_prob;
        hp["eta_mutation"] = problem.nsga.eta_mutation;
        manifest.hyperparameters = hp;
        summary["hyperparameters"] = hp;
        summary["front_size"] = front.size();
        if (!history.empty()) {
            const auto& last = history.back();
            summary["final_generation"] = last.generation;
            summary["final_front_size"] = last.front_size;
            if (std::isfinite(last.hypervolume)) summary["final_hypervolume"] = last.hypervolume;
        }

        atomic_write_file(out, solution_csv_string(front));
        outputs.push_back(out);
        if (args.svg) write_front_svgs(front, out, outputs);
    } else if (args.method == "desirability") {
        if (out.empty()) out = "desirability.json";
        if (args.restarts > 0) problem.desirability.search.restarts = args.restarts;
        const DesirabilityOutcome best = maximize_desirability(
            problem, problem.desirability.spec, problem.desirability.search, seed);

        json hp;
        hp["restarts"] = problem.desirability.search.restarts;
        hp["tolerance"] = problem.desirability.search.tolerance;
        hp["max_evaluations"] = problem.desirability.search.max_evaluations;
        json objs = json::array();
        for (const auto& o : problem.desirability.spec.objectives)
            objs.push_back({{"direction",
                             o.direction == Direction::minimize ? "minimize" : "maximize"},
                            {"L", o.lower},
                            {"U", o.upper},
                            {"r", o.shape},
                            {"weight", o.weight}});
        hp["objectives"] = objs;
        manifest.hyperparameters = hp;
        summary["hyperparameters"] = hp;

        json result;
        result["decision"] = {{"pfr", best.decision.pfr},
                              {"sod", best.decision.sod},
                              {"lambda", best.decision.lambda},
                              {"cv", best.decision.cv},
                              {"tgf", best.decision.tgf}};
        result["overall_desirability"] = best.overall;
        json per = json::object();
        for (std::size_t l = 0; l < problem.k(); ++l) {
            per[problem.objectives[l].model] = {{"desirability", best.per_objective[l]},
                                                {"raw", best.raw[l]}};
        }
        result["per_objective"] = per;
        result["zero_desirability_everywhere"] = best.zero_everywhere;
        if (best.zero_everywhere) {
            result["plateau_surrogate"] = best.plateau_surrogate;
            summary["warnings"] = {
                "overall desirability is zero everywhere searched; returning the best "
                "raw-objective compromise"};
        }
        summary["result"] = result;
        outputs.push_back(out);
    } else {
        throw std::invalid_argument("unknown method '" + args.method +
                                    "' (expected weighted-sum, desirability or nsga2)");
    }

    const std::string summary_path =
        args.method == "desirability" ? out : replace_extension(out, ".summary.json");
    summary["outputs"] = outputs;
    atomic_write_file(summary_path, summary.dump(2) + "\n");
    if (summary_path != out) outputs.push_back(summary_path);

    const auto t1 = std::chrono::steady_clock::now();
    manifest.outputs = outputs;
    manifest.wall_time_ms =
        std::chrono::duration_cast<std::chrono::duration<double, std::milli>>(t1 - t0).count();
    manifest.write(out + ".manifest.json");
    return 0;
}

int run_pareto(const std::string& in_path, const std::string& out_path,
               const std::string& objectives_arg, const std::string& directions_arg) {
    const auto names = split_list(objectives_arg);
    const auto dir_names = split_list(directions_arg);
    if (names.empty() || names.size() != dir_names.size())
        throw std::invalid_argument("--objectives and --directions must be equal-length lists");
    std::vector<Direction> directions;
    for (const auto& d : dir_names) {
        if (d == "min" || d == "minimize") directions.push_back(Direction::minimize);
        else if (d == "max" || d == "maximize") directions.push_back(Direction::maximize);
        else throw std::invalid_argument("direction must be min or max, got '" + d + "'");
    }

    std::ifstream is(in_path);
    if (!is) throw std::invalid_argument("cannot read '" + in_path + "'");
    const CsvTable table = read_csv_table(is);

    std::vector<std::size_t> cols;
    for (const auto& n : names) cols.push_back(table.column(n));

    std::vector<std::vector<double>> canonical(table.rows.size());
    std::vector<std::string> bad_lines;
    for (std::size_t r = 0; r < table.rows.size(); ++r) {
        try {
            for (std::size_t l = 0; l < cols.size(); ++l) {
                const double raw = parse_csv_number(table.rows[r][cols[l]], r + 2);
                canonical[r].push_back(canonicalize(raw, directions[l]));
            }
        } catch (const CsvError&) {
            bad_lines.push_back(std::to_string(r + 2));
        }
    }
    if (!bad_lines.empty()) {
        std::string msg = "malformed rows on line(s): ";
        for (std::size_t i = 0; i < bad_lines.size(); ++i) msg += (i ? ", " : "") + bad_lines[i];
        throw CsvError(msg);
    }

    std::ostringstream out;
    // header preserved verbatim
    std::string header;
    for (std::size_t i = 0; i < table.header.size(); ++i)
        header += (i ? "," : "") + table.header[i];
    out << header << '\n';
    for (std::size_t r = 0; r < table.rows.size(); ++r) {
        bool dominated = false;
        for (std::size_t q = 0; q < table.rows.size() && !dominated; ++q)
            dominated = q != r && weakly_dominates(canonical[q], canonical[r]);
        if (!dominated) out << table.raw_lines[r] << '\n';
    }
    atomic_write_file(out_path, out.str());
    return 0;
}

int run_validate(double strict_fraction) {
    const auto rows = validate_published_solutions(strict_fraction * 100.0);
    std::printf("%-8s %-12s %-12s %14s %14s %11s %9s  %s\n", "problem", "solution", "property",
                "theoretical", "predicted", "deviation", "band", "status");
    bool all_pass = true;
    for (const auto& r : rows) {
        const char* status = !r.gating ? "INFO" : (r.pass ? "PASS" : "FAIL");
        if (r.gating && !r.pass) all_pass = false;
        std::printf("%-8s %-12s %-12s %14.6g %14.6g %+10.3f%% %8.3g%%  %s\n", r.problem.c_str(),
                    r.solution.c_str(), r.property.c_str(), r.theoretical, r.predicted,
                    r.deviation_pct, r.tolerance_pct, status);
    }
    std::printf("%s\n", all_pass ? "validation: PASS" : "validation: FAIL");
    return all_pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"HVOF coating-property models and multi-objective optimization"};
    app.set_version_flag("--version", kToolVersion);
    app.require_subcommand(1);

    // predict
    auto* predict = app.add_subcommand("predict", "Evaluate coating-property models at a point");
    std::vector<std::string> pred_models;
    std::string pred_registry;
    bool pred_all = false;
    double pfr = 0, sod = 0, lambda = 0, cv = 0, tgf = 0;
    predict->add_option("--model", pred_models, "Model name (repeatable)");
    predict->add_flag("--all", pred_all, "Evaluate all eight models");
    predict->add_option("--models", pred_registry, "Model registry JSON replacing the built-ins");
    predict->add_option("--pfr", pfr, "Powder feed rate (g/min)")->required();
    predict->add_option("--sod", sod, "Stand-off distance (mm)")->required();
    predict->add_option("--lambda", lambda, "Fuel-to-oxygen ratio")->required();
    predict->add_option("--cv", cv, "Coating velocity (m/min)")->required();
    predict->add_option("--tgf", tgf, "Total gas flow (nl/m)")->required();

    // optimize
    auto* optimize = app.add_subcommand("optimize", "Run a multi-objective optimization");
    OptimizeArgs oa;
    optimize->add_option("--problem", oa.problem_name, "Built-in problem: I, II or III");
    optimize->add_option("--config", oa.config_path, "Problem config JSON path");
    optimize->add_option("--models", oa.models_path, "Model registry JSON replacing the built-ins");
    optimize->add_option("--method", oa.method, "weighted-sum | desirability | nsga2")
        ->required();
    optimize->add_option("--out", oa.out, "Output path (CSV front or JSON result)");
    auto* seed_opt = optimize->add_option("--seed", oa.seed, "RNG seed");
    optimize->add_option("--pop", oa.pop, "NSGA-II population override");
    optimize->add_option("--gens", oa.gens, "NSGA-II generations override");
    optimize->add_option("--step", oa.step, "Weight lattice step override");
    optimize->add_option("--multistart", oa.multistart, "SQP multistart override");
    optimize->add_option("--restarts", oa.restarts, "Direct-search restart override");
    optimize->add_flag("--svg", oa.svg, "Write front scatter SVG(s)");
    optimize->add_flag("--progress", oa.progress, "Emit per-generation JSON records");

    // pareto
    auto* pareto = app.add_subcommand("pareto", "Filter a CSV to its non-dominated rows");
    std::string in_path, out_path, objectives_arg, directions_arg;
    pareto->add_option("--in", in_path, "Input CSV")->required();
    pareto->add_option("--out", out_path, "Output CSV")->required();
    pareto->add_option("--objectives", objectives_arg, "Comma-separated objective columns")
        ->required();
    pareto->add_option("--directions", directions_arg, "Comma-separated min/max list")
        ->required();

    // validate
    auto* validate = app.add_subcommand("validate", "Reproduce the published solution values");
    double strict = 0.0;
    validate->add_option("--strict", strict, "Override gating tolerance (fraction, e.g. 0.001)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (predict->parsed())
            return run_predict(pred_models, pred_all, pred_registry, pfr, sod, lambda, cv, tgf);
        if (optimize->parsed()) {
            oa.seed_given = seed_opt->count() > 0;
            if (oa.problem_name.empty() == oa.config_path.empty())
                throw std::invalid_argument("give exactly one of --problem or --config");
            return run_optimize(oa);
        }
        if (pareto->parsed()) return run_pareto(in_path, out_path, objectives_arg, directions_arg);
        if (validate->parsed()) return run_validate(strict);
    } catch (const CsvError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 2;
}
