#include "sprayopt/problems.hpp"

#include <cmath>
#include <stdexcept>

namespace sprayopt {

namespace {

Direction direction_from_string(const std::string& s) {
    if (s == "minimize") return Direction::minimize;
    if (s == "maximize") return Direction::maximize;
    throw std::invalid_argument("unknown direction '" + s + "'");
}

std::string direction_to_string(Direction d) {
    return d == Direction::minimize ? "minimize" : "maximize";
}

DesirabilityObjective desir(Direction dir, double lower, double upper, double shape,
                            double weight) {
    return {dir, lower, upper, shape, weight};
}

}  // namespace

std::vector<std::string> ProblemSpec::labels() const {
    std::vector<std::string> out;
    out.reserve(objectives.size());
    for (const auto& o : objectives) out.push_back(o.model);
    return out;
}

std::vector<Direction> ProblemSpec::directions() const {
    std::vector<Direction> out;
    out.reserve(objectives.size());
    for (const auto& o : objectives) out.push_back(o.direction);
    return out;
}

const ModelRegistry& ProblemSpec::registry() const {
    return models ? *models : ModelRegistry::builtin();
}

void ProblemSpec::validate() const {
    if (objectives.empty()) throw std::invalid_argument("problem has no objectives");
    for (const auto& o : objectives)
        if (!registry().has(o.model))
            throw std::invalid_argument("problem references unknown model '" + o.model + "'");
    if (!desirability.spec.objectives.empty() &&
        desirability.spec.objectives.size() != objectives.size())
        throw std::invalid_argument("desirability block arity does not match the objectives");
}

ProblemSpec builtin_problem(std::string_view name) {
    ProblemSpec p;
    if (name == "I") {
        p.name = "I";
        p.objectives = {{"hardness", Direction::maximize, "HV5"},
                        {"efficiency", Direction::maximize, "fraction"}};
        p.weighted_sum.step = 0.01;
        p.desirability.spec.objectives = {desir(Direction::maximize, 600.0, 725.0, 2.5, 0.5),
                                          desir(Direction::maximize, 0.6, 0.7, 0.25, 0.5)};
        p.nsga.population = 300;
        p.nsga.generations = 1000;
    } else if (name == "II") {
        p.name = "II";
        p.objectives = {{"hardness", Direction::maximize, "HV5"},
                        {"efficiency", Direction::maximize, "fraction"},
                        {"temperature", Direction::minimize, "degC"}};
        p.weighted_sum.step = 0.01;
        p.desirability.spec.objectives = {
            desir(Direction::maximize, 600.0, 725.0, 2.5, 1.0 / 3.0),
            desir(Direction::maximize, 0.5, 0.65, 0.25, 1.0 / 3.0),
            desir(Direction::minimize, 1600.0, 1720.0, 2.0, 1.0 / 3.0)};
        p.nsga.population = 5000;
        p.nsga.generations = 100;
    } else if (name == "III") {
        p.name = "III";
        p.objectives = {{"porosity", Direction::minimize, "%"},
                        {"roughness", Direction::minimize, "um"},
                        {"temperature", Direction::minimize, "degC"}};
        p.weighted_sum.step = 0.01;
        p.desirability.spec.objectives = {
            desir(Direction::minimize, 13.0, 15.0, 1.5, 1.0 / 3.0),
            desir(Direction::minimize, 26.0, 35.0, 2.5, 1.0 / 3.0),
            desir(Direction::minimize, 1600.0, 1720.0, 2.0, 1.0 / 3.0)};
        p.nsga.population = 5000;
        p.nsga.generations = 100;
    } else {
        throw std::invalid_argument("unknown built-in problem '" + std::string(name) +
                                    "' (expected I, II or III)");
    }
    return p;
}

std::vector<double> evaluate_canonical_coded(const ProblemSpec& problem, const Vec5& coded,
                                             std::vector<double>* raw) {
    const auto& reg = problem.registry();
    std::vector<double> canonical(problem.k());
    if (raw) raw->resize(problem.k());
    for (std::size_t l = 0; l < problem.k(); ++l) {
        const double value = reg.at(problem.objectives[l].model).predict(coded);
        canonical[l] = canonicalize(value, problem.objectives[l].direction);
        if (raw) (*raw)[l] = value;
    }
    return canonical;
}

Candidate evaluate(const ProblemSpec& problem, const ParameterVector& x) {
    if (!x.finite()) throw std::invalid_argument("evaluate: non-finite parameter vector");
    const Vec5 coded = problem.space.normalize(x);
    std::vector<double> raw;
    std::vector<double> canonical = evaluate_canonical_coded(problem, coded, &raw);
    Candidate c;
    c.decision = x;
    c.objectives = ObjectiveVector(std::move(canonical), std::move(raw));
    c.feasible = problem.space.contains(x, 1e-9);
    return c;
}

nlohmann::json ProblemSpec::to_json() const {
    nlohmann::json doc;
    doc["name"] = name;
    doc["objectives"] = nlohmann::json::array();
    for (const auto& o : objectives)
        doc["objectives"].push_back(
            {{"model", o.model}, {"direction", direction_to_string(o.direction)},
             {"unit", o.unit}});
    nlohmann::json bounds;
    for (std::size_t i = 0; i < kNumParams; ++i) {
        const auto& a = space.axis(i);
        bounds[parameter_names()[i]] = {{"lower", a.lower},
                                        {"upper", a.upper},
                                        {"center", a.center},
                                        {"half_range", a.half_range}};
    }
    doc["bounds"] = bounds;
    doc["methods"]["weighted_sum"] = {{"step", weighted_sum.step},
                                      {"xtol", weighted_sum.sqp.xtol},
                                      {"max_iterations", weighted_sum.sqp.max_iterations},
                                      {"multistart", weighted_sum.sqp.multistart}};
    nlohmann::json desir_objs = nlohmann::json::array();
    for (const auto& o : desirability.spec.objectives)
        desir_objs.push_back({{"direction", direction_to_string(o.direction)},
                              {"L", o.lower},
                              {"U", o.upper},
                              {"r", o.shape},
                              {"weight", o.weight}});
    doc["methods"]["desirability"] = {{"objectives", desir_objs},
                                      {"restarts", desirability.search.restarts},
                                      {"tolerance", desirability.search.tolerance},
                                      {"max_evaluations", desirability.search.max_evaluations}};
    doc["methods"]["nsga2"] = {{"population", nsga.population},
                               {"generations", nsga.generations},
                               {"crossover_prob", nsga.crossover_prob},
                               {"eta_crossover", nsga.eta_crossover},
                               {"mutation_prob", nsga.mutation_prob},
                               {"eta_mutation", nsga.eta_mutation}};
    return doc;
}

ProblemSpec ProblemSpec::from_json(const nlohmann::json& doc) {
    ProblemSpec p;
    p.name = doc.at("name").get<std::string>();
    for (const auto& jo : doc.at("objectives")) {
        ObjectiveSpec o;
        o.model = jo.at("model").get<std::string>();
        o.direction = direction_from_string(jo.at("direction").get<std::string>());
        if (jo.contains("unit")) o.unit = jo.at("unit").get<std::string>();
        p.objectives.push_back(std::move(o));
    }
    if (doc.contains("bounds")) {
        const auto& jb = doc.at("bounds");
        std::array<ParameterAxis, kNumParams> axes{
            ParameterAxis{0, 1}, ParameterAxis{0, 1}, ParameterAxis{0, 1}, ParameterAxis{0, 1},
            ParameterAxis{0, 1}};
        for (std::size_t i = 0; i < kNumParams; ++i) {
            const auto& ja = jb.at(parameter_names()[i]);
            const double lo = ja.at("lower").get<double>();
            const double hi = ja.at("upper").get<double>();
            if (ja.contains("center") && ja.contains("half_range"))
                axes[i] = ParameterAxis(lo, hi, ja.at("center").get<double>(),
                                        ja.at("half_range").get<double>());
            else
                axes[i] = ParameterAxis(lo, hi);
        }
        p.space = ParameterSpace(axes);
    }
    if (doc.contains("methods")) {
        const auto& jm = doc.at("methods");
        if (jm.contains("weighted_sum")) {
            const auto& jw = jm.at("weighted_sum");
            if (jw.contains("step")) p.weighted_sum.step = jw.at("step").get<double>();
            if (jw.contains("xtol")) p.weighted_sum.sqp.xtol = jw.at("xtol").get<double>();
            if (jw.contains("max_iterations"))
                p.weighted_sum.sqp.max_iterations = jw.at("max_iterations").get<int>();
            if (jw.contains("multistart"))
                p.weighted_sum.sqp.multistart = jw.at("multistart").get<int>();
        }
        if (jm.contains("desirability")) {
            const auto& jd = jm.at("desirability");
            for (const auto& jo : jd.at("objectives")) {
                DesirabilityObjective o;
                o.direction = direction_from_string(jo.at("direction").get<std::string>());
                o.lower = jo.at("L").get<double>();
                o.upper = jo.at("U").get<double>();
                o.shape = jo.at("r").get<double>();
                o.weight = jo.at("weight").get<double>();
                p.desirability.spec.objectives.push_back(o);
            }
            if (jd.contains("restarts"))
                p.desirability.search.restarts = jd.at("restarts").get<int>();
            if (jd.contains("tolerance"))
                p.desirability.search.tolerance = jd.at("tolerance").get<double>();
            if (jd.contains("max_evaluations"))
                p.desirability.search.max_evaluations = jd.at("max_evaluations").get<int>();
        }
        if (jm.contains("nsga2")) {
            const auto& jn = jm.at("nsga2");
            if (jn.contains("population")) p.nsga.population = jn.at("population").get<int>();
            if (jn.contains("generations")) p.nsga.generations = jn.at("generations").get<int>();
            if (jn.contains("crossover_prob"))
                p.nsga.crossover_prob = jn.at("crossover_prob").get<double>();
            if (jn.contains("eta_crossover"))
                p.nsga.eta_crossover = jn.at("eta_crossover").get<double>();
            if (jn.contains("mutation_prob"))
                p.nsga.mutation_prob = jn.at("mutation_prob").get<double>();
            if (jn.contains("eta_mutation"))
                p.nsga.eta_mutation = jn.at("eta_mutation").get<double>();
        }
    }
    p.validate();
    return p;
}

std::vector<ValidationRow> validate_published_solutions(double strict_tolerance_pct) {
    struct Entry {
        const char* problem;
        const char* solution;
        ParameterVector setting;
        const char* property;
        double theoretical;
        double tolerance_pct;
        bool gating;
        const char* rationale;
    };

    static const char* kBandI =
        "2.5% band: published Problem I values sit ~2% from the midpoint coding; "
        "the exact design coding is not recoverable from the source tables";
    static const char* kBandTight = "0.5% band: direct model reproduction";
    static const char* kRoughnessNote =
        "informational: the printed roughness formula overshoots the published "
        "values by ~9-12%; see README";

    const ParameterVector i_desir{45.0, 200.0, 1.04, 80.0, 751.0};
    const ParameterVector i_nsga{45.0, 200.0, 1.04, 90.67, 751.0};
    const ParameterVector ii_nsga1{49.10, 259.22, 0.84, 101.01, 727.73};
    const ParameterVector ii_nsga2{62.00, 259.74, 0.85, 99.71, 748.74};
    const ParameterVector iii_nsga1{45.02, 259.96, 1.04, 120.01, 638.88};
    const ParameterVector iii_nsga2{45.00, 255.53, 1.04, 118.61, 615.34};

    const Entry entries[] = {
        {"I", "Desirability", i_desir, "hardness", 724.38, 2.5, true, kBandI},
        {"I", "Desirability", i_desir, "efficiency", 0.674, 2.5, true, kBandI},
        {"I", "NSGA-II", i_nsga, "hardness", 711.86, 2.5, true, kBandI},
        {"I", "NSGA-II", i_nsga, "efficiency", 0.693, 2.5, true, kBandI},
        {"II", "NSGA-II I", ii_nsga1, "hardness", 604.71, 0.5, true, kBandTight},
        {"II", "NSGA-II I", ii_nsga1, "efficiency", 0.595, 0.5, true, kBandTight},
        {"II", "NSGA-II I", ii_nsga1, "temperature", 1690.97, 0.5, true, kBandTight},
        {"II", "NSGA-II II", ii_nsga2, "hardness", 603.73, 0.5, true, kBandTight},
        {"II", "NSGA-II II", ii_nsga2, "efficiency", 0.617, 0.5, true, kBandTight},
        {"II", "NSGA-II II", ii_nsga2, "temperature", 1698.52, 0.5, true, kBandTight},
        {"III", "NSGA-II I", iii_nsga1, "porosity", 14.57, 0.5, true, kBandTight},
        {"III", "NSGA-II I", iii_nsga1, "roughness", 32.71, 0.5, false, kRoughnessNote},
        {"III", "NSGA-II I", iii_nsga1, "temperature", 1664.19, 0.5, true, kBandTight},
        {"III", "NSGA-II II", iii_nsga2, "porosity", 14.95, 0.5, true, kBandTight},
        {"III", "NSGA-II II", iii_nsga2, "roughness", 34.10, 0.5, false, kRoughnessNote},
        {"III", "NSGA-II II", iii_nsga2, "temperature", 1622.64, 0.5, true, kBandTight},
    };

    const auto& reg = ModelRegistry::builtin();
    const auto& space = ParameterSpace::wc_10co_4cr();

    std::vector<ValidationRow> rows;
    for (const auto& e : entries) {
        ValidationRow row;
        row.problem = e.problem;
        row.solution = e.solution;
        row.property = e.property;
        row.setting = e.setting;
        row.theoretical = e.theoretical;
        row.predicted = reg.at(e.property).predict(space.normalize(e.setting));
        row.deviation_pct = (row.predicted - row.theoretical) / row.theoretical * 100.0;
        row.gating = e.gating;
        row.tolerance_pct =
            (e.gating && strict_tolerance_pct > 0.0) ? strict_tolerance_pct : e.tolerance_pct;
        row.rationale = e.rationale;
        row.pass = std::abs(row.deviation_pct) <= row.tolerance_pct;
        rows.push_back(std::move(row));
    }
    return rows;
}

}  // namespace sprayopt
