#include "sprayopt/registry.hpp"

#include <stdexcept>

namespace sprayopt {

namespace {

using T = ModelTerm;

// Axis indices in coded space.
constexpr int PFR = 0, SOD = 1, LAM = 2, CV = 3, TGF = 4;

ModelRegistry make_builtin() {
    ModelRegistry reg;

    reg.add({"velocity",
             "m/s",
             {T::intercept(6.1297), T::linear(PFR, -0.0056), T::linear(SOD, 0.0494),
              T::linear(LAM, -0.0182), T::linear(TGF, 0.0483), T::quadratic(SOD, -0.0304),
              T::quadratic(TGF, -0.0219), T::interaction(PFR, SOD, -0.0087),
              T::interaction(PFR, LAM, 0.0068), T::interaction(SOD, TGF, 0.0142)}});

    reg.add({"temperature",
             "degC",
             {T::intercept(7.4491), T::linear(PFR, -0.0072), T::linear(SOD, -0.0195),
              T::linear(LAM, 0.0254), T::linear(TGF, 0.0513), T::quadratic(LAM, -0.0056),
              T::quadratic(TGF, -0.0123), T::interaction(PFR, TGF, -0.0042),
              T::interaction(SOD, LAM, 0.0040), T::interaction(SOD, TGF, 0.0034)}});

    reg.add({"rate",
             "g/min",
             {T::intercept(3.6337), T::linear(PFR, 0.2668), T::linear(SOD, -0.0207),
              T::linear(LAM, 0.0636), T::linear(TGF, 0.1259), T::quadratic(PFR, -0.0303),
              T::quadratic(LAM, -0.0259), T::quadratic(CV, -0.0540), T::quadratic(TGF, -0.0524),
              T::interaction(PFR, TGF, 0.0184)}});

    reg.add({"efficiency",
             "fraction",
             {T::intercept(-0.4546), T::linear(PFR, 0.0051), T::linear(SOD, -0.0207),
              T::linear(LAM, 0.0636), T::linear(TGF, 0.1259), T::quadratic(LAM, -0.0273),
              T::quadratic(CV, -0.0553), T::quadratic(TGF, -0.0538),
              T::interaction(PFR, TGF, 0.0184)}});

    reg.add({"thickness",
             "um",
             {T::intercept(4.8928), T::linear(PFR, 0.2275), T::linear(LAM, 0.0664),
              T::linear(CV, -0.2658), T::linear(TGF, 0.0376), T::quadratic(LAM, -0.0338),
              T::quadratic(CV, 0.0428), T::quadratic(TGF, -0.0492),
              T::interaction(PFR, LAM, -0.0254), T::interaction(CV, TGF, -0.0331)}});

    // The roughness formula couples its last interaction to the table's
    // beta_10 = -0.0665 and leaves beta_9 = -0.0242 unused; implemented as
    // printed (see README, "Roughness model caveat").
    reg.add({"roughness",
             "um",
             {T::intercept(3.5241), T::linear(PFR, 0.0229), T::linear(SOD, -0.0065),
              T::linear(LAM, -0.0342), T::linear(CV, -0.0419), T::linear(TGF, -0.0979),
              T::quadratic(CV, 0.0325), T::quadratic(TGF, 0.0164),
              T::interaction(SOD, TGF, -0.0219), T::interaction(LAM, TGF, -0.0665)}});

    reg.add({"hardness",
             "HV5",
             {T::intercept(6.3520), T::linear(PFR, -0.0372), T::linear(SOD, -0.0345),
              T::linear(LAM, 0.0025), T::linear(CV, -0.0192), T::linear(TGF, 0.1189),
              T::interaction(LAM, CV, -0.0216), T::interaction(LAM, TGF, 0.0248)}});

    reg.add({"porosity",
             "%",
             {T::intercept(2.7056), T::linear(PFR, 0.0046), T::linear(SOD, 0.0146),
              T::linear(LAM, -0.0293), T::linear(CV, 0.0074), T::linear(TGF, -0.0462),
              T::quadratic(CV, 0.0363), T::quadratic(TGF, 0.0134),
              T::interaction(PFR, LAM, 0.0242), T::interaction(PFR, CV, 0.0294),
              T::interaction(PFR, TGF, -0.0150), T::interaction(LAM, CV, -0.0366),
              T::interaction(LAM, TGF, -0.0233)}});

    return reg;
}

std::string kind_to_string(TermKind k) {
    switch (k) {
        case TermKind::intercept: return "intercept";
        case TermKind::linear: return "linear";
        case TermKind::quadratic: return "quadratic";
        case TermKind::interaction: return "interaction";
    }
    throw std::logic_error("unreachable term kind");
}

TermKind kind_from_string(const std::string& s) {
    if (s == "intercept") return TermKind::intercept;
    if (s == "linear") return TermKind::linear;
    if (s == "quadratic") return TermKind::quadratic;
    if (s == "interaction") return TermKind::interaction;
    throw std::invalid_argument("unknown term kind '" + s + "'");
}

}  // namespace

const ModelRegistry& ModelRegistry::builtin() {
    static const ModelRegistry reg = make_builtin();
    return reg;
}

void ModelRegistry::add(GammaLogLinearModel model) {
    if (has(model.name()))
        throw std::invalid_argument("registry already contains model '" + model.name() + "'");
    models_.push_back(std::move(model));
}

bool ModelRegistry::has(std::string_view name) const {
    for (const auto& m : models_)
        if (m.name() == name) return true;
    return false;
}

const GammaLogLinearModel& ModelRegistry::at(std::string_view name) const {
    for (const auto& m : models_)
        if (m.name() == name) return m;
    throw std::invalid_argument("unknown model '" + std::string(name) + "'");
}

std::vector<std::string> ModelRegistry::names() const {
    std::vector<std::string> out;
    out.reserve(models_.size());
    for (const auto& m : models_) out.push_back(m.name());
    return out;
}

nlohmann::json ModelRegistry::to_json() const {
    nlohmann::json doc = nlohmann::json::array();
    for (const auto& m : models_) {
        nlohmann::json terms = nlohmann::json::array();
        for (const auto& t : m.terms()) {
            nlohmann::json jt;
            jt["kind"] = kind_to_string(t.kind);
            nlohmann::json idx = nlohmann::json::array();
            if (t.kind == TermKind::linear || t.kind == TermKind::quadratic) idx.push_back(t.i);
            if (t.kind == TermKind::interaction) {
                idx.push_back(t.i);
                idx.push_back(t.j);
            }
            jt["indices"] = idx;
            jt["coefficient"] = t.coefficient;
            terms.push_back(jt);
        }
        doc.push_back({{"name", m.name()}, {"unit", m.unit()}, {"terms", terms}});
    }
    return doc;
}

ModelRegistry ModelRegistry::from_json(const nlohmann::json& doc) {
    if (!doc.is_array()) throw std::invalid_argument("registry document must be an array");
    ModelRegistry reg;
    for (const auto& jm : doc) {
        std::vector<ModelTerm> terms;
        for (const auto& jt : jm.at("terms")) {
            const TermKind kind = kind_from_string(jt.at("kind").get<std::string>());
            const auto& idx = jt.at("indices");
            const double c = jt.at("coefficient").get<double>();
            switch (kind) {
                case TermKind::intercept: terms.push_back(ModelTerm::intercept(c)); break;
                case TermKind::linear:
                    terms.push_back(ModelTerm::linear(idx.at(0).get<int>(), c));
                    break;
                case TermKind::quadratic:
                    terms.push_back(ModelTerm::quadratic(idx.at(0).get<int>(), c));
                    break;
                case TermKind::interaction:
                    terms.push_back(
                        ModelTerm::interaction(idx.at(0).get<int>(), idx.at(1).get<int>(), c));
                    break;
            }
        }
        reg.add({jm.at("name").get<std::string>(), jm.at("unit").get<std::string>(),
                 std::move(terms)});
    }
    return reg;
}

}  // namespace sprayopt
