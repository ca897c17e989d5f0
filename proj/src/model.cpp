#include "sprayopt/model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <utility>

namespace sprayopt {

namespace {

constexpr double kLogPredictorLimit = 700.0;

void check_index(int i) {
    if (i < 0 || i >= static_cast<int>(kNumParams))
        throw std::invalid_argument("model term index out of range");
}

// Halton sequence in base b, element n (1-based), radical inverse.
double halton(int n, int base) {
    double f = 1.0, r = 0.0;
    while (n > 0) {
        f /= base;
        r += f * (n % base);
        n /= base;
    }
    return r;
}

}  // namespace

ModelTerm ModelTerm::interaction(int i, int j, double c) {
    if (i == j) throw std::invalid_argument("interaction term requires distinct indices");
    if (i > j) std::swap(i, j);
    return {TermKind::interaction, i, j, c};
}

GammaLogLinearModel::GammaLogLinearModel(std::string name, std::string unit,
                                         std::vector<ModelTerm> terms)
    : name_(std::move(name)), unit_(std::move(unit)), terms_(std::move(terms)) {
    for (auto& t : terms_) {
        switch (t.kind) {
            case TermKind::intercept:
                break;
            case TermKind::linear:
            case TermKind::quadratic:
                check_index(t.i);
                break;
            case TermKind::interaction:
                check_index(t.i);
                check_index(t.j);
                if (t.i == t.j)
                    throw std::invalid_argument("interaction term requires distinct indices");
                if (t.i > t.j) std::swap(t.i, t.j);
                break;
        }
        if (!std::isfinite(t.coefficient))
            throw std::invalid_argument("model '" + name_ + "': non-finite coefficient");
    }
    for (std::size_t a = 0; a < terms_.size(); ++a)
        for (std::size_t b = a + 1; b < terms_.size(); ++b)
            if (terms_[a].kind == terms_[b].kind && terms_[a].i == terms_[b].i &&
                terms_[a].j == terms_[b].j)
                throw std::invalid_argument("model '" + name_ + "': duplicate term");

    curvature_ = zero_mat5();
    for (const auto& t : terms_) {
        if (t.kind == TermKind::quadratic) {
            curvature_[t.i][t.i] += 2.0 * t.coefficient;
        } else if (t.kind == TermKind::interaction) {
            curvature_[t.i][t.j] += t.coefficient;
            curvature_[t.j][t.i] += t.coefficient;
        }
    }
}

double GammaLogLinearModel::log_predict(const Vec5& coded) const {
    if (!all_finite(coded))
        throw std::invalid_argument("model '" + name_ + "': non-finite coded input");
    double h = 0.0;
    for (const auto& t : terms_) {
        switch (t.kind) {
            case TermKind::intercept: h += t.coefficient; break;
            case TermKind::linear: h += t.coefficient * coded[t.i]; break;
            case TermKind::quadratic: h += t.coefficient * coded[t.i] * coded[t.i]; break;
            case TermKind::interaction: h += t.coefficient * coded[t.i] * coded[t.j]; break;
        }
    }
    return h;
}

double GammaLogLinearModel::predict(const Vec5& coded) const {
    const double h = log_predict(coded);
    if (std::abs(h) > kLogPredictorLimit) {
        std::ostringstream msg;
        msg << "model '" << name_ << "': linear predictor " << h
            << " exceeds the exp-representable range at coded point (" << coded[0] << ", "
            << coded[1] << ", " << coded[2] << ", " << coded[3] << ", " << coded[4] << ")";
        throw PredictionOverflow(msg.str());
    }
    return std::exp(h);
}

Vec5 GammaLogLinearModel::log_gradient(const Vec5& coded) const {
    Vec5 g = zero_vec5();
    for (const auto& t : terms_) {
        switch (t.kind) {
            case TermKind::intercept: break;
            case TermKind::linear: g[t.i] += t.coefficient; break;
            case TermKind::quadratic: g[t.i] += 2.0 * t.coefficient * coded[t.i]; break;
            case TermKind::interaction:
                g[t.i] += t.coefficient * coded[t.j];
                g[t.j] += t.coefficient * coded[t.i];
                break;
        }
    }
    return g;
}

Vec5 GammaLogLinearModel::gradient(const Vec5& coded) const {
    const double f = predict(coded);
    Vec5 g = log_gradient(coded);
    for (double& v : g) v *= f;
    return g;
}

Mat5 GammaLogLinearModel::hessian(const Vec5& coded) const {
    const double f = predict(coded);
    const Vec5 g = log_gradient(coded);
    Mat5 h;
    for (std::size_t i = 0; i < kNumParams; ++i) {
        h[i][i] = f * (g[i] * g[i] + curvature_[i][i]);
        for (std::size_t j = i + 1; j < kNumParams; ++j) {
            const double v = f * (g[i] * g[j] + curvature_[i][j]);
            h[i][j] = v;
            h[j][i] = v;
        }
    }
    return h;
}

ConvexityReport convexity_report(const GammaLogLinearModel& model, const ParameterSpace& space,
                                 int samples) {
    if (samples < 1) throw std::invalid_argument("convexity_report: samples must be >= 1");
    const Vec5 lo = space.coded_lower();
    const Vec5 hi = space.coded_upper();
    static constexpr int kBases[kNumParams] = {2, 3, 5, 7, 11};

    ConvexityReport report;
    report.samples = samples;
    report.min_eigenvalue = std::numeric_limits<double>::infinity();
    for (int n = 1; n <= samples; ++n) {
        Vec5 x;
        for (std::size_t i = 0; i < kNumParams; ++i)
            x[i] = lo[i] + (hi[i] - lo[i]) * halton(n, kBases[i]);
        const double ev = min_eigenvalue(model.hessian(x));
        if (ev < report.min_eigenvalue) {
            report.min_eigenvalue = ev;
            report.witness_coded = x;
        }
    }
    report.positive_definite = report.min_eigenvalue > 0.0;
    return report;
}

}  // namespace sprayopt
