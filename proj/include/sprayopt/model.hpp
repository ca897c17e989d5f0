#ifndef SPRAYOPT_MODEL_HPP
#define SPRAYOPT_MODEL_HPP

#include <stdexcept>
#include <string>
#include <vector>

#include "sprayopt/linalg.hpp"
#include "sprayopt/params.hpp"

namespace sprayopt {

/// Thrown when the linear predictor leaves the range where exp() is
/// representable (|h| > 700).
class PredictionOverflow : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

enum class TermKind { intercept, linear, quadratic, interaction };

/// One additive term of the linear predictor h(x). Interaction index pairs
/// are stored with i < j; they are an unordered pair of distinct axes.
struct ModelTerm {
    TermKind kind;
    int i = -1;
    int j = -1;
    double coefficient = 0.0;

    static ModelTerm intercept(double c) { return {TermKind::intercept, -1, -1, c}; }
    static ModelTerm linear(int i, double c) { return {TermKind::linear, i, -1, c}; }
    static ModelTerm quadratic(int i, double c) { return {TermKind::quadratic, i, -1, c}; }
    static ModelTerm interaction(int i, int j, double c);
};

/// Gamma regression model with log link: predicts exp(h(x)) where h is a
/// polynomial with intercept, linear, quadratic and pairwise interaction
/// terms over the coded (normalized) process parameters. Predictions are
/// strictly positive for any finite coded input. Immutable after
/// construction; all evaluations are pure.
class GammaLogLinearModel {
  public:
    GammaLogLinearModel(std::string name, std::string unit, std::vector<ModelTerm> terms);

    const std::string& name() const { return name_; }
    const std::string& unit() const { return unit_; }
    const std::vector<ModelTerm>& terms() const { return terms_; }

    /// h(x), the linear predictor.
    double log_predict(const Vec5& coded) const;

    /// exp(h(x)); throws PredictionOverflow when |h| > 700.
    double predict(const Vec5& coded) const;

    /// nabla h(x).
    Vec5 log_gradient(const Vec5& coded) const;

    /// nabla f = exp(h(x)) * nabla h(x).
    Vec5 gradient(const Vec5& coded) const;

    /// Hessian of h: constant matrix with 2*b_ii on the diagonal and b_ij on
    /// the interaction positions.
    const Mat5& curvature() const { return curvature_; }

    /// Hessian of f: exp(h) * (nabla h nabla h^T + B). Built symmetrically,
    /// so the returned matrix equals its transpose entry for entry.
    Mat5 hessian(const Vec5& coded) const;

  private:
    std::string name_;
    std::string unit_;
    std::vector<ModelTerm> terms_;
    Mat5 curvature_;
};

/// Definiteness scan of the model Hessian over the coded box. Samples
/// low-discrepancy (Halton) points; positive_definite is true only when the
/// smallest eigenvalue seen is strictly positive.
struct ConvexityReport {
    bool positive_definite = false;
    double min_eigenvalue = 0.0;
    Vec5 witness_coded = zero_vec5();
    int samples = 0;
};

ConvexityReport convexity_report(const GammaLogLinearModel& model, const ParameterSpace& space,
                                 int samples = 1000);

}  // namespace sprayopt

#endif  // SPRAYOPT_MODEL_HPP
