#ifndef SPRAYOPT_REGISTRY_HPP
#define SPRAYOPT_REGISTRY_HPP

#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "sprayopt/model.hpp"

namespace sprayopt {

/// The eight built-in coating-property models, keyed by name:
/// velocity, temperature, rate, efficiency, thickness, roughness,
/// hardness, porosity. Immutable; safe to share across threads.
class ModelRegistry {
  public:
    ModelRegistry() = default;

    static const ModelRegistry& builtin();

    void add(GammaLogLinearModel model);
    bool has(std::string_view name) const;
    const GammaLogLinearModel& at(std::string_view name) const;  // throws on unknown name
    const std::vector<GammaLogLinearModel>& models() const { return models_; }
    std::vector<std::string> names() const;

    nlohmann::json to_json() const;
    static ModelRegistry from_json(const nlohmann::json& doc);

  private:
    std::vector<GammaLogLinearModel> models_;
};

}  // namespace sprayopt

#endif  // SPRAYOPT_REGISTRY_HPP
