#ifndef SPRAYOPT_ARTIFACT_IO_HPP
#define SPRAYOPT_ARTIFACT_IO_HPP

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

namespace sprayopt {

inline constexpr const char* kToolVersion = "sprayopt 0.1.0";

/// Writes content via a temp file in the same directory plus rename, so
/// readers never observe a partial artifact.
void atomic_write_file(const std::string& path, const std::string& content);

/// Everything needed to re-execute a run bit-identically, plus the wall
/// time. The wall time lives here and only here; the data artifacts stay
/// byte-deterministic.
struct RunManifest {
    std::string command;
    std::string problem;
    std::string method;
    nlohmann::json hyperparameters;
    std::uint64_t seed = 0;
    std::string tool_version = kToolVersion;
    std::vector<std::string> outputs;
    double wall_time_ms = 0.0;

    nlohmann::json to_json() const;
    void write(const std::string& path) const;
};

}  // namespace sprayopt

#endif  // SPRAYOPT_ARTIFACT_IO_HPP
