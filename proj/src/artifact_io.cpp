#include "sprayopt/artifact_io.hpp"

#include <filesystem>
#include <fstream>
#include <stdexcept>

namespace sprayopt {

void atomic_write_file(const std::string& path, const std::string& content) {
    namespace fs = std::filesystem;
    const fs::path target(path);
    fs::path tmp = target;
    tmp += ".tmp";
    {
        std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
        if (!os) throw std::runtime_error("cannot open '" + tmp.string() + "' for writing");
        os << content;
        os.flush();
        if (!os) throw std::runtime_error("write to '" + tmp.string() + "' failed");
    }
    fs::rename(tmp, target);
}

nlohmann::json RunManifest::to_json() const {
    nlohmann::json doc;
    doc["command"] = command;
    doc["problem"] = problem;
    doc["method"] = method;
    doc["hyperparameters"] = hyperparameters;
    doc["seed"] = seed;
    doc["tool_version"] = tool_version;
    doc["outputs"] = outputs;
    doc["wall_time_ms"] = wall_time_ms;
    return doc;
}

void RunManifest::write(const std::string& path) const {
    atomic_write_file(path, to_json().dump(2) + "\n");
}

}  // namespace sprayopt
