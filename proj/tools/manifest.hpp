#pragma once

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace grainmix::cli {

/// Hex SHA-256 of a byte string.
std::string sha256_hex(const std::string& bytes);

/// What a run consumed and produced. Two runs with equal manifests produce
/// byte-identical outputs; nothing time- or host-dependent is recorded.
struct RunManifest {
    struct File {
        std::string path;
        std::string sha256;
    };

    std::string command;
    std::vector<std::string> args;
    std::uint64_t seed = 0;
    nlohmann::json config = nlohmann::json::object();
    std::vector<File> inputs;
    std::vector<File> outputs;

    [[nodiscard]] nlohmann::json to_json() const;
};

}  // namespace grainmix::cli
