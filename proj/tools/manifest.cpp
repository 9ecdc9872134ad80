#include "manifest.hpp"

#include <array>
#include <cstdio>

#include <openssl/evp.h>

#include "grainmix/json_io.hpp"

namespace grainmix::cli {

std::string sha256_hex(const std::string& bytes)
{
    std::array<unsigned char, EVP_MAX_MD_SIZE> digest{};
    unsigned int len = 0;
    EVP_Digest(bytes.data(), bytes.size(), digest.data(), &len, EVP_sha256(), nullptr);
    std::string out;
    out.reserve(2 * len);
    char buf[3];
    for (unsigned int i = 0; i < len; ++i) {
        std::snprintf(buf, sizeof buf, "%02x", digest[i]);
        out += buf;
    }
    return out;
}

nlohmann::json RunManifest::to_json() const
{
    auto files = [](const std::vector<File>& v) {
        nlohmann::json out = nlohmann::json::array();
        for (const auto& f : v) out.push_back({{"path", f.path}, {"sha256", f.sha256}});
        return out;
    };
    return {{"format", json::format_version},
            {"command", command},
            {"args", args},
            {"seed", seed},
            {"config", config},
            {"inputs", files(inputs)},
            {"outputs", files(outputs)}};
}

}  // namespace grainmix::cli
