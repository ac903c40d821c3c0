#include "atomsg/manifest.hpp"

#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace atomsg {

std::uint64_t fnv1a64(const void* data, std::size_t len) {
    const auto* p = static_cast<const unsigned char*>(data);
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (std::size_t i = 0; i < len; ++i) {
        h ^= p[i];
        h *= 0x100000001b3ull;
    }
    return h;
}

std::string file_digest(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("file_digest: cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    const std::string s = buf.str();
    char hex[17];
    std::snprintf(hex, sizeof hex, "%016llx",
                  static_cast<unsigned long long>(fnv1a64(s.data(), s.size())));
    return std::string("fnv1a64:") + hex;
}

void RunManifest::record_output(const std::string& path) {
    std::ifstream in(path, std::ios::binary | std::ios::ate);
    if (!in) throw std::runtime_error("record_output: cannot open " + path);
    OutputFile f;
    // store the name relative to the manifest's directory so that reruns
    // into different output directories stay byte-identical
    f.path = std::filesystem::path(path).filename().string();
    f.bytes = static_cast<std::uint64_t>(in.tellg());
    f.digest = file_digest(path);
    outputs.push_back(std::move(f));
}

namespace {

std::string timestamp_utc() {
    std::time_t t;
    if (const char* sde = std::getenv("SOURCE_DATE_EPOCH"))
        t = static_cast<std::time_t>(std::strtoll(sde, nullptr, 10));
    else
        t = std::time(nullptr);
    char buf[32];
    std::tm tm{};
    gmtime_r(&t, &tm);
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

} // namespace

void RunManifest::write(const std::string& path) const {
    nlohmann::ordered_json j;
    j["command"] = command;
    j["version"] = version;
    j["timestamp"] = timestamp_utc();
    nlohmann::ordered_json params = nlohmann::ordered_json::object();
    for (const auto& [k, v] : parameters) params[k] = v;
    j["parameters"] = params;
    j["seeds"] = seeds;
    j["outputs"] = nlohmann::ordered_json::array();
    for (const auto& f : outputs)
        j["outputs"].push_back({{"path", f.path}, {"bytes", f.bytes}, {"digest", f.digest}});
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("RunManifest::write: cannot open " + path);
    out << j.dump(2) << '\n';
}

} // namespace atomsg
