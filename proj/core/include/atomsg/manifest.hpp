#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace atomsg {

// Reproducibility record written next to every file-emitting command.
// The timestamp honors SOURCE_DATE_EPOCH so that reruns can be made
// byte-identical end to end.
struct RunManifest {
    std::string command;
    std::string version;
    std::map<std::string, std::string> parameters;  // sorted: stable output
    std::vector<std::uint64_t> seeds;

    struct OutputFile {
        std::string path;
        std::uint64_t bytes;
        std::string digest;  // fnv1a64 hex of the file contents
    };
    std::vector<OutputFile> outputs;

    void record_output(const std::string& path);  // computes size + digest
    void write(const std::string& path) const;    // JSON
};

std::uint64_t fnv1a64(const void* data, std::size_t len);
std::string file_digest(const std::string& path);

} // namespace atomsg
