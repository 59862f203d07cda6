#pragma once

// File helpers: atomic write-then-rename, whole-file reads, digests, and
// canonical float formatting (shortest round-trip) for reproducible CSV/JSON.

#include <charconv>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "bookcast/rng.hpp"

namespace bookcast {

struct DataError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open file: " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// Partial outputs are never left behind: write to a sibling temp file and
// rename over the target.
inline void write_file_atomic(const std::filesystem::path& path, const std::string& content) {
    namespace fs = std::filesystem;
    fs::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw DataError("cannot write file: " + tmp.string());
        out << content;
        out.flush();
        if (!out) throw DataError("short write: " + tmp.string());
    }
    fs::rename(tmp, path);
}

inline std::string file_digest_hex(const std::filesystem::path& path) {
    std::uint64_t h = fnv1a64(read_file(path));
    char buf[24];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

// Shortest text that round-trips to the same double.
inline std::string format_double(double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    if (ec != std::errc()) throw std::runtime_error("format_double failed");
    return std::string(buf, ptr);
}

}  // namespace bookcast
