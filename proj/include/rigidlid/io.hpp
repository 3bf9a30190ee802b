#pragma once

#include <charconv>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <stdexcept>
#include <string>
#include <system_error>

namespace rigidlid {

/// Shortest decimal representation that round-trips to the same double.
inline std::string format_double(double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    if (ec != std::errc()) throw std::runtime_error("format_double failed");
    return std::string(buf, ptr);
}

inline std::string format_double_fixed(double v, int precision) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::fixed, precision);
    if (ec != std::errc()) throw std::runtime_error("format_double_fixed failed");
    return std::string(buf, ptr);
}

inline std::ofstream open_out(const std::filesystem::path& path) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open output file " + path.string());
    return out;
}

}  // namespace rigidlid
