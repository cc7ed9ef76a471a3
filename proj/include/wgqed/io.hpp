#pragma once

#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <string>
#include <string_view>
#include <system_error>

#include "wgqed/errors.hpp"

namespace wgqed::io {

/// Shortest round-trip decimal form of `v`; "nan"/"inf"/"-inf" for non-finite
/// values. Negative zero is written as "0".
inline std::string format_double(double v) {
    if (v == 0.0) return "0";
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

/// Parses the whole of `text` as a double; throws parameter_error otherwise.
inline double parse_double(std::string_view text, std::string_view what) {
    double v = 0.0;
    const char* first = text.data();
    const char* last = text.data() + text.size();
    if (!text.empty() && *first == '+') ++first;
    const auto res = std::from_chars(first, last, v);
    if (res.ec != std::errc{} || res.ptr != last || text.empty())
        throw parameter_error("cannot parse " + std::string(what) + " value '" + std::string(text) + "'");
    return v;
}

/// Writes `content` to a sibling temporary file, then renames it over `path`.
inline void write_atomically(const std::filesystem::path& path, std::string_view content) {
    auto tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw error("cannot open " + tmp.string() + " for writing");
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        out.flush();
        if (!out) throw error("write failed for " + tmp.string());
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
        std::filesystem::remove(tmp, ec);
        throw error("cannot move output into place at " + path.string());
    }
}

}  // namespace wgqed::io
