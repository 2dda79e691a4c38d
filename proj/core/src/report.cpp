#include "pdestab/report.hpp"

#include <cmath>
#include <cstdio>

#include "pdestab/error.hpp"

namespace pdestab {

std::string format_real(double value) {
    if (std::isnan(value)) return "nan";
    if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", value);
    return buf;
}

void KeyValueReport::add(std::string name, double value) {
    entries_.emplace_back(std::move(name), format_real(value));
}

void KeyValueReport::add(std::string name, bool value) {
    entries_.emplace_back(std::move(name), value ? "true" : "false");
}

void KeyValueReport::add(std::string name, std::string value) {
    entries_.emplace_back(std::move(name), std::move(value));
}

void KeyValueReport::add(std::string name, std::size_t value) {
    entries_.emplace_back(std::move(name), std::to_string(value));
}

std::optional<std::string> KeyValueReport::find(std::string_view name) const {
    for (const auto& [k, v] : entries_) {
        if (k == name) return v;
    }
    return std::nullopt;
}

std::string KeyValueReport::str() const {
    std::string out;
    for (const auto& [k, v] : entries_) {
        out += k;
        out += " = ";
        out += v;
        out += '\n';
    }
    return out;
}

namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

}  // namespace

std::vector<std::pair<std::string, std::string>> parse_key_values(std::string_view text) {
    std::vector<std::pair<std::string, std::string>> out;
    std::size_t line_no = 0;
    while (!text.empty()) {
        ++line_no;
        const auto nl = text.find('\n');
        std::string_view line = text.substr(0, nl);
        text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);

        if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string_view::npos) {
            throw Error(ErrorKind::parse, "line " + std::to_string(line_no) + ": expected key = value");
        }
        const auto key = trim(line.substr(0, eq));
        if (key.empty()) throw Error(ErrorKind::parse, "line " + std::to_string(line_no) + ": empty key");
        out.emplace_back(std::string(key), std::string(trim(line.substr(eq + 1))));
    }
    return out;
}

std::uint64_t fnv1a64(std::string_view bytes) noexcept {
    std::uint64_t h = 14695981039346656037ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

}  // namespace pdestab
