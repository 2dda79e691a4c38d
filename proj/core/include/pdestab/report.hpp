#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace pdestab {

/// Ordered `name = value` lines. Reals are written with %.17g so a report
/// re-parses to the same doubles.
class KeyValueReport {
public:
    void add(std::string name, double value);
    void add(std::string name, bool value);
    void add(std::string name, std::string value);
    void add(std::string name, const char* value) { add(std::move(name), std::string(value)); }
    void add(std::string name, std::size_t value);

    const std::vector<std::pair<std::string, std::string>>& entries() const noexcept { return entries_; }
    std::optional<std::string> find(std::string_view name) const;

    std::string str() const;

private:
    std::vector<std::pair<std::string, std::string>> entries_;
};

std::string format_real(double value);

/// Parses `key = value` lines, skipping blanks and `#` comments.
/// Throws Error(parse) naming the offending line.
std::vector<std::pair<std::string, std::string>> parse_key_values(std::string_view text);

/// 64-bit FNV-1a.
std::uint64_t fnv1a64(std::string_view bytes) noexcept;

}  // namespace pdestab
