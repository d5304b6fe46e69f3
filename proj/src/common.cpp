#include "incistat/common.hpp"

#include <algorithm>
#include <array>
#include <cctype>

namespace incistat {

bool is_valid_date(const Date& d) {
    if (d.month < 1 || d.month > 12 || d.day < 1) return false;
    static constexpr std::array<int, 12> days = {31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
    int max_day = days[static_cast<size_t>(d.month - 1)];
    const bool leap = (d.year % 4 == 0 && d.year % 100 != 0) || d.year % 400 == 0;
    if (d.month == 2 && leap) max_day = 29;
    return d.day <= max_day;
}

namespace {

std::optional<int> to_int(std::string_view s) {
    if (s.empty()) return std::nullopt;
    int value = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (ec != std::errc{} || ptr != s.data() + s.size()) return std::nullopt;
    return value;
}

}  // namespace

std::optional<Date> parse_date(std::string_view text) {
    const std::string t = trim(text);
    Date d;
    auto split3 = [&](char sep) -> std::optional<std::array<std::string_view, 3>> {
        std::string_view v = t;
        const size_t p1 = v.find(sep);
        if (p1 == std::string_view::npos) return std::nullopt;
        const size_t p2 = v.find(sep, p1 + 1);
        if (p2 == std::string_view::npos || v.find(sep, p2 + 1) != std::string_view::npos)
            return std::nullopt;
        return std::array<std::string_view, 3>{v.substr(0, p1), v.substr(p1 + 1, p2 - p1 - 1),
                                               v.substr(p2 + 1)};
    };
    if (auto parts = split3('-')) {
        const auto y = to_int((*parts)[0]);
        const auto m = to_int((*parts)[1]);
        const auto dd = to_int((*parts)[2]);
        if (!y || !m || !dd || (*parts)[0].size() < 4) return std::nullopt;
        d = {*y, *m, *dd};
    } else if (auto us = split3('/')) {
        const auto m = to_int((*us)[0]);
        const auto dd = to_int((*us)[1]);
        const auto y = to_int((*us)[2]);
        if (!y || !m || !dd || (*us)[2].size() < 4) return std::nullopt;
        d = {*y, *m, *dd};
    } else {
        return std::nullopt;
    }
    if (!is_valid_date(d)) return std::nullopt;
    return d;
}

std::string trim(std::string_view text) {
    size_t begin = 0;
    size_t end = text.size();
    while (begin < end && std::isspace(static_cast<unsigned char>(text[begin]))) ++begin;
    while (end > begin && std::isspace(static_cast<unsigned char>(text[end - 1]))) --end;
    return std::string(text.substr(begin, end - begin));
}

std::string norm_text(std::string_view text) {
    std::string out;
    out.reserve(text.size());
    bool pending_space = false;
    for (const char ch : text) {
        if (std::isspace(static_cast<unsigned char>(ch))) {
            if (!out.empty()) pending_space = true;
            continue;
        }
        if (pending_space) {
            out.push_back(' ');
            pending_space = false;
        }
        out.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(ch))));
    }
    return out;
}

std::optional<long long> parse_integer(std::string_view text) {
    const std::string t = trim(text);
    if (t.empty()) return std::nullopt;
    long long value = 0;
    const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), value);
    if (ec != std::errc{} || ptr != t.data() + t.size()) return std::nullopt;
    return value;
}

std::optional<double> parse_real(std::string_view text) {
    const std::string t = trim(text);
    if (t.empty()) return std::nullopt;
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), value);
    if (ec != std::errc{} || ptr != t.data() + t.size()) return std::nullopt;
    return value;
}

std::string format_double(double value) {
    std::array<char, 64> buf{};
    const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
    return std::string(buf.data(), ptr);
}

std::string fnv1a_hex(std::string_view bytes) {
    uint64_t hash = 0xcbf29ce484222325ULL;
    for (const char ch : bytes) {
        hash ^= static_cast<unsigned char>(ch);
        hash *= 0x100000001b3ULL;
    }
    static constexpr char digits[] = "0123456789abcdef";
    std::string out(16, '0');
    for (int i = 15; i >= 0; --i) {
        out[static_cast<size_t>(i)] = digits[hash & 0xF];
        hash >>= 4;
    }
    return out;
}

}  // namespace incistat
