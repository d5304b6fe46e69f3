#include "incistat/manifest.hpp"

#include "incistat/common.hpp"

namespace incistat::report {

void Manifest::add_file(const std::string& name, const std::string& content) {
    entries_.emplace_back("file." + name, "fnv1a:" + fnv1a_hex(content));
}

std::string Manifest::render() const {
    std::string out;
    for (const auto& [key, value] : entries_) {
        out += key;
        out.push_back('=');
        out += value;
        out.push_back('\n');
    }
    return out;
}

}  // namespace incistat::report
