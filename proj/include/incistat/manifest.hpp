#pragma once

#include <string>
#include <utility>
#include <vector>

namespace incistat::report {

/// Line-oriented key=value run record with a content hash per emitted file.
class Manifest {
  public:
    void add(std::string key, std::string value) {
        entries_.emplace_back(std::move(key), std::move(value));
    }
    void add_file(const std::string& name, const std::string& content);

    std::string render() const;

  private:
    std::vector<std::pair<std::string, std::string>> entries_;
};

}  // namespace incistat::report
