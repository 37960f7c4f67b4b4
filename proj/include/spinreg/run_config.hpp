// run_config.hpp — declarative run configuration: per-command defaults,
// optionally overlaid with a key = value file, then with command-line
// parameters (flags win). Unknown keys are rejected.

#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace spinreg {

// Maps to process exit code 2.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

class RunConfig {
  public:
    explicit RunConfig(
        std::initializer_list<std::pair<const std::string, std::string>> defaults)
        : values_(defaults) {}

    // Overlay `key = value` lines ('#' comments, blank lines allowed).
    void load_file(const std::string& path);

    void set(const std::string& key, const std::string& value);

    // Parses "key=value" items (the --param form).
    void apply_overrides(const std::vector<std::string>& items);

    double get_double(const std::string& key) const;
    std::int64_t get_int(const std::string& key) const;
    std::uint64_t get_u64(const std::string& key) const;
    const std::string& get_string(const std::string& key) const;
    bool get_bool(const std::string& key) const;

    double positive(const std::string& key) const;

    // "k=v k=v ..." sorted by key, for the CSV metadata header.
    std::string summary() const;

  private:
    std::map<std::string, std::string> values_;
};

}  // namespace spinreg
