#include "spinreg/run_config.hpp"

#include <cstdlib>
#include <fstream>

namespace spinreg {

namespace {

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r");
    if (begin == std::string::npos) return {};
    const auto end = s.find_last_not_of(" \t\r");
    return s.substr(begin, end - begin + 1);
}

}  // namespace

void RunConfig::load_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string stripped = trim(line);
        if (stripped.empty() || stripped[0] == '#') continue;
        const auto eq = stripped.find('=');
        if (eq == std::string::npos)
            throw ConfigError(path + ":" + std::to_string(line_no) +
                              ": expected key = value");
        set(trim(stripped.substr(0, eq)), trim(stripped.substr(eq + 1)));
    }
}

void RunConfig::set(const std::string& key, const std::string& value) {
    auto it = values_.find(key);
    if (it == values_.end()) throw ConfigError("unknown config key: " + key);
    if (value.empty()) throw ConfigError("empty value for config key: " + key);
    it->second = value;
}

void RunConfig::apply_overrides(const std::vector<std::string>& items) {
    for (const std::string& item : items) {
        const auto eq = item.find('=');
        if (eq == std::string::npos)
            throw ConfigError("parameter override must be key=value: " + item);
        set(trim(item.substr(0, eq)), trim(item.substr(eq + 1)));
    }
}

double RunConfig::get_double(const std::string& key) const {
    const std::string& raw = get_string(key);
    char* end = nullptr;
    const double value = std::strtod(raw.c_str(), &end);
    if (end == raw.c_str() || *end != '\0')
        throw ConfigError("config key " + key + " is not a number: " + raw);
    return value;
}

std::int64_t RunConfig::get_int(const std::string& key) const {
    const std::string& raw = get_string(key);
    char* end = nullptr;
    const long long value = std::strtoll(raw.c_str(), &end, 10);
    if (end == raw.c_str() || *end != '\0')
        throw ConfigError("config key " + key + " is not an integer: " + raw);
    return value;
}

std::uint64_t RunConfig::get_u64(const std::string& key) const {
    const std::string& raw = get_string(key);
    char* end = nullptr;
    const unsigned long long value = std::strtoull(raw.c_str(), &end, 10);
    if (end == raw.c_str() || *end != '\0')
        throw ConfigError("config key " + key + " is not an integer: " + raw);
    return value;
}

const std::string& RunConfig::get_string(const std::string& key) const {
    auto it = values_.find(key);
    if (it == values_.end()) throw ConfigError("unknown config key: " + key);
    return it->second;
}

bool RunConfig::get_bool(const std::string& key) const {
    const std::string& raw = get_string(key);
    if (raw == "true" || raw == "1" || raw == "yes") return true;
    if (raw == "false" || raw == "0" || raw == "no") return false;
    throw ConfigError("config key " + key + " is not a boolean: " + raw);
}

double RunConfig::positive(const std::string& key) const {
    const double value = get_double(key);
    if (!(value > 0.0)) throw ConfigError("config key " + key + " must be > 0");
    return value;
}

std::string RunConfig::summary() const {
    std::string out;
    for (const auto& [key, value] : values_) {
        if (!out.empty()) out += ' ';
        out += key;
        out += '=';
        out += value;
    }
    return out;
}

}  // namespace spinreg
