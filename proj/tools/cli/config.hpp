#pragma once

#include <set>
#include <stdexcept>
#include <string>

#include "json.hpp"

namespace qstats::cli {

using nlohmann::json;

/// Malformed or unknown configuration; exit status 2.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Read access to one JSON object that records every key it hands out,
/// together with the value actually used, so the resolved configuration can
/// be written back and unknown keys rejected.
class Section {
public:
    Section(const json& source, std::string path);

    template <class T>
    T get(const std::string& key, const T& fallback) {
        known_.insert(key);
        T value = fallback;
        if (source_.contains(key)) {
            try {
                value = source_.at(key).get<T>();
            } catch (const json::exception& e) {
                throw ConfigError(where(key) + ": " + e.what());
            }
        }
        resolved_[key] = value;
        return value;
    }

    template <class T>
    T require(const std::string& key) {
        if (!source_.contains(key)) throw ConfigError(where(key) + " is required");
        return get<T>(key, T{});
    }

    [[nodiscard]] bool has(const std::string& key) const { return source_.contains(key); }

    /// Nested object; an absent key reads as an empty object.
    Section child(const std::string& key);
    void adopt(const std::string& key, Section& child);

    /// Throws ConfigError naming the first key that was never read.
    void reject_unknown() const;

    [[nodiscard]] const json& resolved() const { return resolved_; }
    [[nodiscard]] std::string where(const std::string& key) const;

private:
    json source_;
    json resolved_ = json::object();
    std::string path_;
    std::set<std::string> known_;
};

}  // namespace qstats::cli
