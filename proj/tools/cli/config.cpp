#include "config.hpp"

namespace qstats::cli {

Section::Section(const json& source, std::string path) : source_(source), path_(std::move(path)) {
    if (source_.is_null()) source_ = json::object();
    if (!source_.is_object()) throw ConfigError((path_.empty() ? "config" : path_) + " must be a JSON object");
}

Section Section::child(const std::string& key) {
    known_.insert(key);
    return Section(source_.contains(key) ? source_.at(key) : json::object(), where(key));
}

void Section::adopt(const std::string& key, Section& child) {
    child.reject_unknown();
    resolved_[key] = child.resolved();
}

void Section::reject_unknown() const {
    for (const auto& item : source_.items()) {
        if (!known_.count(item.key())) throw ConfigError("unknown config key " + where(item.key()));
    }
}

std::string Section::where(const std::string& key) const {
    return path_.empty() ? key : path_ + "." + key;
}

}  // namespace qstats::cli
