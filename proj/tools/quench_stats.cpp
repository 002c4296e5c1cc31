#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>

#include "CLI11.hpp"
#include "cli/commands.hpp"
#include "qstats/errors.hpp"
#include "qstats/parallel.hpp"

namespace {

constexpr const char* kArtifactVersion = "1.0.0";

using qstats::cli::ConfigError;
using qstats::cli::json;

int fail(int status, const json& body) {
    std::cerr << body.dump() << std::endl;
    return status;
}

}  // namespace

int main(int argc, char** argv) {
    const std::map<std::string, std::function<void(qstats::cli::Section&, const qstats::cli::Output&)>> commands{
        {"modes", qstats::cli::run_modes},         {"sim", qstats::cli::run_sim},
        {"charfun", qstats::cli::run_charfun},     {"universal", qstats::cli::run_universal},
        {"le", qstats::cli::run_le},               {"quasifree", qstats::cli::run_quasifree},
        {"exactdiag", qstats::cli::run_exactdiag}, {"scalingfit", qstats::cli::run_scalingfit}};

    CLI::App app{"Time statistics of observables after small quantum quenches"};
    app.require_subcommand(1);
    std::string config_path, out_dir = ".", format;
    std::uint64_t seed = 0;
    unsigned threads = 0;
    for (const auto& entry : commands) {
        CLI::App* sub = app.add_subcommand(entry.first);
        sub->add_option("--config", config_path, "JSON configuration (a manifest.json also works)");
        sub->add_option("--out", out_dir, "output directory");
        sub->add_option("--seed", seed, "overrides the seed key");
        sub->add_option("--threads", threads, "worker thread cap");
        sub->add_option("--format", format, "table format")->check(CLI::IsMember({"csv", "json"}));
    }
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);
        return fail(2, {{"error", "config-invalid"}, {"message", e.what()}});
    }
    const std::string name = app.get_subcommands().front()->get_name();
    CLI::App* sub = app.get_subcommands().front();

    try {
        json config = json::object();
        if (!config_path.empty()) {
            std::ifstream f(config_path);
            if (!f) throw ConfigError("cannot read " + config_path);
            try {
                config = json::parse(f);
            } catch (const json::exception& e) {
                throw ConfigError(config_path + ": " + e.what());
            }
            if (config.is_object() && config.contains("artifact_version") && config.contains("config")) {
                if (config.value("subcommand", name) != name) throw ConfigError("manifest belongs to another subcommand");
                config = config.at("config");
            }
        }
        if (!config.is_object()) throw ConfigError("config must be a JSON object");
        if (sub->count("--seed")) config["seed"] = seed;
        if (sub->count("--threads")) config["threads"] = threads;
        if (sub->count("--format")) config["format"] = format;

        // the thread cap never changes results, so it is not part of the resolved config
        if (config.contains("threads")) {
            qstats::set_thread_cap(config.at("threads").get<unsigned>());
            config.erase("threads");
        }
        qstats::cli::Section cfg(config, "");
        qstats::cli::Output out{out_dir, cfg.get<std::string>("format", "csv")};
        if (out.format != "csv" && out.format != "json") throw ConfigError("format must be csv or json");
        std::filesystem::create_directories(out.dir);
        commands.at(name)(cfg, out);
        cfg.reject_unknown();
        std::ofstream manifest(out.dir / "manifest.json");
        manifest << json{{"artifact_version", kArtifactVersion}, {"subcommand", name}, {"config", cfg.resolved()}}.dump(1)
                 << '\n';
    } catch (const ConfigError& e) {
        return fail(2, {{"error", "config-invalid"}, {"message", e.what()}});
    } catch (const nlohmann::json::exception& e) {
        return fail(2, {{"error", "config-invalid"}, {"message", e.what()}});
    } catch (const qstats::Error& e) {
        return fail(3, {{"error", "numerical-failure"}, {"code", e.code()}, {"message", e.what()}});
    } catch (const std::exception& e) {
        return fail(3, {{"error", "numerical-failure"}, {"code", "internal"}, {"message", e.what()}});
    }
    return 0;
}
