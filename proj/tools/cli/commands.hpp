#pragma once

#include <filesystem>
#include <string>

#include "config.hpp"

namespace qstats::cli {

struct Output {
    std::filesystem::path dir;
    std::string format = "csv";  ///< tables as csv or json
};

/// Each command reads its keys from `cfg`, writes its data files to `out`
/// and leaves the resolved configuration in `cfg`.
void run_modes(Section& cfg, const Output& out);
void run_sim(Section& cfg, const Output& out);
void run_charfun(Section& cfg, const Output& out);
void run_universal(Section& cfg, const Output& out);
void run_le(Section& cfg, const Output& out);
void run_quasifree(Section& cfg, const Output& out);
void run_exactdiag(Section& cfg, const Output& out);
void run_scalingfit(Section& cfg, const Output& out);

}  // namespace qstats::cli
