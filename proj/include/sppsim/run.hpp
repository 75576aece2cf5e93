#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "sppsim/config.hpp"

namespace sppsim {

struct RunResult {
    std::filesystem::path out_dir;
    std::vector<std::filesystem::path> outputs;  // files written, summary.json last
    std::string summary_json;                    // bytes of summary.json
};

// Executes one configured experiment and writes its outputs (maps, tables,
// summary.json, and the resolved config) under the output directory:
// config.output.directory, else $SPPSIM_OUT_DIR, else ./out. Reruns with the
// same config produce byte-identical files.
RunResult run_experiment(const RunConfig& cfg);

}  // namespace sppsim
