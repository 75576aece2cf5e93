#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "sppsim/config.hpp"
#include "sppsim/io.hpp"
#include "sppsim/run.hpp"

namespace {

struct CliOptions {
    std::string config_path;
    std::vector<std::string> sets;
    std::optional<std::uint64_t> seed;
    std::string out_dir;
};

std::string read_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw sppsim::IoError("cannot open config: " + path);
    std::stringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

std::string json_quote(const std::string& s) { return nlohmann::json(s).dump(); }

int run_with(const CliOptions& opt, const std::string& experiment) {
    std::string text = opt.config_path.empty() ? std::string("{\"schema_version\": 1}")
                                               : read_file(opt.config_path);
    if (!experiment.empty())
        text = sppsim::apply_config_override(text,
                                             "experiment=" + json_quote(experiment));
    for (const auto& s : opt.sets) text = sppsim::apply_config_override(text, s);
    if (opt.seed)
        text = sppsim::apply_config_override(text,
                                             "detector.seed=" + std::to_string(*opt.seed));
    if (!opt.out_dir.empty())
        text = sppsim::apply_config_override(
            text, "output.directory=" + json_quote(opt.out_dir));

    const sppsim::RunConfig cfg = sppsim::parse_config(text);
    const sppsim::RunResult res = sppsim::run_experiment(cfg);
    for (const auto& p : res.outputs) std::cout << "wrote " << p.string() << "\n";
    return 0;
}

void add_common(CLI::App* sub, CliOptions& opt, bool config_required) {
    auto* c = sub->add_option("-c,--config", opt.config_path,
                              "JSON config file (defaults used when omitted)");
    if (config_required) c->required();
    sub->add_option("-s,--set", opt.sets,
                    "override one config value, dotted.path=json (repeatable)");
    sub->add_option("--seed", opt.seed, "noise seed (sets detector.seed)");
    sub->add_option("-o,--out", opt.out_dir, "output directory");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Spiral-phase-plate neutron interferometry simulator"};
    app.require_subcommand(1);

    CliOptions opt;
    std::string selected;

    struct Mode {
        const char* name;
        const char* help;
    };
    const Mode modes[] = {
        {"spp-map", "thickness maps of the plate solid, sampled and ray-projected"},
        {"interferogram", "two-port interferograms of the configured plate stack"},
        {"stack", "per-plate and stacked thickness maps with interferograms"},
        {"flag-series", "interferogram series under a rotated phase flag"},
        {"coherence", "visibility map and coherence-limited interferograms"},
        {"borrmann", "rocking curve and exit fan profile of a thick perfect crystal"},
        {"oam-ring", "two-state ring superposition pattern and its petal count"},
        {"deflection", "refractive deflection of the plate prism"},
    };
    for (const Mode& m : modes) {
        CLI::App* sub = app.add_subcommand(m.name, m.help);
        add_common(sub, opt, false);
        sub->callback([&selected, name = std::string(m.name)] { selected = name; });
    }
    CLI::App* generic = app.add_subcommand("run", "run the experiment named in the config");
    add_common(generic, opt, true);
    generic->callback([&selected] { selected.clear(); });

    try {
        app.parse(argc, argv);
        return run_with(opt, selected);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const sppsim::ConfigError& e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const sppsim::IoError& e) {
        std::cerr << "io error: " << e.what() << "\n";
        return 3;
    } catch (const std::invalid_argument& e) {
        std::cerr << "invalid argument: " << e.what() << "\n";
        return 2;
    } catch (const std::domain_error& e) {
        std::cerr << "domain error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
