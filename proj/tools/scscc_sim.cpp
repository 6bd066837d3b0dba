#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "scscc/run_config.hpp"

namespace {

int print_scenario_table() {
    std::cout << "name,L,C,K,m,W,I_W,I_eff\n";
    for (const auto& sc : scscc::table1_scenarios()) {
        const auto& p = sc.params;
        std::cout << sc.name << ',' << p.structural_latency() << ','
                  << p.constraint_length() << ',' << p.block_info_bits << ','
                  << p.coupling_memory << ',' << p.window_blocks << ','
                  << p.window_iterations << ',' << p.effective_iterations() << "\n";
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"spatially coupled serially concatenated code simulator"};
    app.set_version_flag("--version", scscc::version_string);

    std::string config_path, preset, out_dir, mode;
    bool list_presets = false, print_table = false;
    long long seed = -1, max_bits = -1, min_errors = -1;
    int threads = -1;

    app.add_option("--config", config_path, "path to a sweep config file");
    app.add_option("--preset", preset, "built-in sweep name (see --list-presets)");
    app.add_option("--out", out_dir, "output directory for results.csv / curves.dat");
    app.add_option("--seed", seed, "master seed override");
    app.add_option("--threads", threads, "worker threads (0 = all cores)");
    app.add_option("--mode", mode, "decoder schedule: window or blockwise")
        ->check(CLI::IsMember({"window", "blockwise"}));
    app.add_option("--max-bits", max_bits, "per-point info-bit budget override");
    app.add_option("--min-errors", min_errors, "per-point bit-error target override");
    app.add_flag("--list-presets", list_presets, "list built-in sweeps and exit");
    app.add_flag("--print-table1", print_table,
                 "print the fixed-latency scenario table and exit");

    CLI11_PARSE(app, argc, argv);

    if (list_presets) {
        for (const auto& name : scscc::preset_names())
            std::cout << name << "\n";
        return 0;
    }
    if (print_table)
        return print_scenario_table();

    if (config_path.empty() == preset.empty()) {
        std::cerr << "exactly one of --config or --preset is required\n";
        return 2;
    }

    try {
        scscc::RunConfig cfg;
        if (!config_path.empty()) {
            std::ifstream f(config_path);
            if (!f) {
                std::cerr << "cannot open config file: " << config_path << "\n";
                return 2;
            }
            std::ostringstream ss;
            ss << f.rdbuf();
            cfg = scscc::parse_config(ss.str());
        } else {
            cfg = scscc::preset_config(preset);
        }

        scscc::apply_env_overrides(cfg);
        if (seed >= 0)
            cfg.seed = uint64_t(seed);
        if (threads >= 0)
            cfg.threads = threads;
        if (!mode.empty())
            cfg.mode = mode == "window" ? scscc::DecoderMode::whole_window
                                        : scscc::DecoderMode::block_wise;
        if (max_bits > 0)
            cfg.stop.max_info_bits = max_bits;
        if (min_errors > 0)
            cfg.stop.min_bit_errors = min_errors;
        if (!out_dir.empty())
            cfg.out_dir = out_dir;
        scscc::refresh_scenarios(cfg);

        std::cout << scscc::version_string << "\n";
        return scscc::run_sweep(cfg, std::cout);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
