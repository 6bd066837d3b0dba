#include "scscc/run_config.hpp"

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace scscc {

#ifndef SCSCC_GIT_REV
#define SCSCC_GIT_REV "unversioned"
#endif
const char* const version_string = "scscc-sim 0.1.0 (" SCSCC_GIT_REV ")";

namespace {

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos)
        return {};
    const auto b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

[[noreturn]] void fail(const std::string& msg) {
    throw std::invalid_argument(msg);
}

long parse_long(const std::string& key, const std::string& v) {
    try {
        size_t pos = 0;
        const long x = std::stol(v, &pos, 0);
        if (pos != v.size())
            fail("bad integer for key '" + key + "': " + v);
        return x;
    } catch (const std::invalid_argument&) {
        fail("bad integer for key '" + key + "': " + v);
    } catch (const std::out_of_range&) {
        fail("integer out of range for key '" + key + "': " + v);
    }
}

uint64_t parse_u64(const std::string& key, const std::string& v) {
    try {
        size_t pos = 0;
        const uint64_t x = std::stoull(v, &pos, 0);
        if (pos != v.size())
            fail("bad integer for key '" + key + "': " + v);
        return x;
    } catch (const std::invalid_argument&) {
        fail("bad integer for key '" + key + "': " + v);
    } catch (const std::out_of_range&) {
        fail("integer out of range for key '" + key + "': " + v);
    }
}

unsigned parse_octal(const std::string& key, const std::string& v) {
    try {
        size_t pos = 0;
        const unsigned long x = std::stoul(v, &pos, 8);
        if (pos != v.size())
            fail("bad octal integer for key '" + key + "': " + v);
        return unsigned(x);
    } catch (const std::invalid_argument&) {
        fail("bad octal integer for key '" + key + "': " + v);
    } catch (const std::out_of_range&) {
        fail("octal integer out of range for key '" + key + "': " + v);
    }
}

double parse_double(const std::string& key, const std::string& v) {
    try {
        size_t pos = 0;
        const double x = std::stod(v, &pos);
        if (pos != v.size())
            fail("bad number for key '" + key + "': " + v);
        return x;
    } catch (const std::invalid_argument&) {
        fail("bad number for key '" + key + "': " + v);
    } catch (const std::out_of_range&) {
        fail("number out of range for key '" + key + "': " + v);
    }
}

bool parse_bool(const std::string& key, const std::string& v) {
    if (v == "true" || v == "1" || v == "yes")
        return true;
    if (v == "false" || v == "0" || v == "no")
        return false;
    fail("bad boolean for key '" + key + "': " + v);
}

std::vector<double> parse_grid(const std::string& v) {
    const auto c1 = v.find(':');
    if (c1 == std::string::npos) {
        // Explicit list of points, e.g. "0.5 1 1.5".
        std::istringstream is(v);
        std::vector<double> grid;
        std::string tok;
        while (is >> tok)
            grid.push_back(parse_double("grid", tok));
        if (grid.empty())
            fail("bad grid syntax (want start:step:stop or a list of points): " + v);
        return grid;
    }
    const auto c2 = v.find(':', c1 + 1);
    if (c2 == std::string::npos)
        fail("bad grid syntax (want start:step:stop): " + v);
    const double start = parse_double("grid", trim(v.substr(0, c1)));
    const double step = parse_double("grid", trim(v.substr(c1 + 1, c2 - c1 - 1)));
    const double stop = parse_double("grid", trim(v.substr(c2 + 1)));
    return make_ebno_grid(start, step, stop);
}

struct ScenarioDraft {
    std::string name;
    long k = -1, m = -1, w = -1, iw = -1, ieff = -1;
    bool uncoupled = false;
    bool any = false;
};

Scenario finalize_scenario(const ScenarioDraft& d) {
    Scenario sc;
    sc.uncoupled = d.uncoupled;
    if (d.k < 1)
        fail("scenario: K must be positive");
    long m = d.m, w = d.w;
    if (d.uncoupled) {
        if (m < 0)
            m = 0;
        if (w < 0)
            w = 1;
        if (m != 0 || w != 1)
            fail("scenario: uncoupled requires m = 0 and W = 1");
    } else {
        if (m < 0)
            fail("scenario: m is required");
        if (w < 1)
            fail("scenario: W is required");
    }
    long iw = d.iw;
    if (iw < 0 && d.ieff > 0)
        iw = matched_iterations(1, int(d.ieff), int(w));
    if (iw < 1)
        fail("scenario: I_W (or I_eff) is required");
    sc.params.block_info_bits = int(d.k);
    sc.params.coupling_memory = int(m);
    sc.params.window_blocks = int(w);
    sc.params.window_iterations = int(iw);
    const std::string err = check_params(sc.params);
    if (!err.empty())
        fail(err);
    sc.name = d.name.empty()
                  ? "K" + std::to_string(d.k) + "-W" + std::to_string(w) + "-m" +
                        std::to_string(m) + (d.uncoupled ? "-scc" : "")
                  : d.name;
    return sc;
}

std::string fmt_g(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

void materialize(RunConfig& cfg) {
    for (auto& sc : cfg.scenarios) {
        sc.base_seed = cfg.seed;
        sc.mode = cfg.mode;
        sc.metric = cfg.metric;
        sc.stop = cfg.stop;
        sc.chunk_blocks = cfg.chunk_blocks;
        sc.outer_gen = cfg.outer_gen;
        sc.inner_gen = cfg.inner_gen;
        sc.ebno_grid_db = cfg.ebno_grid_db;
    }
}

} // namespace

RunConfig parse_config(const std::string& text) {
    RunConfig cfg;
    cfg.ebno_grid_db.clear();

    std::string section;
    ScenarioDraft draft;
    auto flush_draft = [&] {
        if (draft.any)
            cfg.scenarios.push_back(finalize_scenario(draft));
        draft = ScenarioDraft{};
    };

    std::istringstream is(text);
    std::string raw;
    while (std::getline(is, raw)) {
        const auto hash = raw.find('#');
        if (hash != std::string::npos)
            raw.erase(hash);
        const std::string line = trim(raw);
        if (line.empty())
            continue;
        if (line.front() == '[') {
            if (line.back() != ']')
                fail("bad section header: " + line);
            if (section == "scenario")
                flush_draft();
            section = trim(line.substr(1, line.size() - 2));
            if (section != "run" && section != "code" && section != "ebno" &&
                section != "scenario")
                fail("unknown section [" + section + "]");
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            fail("expected key = value, got: " + line);
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (section.empty())
            fail("key '" + key + "' outside any section");

        if (section == "run") {
            if (key == "seed")
                cfg.seed = parse_u64(key, value);
            else if (key == "threads")
                cfg.threads = int(parse_long(key, value));
            else if (key == "mode") {
                if (value == "window")
                    cfg.mode = DecoderMode::whole_window;
                else if (value == "blockwise")
                    cfg.mode = DecoderMode::block_wise;
                else
                    fail("mode must be 'window' or 'blockwise', got: " + value);
            } else if (key == "metric") {
                if (value == "exact")
                    cfg.metric = BcjrMetric::exact;
                else if (value == "maxlog")
                    cfg.metric = BcjrMetric::max_log;
                else
                    fail("metric must be 'exact' or 'maxlog', got: " + value);
            } else if (key == "min_errors")
                cfg.stop.min_bit_errors = parse_long(key, value);
            else if (key == "min_bits")
                cfg.stop.min_info_bits = parse_long(key, value);
            else if (key == "max_bits")
                cfg.stop.max_info_bits = parse_long(key, value);
            else if (key == "chunk_blocks")
                cfg.chunk_blocks = int(parse_long(key, value));
            else if (key == "out")
                cfg.out_dir = value;
            else
                fail("unknown key '" + key + "' in [run]");
        } else if (section == "code") {
            if (key == "outer_feedback")
                cfg.outer_gen.feedback = parse_octal(key, value);
            else if (key == "outer_feedforward")
                cfg.outer_gen.feedforward = parse_octal(key, value);
            else if (key == "outer_memory")
                cfg.outer_gen.memory = int(parse_long(key, value));
            else if (key == "inner_feedback")
                cfg.inner_gen.feedback = parse_octal(key, value);
            else if (key == "inner_feedforward")
                cfg.inner_gen.feedforward = parse_octal(key, value);
            else if (key == "inner_memory")
                cfg.inner_gen.memory = int(parse_long(key, value));
            else
                fail("unknown key '" + key + "' in [code]");
        } else if (section == "ebno") {
            if (key == "grid")
                cfg.ebno_grid_db = parse_grid(value);
            else
                fail("unknown key '" + key + "' in [ebno]");
        } else { // scenario
            draft.any = true;
            if (key == "name")
                draft.name = value;
            else if (key == "K")
                draft.k = parse_long(key, value);
            else if (key == "m")
                draft.m = parse_long(key, value);
            else if (key == "W")
                draft.w = parse_long(key, value);
            else if (key == "I_W")
                draft.iw = parse_long(key, value);
            else if (key == "I_eff")
                draft.ieff = parse_long(key, value);
            else if (key == "uncoupled")
                draft.uncoupled = parse_bool(key, value);
            else
                fail("unknown key '" + key + "' in [scenario]");
        }
    }
    if (section == "scenario")
        flush_draft();

    if (cfg.scenarios.empty())
        fail("config defines no scenarios");
    if (cfg.ebno_grid_db.empty())
        fail("empty Eb/N0 grid");
    materialize(cfg);
    return cfg;
}

std::vector<std::string> preset_names() {
    return {"table1/L16384", "table1/L8192", "table1/L4096", "table1/L2048",
            "table1/L1024",  "fig5a",        "fig7",         "fig8"};
}

RunConfig preset_config(const std::string& name) {
    RunConfig cfg;
    cfg.stop.max_info_bits = 4'000'000;

    auto coupled = [](int k, int w, int m, int iw) {
        Scenario sc;
        sc.params.block_info_bits = k;
        sc.params.coupling_memory = m;
        sc.params.window_blocks = w;
        sc.params.window_iterations = iw;
        sc.name = "K" + std::to_string(k) + "-W" + std::to_string(w) + "-m" +
                  std::to_string(m);
        return sc;
    };
    auto plain = [](int k, int iw) {
        Scenario sc;
        sc.params.block_info_bits = k;
        sc.params.coupling_memory = 0;
        sc.params.window_blocks = 1;
        sc.params.window_iterations = iw;
        sc.uncoupled = true;
        sc.name = "K" + std::to_string(k) + "-scc";
        return sc;
    };

    if (name.rfind("table1/L", 0) == 0) {
        const long latency = parse_long("preset", name.substr(8));
        for (auto& sc : table1_scenarios())
            if (sc.params.structural_latency() == latency)
                cfg.scenarios.push_back(std::move(sc));
        if (cfg.scenarios.empty())
            fail("unknown preset: " + name);
        cfg.ebno_grid_db = make_ebno_grid(0.0, 0.25, 4.0);
    } else if (name == "fig5a") {
        for (const int m : {1, 3, 7, 15})
            cfg.scenarios.push_back(coupled(32, 32, m, 3));
        cfg.ebno_grid_db = make_ebno_grid(1.0, 0.5, 4.0);
    } else if (name == "fig7") {
        cfg.scenarios.push_back(coupled(256, 4, 1, 20));
        cfg.scenarios.push_back(plain(1024, 80));
        cfg.ebno_grid_db = make_ebno_grid(0.5, 0.25, 3.5);
    } else if (name == "fig8") {
        cfg.scenarios.push_back(coupled(128, 4, 1, 20));
        cfg.scenarios.push_back(coupled(128, 8, 1, 10));
        cfg.scenarios.push_back(coupled(128, 8, 3, 10));
        cfg.ebno_grid_db = make_ebno_grid(0.5, 0.25, 3.5);
    } else {
        fail("unknown preset: " + name);
    }
    materialize(cfg);
    return cfg;
}

void apply_env_overrides(RunConfig& cfg) {
    if (const char* env = std::getenv("SCSCC_SEED")) {
        cfg.seed = parse_u64("SCSCC_SEED", env);
        materialize(cfg);
    }
}

void refresh_scenarios(RunConfig& cfg) {
    materialize(cfg);
}

std::string config_echo(const RunConfig& cfg) {
    std::ostringstream os;
    os << "[run]\n";
    os << "seed = " << cfg.seed << "\n";
    os << "threads = " << cfg.threads << "\n";
    os << "mode = " << (cfg.mode == DecoderMode::whole_window ? "window" : "blockwise")
       << "\n";
    os << "metric = " << (cfg.metric == BcjrMetric::exact ? "exact" : "maxlog") << "\n";
    os << "min_errors = " << cfg.stop.min_bit_errors << "\n";
    os << "min_bits = " << cfg.stop.min_info_bits << "\n";
    os << "max_bits = " << cfg.stop.max_info_bits << "\n";
    os << "chunk_blocks = " << cfg.chunk_blocks << "\n";
    os << "out = " << cfg.out_dir << "\n";
    os << "[code]\n";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%o", cfg.outer_gen.feedback);
    os << "outer_feedback = " << buf << "\n";
    std::snprintf(buf, sizeof buf, "%o", cfg.outer_gen.feedforward);
    os << "outer_feedforward = " << buf << "\n";
    os << "outer_memory = " << cfg.outer_gen.memory << "\n";
    std::snprintf(buf, sizeof buf, "%o", cfg.inner_gen.feedback);
    os << "inner_feedback = " << buf << "\n";
    std::snprintf(buf, sizeof buf, "%o", cfg.inner_gen.feedforward);
    os << "inner_feedforward = " << buf << "\n";
    os << "inner_memory = " << cfg.inner_gen.memory << "\n";
    os << "[ebno]\n";
    os << "grid =";
    for (const double x : cfg.ebno_grid_db) {
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.17g", x); // exact double roundtrip
        os << " " << buf;
    }
    os << "\n";
    for (const auto& sc : cfg.scenarios) {
        os << "[scenario]\n";
        os << "name = " << sc.name << "\n";
        os << "K = " << sc.params.block_info_bits << "\n";
        os << "m = " << sc.params.coupling_memory << "\n";
        os << "W = " << sc.params.window_blocks << "\n";
        os << "I_W = " << sc.params.window_iterations << "\n";
        os << "uncoupled = " << (sc.uncoupled ? "true" : "false") << "\n";
    }
    return os.str();
}

int run_sweep(const RunConfig& cfg, std::ostream& log) {
    namespace fs = std::filesystem;
    fs::create_directories(cfg.out_dir);
    std::ofstream csv(fs::path(cfg.out_dir) / "results.csv");
    if (!csv)
        throw std::runtime_error("cannot write to output directory: " + cfg.out_dir);

    csv << "# " << version_string << "\n";
    std::istringstream echo(config_echo(cfg));
    std::string line;
    while (std::getline(echo, line))
        csv << "# " << line << "\n";
    csv << "name,K,m,W,I_W,uncoupled,L,C,I_eff,ebno_db,info_bits,bit_errors,"
           "block_errors,ber,ci_low,ci_high,sections_per_bit,wall_time_s\n";
    csv.flush();

    int threads = cfg.threads;
    if (threads <= 0)
        threads = std::max(1u, std::thread::hardware_concurrency());

    bool failed = false;
    std::vector<std::vector<BerPoint>> curves(cfg.scenarios.size());
    for (size_t si = 0; si < cfg.scenarios.size(); ++si) {
        const Scenario& sc = cfg.scenarios[si];
        log << sc.name << ": L=" << sc.params.structural_latency()
            << " C=" << sc.params.constraint_length()
            << " I_eff=" << sc.params.effective_iterations() << "\n";
        for (const double ebno : sc.ebno_grid_db) {
            BerPoint pt;
            const auto t0 = std::chrono::steady_clock::now();
            try {
                pt = run_ber_point(sc, ebno, threads);
            } catch (const std::exception& e) {
                log << "  " << sc.name << " @ " << fmt_g(ebno) << " dB failed: "
                    << e.what() << "\n";
                failed = true;
                break;
            }
            const double secs =
                std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
            csv << sc.name << ',' << sc.params.block_info_bits << ','
                << sc.params.coupling_memory << ',' << sc.params.window_blocks << ','
                << sc.params.window_iterations << ',' << (sc.uncoupled ? 1 : 0) << ','
                << sc.params.structural_latency() << ',' << sc.params.constraint_length()
                << ',' << sc.params.effective_iterations() << ',' << fmt_g(pt.ebno_db)
                << ',' << pt.info_bits << ',' << pt.bit_errors << ',' << pt.block_errors
                << ',' << fmt_g(pt.ber) << ',' << fmt_g(pt.ci_low) << ','
                << fmt_g(pt.ci_high) << ',' << fmt_g(pt.sections_per_bit) << ','
                << fmt_g(secs) << "\n";
            csv.flush();
            log << "  " << fmt_g(ebno) << " dB: ber=" << fmt_g(pt.ber) << " ("
                << pt.bit_errors << "/" << pt.info_bits << " bits, "
                << fmt_g(secs) << " s)\n";
            curves[si].push_back(pt);
        }
    }

    std::ofstream dat(fs::path(cfg.out_dir) / "curves.dat");
    dat << "# " << version_string << "\n";
    dat << "# columns: ebno_db ber ci_low ci_high\n";
    for (size_t si = 0; si < cfg.scenarios.size(); ++si) {
        dat << "# curve: " << cfg.scenarios[si].name << "\n";
        for (const auto& pt : curves[si])
            dat << fmt_g(pt.ebno_db) << ' ' << fmt_g(pt.ber) << ' ' << fmt_g(pt.ci_low)
                << ' ' << fmt_g(pt.ci_high) << "\n";
        dat << "\n";
    }
    return failed ? 1 : 0;
}

} // namespace scscc
