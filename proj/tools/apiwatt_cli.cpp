// apiwatt command-line front end.
//
// Exit codes: 0 success, 1 usage, 2 layout/config/invariant, 3 parse,
// 4 energy attribution, 5 statistical degeneracy.

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <string>
#include <thread>

#include "CLI11.hpp"

#include "apiwatt/config.hpp"
#include "apiwatt/detail/text.hpp"
#include "apiwatt/error.hpp"
#include "apiwatt/pipeline.hpp"

namespace {

enum Exit { kOk = 0, kUsage = 1, kLayout = 2, kParse = 3, kAttribution = 4, kStats = 5 };

struct Globals {
    std::string config_path;
    double alpha = 0.0;
    std::size_t jobs = std::max(1u, std::thread::hardware_concurrency());
    std::string out;
};

apiwatt::AnalysisConfig load_config(const Globals& g, const CLI::Option* alpha_opt) {
    apiwatt::AnalysisConfig config;
    if (!g.config_path.empty()) config = apiwatt::parse_config(apiwatt::detail::read_file(g.config_path));
    if (alpha_opt->count() > 0) config.alpha = g.alpha;
    config.validate();
    return config;
}

std::string fmt(double v) { return apiwatt::detail::format_double(v); }

int run(int argc, char** argv) {
    CLI::App app{"apiwatt: API utilization vs energy across software revisions"};
    app.require_subcommand(1);
    Globals g;
    app.add_option("--config", g.config_path, "Analysis config (JSON)")->envname("APIWATT_CONFIG");
    auto* alpha_opt = app.add_option("--alpha", g.alpha, "Significance level, overrides the config")->envname("APIWATT_ALPHA");
    app.add_option("--jobs", g.jobs, "Worker threads")->envname("APIWATT_JOBS")->check(CLI::PositiveNumber);
    app.add_option("--out", g.out, "Output directory")->envname("APIWATT_OUT");

    std::string dir;
    auto* analyze = app.add_subcommand("analyze", "Attribute energy and U_api for one revision directory");
    analyze->add_option("dir", dir, "Revision directory with traces/ and power/")->required();

    std::string root;
    auto* evolve = app.add_subcommand("evolve", "Compare every revision under a root directory");
    evolve->add_option("root", root, "Directory of revision subdirectories")->required();

    std::string spec_path;
    std::string synth_out;
    auto* synth = app.add_subcommand("synth", "Generate a synthetic fixture from a spec");
    synth->add_option("spec", spec_path, "Synth spec (JSON)")->required();
    synth->add_option("out", synth_out, "Fixture directory")->required();

    std::string report_dir;
    auto* report = app.add_subcommand("report", "Plot CSV and text summary from evolve or analyze outputs");
    report->add_option("dir", report_dir, "Directory holding report.json or *.executions.jsonl")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kUsage;
    }

    if (*analyze) {
        const auto config = load_config(g, alpha_opt);
        const std::filesystem::path out = g.out.empty() ? "apiwatt-out" : g.out;
        const auto res = apiwatt::cmd_analyze(dir, out, config, g.jobs);
        std::cout << res.label << ": " << res.executions << " executions, " << res.method_records
                  << " method records -> " << out.string() << "\n";
        return kOk;
    }
    if (*evolve) {
        const auto config = load_config(g, alpha_opt);
        const std::filesystem::path out = g.out.empty() ? "apiwatt-out" : g.out;
        const auto rep = apiwatt::cmd_evolve(root, out, config, g.jobs);
        std::cout << rep.revisions.size() << " revisions, " << rep.executions << " executions, "
                  << rep.metric(apiwatt::Metric::Energy).pairs.size() << " pairs per metric\n"
                  << "proxy vs energy: accuracy " << fmt(rep.proxy_vs_energy.accuracy) << "\n"
                  << "proxy vs power: accuracy " << fmt(rep.proxy_vs_power.accuracy) << "\n";
        if (rep.degenerate()) {
            std::cerr << "apiwatt: statistically degenerate input (a metric is constant across all observations); "
                         "report written to "
                      << out.string() << "\n";
            return kStats;
        }
        return kOk;
    }
    if (*synth) {
        const auto truth = apiwatt::cmd_synth(spec_path, synth_out, g.jobs);
        std::cout << truth.files.size() << " executions written to " << synth_out << "\n";
        return kOk;
    }
    if (*report) {
        const std::filesystem::path out = g.out.empty() ? report_dir : g.out;
        const auto r = apiwatt::cmd_report(report_dir, out);
        std::cout << r.text;
        return kOk;
    }
    return kUsage;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const apiwatt::ParseError& e) {
        std::cerr << "apiwatt: parse error: " << e.what() << "\n";
        return kParse;
    } catch (const apiwatt::RangeError& e) {
        std::cerr << "apiwatt: attribution error: " << e.what() << "\n";
        return kAttribution;
    } catch (const apiwatt::StatsError& e) {
        std::cerr << "apiwatt: statistics error: " << e.what() << "\n";
        return kStats;
    } catch (const apiwatt::Error& e) {
        std::cerr << "apiwatt: " << e.what() << "\n";
        return kLayout;
    } catch (const std::filesystem::filesystem_error& e) {
        std::cerr << "apiwatt: " << e.what() << "\n";
        return kLayout;
    } catch (const std::exception& e) {
        std::cerr << "apiwatt: unexpected error: " << e.what() << "\n";
        return kLayout;
    }
}
