// Command line front end of the scenario runner.
//
//   urllc run   --config cfg.json --out results/
//   urllc sweep --config cfg.json --param activation_prob --values 0.05,0.1,0.2 --out results/
//   urllc scenarios
//
// --seed, --jobs and --out can also be set through URLLC_SEED, URLLC_JOBS and URLLC_OUT.

#include <cstdint>
#include <exception>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "urllc/runner.hpp"

namespace {

using urllc::runner::ExitCode;

int code(ExitCode c) { return static_cast<int>(c); }

struct CommonFlags {
    std::string config;
    std::string out;
    std::optional<std::uint64_t> seed;
    unsigned jobs = 1;
};

void add_common(CLI::App& cmd, CommonFlags& flags) {
    cmd.add_option("--config", flags.config, "JSON experiment config")->required()->check(CLI::ExistingFile);
    cmd.add_option("--out", flags.out, "Output directory (overrides output_dir)")->envname("URLLC_OUT");
    cmd.add_option("--seed", flags.seed, "Master seed override")->envname("URLLC_SEED");
    cmd.add_option("--jobs", flags.jobs, "Worker threads")->envname("URLLC_JOBS")->check(CLI::Range(1u, 1024u));
}

urllc::runner::RunOptions options(const CommonFlags& flags) {
    urllc::runner::RunOptions o;
    o.jobs = flags.jobs;
    o.seed = flags.seed;
    if (!flags.out.empty()) {
        o.output_dir = flags.out;
    }
    return o;
}

void print_report(const urllc::runner::RunReport& report) {
    for (const auto& f : report.files) {
        std::cout << (report.output_dir / f.name).string() << "  " << f.fnv1a64 << '\n';
    }
    for (const auto& [key, value] : report.summary) {
        std::cout << key << " = " << value << '\n';
        if (key.rfind("unmatched_", 0) == 0 && value > 0) {
            std::cerr << "warning: " << value << " events of " << key.substr(10)
                      << " had no counterpart within the alignment tolerance and were dropped\n";
        }
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Seeded URLLC latency/reliability experiments"};
    app.require_subcommand(1);

    CommonFlags run_flags;
    auto* run_cmd = app.add_subcommand("run", "Run one scenario");
    add_common(*run_cmd, run_flags);

    CommonFlags sweep_flags;
    std::string param;
    std::string values;
    auto* sweep_cmd = app.add_subcommand("sweep", "Run a scenario once per parameter value");
    add_common(*sweep_cmd, sweep_flags);
    sweep_cmd->add_option("--param", param, "Dotted parameter path, e.g. receiver.mpr_gamma")->required();
    sweep_cmd->add_option("--values", values, "Comma separated values (JSON literals)")->required();

    std::string show;
    auto* list_cmd = app.add_subcommand("scenarios", "List scenarios, or print the defaults of one");
    list_cmd->add_option("id", show, "Scenario id");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : code(ExitCode::validation);
    }

    try {
        if (*run_cmd) {
            const auto cfg = urllc::runner::load_config(run_flags.config);
            print_report(urllc::runner::run(cfg, options(run_flags)));
        } else if (*sweep_cmd) {
            const auto cfg = urllc::runner::load_config(sweep_flags.config);
            const auto list = urllc::runner::parse_value_list(values);
            print_report(urllc::runner::sweep(cfg, param, list, options(sweep_flags)));
        } else if (show.empty()) {
            for (const auto& id : urllc::runner::scenario_ids()) {
                std::cout << id << '\n';
            }
        } else {
            std::cout << urllc::runner::default_params(show).dump(2) << '\n';
        }
    } catch (const urllc::runner::ValidationError& e) {
        std::cerr << "invalid config: " << e.what() << '\n';
        return code(ExitCode::validation);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return code(ExitCode::runtime);
    }
    return code(ExitCode::ok);
}
