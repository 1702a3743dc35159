// podreliab: reliability evaluation of vessel trajectory predictors.
//
//   podreliab ingest|classify|evaluate|demo --config <path>
//             [--threshold-m F] [--h-max F] [--out DIR] [--seed N]
//
// Exit codes: 0 success, 1 internal error, 2 input error.

#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "podreliab/commands.hpp"
#include "podreliab/errors.hpp"

namespace {

struct Overrides {
    std::string config;
    std::optional<double> threshold_m;
    std::optional<double> h_max;
    std::optional<std::string> out;
    std::optional<std::uint64_t> seed;
};

void add_common(CLI::App* cmd, Overrides& o, bool config_required) {
    auto* opt = cmd->add_option("--config", o.config, "JSON run configuration");
    if (config_required) opt->required();
    cmd->add_option("--threshold-m", o.threshold_m, "decision threshold [m] (default 20)");
    cmd->add_option("--h-max", o.h_max, "largest evaluated horizon [min] (default 5)");
    cmd->add_option("--out", o.out, "output directory");
    cmd->add_option("--seed", o.seed, "random seed");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Reliability evaluation of vessel trajectory predictors"};
    app.set_version_flag("--version", std::string(podreliab::kVersion));
    app.require_subcommand(1);

    Overrides o;
    auto* ingest = app.add_subcommand("ingest", "split and resample AIS records into trajectories");
    auto* classify = app.add_subcommand("classify", "window upstream trajectories and label traffic situations");
    auto* evaluate = app.add_subcommand("evaluate", "error statistics, POAP curves and a_90/95 tables");
    auto* demo = app.add_subcommand("demo", "synthetic end-to-end run");
    add_common(ingest, o, true);
    add_common(classify, o, true);
    add_common(evaluate, o, true);
    add_common(demo, o, false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        podreliab::RunConfig config =
            o.config.empty() ? podreliab::RunConfig{} : podreliab::load_config(o.config);
        if (o.threshold_m) config.threshold_m = *o.threshold_m;
        if (o.h_max) config.h_max = *o.h_max;
        if (o.out) config.out_dir = *o.out;
        if (o.seed) config.seed = *o.seed;
        podreliab::validate(config);

        if (ingest->parsed()) podreliab::cmd_ingest(config);
        else if (classify->parsed()) podreliab::cmd_classify(config);
        else if (evaluate->parsed()) podreliab::cmd_evaluate(config);
        else if (demo->parsed()) podreliab::cmd_demo(config);
        std::cout << "wrote " << config.out_dir.string() << '\n';
        return 0;
    } catch (const podreliab::InputError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return 1;
    }
}
