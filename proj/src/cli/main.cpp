#include "relident/cli/pipeline.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <map>

int main(int argc, char** argv) {
    using namespace relident;
    CLI::App app{"Global identifiability of rational ODE models from input-output relations"};
    app.require_subcommand(1);

    RunConfig config;
    config.budget_secs = default_budget_secs();
    std::string model;
    std::string known;

    const std::map<std::string, OutputFormat> formats{
        {"text", OutputFormat::Text}, {"json", OutputFormat::Json}, {"dot", OutputFormat::Dot}};

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("model", model, "Model document (JSON)")->required()->check(CLI::ExistingFile);
        sub->add_option("--format", config.format, "Output format")
            ->transform(CLI::CheckedTransformer(formats, CLI::ignore_case));
        sub->add_option("--seed", config.seed, "Seed for every randomized step");
        sub->add_option("--max-prolong", config.max_prolong, "Cap on output derivative order (0: number of states)");
        sub->add_flag("--with-initial-conditions", config.with_initial_conditions,
                      "Treat initial conditions as extra parameters");
        sub->add_option("--wronskian-trials", config.wronskian_trials, "Random evaluations per Wronskian check")
            ->check(CLI::PositiveNumber);
    };
    auto add_tree_options = [&](CLI::App* sub) {
        sub->add_option("--budget-secs", config.budget_secs, "Budget per emptiness decision, seconds")
            ->check(CLI::PositiveNumber)
            ->envname(budget_env_var);
        sub->add_option("--witness-height", config.witness_height, "Height bound for rational witness search");
        sub->add_flag("--no-constraints", config.no_constraints, "Ignore parameter constraints");
        sub->add_flag("--ignore-wronskian", config.ignore_wronskian,
                      "Continue when the Wronskian check fails; output is marked unverified");
    };

    struct Entry {
        const char* name;
        const char* help;
        Command command;
    };
    const Entry entries[] = {
        {"io-polys", "Input-output relations with the states eliminated", Command::IoPolys},
        {"summary", "Exhaustive summary of the input-output relations", Command::Summary},
        {"check-wronskian", "Check that the monomials of each relation are independent", Command::CheckWronskian},
        {"tree", "Relative identifiability tree", Command::Tree},
        {"witness", "Two parameter vectors showing a target is not identifiable", Command::Witness},
    };
    for (const auto& e : entries) {
        auto* sub = app.add_subcommand(e.name, e.help);
        add_common(sub);
        if (e.command == Command::Tree || e.command == Command::Witness) add_tree_options(sub);
        if (e.command == Command::Tree) sub->add_flag("--stats", config.stats, "Print test counts to stderr");
        if (e.command == Command::Witness) {
            sub->add_option("--known", known, "Comma-separated parameters taken as known");
            sub->add_option("--target", config.target, "Parameter to test")->required();
        }
        sub->callback([&config, c = e.command] { config.command = c; });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : exit_code::parse_error;
    }
    config.model_path = model;
    for (std::size_t pos = 0; pos < known.size();) {
        const auto next = known.find(',', pos);
        const auto item = known.substr(pos, next == std::string::npos ? std::string::npos : next - pos);
        if (!item.empty()) config.known.push_back(item);
        if (next == std::string::npos) break;
        pos = next + 1;
    }

    const auto result = run_pipeline(config);
    std::cout << result.out;
    std::cerr << result.err;
    return result.exit_code;
}
