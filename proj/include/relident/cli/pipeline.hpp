#ifndef RELIDENT_CLI_PIPELINE_HPP
#define RELIDENT_CLI_PIPELINE_HPP

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace relident {

enum class Command { IoPolys, Summary, CheckWronskian, Tree, Witness };
enum class OutputFormat { Text, Json, Dot };

namespace exit_code {
inline constexpr int ok = 0;
inline constexpr int parse_error = 2;
inline constexpr int elimination_failure = 3;
inline constexpr int tree_partial = 4;
inline constexpr int wronskian_failure = 5;
}  // namespace exit_code

/// Environment variable that replaces the default per-decision budget.
inline constexpr const char* budget_env_var = "RELIDENT_BUDGET_SECS";

struct RunConfig {
    Command command = Command::Tree;
    std::filesystem::path model_path;
    OutputFormat format = OutputFormat::Text;
    std::uint64_t seed = 1;
    /// Wall-clock budget for one emptiness decision.
    double budget_secs = 60.0;
    unsigned max_prolong = 0;
    unsigned witness_height = 8;
    unsigned wronskian_trials = 5;
    bool stats = false;
    bool no_constraints = false;
    bool with_initial_conditions = false;
    /// Build the tree even when the Wronskian check fails; output is watermarked.
    bool ignore_wronskian = false;
    std::vector<std::string> known;
    std::string target;
};

struct RunOutput {
    int exit_code = exit_code::ok;
    std::string out;
    std::string err;
};

/// Default budget, honouring budget_env_var when it holds a positive number.
double default_budget_secs();

/// Runs one subcommand end to end. Never throws for model, parse or
/// elimination problems; those become exit codes with a message in `err`.
RunOutput run_pipeline(const RunConfig& config);

}  // namespace relident

#endif
