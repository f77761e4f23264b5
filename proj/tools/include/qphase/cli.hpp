#ifndef QPHASE_CLI_HPP
#define QPHASE_CLI_HPP

#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace qphase::cli {

enum class Command {
    numfun,
    carmichael_spectrum,
    kms_surface,
    kms_check,
    staircase,
    adler,
    operators_verify,
    mangoldt_map,
    operator_dump,
};

enum class Format { csv, json };

inline constexpr int kExitOk = 0;
inline constexpr int kExitInternal = 1;
inline constexpr int kExitDomain = 2;

/// Name of the environment variable holding the default output directory.
inline constexpr const char* kOutputDirEnv = "QPHASE_OUTPUT_DIR";

struct ParamSpec {
    std::string key;
    std::string default_value;
    std::string help;
};

struct RunConfig {
    Command command;
    std::map<std::string, std::string> params;  // keys as in parameters(command)
    std::filesystem::path output_path;          // directory receiving artifact files
    Format format = Format::csv;
};

std::string_view command_name(Command c);
std::optional<Command> parse_command(std::string_view name);
const std::vector<Command>& all_commands();
std::string_view command_help(Command c);

/// Accepted keys and their defaults. Anything else in RunConfig::params is rejected.
const std::vector<ParamSpec>& parameters(Command c);

/// $QPHASE_OUTPUT_DIR if set and non-empty, else the current directory.
std::filesystem::path default_output_dir();

/// Runs one command. Short summaries and single-value answers go to `out`,
/// diagnostics to `err`; data goes to files under config.output_path.
/// Returns 0 on success, 2 on bad parameters, 1 on any other failure.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

struct CheckResult {
    std::string name;
    double measured;
    double tolerance;
    std::string relation;  // "<=", ">=", "==", "<"
    bool pass;
};

struct VerifyReport {
    std::string suite;
    std::vector<CheckResult> checks;
    bool pass() const;
};

/// suite in {operators, kms, dynamics, all}; throws DomainError otherwise.
VerifyReport verify(std::string_view suite);

} // namespace qphase::cli

#endif
