#pragma once

// Study drivers behind the command-line front end. Everything here goes
// through the C interface in kramers/kramers.h.

#include "json.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace kramers::cli {

enum class Command { solve, profile, slip_sweep, spectrum, viscosity, oracle, convergence, det_scan };
enum class Format { csv, json };

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1; // I/O and internal errors
inline constexpr int kExitValidation = 2;
inline constexpr int kExitNumerical = 3;

/// Carries the process exit code with the message.
class CommandError : public std::runtime_error {
public:
    CommandError(int exit_code, const std::string& what)
        : std::runtime_error(what), exit_code_(exit_code) {}
    int exit_code() const { return exit_code_; }

private:
    int exit_code_;
};

struct RunConfig {
    std::optional<Command> command;
    int order = 8;
    double chi = 1.0;
    double kn = 0.70710678118654752;
    double sigma12 = 1.0;

    double y_min = 0.0;
    std::optional<double> y_max; // grid end, or oracle domain for the oracle command
    int n_points = 101;
    std::vector<double> y_list;  // overrides the uniform grid when non-empty

    std::vector<int> orders;     // sweeps; per-command default when empty
    std::vector<double> chis;
    double chi_min = 0.05;
    double chi_max = 1.0;
    int chi_points = 96;

    int n_cells = 2000;
    int reference_order = 40;
    int threads = 1;

    std::string output = "-";
    Format format = Format::csv;
};

Command parse_command(const std::string& name);
std::string command_name(Command c);
Format parse_format(const std::string& name);

/// "4:40", "4:40:2" or "4,5,8".
std::vector<int> parse_order_list(const std::string& text);
/// "0.1,0.5,1".
std::vector<double> parse_double_list(const std::string& text);

/// Applies a JSON document whose keys are the kebab-case flag names.
/// Unknown keys are rejected.
void apply_json(RunConfig& cfg, const nlohmann::json& doc);
RunConfig load_config_file(const std::string& path);

/// Throws CommandError(kExitValidation) on any inconsistent field.
void validate(const RunConfig& cfg);

/// Evaluation grid: y_list, or n_points uniform points on [y_min, y_max].
std::vector<double> make_grid(const RunConfig& cfg);

/// Shortest round-trip decimal (17 significant digits); "nan" for NaN.
std::string format_number(double x);

struct CommandResult {
    std::string text;
    int exit_code = kExitOk;
};

/// Runs the configured command and returns the rendered output.
CommandResult run(const RunConfig& cfg);

/// run() plus writing to cfg.output ("-" for stdout).
int execute(const RunConfig& cfg);

} // namespace kramers::cli
