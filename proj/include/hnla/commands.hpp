#pragma once

#include <complex>
#include <string>
#include <vector>

#include "hnla/ensemble.hpp"

namespace hnla::cli {

enum class Command { fig1, transform, nosignal, epr };
enum class OutputFormat { csv, json };

// Exit codes shared by the command layer and the binary.
inline constexpr int exit_ok = 0;
inline constexpr int exit_invalid_config = 1;
inline constexpr int exit_physics_violation = 2;

struct RunConfig {
    Command command = Command::fig1;
    double gain = 1.1;

    // squeezing, either as a dB list or as natural units (never inferred)
    std::vector<double> squeezing_db;
    std::vector<double> squeezing_r;
    bool squeezing_in_db = true;

    std::complex<double> alpha{0.0, 0.0};
    double phi = 0.0;
    bool emit_state = false; // transform: include the output state vector

    int n_from = 0;
    int n_trunc = 20;

    double s = 0.5;
    ensemble::GridSpec grid;
    int n_max_override = 0; // <= 0 means automatic

    double tolerance = 1e-6;
    OutputFormat format = OutputFormat::csv;
    std::string output_path; // empty means stdout
};

struct CommandResult {
    int exit_code = exit_ok;
    std::string payload;    // CSV or JSON body
    std::string diagnostic; // human-readable note for stderr, may be empty
};

/// Validates a config against the preconditions of the operations it feeds;
/// returns a nonempty message when the config must be rejected (exit 1).
std::string validate(const RunConfig &cfg);

CommandResult cmd_fig1(const RunConfig &cfg);
CommandResult cmd_transform(const RunConfig &cfg);
CommandResult cmd_nosignal(const RunConfig &cfg);
CommandResult cmd_epr(const RunConfig &cfg);

/// Validate, dispatch, write. Output files are written atomically
/// (temp file + rename), so a failing run never leaves a partial file.
int run(const RunConfig &cfg);

/// Atomic write helper used by run(); exposed for tests.
void write_file_atomic(const std::string &path, const std::string &payload);

} // namespace hnla::cli
