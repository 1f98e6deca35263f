#pragma once

// Subcommands of the homog CLI. Each returns the emitted document plus the
// exit code; errors propagate as homog::Error.

#include "homog/io.hpp"

#include <string>
#include <vector>

namespace homog::cli {

struct RunConfig {
    std::string subcommand;
    /// builtin name or path to a JSON file
    std::string input;
    int order = 20;
    double tol = 1e-12;
    long jmax = 10'000'000;
    std::string grid;
    std::string format = "json";
    std::string out;
    // subcommand extras
    std::string curve = "x3";
    std::string map = "shear_up";
    std::string flatten;
    std::string p0 = "0,1";
    double t = 1.0;
    double z = 0.1;
};

struct Output {
    io::json doc;
    /// header line first; empty when the command has no CSV form
    std::vector<std::string> csv;
    int exit_code = 0;
};

/// "lo:hi:n" or "a,b,c".
std::vector<double> parse_grid(const std::string& text, const std::string& fallback);

Output cmd_koenigs(const RunConfig& cfg);
Output cmd_fatou(const RunConfig& cfg);
Output cmd_shear_curve(const RunConfig& cfg);
Output cmd_linmap(const RunConfig& cfg);
Output cmd_involution(const RunConfig& cfg);
Output cmd_prolong(const RunConfig& cfg);
Output cmd_generator(const RunConfig& cfg);
Output cmd_demo(const RunConfig& cfg);

std::vector<std::string> demo_names();

/// Dispatches on cfg.subcommand.
Output run(const RunConfig& cfg);

/// Text in the requested format.
std::string render(const Output& out, const std::string& format);

} // namespace homog::cli
