#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "superdenom/identity.hpp"

namespace superdenom {

enum class OutputFormat { json, text, csv };

struct RunConfig {
    FamilySpec spec;
    long height = 6;
    CheckSelection checks;
    int shells = 3;
    int theta_depth = 3;
    OutputFormat format = OutputFormat::json;
    std::string out_path;          // empty: standard output
    std::string theta_dot_path;    // empty: no graph dump
    RootOptions root_options;
    std::string control;           // negative-control tag, empty for none
};

/// Exit codes.
constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;
constexpr int kExitInternal = 3;

/// Parses "finite,affine,..." or "all"; throws ConfigError.
CheckSelection parse_checks(const std::string& text);
/// "imag-mult-1" or "drop-s"; throws ConfigError.
RootOptions parse_control(const std::string& tag);

/// One batch line "family m n N [control]"; nullopt for blank and comment lines.
std::optional<RunConfig> parse_batch_line(const std::string& line);

std::string report_json(const CheckReport& report, const std::string& control = {});
std::string report_text(const CheckReport& report);

int cmd_verify(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_info(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_batch(const std::string& path, const RunConfig& defaults, int workers, std::ostream& out,
              std::ostream& err);

/// Full command line: `superdenom {verify,info,batch} ...`.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace superdenom
