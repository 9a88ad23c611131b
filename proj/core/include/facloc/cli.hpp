#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "facloc/grid.hpp"

namespace facloc::cli {

// Exit codes: 0 success, 2 usage, 3 input format, 4 numeric failure.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitInput = 3;
inline constexpr int kExitNumeric = 4;

enum class Command { Exact1D, ShortTerm, LongTerm, Compare };
enum class TieFlag { Leftmost, Rightmost, Both };
enum class MethodFlag { Auto, DP, Lloyd, Closed };

struct RunConfig {
    Command command = Command::Exact1D;
    std::optional<std::string> density_path;
    std::optional<std::string> uniform_spec;  // "d=2,shape=200x200"
    long n = 1;
    TieFlag tie = TieFlag::Leftmost;
    MethodFlag method = MethodFlag::Auto;
    int restarts = 8;
    std::uint64_t seed = 0;
    bool want_limit = false;  // insist on the asymptotic reference column
    std::string out_dir = ".";
};

/// Loads --density or builds the --uniform grid; exactly one must be set
/// (exact1d needs neither).
DensityGrid make_grid(const RunConfig& cfg);

int cmd_exact1d(const RunConfig& cfg);
int cmd_shortterm(const RunConfig& cfg);
int cmd_longterm(const RunConfig& cfg);
int cmd_compare(const RunConfig& cfg);

/// Full command-line entry point (parse + dispatch + error mapping).
int run_cli(int argc, const char* const* argv);

}  // namespace facloc::cli
