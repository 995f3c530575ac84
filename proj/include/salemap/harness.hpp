#pragma once

// Command-line front end. `run_cli` parses arguments into a RunConfig and
// calls `execute`; exit status 0 on success, 1 on precondition or parameter
// errors, 2 on I/O errors.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace salemap::harness {

enum class Command { construct, spectrum, decay, count_aps, guarantee, verify, smear };
enum class Format { json, csv, text };

inline constexpr int kExitOk = 0;
inline constexpr int kExitParameter = 1;
inline constexpr int kExitIo = 2;

struct RunConfig {
    Command command = Command::construct;
    std::string in;
    std::string out;
    std::optional<Format> format;

    // construct
    std::string kind = "cantor";
    int depth = 1;
    std::int64_t branching = 2;
    std::int64_t keep = 1;
    std::uint64_t seed = 0;
    bool verify_blocks = false;
    std::optional<double> eta;
    int max_retries = 64;
    bool full_range_check = false;
    std::int64_t ambient = 0;
    std::string points;
    std::int64_t target = 0;
    std::string trace;

    // decay / verify / construct --kind salem
    std::optional<double> beta;
    std::optional<std::int64_t> k_min;
    std::optional<std::int64_t> k_max;
    bool symmetric_index = false;
    std::string form = "kn";

    // count-aps
    std::string method = "direct";
    bool oddify = false;

    // guarantee / verify
    std::optional<double> alpha;
    std::optional<double> delta;
    double epsilon = 0.05;

    // verify
    std::string fejer_k = "auto";
    bool symmetric_fejer = false;
};

// Runs one command; writes the report to config.out or `out`.
void execute(const RunConfig& config, std::ostream& out);

// argv-style entry point (args excludes the program name). A leading or
// embedded "--config <file>" supplies key=value defaults for flags that are
// not given on the command line.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace salemap::harness
