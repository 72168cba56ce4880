#ifndef DERCAT_TOOLS_CLI_HPP
#define DERCAT_TOOLS_CLI_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace dercat::cli {

enum ExitCode : int {
    kOk = 0,
    kUsage = 1,
    kParse = 2,
    kValidation = 3,
    kResource = 4,
    kInternal = 5,
};

enum class OutputFormat { text, structured };

struct Job {
    std::string command;
    std::vector<std::string> inputs;  // file paths, or integers for fm-elliptic
    std::string field = "q";
    std::uint64_t seed = 0;
    std::size_t max_terms = 20000;
    OutputFormat output = OutputFormat::text;

    // hochschild / canonical-ring
    std::optional<int> pn;
    std::optional<int> genus;
    std::optional<std::string> hodge;
    std::optional<int> from;
    std::optional<int> to;

    // point-check / line-bundle-check
    std::size_t draws = 64;
    std::vector<std::string> points;  // "1,0,2" homogeneous coordinates
    std::size_t random_points = 2;
};

struct Report {
    int exit_code = kOk;
    std::string out;  // stdout
    std::string err;  // stderr
};

/// Runs one engine operation. Never throws; failures map to exit codes.
Report run(const Job& job);

/// The command names accepted by run().
const std::vector<std::string>& commands();

}  // namespace dercat::cli

#endif  // DERCAT_TOOLS_CLI_HPP
