#ifndef CBN_HARNESS_HPP
#define CBN_HARNESS_HPP

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <cbn/learner.hpp>
#include <cbn/metrics.hpp>
#include <cbn/network.hpp>

namespace cbn {

/// Bad flags or flag combinations (exit code 1).
class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline constexpr double kDefaultTimeoutSeconds = 21600.0;

struct RunConfig {
    std::string data;
    std::string net;
    std::string truth;
    std::string learned;
    std::string out;
    std::string manifest;
    std::string case_name;
    std::vector<std::size_t> sizes;
    std::uint64_t seed = 1;
    double timeout_seconds = kDefaultTimeoutSeconds;
    bool trace = false;
};

/// `generate`: one CSV per sample size plus a `.meta.json` sidecar holding
/// the seed, sampler id and declared states. Returns the CSV paths.
std::vector<std::filesystem::path> cmd_generate(const RunConfig& config);

struct LearnOutput {
    LearnResult result;
    std::filesystem::path dag_path;
    std::filesystem::path timing_path;
};

/// `learn`: all three phases on --data; writes the DAG CSV to --out and the
/// timing JSON next to it. Uses the dataset's sidecar for declared states
/// when one exists.
LearnOutput cmd_learn(const RunConfig& config);

/// `evaluate`: scores --learned against --truth (DAG CSV or network JSON).
/// Appends the report row to --out, or prints it when --out is empty.
MetricsReport cmd_evaluate(const RunConfig& config);

struct ManifestCase {
    std::string name;
    std::filesystem::path net;
    std::vector<std::size_t> sizes;
    std::vector<std::uint64_t> seeds;
};

struct Manifest {
    std::vector<ManifestCase> cases;
    std::optional<double> timeout_seconds;
    std::filesystem::path workdir;
};

/// Paths inside the manifest resolve relative to the manifest's directory.
Manifest load_manifest(const std::filesystem::path& path);

/// `benchmark`: generate, learn and evaluate every (case, size, seed) cell;
/// writes the report CSV to --out. Failed or timed-out cells become n/a rows.
std::vector<MetricsReport> cmd_benchmark(const RunConfig& config);

/// Sidecar paths derived from a CSV path: `dir/stem<suffix>`.
std::filesystem::path sibling(const std::filesystem::path& csv, const std::string& suffix);

std::vector<std::size_t> parse_sizes(const std::string& text);

} // namespace cbn

#endif // CBN_HARNESS_HPP
