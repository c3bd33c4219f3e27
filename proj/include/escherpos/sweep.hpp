#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "escherpos/escher.hpp"
#include "escherpos/integer.hpp"
#include "escherpos/partition.hpp"

namespace escherpos {

enum class Suite { Counts, Roundtrip, Lemmas, Chromatic, Positivity, Sinks, Gnechrom };

std::string_view to_string(Suite s);
Suite parse_suite(std::string_view name);
std::vector<Suite> all_suites();
/// Largest UIO size a suite accepts.
int suite_size_limit(Suite s);

enum class ReportFormat { Json, Csv };

struct Shard {
    int index = 0; ///< 0-based
    int count = 1;
};

struct SweepConfig {
    int n = 0;
    /// Restricts length-2 work to one (n, k); nullopt means all.
    std::optional<std::pair<int, int>> lambda;
    std::vector<Suite> suites = all_suites();
    int jobs = 1;
    std::string out_path;
    ReportFormat format = ReportFormat::Json;
    bool resume = false;
    bool timings = false;
    std::optional<Shard> shard;
    AnchorConvention convention = kDefaultConvention;
    /// Stop after this many completed tasks, leaving the progress file behind.
    std::optional<int> stop_after;
};

/// Raised for invalid configurations (exit status 2).
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

void validate(const SweepConfig& config);

struct CheckOutcome {
    bool pass = true;
    /// Reported but not counted as a failure.
    bool informational = false;
    std::optional<std::string> counterexample;
    bool operator==(const CheckOutcome&) const = default;
};

struct UioRecord {
    std::string h;
    std::map<std::string, Int> counts;
    std::map<std::string, Int> coefficients;
    std::map<std::string, CheckOutcome> checks;
    std::map<std::string, double> durations;

    /// Union with `other`; throws std::runtime_error naming h when a key disagrees.
    void merge(const UioRecord& other);
    bool operator==(const UioRecord&) const = default;
};

struct Summary {
    Int uios = 0;
    Int checks = 0;
    Int failures = 0;
    Int informational_failures = 0;
    std::vector<std::string> failed; ///< "h:check"
};

struct VerificationReport {
    nlohmann::json config; ///< echo of the deterministic part of the configuration
    std::string config_hash;
    std::vector<UioRecord> records; ///< sorted by h
    std::optional<double> wall_seconds;
    bool complete = true;
    std::vector<std::string> errors; ///< non-mathematical task failures

    Summary summary() const;
    nlohmann::json to_json() const;
    static VerificationReport from_json(const nlohmann::json& j);
    std::string to_csv() const;
    /// JSON or CSV text, newline-terminated.
    std::string serialize(ReportFormat format) const;
};

nlohmann::json config_echo(const SweepConfig& config);
std::string config_hash(const nlohmann::json& echo);

/// Runs every selected suite on every UIO of size config.n (respecting the
/// shard), writing the report to config.out_path when set.
VerificationReport run_sweep(const SweepConfig& config);

/// Runs one suite on one UIO.
UioRecord run_suite(const Uio& u, Suite suite, const SweepConfig& config);

/// Deterministic union of JSON reports with the same config hash.
VerificationReport merge_reports(const std::vector<std::string>& paths);

/// 0 when complete with no failures, 1 on a mathematical failure, 2 otherwise.
int exit_status(const VerificationReport& report);

/// Writes `text` to `path` via a temporary file and rename.
void write_atomically(const std::string& path, const std::string& text);

/// Human-readable single-UIO diagnostics.
void check_single(std::ostream& os, const Uio& u, const Partition& lambda, bool trace,
                  const AnchorConvention& conv = kDefaultConvention);

} // namespace escherpos
