#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "escherpos/escher.hpp"
#include "escherpos/sweep.hpp"

using namespace escherpos;

namespace {

constexpr const char* kJobsEnv = "ESCHERPOS_JOBS";

std::vector<std::string> split(const std::string& s, char sep)
{
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, sep))
        if (!item.empty())
            out.push_back(item);
    return out;
}

int parse_int(const std::string& s, const char* what)
{
    try {
        std::size_t pos = 0;
        const int v = std::stoi(s, &pos);
        if (pos == s.size())
            return v;
    } catch (const std::exception&) {
    }
    throw ConfigError(std::string("invalid ") + what + ": " + s);
}

void print_summary(const VerificationReport& report)
{
    const Summary s = report.summary();
    std::cerr << "uios=" << s.uios << " checks=" << s.checks << " failures=" << s.failures
              << " informational_failures=" << s.informational_failures << (report.complete ? "" : " (incomplete)")
              << "\n";
    for (const auto& f : s.failed)
        std::cerr << "FAILED " << f << "\n";
    for (const auto& e : report.errors)
        std::cerr << "ERROR " << e << "\n";
}

int cmd_sweep(int n, const std::string& lambda, const std::string& suites, std::optional<int> jobs,
              const std::string& out, const std::string& format, bool resume, const std::string& shard, bool timings,
              const std::string& convention, std::optional<int> stop_after)
{
    SweepConfig cfg;
    cfg.n = n;
    if (lambda != "all") {
        const auto parts = split(lambda, ',');
        if (parts.size() != 2)
            throw ConfigError("--lambda expects n,k or all");
        cfg.lambda = std::pair{parse_int(parts[0], "lambda"), parse_int(parts[1], "lambda")};
    }
    if (suites != "all") {
        cfg.suites.clear();
        for (const auto& s : split(suites, ','))
            cfg.suites.push_back(parse_suite(s));
    }
    if (jobs) {
        cfg.jobs = *jobs;
    } else if (const char* env = std::getenv(kJobsEnv)) {
        cfg.jobs = parse_int(env, kJobsEnv);
    }
    cfg.out_path = out;
    if (format == "csv")
        cfg.format = ReportFormat::Csv;
    else if (format != "json")
        throw ConfigError("--format must be json or csv");
    cfg.resume = resume;
    cfg.timings = timings;
    if (!shard.empty()) {
        const auto parts = split(shard, '/');
        if (parts.size() != 2)
            throw ConfigError("--shard expects I/M");
        cfg.shard = Shard{parse_int(parts[0], "shard"), parse_int(parts[1], "shard")};
    }
    try {
        cfg.convention = AnchorConvention::parse(convention);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
    cfg.stop_after = stop_after;

    const VerificationReport report = run_sweep(cfg);
    if (out.empty())
        std::cout << report.serialize(cfg.format);
    print_summary(report);
    return exit_status(report);
}

int cmd_check(const std::string& h, const std::string& lambda, bool trace, const std::string& w,
              const std::string& convention)
{
    Uio u = Uio::from_hessenberg({1});
    Partition lam;
    AnchorConvention conv;
    try {
        u = Uio::parse(h);
        lam = Partition::parse(lambda);
        conv = AnchorConvention::parse(convention);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
    if (w.empty()) {
        check_single(std::cout, u, lam, trace, conv);
        return 0;
    }
    // Single-Escher inspection.
    if (lam.length() != 2 || lam[0] <= lam[1])
        throw ConfigError("--w needs lambda = n,k with n > k");
    Sequence seq;
    try {
        seq = parse_sequence(w);
        if (!is_escher(u, seq) || static_cast<int>(seq.size()) != u.size())
            throw ConfigError("--w must be a full-length Escher of U");
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
    const PhiTrace f = phi_trace(u, seq, lam[0], lam[1], conv);
    const PsiTrace g = psi_trace(u, f.pair.u, f.pair.v, conv);
    std::cout << "w = " << to_string(seq) << "\n"
              << "FE = " << f.first_subescher << (f.exceptional ? " (exceptional)" : "") << "\n"
              << "phi = (" << to_string(f.pair.u) << " | " << to_string(f.pair.v) << ")\n"
              << "FI = " << (g.first_insertion ? std::to_string(*g.first_insertion) : "none")
              << (g.exceptional ? " (exceptional)" : "") << "\n"
              << "psi = " << (g.w ? to_string(*g.w) : "none") << "\n"
              << "roundtrip " << (g.w && *g.w == seq ? "PASS" : "FAIL") << "\n";
    return g.w && *g.w == seq ? 0 : 1;
}

int cmd_calibrate(int max_n)
{
    CalibrationResult r;
    try {
        r = calibrate_convention(max_n);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    } catch (const InternalError& e) {
        std::cout << e.what();
        return 1;
    }
    for (const auto& e : r.log)
        std::cout << (e.passed ? "PASS " : "FAIL ") << e.convention.name() << " checked=" << e.checked
                  << (e.counterexample ? " first failure: " + *e.counterexample : "") << "\n";
    std::cout << "witness: " << r.witness << "\n";
    std::cout << "selected: " << r.convention.name() << "\n";
    return r.convention == kDefaultConvention ? 0 : 1;
}

int cmd_merge(const std::string& out, const std::vector<std::string>& inputs, const std::string& format)
{
    const VerificationReport report = merge_reports(inputs);
    ReportFormat f = ReportFormat::Json;
    if (format == "csv")
        f = ReportFormat::Csv;
    else if (format != "json")
        throw ConfigError("--format must be json or csv");
    write_atomically(out, report.serialize(f));
    print_summary(report);
    return exit_status(report);
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Exhaustive verification of length-two e-coefficients of unit interval orders"};
    app.require_subcommand(1);

    int n = 0;
    std::string lambda = "all", suites = "all", out, format = "json", shard, convention = "default";
    std::optional<int> jobs, stop_after;
    bool resume = false, timings = false;
    auto* sweep = app.add_subcommand("sweep", "Run verification suites over every UIO of size N");
    sweep->add_option("--n", n, "UIO size")->required();
    sweep->add_option("--lambda", lambda, "n,k or all");
    sweep->add_option("--suites", suites, "comma-separated subset of counts,roundtrip,lemmas,chromatic,positivity,sinks,gnechrom");
    sweep->add_option("--jobs", jobs, std::string("worker threads (default: $") + kJobsEnv + " or 1)");
    sweep->add_option("--out", out, "report path (stdout when absent)");
    sweep->add_option("--format", format, "json or csv");
    sweep->add_flag("--resume", resume, "continue from <out>.progress");
    sweep->add_option("--shard", shard, "I/M: only UIOs with index = I mod M");
    sweep->add_flag("--timings", timings, "record durations (output no longer reproducible)");
    sweep->add_option("--convention", convention, "anchor convention name");
    sweep->add_option("--stop-after", stop_after, "stop after this many tasks")->group("");

    std::string h, w, check_lambda, check_conv = "default";
    bool trace = false;
    auto* check = app.add_subcommand("check", "Inspect one UIO");
    check->set_help_flag("--help", "Print this help message and exit");
    check->add_option("--h", h, "Hessenberg vector, e.g. 2,3,3")->required();
    check->add_option("--lambda", check_lambda, "partition, e.g. 2,1")->required();
    check->add_flag("--trace", trace, "print the phi/psi trace for every Escher");
    check->add_option("--w", w, "inspect a single Escher, e.g. 1,3,2");
    check->add_option("--convention", check_conv, "anchor convention name");

    int max_n = 8;
    auto* calibrate = app.add_subcommand("calibrate", "Select the anchor convention for phi and psi");
    calibrate->add_option("--max-n", max_n, "largest UIO size searched (3..8)");

    std::string merge_out, merge_format = "json";
    std::vector<std::string> merge_in;
    auto* merge = app.add_subcommand("merge", "Merge JSON reports of one configuration");
    merge->add_option("out", merge_out, "output path")->required();
    merge->add_option("inputs", merge_in, "input reports")->required();
    merge->add_option("--format", merge_format, "json or csv");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        if (*sweep)
            return cmd_sweep(n, lambda, suites, jobs, out, format, resume, shard, timings, convention, stop_after);
        if (*check)
            return cmd_check(h, check_lambda, trace, w, check_conv);
        if (*calibrate)
            return cmd_calibrate(max_n);
        if (*merge)
            return cmd_merge(merge_out, merge_in, merge_format);
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
