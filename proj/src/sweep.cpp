#include "escherpos/sweep.hpp"

#include <atomic>
#include <chrono>
#include <condition_variable>
#include <cstdio>
#include <deque>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <mutex>
#include <numeric>
#include <ostream>
#include <set>
#include <sstream>
#include <thread>

#include "escherpos/chromo.hpp"
#include "escherpos/ghom.hpp"
#include "escherpos/lemmas.hpp"
#include "escherpos/symcore.hpp"

namespace escherpos {

using nlohmann::json;

namespace {

constexpr std::pair<Suite, std::string_view> kSuiteNames[] = {
    {Suite::Counts, "counts"},         {Suite::Roundtrip, "roundtrip"}, {Suite::Lemmas, "lemmas"},
    {Suite::Chromatic, "chromatic"},   {Suite::Positivity, "positivity"}, {Suite::Sinks, "sinks"},
    {Suite::Gnechrom, "gnechrom"},
};

} // namespace

std::string_view to_string(Suite s)
{
    for (const auto& [suite, name] : kSuiteNames)
        if (suite == s)
            return name;
    throw std::invalid_argument("unknown suite");
}

Suite parse_suite(std::string_view name)
{
    for (const auto& [suite, text] : kSuiteNames)
        if (text == name)
            return suite;
    throw ConfigError("unknown suite: " + std::string(name));
}

std::vector<Suite> all_suites()
{
    std::vector<Suite> out;
    for (const auto& entry : kSuiteNames)
        out.push_back(entry.first);
    return out;
}

int suite_size_limit(Suite s)
{
    switch (s) {
    case Suite::Counts:
    case Suite::Roundtrip:
    case Suite::Lemmas:
        return 8;
    default:
        return 6;
    }
}

void validate(const SweepConfig& config)
{
    if (config.n < 1)
        throw ConfigError("N must be at least 1");
    if (config.n > 12)
        throw ConfigError("N must be at most 12");
    if (config.jobs < 1)
        throw ConfigError("jobs must be at least 1");
    if (config.suites.empty())
        throw ConfigError("no suites selected");
    for (Suite s : config.suites)
        if (config.n > suite_size_limit(s))
            throw ConfigError("suite " + std::string(to_string(s)) + " supports N <= "
                              + std::to_string(suite_size_limit(s)));
    if (config.lambda) {
        const auto [n, k] = *config.lambda;
        if (k < 1 || n < k || n + k != config.n)
            throw ConfigError("lambda must be n,k with n >= k >= 1 and n + k = N");
    }
    if (config.shard && (config.shard->count < 1 || config.shard->index < 0 || config.shard->index >= config.shard->count))
        throw ConfigError("shard must be I/M with 0 <= I < M");
    if (config.resume && config.out_path.empty())
        throw ConfigError("--resume requires --out");
    if (config.stop_after && config.out_path.empty())
        throw ConfigError("stop_after requires an output path");
}

// ------------------------------------------------------------ records

void UioRecord::merge(const UioRecord& other)
{
    if (h != other.h)
        throw std::invalid_argument("cannot merge records of different UIOs");
    auto merge_map = [&](auto& mine, const auto& theirs, const char* section) {
        for (const auto& [key, value] : theirs) {
            auto [it, inserted] = mine.emplace(key, value);
            if (!inserted && !(it->second == value))
                throw std::runtime_error("conflicting records for h=" + h + " (" + section + " " + key + ")");
        }
    };
    merge_map(counts, other.counts, "count");
    merge_map(coefficients, other.coefficients, "coefficient");
    merge_map(checks, other.checks, "check");
    merge_map(durations, other.durations, "duration");
}

namespace {

json outcome_to_json(const CheckOutcome& c)
{
    json j = json::object();
    j["pass"] = c.pass;
    if (c.informational)
        j["informational"] = true;
    if (c.counterexample)
        j["counterexample"] = *c.counterexample;
    return j;
}

CheckOutcome outcome_from_json(const json& j)
{
    CheckOutcome c;
    c.pass = j.at("pass").get<bool>();
    c.informational = j.value("informational", false);
    if (j.contains("counterexample"))
        c.counterexample = j.at("counterexample").get<std::string>();
    return c;
}

json record_to_json(const UioRecord& r)
{
    json j = json::object();
    j["h"] = r.h;
    j["counts"] = r.counts;
    j["coefficients"] = r.coefficients;
    json checks = json::object();
    for (const auto& [name, c] : r.checks)
        checks[name] = outcome_to_json(c);
    j["checks"] = checks;
    if (!r.durations.empty())
        j["durations"] = r.durations;
    return j;
}

UioRecord record_from_json(const json& j)
{
    UioRecord r;
    r.h = j.at("h").get<std::string>();
    r.counts = j.at("counts").get<std::map<std::string, Int>>();
    r.coefficients = j.at("coefficients").get<std::map<std::string, Int>>();
    for (const auto& [name, c] : j.at("checks").items())
        r.checks[name] = outcome_from_json(c);
    if (j.contains("durations"))
        r.durations = j.at("durations").get<std::map<std::string, double>>();
    return r;
}

std::string csv_field(const std::string& s)
{
    if (s.find_first_of(",\"\n") == std::string::npos)
        return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"')
            out += '"';
        out += c;
    }
    return out + "\"";
}

// "name[param]" -> (name, param)
std::pair<std::string, std::string> split_key(const std::string& key)
{
    const auto open = key.find('[');
    if (open == std::string::npos || key.back() != ']')
        return {key, ""};
    return {key.substr(0, open), key.substr(open + 1, key.size() - open - 2)};
}

} // namespace

Summary VerificationReport::summary() const
{
    Summary s;
    s.uios = static_cast<Int>(records.size());
    for (const auto& r : records) {
        for (const auto& [name, c] : r.checks) {
            ++s.checks;
            if (c.pass)
                continue;
            if (c.informational) {
                ++s.informational_failures;
            } else {
                ++s.failures;
                s.failed.push_back(r.h + ":" + name);
            }
        }
    }
    return s;
}

json VerificationReport::to_json() const
{
    const Summary s = summary();
    json sum = json::object();
    sum["uios"] = s.uios;
    sum["checks"] = s.checks;
    sum["failures"] = s.failures;
    sum["informational_failures"] = s.informational_failures;
    sum["failed"] = s.failed;
    sum["complete"] = complete;
    sum["errors"] = errors;
    sum["config_hash"] = config_hash;
    if (wall_seconds)
        sum["wall_seconds"] = *wall_seconds;

    json j = json::object();
    j["config"] = config;
    j["summary"] = sum;
    json recs = json::array();
    for (const auto& r : records)
        recs.push_back(record_to_json(r));
    j["records"] = recs;
    return j;
}

VerificationReport VerificationReport::from_json(const json& j)
{
    VerificationReport rep;
    rep.config = j.at("config");
    const json& sum = j.at("summary");
    rep.config_hash = sum.at("config_hash").get<std::string>();
    rep.complete = sum.value("complete", true);
    if (sum.contains("errors"))
        rep.errors = sum.at("errors").get<std::vector<std::string>>();
    if (sum.contains("wall_seconds"))
        rep.wall_seconds = sum.at("wall_seconds").get<double>();
    for (const auto& r : j.at("records"))
        rep.records.push_back(record_from_json(r));
    std::sort(rep.records.begin(), rep.records.end(), [](const auto& a, const auto& b) { return a.h < b.h; });
    return rep;
}

std::string VerificationReport::to_csv() const
{
    std::ostringstream os;
    os << "h,section,name,param,value,pass,informational\n";
    for (const auto& r : records) {
        auto row = [&](const char* section, const std::string& key, const std::string& value, const std::string& pass,
                       const std::string& info) {
            const auto [name, param] = split_key(key);
            os << csv_field(r.h) << ',' << section << ',' << csv_field(name) << ',' << csv_field(param) << ','
               << csv_field(value) << ',' << pass << ',' << info << '\n';
        };
        for (const auto& [key, v] : r.counts)
            row("count", key, std::to_string(v), "", "");
        for (const auto& [key, v] : r.coefficients)
            row("coefficient", key, std::to_string(v), "", "");
        for (const auto& [key, c] : r.checks)
            row("check", key, c.counterexample.value_or(""), c.pass ? "true" : "false",
                c.informational ? "true" : "false");
    }
    return os.str();
}

std::string VerificationReport::serialize(ReportFormat format) const
{
    if (format == ReportFormat::Csv)
        return to_csv();
    return to_json().dump(2) + "\n";
}

json config_echo(const SweepConfig& config)
{
    json j = json::object();
    j["n"] = config.n;
    j["lambda"] = config.lambda ? json(std::to_string(config.lambda->first) + "," + std::to_string(config.lambda->second))
                                : json("all");
    // Canonical suite order, independent of how they were listed.
    std::vector<std::string> suites;
    for (Suite s : all_suites())
        if (std::find(config.suites.begin(), config.suites.end(), s) != config.suites.end())
            suites.emplace_back(to_string(s));
    j["suites"] = suites;
    j["convention"] = config.convention.name();
    return j;
}

std::string config_hash(const json& echo)
{
    // FNV-1a over the canonical dump (json objects keep keys sorted).
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : echo.dump()) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    std::ostringstream os;
    os << std::hex << std::setw(16) << std::setfill('0') << h;
    return os.str();
}

// ------------------------------------------------------------ suites

namespace {

struct SuiteContext {
    const SweepConfig& config;
    const EBasisSolver* e_solver = nullptr;
    const SchurSolver* s_solver = nullptr;
};

// Length-two partitions (n, k) of N with n >= k >= 1 allowed by the filter.
std::vector<std::pair<int, int>> length_two(const SweepConfig& config, int N)
{
    std::vector<std::pair<int, int>> out;
    for (int k = 1; 2 * k <= N; ++k)
        if (!config.lambda || *config.lambda == std::pair{N - k, k})
            out.emplace_back(N - k, k);
    return out;
}

std::string nk(int n, int k)
{
    return "[" + std::to_string(n) + "," + std::to_string(k) + "]";
}

CheckOutcome check(bool pass, std::string counterexample = {})
{
    CheckOutcome c;
    c.pass = pass;
    if (!pass && !counterexample.empty())
        c.counterexample = std::move(counterexample);
    return c;
}

CheckOutcome from_lemma(const LemmaOutcome& o)
{
    CheckOutcome c;
    c.pass = o.ok();
    c.counterexample = o.counterexample;
    return c;
}

void suite_counts(const Uio& u, const SweepConfig& config, UioRecord& rec)
{
    const int N = u.size();
    for (int m = 1; m <= N; ++m)
        rec.counts["eschers[" + std::to_string(m) + "]"] = count_eschers(u, m);
    const Int full = rec.counts["eschers[" + std::to_string(N) + "]"];
    const Int corrects = count_full_corrects(u);
    rec.counts["corrects"] = corrects;
    const Int mN = m_coeff_U(u, Partition({N}));
    rec.coefficients["m[" + std::to_string(N) + "]"] = mN;

    rec.checks["correct_escher"] = check(corrects == full && full == mN,
                                         "corrects=" + std::to_string(corrects) + " eschers=" + std::to_string(full)
                                             + " m=" + std::to_string(mN));
    rec.checks["divisibility"] = check(full % N == 0, "eschers=" + std::to_string(full));

    for (const auto& [n, k] : length_two(config, N)) {
        const Int pairs = disjoint_pair_count(u, n, k);
        const Int m = m_coeff_U(u, Partition({n, k}));
        rec.counts["pairs" + nk(n, k)] = pairs;
        rec.coefficients["m" + nk(n, k)] = m;
        Int predicted;
        if (n > k) {
            predicted = checked_sub(pairs, full);
        } else {
            if (pairs % 2 != 0 || full % 2 != 0)
                throw InternalError("odd pair or Escher count for n = k at h=" + u.to_string());
            predicted = pairs / 2 - full / 2;
        }
        rec.checks["counting_identity" + nk(n, k)] =
            check(m == predicted, "m=" + std::to_string(m) + " pairs=" + std::to_string(pairs)
                                      + " eschers=" + std::to_string(full));
        rec.checks["nonnegative" + nk(n, k)] = check(m >= 0, "m=" + std::to_string(m));
    }
}

void suite_roundtrip(const Uio& u, const SweepConfig& config, UioRecord& rec)
{
    const int N = u.size();
    const auto eschers = enumerate_eschers(u, N);
    for (const auto& [n, k] : length_two(config, N)) {
        if (n == k)
            continue;
        const auto stats = check_round_trip(u, n, k, config.convention, eschers);
        const bool coprime = std::gcd(n, k) == 1;
        rec.counts["roundtrip_eschers" + nk(n, k)] = stats.eschers;
        CheckOutcome rt = check(stats.failures == 0, stats.counterexample.value_or(""));
        CheckOutcome inj = check(stats.injective, stats.counterexample.value_or(""));
        rt.informational = inj.informational = !coprime;
        rec.checks["roundtrip" + nk(n, k)] = rt;
        rec.checks["phi_injective" + nk(n, k)] = inj;
    }
}

void suite_lemmas(const Uio& u, UioRecord& rec)
{
    const int N = u.size();
    const auto eschers = enumerate_eschers(u, N);
    auto add = [&](const std::string& name, const LemmaOutcome& o) {
        rec.checks[name] = from_lemma(o);
        rec.counts["instances[" + name + "]"] = o.instances;
    };
    add("trichotomy", check_trichotomy(u, eschers));
    add("case2_shifted_windows", check_case2_shifted_windows(u, eschers));
    add("no_mixed_purity", check_no_mixed_purity(u, eschers));
    add("subescher_exists", check_subescher_exists(u, eschers));
    add("insertion_splices", check_insertion_splices(u));
    add("closed_sequences", check_closed_sequences(u, 5));
}

void suite_chromatic(const Uio& u, UioRecord& rec)
{
    const Graph g = incomparability_graph(u);
    const MultiPoly a = chromatic_sym(g, u.size());
    const MultiPoly b = chromatic_sym_edges(g, u.size());
    rec.counts["chromatic_terms"] = static_cast<Int>(a.size());
    rec.checks["dual_chromatic"] = check(a == b, "colouring and edge-subset expansions differ");
}

void suite_positivity(const Uio& u, const SuiteContext& ctx, UioRecord& rec)
{
    const int N = u.size();
    const Graph g = incomparability_graph(u);
    const MultiPoly x = chromatic_sym(g, N);
    const EBasisExpr e = ctx.e_solver->solve(x);
    const SchurExpr s = ctx.s_solver->solve(x);

    std::string negative, mismatch, s_negative;
    for (const auto& lambda : partitions_of(N)) {
        const Int c = e[lambda];
        rec.coefficients["c[" + lambda.to_string() + "]"] = c;
        if (c < 0 && negative.empty())
            negative = "c[" + lambda.to_string() + "]=" + std::to_string(c);
        const Int m = m_coeff_U(u, lambda);
        if (m != c && mismatch.empty())
            mismatch = "lambda=" + lambda.to_string() + " m=" + std::to_string(m) + " c=" + std::to_string(c);
        const Int sc = s[lambda];
        rec.coefficients["s[" + lambda.to_string() + "]"] = sc;
        if (sc < 0 && s_negative.empty())
            s_negative = "s[" + lambda.to_string() + "]=" + std::to_string(sc);
    }
    rec.checks["e_positive"] = check(negative.empty(), negative);
    rec.checks["m_equals_c"] = check(mismatch.empty(), mismatch);
    rec.checks["s_positive"] = check(s_negative.empty(), s_negative);
}

void suite_sinks(const Uio& u, const SuiteContext& ctx, UioRecord& rec)
{
    const Graph g = incomparability_graph(u);
    const auto hist = sink_histogram(g);
    const auto sums = coefficient_sums_by_length(e_coefficients(g, *ctx.e_solver));
    for (const auto& [j, c] : hist)
        rec.counts["sinks[" + std::to_string(j) + "]"] = c;
    std::string diff;
    std::set<int> keys;
    for (const auto& [j, c] : hist)
        keys.insert(j);
    for (const auto& [j, c] : sums)
        keys.insert(j);
    for (int j : keys) {
        const Int a = hist.contains(j) ? hist.at(j) : 0;
        const Int b = sums.contains(j) ? sums.at(j) : 0;
        if (a != b && diff.empty())
            diff = "j=" + std::to_string(j) + " sinks=" + std::to_string(a) + " sum=" + std::to_string(b);
    }
    rec.checks["sink_theorem"] = check(diff.empty(), diff);
}

void suite_gnechrom(const Uio& u, UioRecord& rec)
{
    constexpr int kMaxTotal = 6;
    const int N = u.size();
    const Graph g = incomparability_graph(u);
    std::string gn_fail, coeff_fail, literal_fail, neg_fail;
    Int alphas = 0;
    for (const auto& alpha : alpha_maps_up_to(N, kMaxTotal)) {
        ++alphas;
        std::ostringstream a;
        Int scale = 1;
        for (int i = 0; i < alpha.size(); ++i) {
            a << (i ? "," : "") << alpha[i];
            scale = checked_mul(scale, factorial(alpha[i]));
        }
        if (!verify_gnechrom(g, alpha) && gn_fail.empty())
            gn_fail = "alpha=" + a.str();

        const EBasisExpr e = e_coefficients(clique_expand(g, alpha));
        const auto cap = alpha_cap(alpha);
        for (const auto& lambda : partitions_of(alpha.total())) {
            const Int coeff = coeff_alpha(m_G(g, lambda, cap), alpha);
            const Int c = e[lambda];
            const std::string at = "alpha=" + a.str() + " lambda=" + lambda.to_string() + " coeff="
                                   + std::to_string(coeff) + " c=" + std::to_string(c);
            if (checked_mul(scale, coeff) != c && coeff_fail.empty())
                coeff_fail = at;
            if (coeff != c && literal_fail.empty())
                literal_fail = at;
            if (coeff < 0 && neg_fail.empty())
                neg_fail = at;
        }
    }
    rec.counts["alphas"] = alphas;
    rec.checks["gnechrom"] = check(gn_fail.empty(), gn_fail);
    // c_λ(X_{G^α}) = Π α(v)! · [v^α] m_λ^G.
    rec.checks["alpha_coefficients"] = check(coeff_fail.empty(), coeff_fail);
    // Same identity without the factorial weight; holds only for α ≡ 1 in general.
    CheckOutcome literal = check(literal_fail.empty(), literal_fail);
    literal.informational = true;
    rec.checks["alpha_coefficients_unweighted"] = literal;
    rec.checks["alpha_nonnegative"] = check(neg_fail.empty(), neg_fail);
}

UioRecord run_suite_with(const Uio& u, Suite suite, const SuiteContext& ctx)
{
    UioRecord rec;
    rec.h = u.to_string();
    const auto t0 = std::chrono::steady_clock::now();
    try {
        switch (suite) {
        case Suite::Counts:
            suite_counts(u, ctx.config, rec);
            break;
        case Suite::Roundtrip:
            suite_roundtrip(u, ctx.config, rec);
            break;
        case Suite::Lemmas:
            suite_lemmas(u, rec);
            break;
        case Suite::Chromatic:
            suite_chromatic(u, rec);
            break;
        case Suite::Positivity:
            suite_positivity(u, ctx, rec);
            break;
        case Suite::Sinks:
            suite_sinks(u, ctx, rec);
            break;
        case Suite::Gnechrom:
            suite_gnechrom(u, rec);
            break;
        }
    } catch (const InternalError& e) {
        // A broken invariant is a mathematical failure of this suite.
        rec.checks[std::string(to_string(suite)) + "_invariants"] = check(false, e.what());
    }
    if (ctx.config.timings)
        rec.durations[std::string(to_string(suite))] =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return rec;
}

bool needs_solvers(const SweepConfig& config)
{
    for (Suite s : config.suites)
        if (s == Suite::Positivity || s == Suite::Sinks)
            return true;
    return false;
}

struct Task {
    std::size_t uio;
    Suite suite;
};

std::string task_key(const std::string& h, Suite s)
{
    return h + "|" + std::string(to_string(s));
}

std::string progress_path(const std::string& out)
{
    return out + ".progress";
}

} // namespace

UioRecord run_suite(const Uio& u, Suite suite, const SweepConfig& config)
{
    std::optional<EBasisSolver> es;
    std::optional<SchurSolver> ss;
    SuiteContext ctx{config};
    if (suite == Suite::Positivity || suite == Suite::Sinks) {
        es.emplace(u.size());
        ss.emplace(u.size());
        ctx.e_solver = &*es;
        ctx.s_solver = &*ss;
    }
    return run_suite_with(u, suite, ctx);
}

void write_atomically(const std::string& path, const std::string& text)
{
    const std::string tmp = path + ".tmp";
    {
        std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
        if (!os)
            throw std::runtime_error("cannot write " + tmp);
        os << text;
        os.flush();
        if (!os)
            throw std::runtime_error("write failed: " + tmp);
    }
    std::filesystem::rename(tmp, path);
}

VerificationReport run_sweep(const SweepConfig& config)
{
    validate(config);
    const auto start = std::chrono::steady_clock::now();

    VerificationReport report;
    report.config = config_echo(config);
    report.config_hash = config_hash(report.config);

    const std::vector<Uio> uios = generate_all(config.n);
    std::vector<Task> tasks;
    for (std::size_t i = 0; i < uios.size(); ++i) {
        if (config.shard && static_cast<int>(i % config.shard->count) != config.shard->index)
            continue;
        for (Suite s : all_suites())
            if (std::find(config.suites.begin(), config.suites.end(), s) != config.suites.end())
                tasks.push_back({i, s});
    }

    std::map<std::string, UioRecord> records;
    auto absorb = [&](const UioRecord& r) {
        auto [it, inserted] = records.emplace(r.h, r);
        if (!inserted)
            it->second.merge(r);
    };

    // Resume: replay completed tasks from the progress file.
    std::set<std::string> done;
    std::ofstream progress;
    const std::string ppath = config.out_path.empty() ? std::string() : progress_path(config.out_path);
    if (!ppath.empty()) {
        bool header_ok = false;
        if (config.resume && std::filesystem::exists(ppath)) {
            std::ifstream in(ppath);
            std::string line;
            bool first = true;
            while (std::getline(in, line)) {
                json j;
                try {
                    j = json::parse(line);
                } catch (const json::parse_error&) {
                    break; // torn final line from an interrupted write
                }
                if (first) {
                    if (j.value("config_hash", "") != report.config_hash)
                        throw ConfigError("progress file " + ppath + " belongs to a different configuration");
                    first = false;
                    header_ok = true;
                    continue;
                }
                UioRecord r = record_from_json(j.at("record"));
                done.insert(task_key(r.h, parse_suite(j.at("suite").get<std::string>())));
                absorb(r);
            }
        }
        if (header_ok) {
            // Rewrite without any torn tail before appending.
            std::ostringstream clean;
            clean << json{{"config_hash", report.config_hash}}.dump() << "\n";
            std::ifstream in(ppath);
            std::string line;
            std::getline(in, line);
            while (std::getline(in, line)) {
                if (!json::accept(line))
                    break;
                clean << line << "\n";
            }
            in.close();
            write_atomically(ppath, clean.str());
            progress.open(ppath, std::ios::app);
        } else {
            progress.open(ppath, std::ios::trunc);
            progress << json{{"config_hash", report.config_hash}}.dump() << "\n";
            progress.flush();
        }
        if (!progress)
            throw std::runtime_error("cannot write progress file " + ppath);
    }

    std::vector<Task> pending;
    for (const auto& t : tasks)
        if (!done.contains(task_key(uios[t.uio].to_string(), t.suite)))
            pending.push_back(t);

    std::optional<EBasisSolver> es;
    std::optional<SchurSolver> ss;
    SuiteContext ctx{config};
    if (needs_solvers(config)) {
        es.emplace(config.n);
        ss.emplace(config.n);
        ctx.e_solver = &*es;
        ctx.s_solver = &*ss;
    }

    struct Result {
        Task task;
        std::optional<UioRecord> record;
        std::string error;
    };
    std::mutex mu;
    std::condition_variable cv;
    std::deque<Result> queue;
    std::atomic<std::size_t> next{0};
    std::atomic<bool> stop{false};

    auto worker = [&] {
        while (!stop) {
            const std::size_t i = next++;
            if (i >= pending.size())
                break;
            Result res{pending[i], std::nullopt, {}};
            try {
                res.record = run_suite_with(uios[res.task.uio], res.task.suite, ctx);
            } catch (const std::exception& e) {
                res.error = uios[res.task.uio].to_string() + " " + std::string(to_string(res.task.suite)) + ": " + e.what();
            }
            {
                std::lock_guard lock(mu);
                queue.push_back(std::move(res));
            }
            cv.notify_one();
        }
    };

    const int workers = std::max(1, std::min<int>(config.jobs, static_cast<int>(pending.size())));
    std::vector<std::thread> pool;
    for (int i = 0; i < workers && !pending.empty(); ++i)
        pool.emplace_back(worker);

    // Single aggregator: the only writer of records and the progress file.
    std::size_t received = 0;
    int completed_now = 0;
    while (received < pending.size()) {
        std::unique_lock lock(mu);
        cv.wait(lock, [&] { return !queue.empty() || (stop && next >= pending.size()); });
        if (queue.empty())
            break;
        Result res = std::move(queue.front());
        queue.pop_front();
        lock.unlock();
        ++received;
        if (!res.record) {
            report.errors.push_back(res.error);
            continue;
        }
        absorb(*res.record);
        if (progress.is_open()) {
            json line = json::object();
            line["suite"] = std::string(to_string(res.task.suite));
            line["record"] = record_to_json(*res.record);
            progress << line.dump() << "\n";
            progress.flush();
        }
        ++completed_now;
        if (config.stop_after && completed_now >= *config.stop_after && received < pending.size()) {
            stop = true;
            break;
        }
    }
    for (auto& t : pool)
        t.join();
    if (progress.is_open())
        progress.close();

    std::sort(report.errors.begin(), report.errors.end());
    for (auto& [h, r] : records)
        report.records.push_back(std::move(r));
    report.complete = !stop && report.errors.empty();
    if (config.timings)
        report.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

    if (stop)
        return report; // interrupted on purpose; progress file kept for --resume

    if (!config.out_path.empty()) {
        write_atomically(config.out_path, report.serialize(config.format));
        if (report.errors.empty())
            std::filesystem::remove(ppath);
    }
    return report;
}

VerificationReport merge_reports(const std::vector<std::string>& paths)
{
    if (paths.empty())
        throw ConfigError("merge needs at least one input report");
    std::optional<VerificationReport> out;
    std::map<std::string, UioRecord> records;
    for (const auto& path : paths) {
        std::ifstream in(path);
        if (!in)
            throw ConfigError("cannot read " + path);
        json j;
        try {
            j = json::parse(in);
        } catch (const json::parse_error& e) {
            throw ConfigError(path + " is not a JSON report: " + e.what());
        }
        VerificationReport rep = VerificationReport::from_json(j);
        if (!out) {
            out = VerificationReport{};
            out->config = rep.config;
            out->config_hash = rep.config_hash;
            out->complete = true;
        } else if (rep.config_hash != out->config_hash) {
            throw ConfigError("config hash mismatch: " + path);
        }
        out->complete = out->complete && rep.complete;
        out->errors.insert(out->errors.end(), rep.errors.begin(), rep.errors.end());
        for (auto& r : rep.records) {
            auto [it, inserted] = records.emplace(r.h, r);
            if (inserted)
                continue;
            if (!(it->second == r))
                throw ConfigError("conflicting records for h=" + r.h);
        }
    }
    std::sort(out->errors.begin(), out->errors.end());
    out->errors.erase(std::unique(out->errors.begin(), out->errors.end()), out->errors.end());
    for (auto& [h, r] : records)
        out->records.push_back(std::move(r));
    return *out;
}

int exit_status(const VerificationReport& report)
{
    if (report.summary().failures > 0)
        return 1;
    if (!report.complete || !report.errors.empty())
        return 2;
    return 0;
}

// ------------------------------------------------------------ check

void check_single(std::ostream& os, const Uio& u, const Partition& lambda, bool trace, const AnchorConvention& conv)
{
    const int N = u.size();
    if (lambda.weight() != N)
        throw std::invalid_argument("lambda must be a partition of |U| = " + std::to_string(N));
    const auto eschers = enumerate_eschers(u, N);
    os << "h = " << u.to_string() << "\n";
    os << "lambda = " << lambda.to_string() << "\n";
    os << "m = " << m_coeff_U(u, lambda) << "\n";
    os << "eschers = " << eschers.size() << "\n";
    os << "corrects = " << count_full_corrects(u) << "\n";

    if (lambda.length() != 2)
        return;
    const int n = lambda[0], k = lambda[1];
    os << "pairs = " << disjoint_pair_count(u, n, k) << "\n";

    os << "FE table (k = " << k << "):\n";
    for (const auto& w : eschers) {
        const auto fe = first_valid_subescher(u, w, k);
        os << "  " << to_string(w) << "  FE=" << (fe ? std::to_string(fe->index) : "none")
           << (fe && fe->exceptional ? " exceptional" : "") << "\n";
    }
    os << "FI table:\n";
    for (const auto& p : full_disjoint_pairs(u, n, k)) {
        const auto fi = first_valid_insertion(u, p.u, p.v);
        os << "  (" << to_string(p.u) << " | " << to_string(p.v) << ")  FI=" << (fi ? std::to_string(*fi) : "none")
           << "\n";
    }
    if (n == k)
        return;

    const auto stats = check_round_trip(u, n, k, conv, eschers);
    os << "roundtrip " << (stats.failures == 0 && stats.injective ? "PASS" : "FAIL") << " (" << stats.eschers
       << " eschers, convention " << conv.name() << (std::gcd(n, k) == 1 ? "" : ", non-coprime") << ")\n";
    if (stats.counterexample)
        os << "  " << *stats.counterexample << "\n";
    if (!trace)
        return;
    os << "trace:\n";
    for (const auto& w : eschers) {
        const PhiTrace f = phi_trace(u, w, n, k, conv);
        const PsiTrace g = psi_trace(u, f.pair.u, f.pair.v, conv);
        os << "  w=" << to_string(w) << " FE=" << f.first_subescher << (f.exceptional ? " exc" : "") << " -> ("
           << to_string(f.pair.u) << " | " << to_string(f.pair.v) << ") FI="
           << (g.first_insertion ? std::to_string(*g.first_insertion) : "none") << (g.exceptional ? " exc" : "")
           << " -> " << (g.w ? to_string(*g.w) : "none") << (g.w && *g.w == w ? "" : "  MISMATCH") << "\n";
    }
}

} // namespace escherpos
