#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "claimsim/csv_io.hpp"
#include "claimsim/engine.hpp"
#include "claimsim/errors.hpp"
#include "claimsim/version.hpp"

namespace fs = std::filesystem;
using namespace claimsim;

namespace {

constexpr int exit_ok = 0;
constexpr int exit_config = 2;
constexpr int exit_runtime = 3;
constexpr int exit_io = 4;

ScenarioConfig resolve_scenario(const std::string& config_path, const std::string& preset_name) {
    if (!config_path.empty()) return load_config(config_path);
    return preset(preset_name.empty() ? "default" : preset_name);
}

/// "1-10,11-20,21,22" -> period groups; bare numbers are single periods.
std::vector<PeriodGroup> parse_grouping(const std::string& spec, int periods) {
    if (spec.empty()) return default_grouping(periods);
    std::vector<PeriodGroup> groups;
    std::size_t start = 0;
    while (start <= spec.size()) {
        const std::size_t comma = spec.find(',', start);
        const std::string token =
            spec.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
        if (token.empty()) throw ConfigError("grouping: empty entry in \"" + spec + "\"");
        const std::size_t dash = token.find('-');
        try {
            if (dash == std::string::npos) {
                const int p = std::stoi(token);
                groups.push_back({p, p, token});
            } else {
                const int first = std::stoi(token.substr(0, dash));
                const int last = std::stoi(token.substr(dash + 1));
                groups.push_back({first, last,
                                  std::to_string(first) + " to " + std::to_string(last)});
            }
        } catch (const std::exception&) {
            throw ConfigError("grouping: malformed entry \"" + token + "\"");
        }
        if (groups.back().first < 1 || groups.back().last > periods ||
            groups.back().first > groups.back().last) {
            throw ConfigError("grouping: entry \"" + token + "\" is out of range");
        }
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    return groups;
}

struct LoadedRun {
    ScenarioConfig config;
    std::vector<ClaimRecord> claims;
    std::vector<PaymentRecord> payments;
};

LoadedRun load_run(const std::string& dir) {
    LoadedRun run;
    auto [manifest, config] = parse_manifest_json(read_text_file(dir + "/manifest.json"));
    (void)manifest;
    run.config = std::move(config);
    run.claims = parse_claims_csv(read_text_file(dir + "/claims.csv"));
    run.payments = parse_payments_csv(read_text_file(dir + "/payments.csv"));
    return run;
}

int cmd_simulate(const std::string& config_path, const std::string& preset_name,
                 std::optional<long> seed, const std::string& out_dir, int threads,
                 bool multiples_flag) {
    ScenarioConfig config = resolve_scenario(config_path, preset_name);
    EngineOptions options;
    options.threads = threads;
    if (seed) options.seed_override = static_cast<std::uint64_t>(*seed);

    const SimulationOutput output = run_simulation(config, options);
    if (options.seed_override) config.global.master_seed = *options.seed_override;

    const bool multiples = multiples_flag || config.output.amounts == AmountUnit::multiples;
    const double divisor = multiples ? config.global.reference_claim_size : 1.0;
    fs::create_directories(out_dir);
    write_text_file(out_dir + "/claims.csv", claims_csv(output.claims, divisor));
    write_text_file(out_dir + "/payments.csv", payments_csv(output.payments, divisor));
    write_text_file(out_dir + "/manifest.json", manifest_json(output.manifest, config));

    std::cout << "simulated " << output.manifest.claim_rows << " claims / "
              << output.manifest.payment_rows << " payments into " << out_dir << " ("
              << output.manifest.wall_clock_seconds << " s, " << output.manifest.threads
              << " thread" << (output.manifest.threads == 1 ? "" : "s") << ")\n";
    return exit_ok;
}

int cmd_report(const std::string& in_dir, const std::string& grouping_spec) {
    const LoadedRun run = load_run(in_dir);
    const int periods = run.config.global.periods;
    const auto groups = parse_grouping(grouping_spec, periods);

    const auto [past, future] = split_past_future(run.payments, periods);
    const Triangle cumulative =
        build_triangle(past, periods, OutOfBoundsMode::cap, TriangleKind::cumulative);
    const ReserveReport report = reserve_report(cumulative, run.payments, groups);

    const std::string csv = reserve_report_csv(report);
    write_text_file(in_dir + "/reserve_report.csv", csv);
    write_text_file(in_dir + "/devpattern.csv", devpattern_csv(run.payments, periods));
    std::cout << csv;
    return exit_ok;
}

int cmd_triangle(const std::string& in_dir, std::optional<int> factor,
                 std::optional<std::string> mode, const std::string& kind, bool past_only,
                 const std::string& out_file) {
    const LoadedRun run = load_run(in_dir);
    const int periods = run.config.global.periods;

    std::vector<PaymentRecord> payments = run.payments;
    if (past_only) payments = split_past_future(payments, periods).first;

    // Unset options fall back to the scenario's output section.
    const OutOfBoundsMode oob =
        mode ? (*mode == "tail" ? OutOfBoundsMode::tail : OutOfBoundsMode::cap)
             : run.config.output.out_of_bounds;
    const int effective_factor = factor ? *factor : run.config.output.aggregation_factor;
    const TriangleKind tkind =
        (kind == "incr") ? TriangleKind::incremental : TriangleKind::cumulative;
    Triangle tri = build_triangle(payments, periods, oob, tkind);
    if (effective_factor > 1) tri = reaggregate(tri, effective_factor);

    const std::string path = out_file.empty() ? in_dir + "/triangle.csv" : out_file;
    write_text_file(path, triangle_csv(tri));
    std::cout << "wrote " << path << " (" << tri.size << "x" << tri.size << " " << kind << ", "
              << (oob == OutOfBoundsMode::tail ? "tail" : "cap") << " mode)\n";
    return exit_ok;
}

int cmd_chainladder(const std::string& triangle_file) {
    Triangle tri = parse_triangle_csv(read_text_file(triangle_file));
    tri.kind = TriangleKind::cumulative;
    const DevelopmentFactors factors = fit_chain_ladder(tri);
    const ChainLadderProjection projection = project(tri, factors);

    std::cout << "development factors:";
    for (const double f : factors.f) std::cout << ' ' << f;
    std::cout << "\nreserves by occurrence period:";
    for (const double r : projection.reserves) std::cout << ' ' << r;
    std::cout << "\ntotal reserve: " << projection.total_reserve << "\n";
    return exit_ok;
}

int cmd_depend(const std::string& in_dir) {
    const LoadedRun run = load_run(in_dir);
    const auto buckets = DependencyTable::default_buckets();
    const auto m_values = DependencyTable::default_m_values();
    const DependencyTable table =
        dependency_table(run.claims, run.payments, m_values, buckets);
    const std::string csv = dependency_table_csv(table);
    write_text_file(in_dir + "/dependency_table.csv", csv);
    std::cout << csv;
    return exit_ok;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"claimsim: transaction-level synthetic claim simulator"};
    app.set_version_flag("--version", claimsim::version);
    app.require_subcommand(1);

    std::string config_path;
    std::string preset_name;
    std::optional<long> seed;
    std::string out_dir = "out";
    int threads = 0;
    bool multiples = false;
    auto* simulate = app.add_subcommand("simulate", "run one scenario and write the datasets");
    simulate->add_option("--config", config_path, "scenario config JSON");
    simulate->add_option("--preset", preset_name, "built-in scenario (default|simple)")
        ->check(CLI::IsMember({"default", "simple"}));
    simulate->add_option("--seed", seed, "master seed override");
    simulate->add_option("--out", out_dir, "output directory");
    simulate->add_option("--threads", threads, "worker threads (0 = all, 1 = serial)");
    simulate->add_flag("--multiples", multiples,
                       "emit amounts as reference-claim-size multiples");

    std::string in_dir = "out";
    std::string grouping_spec;
    auto* report = app.add_subcommand("report", "reserve report and development pattern");
    report->add_option("--in", in_dir, "directory holding a simulate run")->required();
    report->add_option("--grouping", grouping_spec, "occurrence bands, e.g. 1-10,11-20,21");

    std::string tri_in;
    std::optional<int> factor;
    std::optional<std::string> mode;
    std::string kind = "cum";
    bool past_only = false;
    std::string tri_out;
    auto* triangle = app.add_subcommand("triangle", "aggregate payments into a triangle");
    triangle->add_option("--in", tri_in, "directory holding a simulate run")->required();
    triangle->add_option("--factor", factor, "reaggregation factor (e.g. 4 = quarterly->yearly)");
    triangle->add_option("--mode", mode, "out-of-bounds handling")
        ->check(CLI::IsMember({"cap", "tail"}));
    triangle->add_option("--kind", kind, "cell kind")->check(CLI::IsMember({"incr", "cum"}));
    triangle->add_flag("--past-only", past_only, "restrict to payment periods 1..I");
    triangle->add_option("--out", tri_out, "output file (default <in>/triangle.csv)");

    std::string cl_file;
    auto* chainladder = app.add_subcommand("chainladder", "fit and project a cumulative triangle");
    chainladder->add_option("--triangle", cl_file, "triangle CSV (cumulative)")->required();

    std::string dep_in;
    auto* depend = app.add_subcommand("depend", "successive-payment dependency table");
    depend->add_option("--in", dep_in, "directory holding a simulate run")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (simulate->parsed()) {
            return cmd_simulate(config_path, preset_name, seed, out_dir, threads, multiples);
        }
        if (report->parsed()) return cmd_report(in_dir, grouping_spec);
        if (triangle->parsed()) return cmd_triangle(tri_in, factor, mode, kind, past_only, tri_out);
        if (chainladder->parsed()) return cmd_chainladder(cl_file);
        if (depend->parsed()) return cmd_depend(dep_in);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return exit_config;
    } catch (const IoError& e) {
        std::cerr << "io error: " << e.what() << "\n";
        return exit_io;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_runtime;
    }
    return exit_ok;
}
