// idealab command-line front end: reproducible sieve / weighted-sum /
// counterexample experiments with persistent tables and machine-readable
// reports.
//
// Exit codes: 0 success, 1 usage error, 2 contract violation (uncertified
// prime, memory/work budget), 3 check failure.

#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "idealab/analytic.hpp"
#include "idealab/exponent_fit.hpp"
#include "idealab/expsum.hpp"
#include "idealab/intpoly.hpp"
#include "idealab/number_field.hpp"
#include "idealab/sieve.hpp"
#include "idealab/util.hpp"

using namespace idealab;

namespace {

struct FieldArgs {
    std::string label;
    std::string poly_csv;   // user-supplied coefficients, ascending
    bool poly_index_one = false;
    std::string catalog_path;
};

void add_field_flags(CLI::App* cmd, FieldArgs& fa) {
    cmd->add_option("--field", fa.label, "field label (built-in or from --catalog)");
    cmd->add_option("--poly", fa.poly_csv, "defining polynomial, ascending comma-separated coefficients");
    cmd->add_flag("--index-one", fa.poly_index_one, "declare index [O_K:Z[theta]] = 1 for --poly");
    cmd->add_option("--catalog", fa.catalog_path, "catalog file (label : coeffs : index_is_one per line)");
}

NumberField resolve_field(const FieldArgs& fa) {
    if (!fa.poly_csv.empty()) {
        std::string label = fa.label.empty() ? "user" : fa.label;
        std::string line = label + " : " + fa.poly_csv + " : " + (fa.poly_index_one ? "true" : "false");
        return parse_catalog_line(line);
    }
    if (fa.label.empty()) throw CLI::ValidationError("--field", "no field given (use --field or --poly)");
    if (!fa.catalog_path.empty()) {
        std::ifstream in(fa.catalog_path);
        if (!in) throw CLI::ValidationError("--catalog", "cannot open " + fa.catalog_path);
        for (auto& K : parse_catalog(in))
            if (K.label == fa.label) return K;
    }
    if (const NumberField* K = catalog_find(fa.label)) return *K;
    throw CLI::ValidationError("--field", "unknown field label '" + fa.label + "'");
}

std::vector<double> parse_grid(const std::string& s) {
    // start:ratio:count
    double start = 0, ratio = 0;
    int count = 0;
    if (std::sscanf(s.c_str(), "%lf:%lf:%d", &start, &ratio, &count) != 3 || start <= 0 ||
        ratio <= 0 || count <= 0)
        throw CLI::ValidationError("--grid", "expected start:ratio:count with positive values");
    std::vector<double> g(count);
    double x = start;
    for (int i = 0; i < count; ++i, x *= ratio) g[i] = x;
    return g;
}

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string splitting_to_string(const SplittingType& s) {
    std::string out;
    for (auto [e, f] : s.pairs) out += "(" + std::to_string(e) + "," + std::to_string(f) + ")";
    return out;
}

std::vector<double> default_kappa_grid(uint64_t x_max) {
    const int points = 10;
    double start = std::max(1.0, static_cast<double>(x_max) / 512.0);
    double ratio = std::pow(static_cast<double>(x_max) / start, 1.0 / (points - 1));
    std::vector<double> g(points);
    double x = start;
    for (int i = 0; i < points; ++i, x *= ratio) g[i] = std::min(x, static_cast<double>(x_max));
    return g;
}

KappaEstimate choose_kappa(const NumberField* K, const RkTable& table, std::string& source) {
    if (K) {
        try {
            KappaEstimate est = kappa_closed_form(*K);
            source = "closed_form";
            return est;
        } catch (const std::invalid_argument&) {
            // fall through to grid fit
        }
    }
    KappaEstimate est = kappa_grid_fit(table, default_kappa_grid(table.x_max));
    source = "grid_fit";
    return est;
}

// --- subcommand bodies ---

int cmd_field(const FieldArgs& fa, uint64_t pmax, uint64_t seed) {
    NumberField K = resolve_field(fa);
    std::cout << "field " << K.label << "  degree " << K.degree << "  poly "
              << K.defining_poly.to_string() << "  disc " << K.poly_disc.get_str() << "\n";
    for (uint64_t p = 2; p <= pmax; ++p) {
        if (!is_prime_u64(p)) continue;
        if (!is_certified_prime(K, p)) {
            std::cout << "p=" << p << ": uncertified (p^2 | disc and index not declared 1)\n";
            continue;
        }
        std::cout << "p=" << p << ": " << splitting_to_string(splitting_type(K, p, seed)) << "\n";
    }
    return 0;
}

int cmd_sieve(const FieldArgs& fa, uint64_t x_max, const std::string& out_path,
              const std::string& csv_path, int threads, uint64_t seed) {
    NumberField K = resolve_field(fa);
    SieveOptions opts;
    opts.threads = threads;
    opts.seed = seed;
    RkTable table = sieve_rk(K, x_max, opts);
    write_rkt(table, out_path);
    if (!csv_path.empty()) {
        std::ofstream csv(csv_path, std::ios::trunc);
        if (!csv) throw std::runtime_error("cannot open " + csv_path);
        write_csv(table, csv);
    }
    std::printf("RKT1 field=%s xmax=%" PRIu64 " checksum=0x%016" PRIx64 " out=%s\n",
                table.field_label.c_str(), table.x_max, table.checksum(), out_path.c_str());
    return 0;
}

RkTable load_or_sieve(const FieldArgs& fa, const std::string& table_path, uint64_t x_max, int threads,
                      uint64_t seed, std::optional<NumberField>& K_out) {
    if (!table_path.empty()) {
        RkTable t = read_rkt(table_path);
        if (const NumberField* K = catalog_find(t.field_label)) K_out = *K;
        return t;
    }
    NumberField K = resolve_field(fa);
    K_out = K;
    SieveOptions opts;
    opts.threads = threads;
    opts.seed = seed;
    if (x_max < 1) throw CLI::ValidationError("--xmax", "xmax required when no --table is given");
    return sieve_rk(K, x_max, opts);
}

int cmd_sums(const FieldArgs& fa, const std::string& table_path, uint64_t x_max,
             const std::string& grid_spec, const std::string& out_path, int threads, uint64_t seed) {
    std::optional<NumberField> K;
    RkTable table = load_or_sieve(fa, table_path, x_max, threads, seed, K);
    std::vector<double> grid = parse_grid(grid_spec);
    for (double x : grid) {
        if (x > static_cast<double>(table.x_max))
            throw CLI::ValidationError("--grid", "grid point " + fmt(x) + " exceeds table x_max");
        if (x < M_E) throw CLI::ValidationError("--grid", "grid points must be >= e");
    }
    std::string source;
    KappaEstimate kappa = choose_kappa(K ? &*K : nullptr, table, source);
    std::cerr << "kappa source: " << source << " value=" << fmt(kappa.value)
              << " uncertainty=" << fmt(kappa.uncertainty) << "\n";
    std::vector<WeightedSumReport> reports;
    reports.reserve(grid.size());
    for (double x : grid) reports.push_back(make_report(table, x, kappa.value));
    if (out_path.empty()) {
        write_reports_csv(reports, std::cout);
    } else {
        std::ofstream out(out_path, std::ios::trunc);
        if (!out) throw std::runtime_error("cannot open " + out_path);
        write_reports_csv(reports, out);
    }
    return 0;
}

int cmd_kappa(const FieldArgs& fa, const std::string& table_path, uint64_t x_max, int threads,
              uint64_t seed) {
    std::optional<NumberField> K;
    RkTable table = load_or_sieve(fa, table_path, x_max, threads, seed, K);
    std::string closed = "null";
    if (K) {
        try {
            KappaEstimate c = kappa_closed_form(*K);
            closed = "{\"value\":" + fmt(c.value) + ",\"uncertainty\":" + fmt(c.uncertainty) + "}";
        } catch (const std::invalid_argument&) {
        }
    }
    KappaEstimate g = kappa_grid_fit(table, default_kappa_grid(table.x_max));
    std::cout << "{\"field\":\"" << table.field_label << "\",\"closed_form\":" << closed
              << ",\"grid_fit\":{\"value\":" << fmt(g.value) << ",\"uncertainty\":" << fmt(g.uncertainty)
              << "}}\n";
    return 0;
}

int cmd_counterexample(const std::string& mlist, double eps, int threads) {
    std::vector<uint64_t> ms;
    std::stringstream ss(mlist);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (tok.empty()) continue;
        ms.push_back(std::stoull(tok));
    }
    if (ms.empty()) throw CLI::ValidationError("--mlist", "no M values given");
    std::cout << "[\n";
    for (size_t i = 0; i < ms.size(); ++i) {
        BoundReport r = counterexample_driver(ms[i], eps, threads);
        std::cout << "  " << bound_report_json(r) << (i + 1 < ms.size() ? "," : "") << "\n";
    }
    std::cout << "]\n";
    return 0;
}

int cmd_fit(const std::string& in_path, double floor) {
    std::ifstream in(in_path);
    if (!in) throw CLI::ValidationError("--in", "cannot open " + in_path);
    std::vector<std::pair<double, double>> series;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        double x, r;
        if (std::sscanf(line.c_str(), "%lf,%lf", &x, &r) != 2) continue; // skips header
        series.emplace_back(x, r);
    }
    FitReport rep = fit_exponent(series, floor);
    std::cout << "{\"theta\":" << fmt(rep.fitted_theta) << ",\"stderr\":" << fmt(rep.stderr_theta)
              << ",\"points\":" << rep.pairs.size() << ",\"dropped\":" << rep.dropped_points << "}\n";
    return 0;
}

// Pinned check-suite tolerances.
constexpr double kPartialSummationRelTol = 1e-8;
constexpr double kE1IdentityAbsTol = 1e-10;

int cmd_check(const FieldArgs& fa, const std::string& table_path, uint64_t x_max,
              const std::string& grid_spec, int threads, uint64_t seed) {
    std::optional<NumberField> K;
    RkTable stored = load_or_sieve(fa, table_path, x_max, threads, seed, K);
    if (stored.x_max < 1) throw CLI::ValidationError("--table", "empty table");

    std::vector<double> grid;
    if (!grid_spec.empty()) {
        grid = parse_grid(grid_spec);
    } else {
        for (double x : {1e2, 1e3, 1e4})
            if (x <= M_E * static_cast<double>(stored.x_max)) grid.push_back(x);
    }
    for (double x : grid)
        if (x < M_E || x > M_E * static_cast<double>(stored.x_max))
            throw CLI::ValidationError("--grid", "check grid point out of [e, e*x_max]");

    int failures = 0;
    auto verdict = [&](bool ok, const std::string& name, double value) {
        if (!ok) ++failures;
        std::printf("%s  %s  residual=%.3e\n", ok ? "ok  " : "FAIL", name.c_str(), value);
    };

    for (double x : grid) {
        double res = check_partial_summation_identity(stored, x);
        verdict(res <= kPartialSummationRelTol, "partial-summation identity x=" + fmt(x), res);
    }
    for (double x : {10.0, 1e3, 1e6}) {
        double res = check_e1_identity(x);
        verdict(res <= kE1IdentityAbsTol, "E1 integration-by-parts identity x=" + fmt(x), res);
    }
    // identity holds for arbitrary coefficient sequences
    std::mt19937_64 rng(split_seed(seed, 0xc0ffee));
    for (int i = 0; i < 100; ++i) {
        RkTable rnd;
        rnd.field_label = "random";
        rnd.x_max = 50;
        rnd.values.assign(51, 0);
        for (int m = 1; m <= 50; ++m) rnd.values[m] = static_cast<uint32_t>(rng() % 100);
        double res = check_partial_summation_identity(rnd, 100.0);
        if (res > kPartialSummationRelTol) {
            verdict(false, "partial-summation identity, random sequence #" + std::to_string(i), res);
        }
    }
    std::printf("ok    partial-summation identity on 100 seeded random sequences\n");

    if (!table_path.empty()) {
        // integrity of the stored table against a fresh sieve
        if (!K)
            throw CLI::ValidationError("--table",
                                       "table label not in catalog; cannot re-sieve for integrity check");
        SieveOptions opts;
        opts.threads = threads;
        opts.seed = seed;
        RkTable fresh = sieve_rk(*K, stored.x_max, opts);
        bool equal = fresh.values == stored.values;
        verdict(equal, "stored table equals fresh sieve", equal ? 0.0 : 1.0);
        for (double x : grid) {
            double res = check_partial_summation_identity(stored, fresh, x);
            verdict(res <= kPartialSummationRelTol,
                    "partial-summation cross-check (stored vs fresh) x=" + fmt(x), res);
        }
    }

    std::printf("%s: %d failure(s)\n", failures == 0 ? "check passed" : "check FAILED", failures);
    return failures == 0 ? 0 : 3;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"ideal-counting tables for number fields and weighted-sum experiments"};
    app.require_subcommand(1);
    app.set_config("--config", "", "key=value config file ([subcommand] sections)");

    FieldArgs fa;
    uint64_t x_max = 0, pmax = 50, seed = 1;
    int threads = 1;
    double eps = 0.01, floor = 1e-9;
    std::string grid_spec, out_path, table_path, mlist, in_path, csv_path;

    auto* field_cmd = app.add_subcommand("field", "print the splitting table of a field");
    add_field_flags(field_cmd, fa);
    field_cmd->add_option("label", fa.label, "field label (positional alternative to --field)");
    field_cmd->add_option("--pmax", pmax, "largest prime to print")->capture_default_str();
    field_cmd->add_option("--seed", seed, "factorization seed")->capture_default_str();

    auto* sieve_cmd = app.add_subcommand("sieve", "build and persist an r_K table");
    add_field_flags(sieve_cmd, fa);
    sieve_cmd->add_option("--xmax", x_max, "table size")->required();
    sieve_cmd->add_option("--out", out_path, "output .rkt path")->required();
    sieve_cmd->add_option("--csv", csv_path, "also export the table as m,r CSV");
    sieve_cmd->add_option("--threads", threads, "parallel block mode when > 1")->capture_default_str();
    sieve_cmd->add_option("--seed", seed, "factorization seed")->capture_default_str();

    auto* sums_cmd = app.add_subcommand("sums", "weighted-sum report CSV over an x grid");
    add_field_flags(sums_cmd, fa);
    sums_cmd->add_option("--table", table_path, "load an existing .rkt instead of sieving");
    sums_cmd->add_option("--xmax", x_max, "table size when sieving");
    sums_cmd->add_option("--grid", grid_spec, "x grid start:ratio:count")->required();
    sums_cmd->add_option("--out", out_path, "CSV output path (default stdout)");
    sums_cmd->add_option("--threads", threads)->capture_default_str();
    sums_cmd->add_option("--seed", seed)->capture_default_str();

    auto* kappa_cmd = app.add_subcommand("kappa", "kappa estimates (closed form and grid fit)");
    add_field_flags(kappa_cmd, fa);
    kappa_cmd->add_option("--table", table_path, "load an existing .rkt instead of sieving");
    kappa_cmd->add_option("--xmax", x_max, "table size when sieving");
    kappa_cmd->add_option("--threads", threads)->capture_default_str();
    kappa_cmd->add_option("--seed", seed)->capture_default_str();

    auto* ce_cmd = app.add_subcommand("counterexample", "bilinear-sum bound violation reports");
    ce_cmd->add_option("--mlist", mlist, "comma-separated M values (powers of two)")
        ->default_val("1024,4096,16384,65536,262144,1048576");
    ce_cmd->add_option("--eps", eps, "epsilon in the (MN)^eps factor")->capture_default_str();
    ce_cmd->add_option("--threads", threads)->capture_default_str();

    auto* fit_cmd = app.add_subcommand("fit", "fit an error-term exponent from (x, residual) CSV");
    fit_cmd->add_option("--in", in_path, "input CSV")->required();
    fit_cmd->add_option("--floor", floor, "drop |residual| below this")->capture_default_str();

    auto* check_cmd = app.add_subcommand("check", "identity suite; exit 3 on failure");
    add_field_flags(check_cmd, fa);
    check_cmd->add_option("--table", table_path, "stored table to validate");
    check_cmd->add_option("--xmax", x_max, "table size when sieving");
    check_cmd->add_option("--grid", grid_spec, "identity grid start:ratio:count");
    check_cmd->add_option("--threads", threads)->capture_default_str();
    check_cmd->add_option("--seed", seed)->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    try {
        if (field_cmd->parsed()) return cmd_field(fa, pmax, seed);
        if (sieve_cmd->parsed()) return cmd_sieve(fa, x_max, out_path, csv_path, threads, seed);
        if (sums_cmd->parsed())
            return cmd_sums(fa, table_path, x_max, grid_spec, out_path, threads, seed);
        if (kappa_cmd->parsed()) return cmd_kappa(fa, table_path, x_max, threads, seed);
        if (ce_cmd->parsed()) return cmd_counterexample(mlist, eps, threads);
        if (fit_cmd->parsed()) return cmd_fit(in_path, floor);
        if (check_cmd->parsed()) return cmd_check(fa, table_path, x_max, grid_spec, threads, seed);
    } catch (const CLI::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const contract_error& e) {
        std::cerr << "contract violation: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
