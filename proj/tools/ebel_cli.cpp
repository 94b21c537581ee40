#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "ebel/ebel.h"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitNumeric = 3;

struct CliError {
    int code;
    std::string message;
};

[[noreturn]] void fail_config(const std::string& msg) { throw CliError{kExitConfig, msg}; }

void check_status(ebel_status st, const std::string& what) {
    if (st != EBEL_OK)
        throw CliError{kExitNumeric, what + ": " + ebel_status_message(st)};
}

std::string fmt_full(double x) {
    if (x != x) return "nan";
    if (x == std::numeric_limits<double>::infinity()) return "inf";
    if (x == -std::numeric_limits<double>::infinity()) return "-inf";
    char buf[40];
    if (x == static_cast<long long>(x) && x > -1e15 && x < 1e15) {
        std::snprintf(buf, sizeof(buf), "%lld", static_cast<long long>(x));
        return buf;
    }
    for (int prec = 1; prec <= 17; ++prec) {
        std::snprintf(buf, sizeof(buf), "%.*g", prec, x);
        if (std::strtod(buf, nullptr) == x) break;
    }
    return buf;
}

std::string fmt6(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.6g", x);
    return buf;
}

std::string join(const std::vector<double>& v) {
    std::string s;
    for (size_t i = 0; i < v.size(); ++i) {
        if (i) s += ',';
        s += fmt_full(v[i]);
    }
    return s;
}

// ---- weight handling ----

struct WeightHandle {
    ebel_weight* w = nullptr;
    ~WeightHandle() { ebel_weight_free(w); }
};

ebel_weight_kind parse_weight_kind(const std::string& s) {
    if (s == "constant") return EBEL_WEIGHT_CONSTANT;
    if (s == "linear") return EBEL_WEIGHT_LINEAR;
    if (s == "cosine_bell" || s == "cosbell") return EBEL_WEIGHT_COSINE_BELL;
    fail_config("unknown weight '" + s + "' (constant|linear|cosine_bell)");
}

// ---- process parsing ----

struct ProcessConfig {
    ebel_process proc{};
    std::vector<double> phi, theta;
    std::string text;
};

bool parse_doubles(const std::string& s, std::vector<double>& out) {
    out.clear();
    size_t pos = 0;
    while (pos < s.size()) {
        size_t next = s.find(',', pos);
        if (next == std::string::npos) next = s.size();
        const std::string tok = s.substr(pos, next - pos);
        char* end = nullptr;
        const double v = std::strtod(tok.c_str(), &end);
        if (tok.empty() || end != tok.c_str() + tok.size()) return false;
        out.push_back(v);
        pos = next + 1;
    }
    return !out.empty();
}

ProcessConfig parse_process(const std::string& text, int burn_in) {
    ProcessConfig pc;
    pc.text = text;
    pc.proc.innovation = EBEL_INNOV_CHISQ1;
    pc.proc.burn_in = burn_in;
    std::string body = text;
    const size_t dash = body.rfind('-');
    if (dash != std::string::npos && body.find(')', dash) == std::string::npos) {
        const std::string suffix = body.substr(dash + 1);
        if (suffix == "chisq1") pc.proc.innovation = EBEL_INNOV_CHISQ1;
        else if (suffix == "normal") pc.proc.innovation = EBEL_INNOV_NORMAL;
        else if (suffix == "bernoulli") pc.proc.innovation = EBEL_INNOV_BERNOULLI;
        else if (suffix == "pareto") pc.proc.innovation = EBEL_INNOV_PARETO;
        else goto no_suffix;
        body = body.substr(0, dash);
    }
no_suffix:
    if (body == "ma1star") {
        pc.proc.is_ma1star = 1;
        return pc;
    }
    if (body == "iid") return pc;
    {
        const size_t open = body.find('('), close = body.rfind(')');
        if (open == std::string::npos || close != body.size() - 1 || close <= open)
            fail_config("cannot parse process '" + text + "'");
        const std::string name = body.substr(0, open);
        const std::string args = body.substr(open + 1, close - open - 1);
        bool ok = false;
        if (name == "ar") {
            ok = parse_doubles(args, pc.phi);
        } else if (name == "ma") {
            ok = parse_doubles(args, pc.theta);
        } else if (name == "arma") {
            const size_t bar = args.find('|');
            ok = bar != std::string::npos && parse_doubles(args.substr(0, bar), pc.phi) &&
                 parse_doubles(args.substr(bar + 1), pc.theta);
        }
        if (!ok) fail_config("cannot parse process '" + text + "'");
    }
    pc.proc.phi = pc.phi.empty() ? nullptr : pc.phi.data();
    pc.proc.n_phi = static_cast<int>(pc.phi.size());
    pc.proc.theta = pc.theta.empty() ? nullptr : pc.theta.data();
    pc.proc.n_theta = static_cast<int>(pc.theta.size());
    return pc;
}

// ---- method parsing ----

struct MethodConfig {
    ebel_method m{};
    std::string text;
    bool is_bel() const { return m.family == 2; }
    ebel_scheme scheme() const { return m.family == 0 ? EBEL_SCHEME_EBEL1 : EBEL_SCHEME_EBEL2; }
};

MethodConfig parse_method(const std::string& text) {
    MethodConfig mc;
    mc.text = text;
    const size_t dash = text.find('-');
    if (dash == std::string::npos) fail_config("cannot parse method '" + text + "'");
    const std::string fam = text.substr(0, dash), rest = text.substr(dash + 1);
    if (fam == "ebel1" || fam == "ebel2") {
        mc.m.family = fam == "ebel1" ? 0 : 1;
        mc.m.weight = parse_weight_kind(rest);
        return mc;
    }
    if (fam != "bel") fail_config("cannot parse method '" + text + "'");
    mc.m.family = 2;
    if (rest == "ftk") {
        mc.m.block_rule = 1;
    } else if (rest == "aar") {
        mc.m.block_rule = 2;
    } else if (rest.size() > 1 && rest[0] == 'b') {
        char* end = nullptr;
        const long b = std::strtol(rest.c_str() + 1, &end, 10);
        if (end != rest.c_str() + rest.size() || b < 1)
            fail_config("cannot parse method '" + text + "'");
        mc.m.block_rule = 0;
        mc.m.fixed_b = static_cast<int>(b);
    } else {
        fail_config("cannot parse method '" + text + "'");
    }
    return mc;
}

// ---- series input ----

std::vector<double> read_series(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail_config("cannot open input file '" + path + "'");
    std::vector<double> xs;
    std::string line;
    bool first = true;
    while (std::getline(in, line)) {
        size_t a = line.find_first_not_of(" \t\r");
        if (a == std::string::npos) continue;
        size_t b = line.find_last_not_of(" \t\r");
        const std::string tok = line.substr(a, b - a + 1);
        if (tok[0] == '#') continue;
        char* end = nullptr;
        const double v = std::strtod(tok.c_str(), &end);
        if (end != tok.c_str() + tok.size()) {
            if (first) {
                first = false;  // tolerate one header line
                continue;
            }
            fail_config("malformed value '" + tok + "' in " + path);
        }
        first = false;
        xs.push_back(v);
    }
    if (xs.size() < 2) fail_config("input series needs at least 2 values");
    return xs;
}

// ---- output files ----

class OutputFile {
  public:
    OutputFile(const std::string& path, bool overwrite) : path_(path) {
        if (path.empty()) return;
        if (!overwrite && std::filesystem::exists(path))
            fail_config("output '" + path + "' exists (pass --overwrite to replace)");
        out_.open(path, std::ios::binary | std::ios::trunc);
        if (!out_) fail_config("cannot write output '" + path + "'");
    }
    bool active() const { return out_.is_open(); }
    void write(const std::string& s) {
        if (!active()) return;
        out_ << s;
        out_.flush();  // keep partial results on later failures
    }

  private:
    std::string path_;
    std::ofstream out_;
};

std::string header_line(const std::string& key, const std::string& value) {
    return "# " + key + " = " + value + "\n";
}

// ---- calibration helper ----

struct TableHandle {
    ebel_table* t = nullptr;
    ~TableHandle() { ebel_table_free(t); }
};

void estimate_table(ebel_scheme scheme, ebel_weight_kind kind, double level,
                    long reps, int grid, uint64_t seed, int threads, TableHandle& out) {
    WeightHandle w;
    check_status(ebel_weight_create(kind, 1.0, &w.w), "weight");
    const double levels[1] = {level};
    check_status(ebel_estimate_quantiles(scheme, w.w, 1, levels, 1, reps, grid, seed,
                                         threads, &out.t),
                 "quantile estimation");
}

int default_threads() {
    const unsigned hc = std::thread::hardware_concurrency();
    return hc == 0 ? 1 : static_cast<int>(hc);
}

// ---- subcommand state ----

struct QuantilesCmd {
    std::string scheme = "ebel1", weight = "constant", out;
    int d = 1, grid = 1000;
    std::vector<double> levels{0.9};
    long reps = 50000;
    uint64_t seed = 0;
};

struct CiCmd {
    std::string input, method = "ebel1", weight = "constant", block = "ftk", out;
    double level = 0.9, quantile = -1.0;
    long calib_reps = 20000;
    int calib_grid = 1000;
    uint64_t seed = 0;
    bool seed_given = false, quantile_given = false;
};

struct CoverageCmd {
    std::string process, out;
    std::vector<std::string> methods;
    int n = 250, burn_in = 1000, calib_grid = 1000;
    double level = 0.9;
    long reps = 1000, calib_reps = 20000;
    uint64_t seed = 0, calib_seed = 0;
    bool calib_seed_given = false;
};

struct PowerCmd {
    std::string process, method = "ebel1-constant", out;
    std::vector<double> c_grid;
    int n = 250, burn_in = 1000, calib_grid = 1000;
    double level = 0.9;
    long reps = 1000, calib_reps = 20000;
    uint64_t seed = 0, calib_seed = 0;
    bool calib_seed_given = false;
};

struct SelectBlockCmd {
    std::string input, rule = "both", out;
};

int run_quantiles(const QuantilesCmd& c, int threads, bool overwrite) {
    ebel_scheme scheme = c.scheme == "ebel2" ? EBEL_SCHEME_EBEL2 : EBEL_SCHEME_EBEL1;
    if (c.scheme != "ebel1" && c.scheme != "ebel2")
        fail_config("unknown scheme '" + c.scheme + "'");
    const ebel_weight_kind kind = parse_weight_kind(c.weight);
    if (c.levels.empty()) fail_config("need at least one level");
    if (c.d < 1) fail_config("dimension must be positive");
    if (c.reps < 1000) fail_config("need at least 1000 replicates");
    if (c.grid < 100) fail_config("grid must be at least 100");

    OutputFile file(c.out, overwrite);
    WeightHandle w;
    check_status(ebel_weight_create(kind, 1.0, &w.w), "weight");
    TableHandle table;
    check_status(ebel_estimate_quantiles(scheme, w.w, c.d, c.levels.data(),
                                         static_cast<int>(c.levels.size()), c.reps, c.grid,
                                         c.seed, threads, &table.t),
                 "quantile estimation");
    long viol = 0;
    check_status(ebel_table_hull_violations(table.t, &viol), "table");
    char* csv = nullptr;
    check_status(ebel_table_csv(table.t, &csv), "table serialization");
    std::string body(csv);
    ebel_string_free(csv);

    std::string head;
    head += "# ebel quantiles\n";
    head += header_line("scheme", c.scheme);
    head += header_line("weight", c.weight);
    head += header_line("d", std::to_string(c.d));
    head += header_line("levels", join(c.levels));
    head += header_line("replicates", std::to_string(c.reps));
    head += header_line("grid", std::to_string(c.grid));
    head += header_line("seed", std::to_string(c.seed));
    head += header_line("threads", std::to_string(threads));
    head += header_line("hull_violations", std::to_string(viol));
    file.write(head + body);

    for (double lv : c.levels) {
        double q = 0, se = 0;
        check_status(ebel_table_quantile(table.t, lv, &q, &se), "table lookup");
        std::cout << c.scheme << " " << c.weight << " d=" << c.d << " level=" << fmt6(lv)
                  << ": quantile=" << fmt6(q) << " (stderr " << fmt6(se) << ")\n";
    }
    std::cout << "hull violations: " << viol << "/" << c.reps << "\n";
    return 0;
}

int run_ci(const CiCmd& c, int threads, bool overwrite) {
    if (c.input.empty()) fail_config("--input is required");
    if (!(c.level > 0.0 && c.level < 1.0)) fail_config("level must be in (0,1)");
    if (c.method != "ebel1" && c.method != "ebel2" && c.method != "bel")
        fail_config("--method must be ebel1, ebel2, or bel");
    const std::vector<double> xs = read_series(c.input);
    const int n = static_cast<int>(xs.size());

    OutputFile file(c.out, overwrite);
    std::string head;
    head += "# ebel ci\n";
    head += header_line("input", c.input);
    head += header_line("method", c.method);
    head += header_line("level", fmt_full(c.level));
    std::string notes;
    std::string method_label = c.method;

    double lo = 0, hi = 0;
    int degenerate = 0;
    if (c.method == "bel") {
        head += header_line("block", c.block);
        int b;
        if (c.block == "ftk" || c.block == "aar") {
            ebel_block_selection sel{};
            check_status(ebel_select_block(xs.data(), n,
                                           c.block == "ftk" ? EBEL_BLOCK_FTK
                                                            : EBEL_BLOCK_AAR,
                                           &sel),
                         "block selection");
            b = sel.chosen_b;
            notes += header_line("chosen_b", std::to_string(b));
            if (c.block == "aar") {
                notes += header_line("rho1", fmt_full(sel.rho1));
                notes += header_line("alpha1", fmt_full(sel.alpha1));
            } else {
                notes += header_line("bandwidth", fmt_full(sel.bandwidth));
                notes += header_line("c_hat", fmt_full(sel.c_hat));
            }
            method_label = "bel-b" + std::to_string(b) + "(" + c.block + ")";
        } else {
            char* end = nullptr;
            const long bl = std::strtol(c.block.c_str(), &end, 10);
            if (c.block.empty() || end != c.block.c_str() + c.block.size() || bl < 1)
                fail_config("--block must be ftk, aar, or a positive integer");
            if (bl > n) fail_config("block length exceeds series length");
            b = static_cast<int>(bl);
            notes += header_line("chosen_b", std::to_string(b));
            method_label = "bel-b" + std::to_string(b);
        }
        check_status(ebel_bel_ci_mean(xs.data(), n, b, c.level, &lo, &hi, &degenerate),
                     "interval");
    } else {
        head += header_line("weight", c.weight);
        method_label = c.method + "-" + c.weight;
        const ebel_scheme scheme =
            c.method == "ebel1" ? EBEL_SCHEME_EBEL1 : EBEL_SCHEME_EBEL2;
        const ebel_weight_kind kind = parse_weight_kind(c.weight);
        WeightHandle w;
        check_status(ebel_weight_create(kind, 1.0, &w.w), "weight");
        if (c.quantile_given) {
            if (!(c.quantile >= 0.0)) fail_config("--quantile must be nonnegative");
            notes += header_line("quantile", fmt_full(c.quantile));
            check_status(ebel_ci_mean_threshold(xs.data(), n, scheme, w.w, c.quantile,
                                                &lo, &hi, &degenerate),
                         "interval");
        } else {
            if (!c.seed_given)
                fail_config("--seed is required when calibrating by simulation");
            TableHandle table;
            estimate_table(scheme, kind, c.level, c.calib_reps, c.calib_grid, c.seed,
                           threads, table);
            double q = 0, se = 0;
            check_status(ebel_table_quantile(table.t, c.level, &q, &se), "table lookup");
            notes += header_line("calibration_quantile", fmt_full(q));
            notes += header_line("calibration_replicates", std::to_string(c.calib_reps));
            notes += header_line("calibration_grid", std::to_string(c.calib_grid));
            notes += header_line("seed", std::to_string(c.seed));
            check_status(ebel_ci_mean(xs.data(), n, scheme, w.w, table.t, c.level, &lo,
                                      &hi, &degenerate),
                         "interval");
        }
    }
    if (degenerate) notes += "# warning: constant series; zero-width interval\n";

    std::string body = "method,level,lower,upper\n";
    body += method_label + "," + fmt_full(c.level) + "," + fmt_full(lo) + "," +
            fmt_full(hi) + "\n";
    file.write(head + notes + body);
    std::cout << notes << body;
    return 0;
}

int run_coverage(const CoverageCmd& c, int threads, bool overwrite) {
    if (c.process.empty()) fail_config("--process is required");
    if (c.methods.empty()) fail_config("--methods is required");
    if (c.n < 20) fail_config("n must be at least 20");
    if (c.reps < 1) fail_config("need at least one replicate");
    ProcessConfig pc = parse_process(c.process, c.burn_in);
    std::vector<MethodConfig> methods;
    for (const auto& s : c.methods) {
        methods.push_back(parse_method(s));
        if (methods.back().is_bel() && methods.back().m.block_rule == 0 &&
            methods.back().m.fixed_b > c.n)
            fail_config("fixed block length exceeds n for method '" + s + "'");
    }
    const uint64_t calib_seed = c.calib_seed_given ? c.calib_seed : c.seed + 1;

    OutputFile file(c.out, overwrite);
    std::string head;
    head += "# ebel coverage\n";
    head += header_line("process", c.process);
    head += header_line("n", std::to_string(c.n));
    head += header_line("methods", [&] {
        std::string s;
        for (size_t i = 0; i < c.methods.size(); ++i) s += (i ? "," : "") + c.methods[i];
        return s;
    }());
    head += header_line("level", fmt_full(c.level));
    head += header_line("replicates", std::to_string(c.reps));
    head += header_line("seed", std::to_string(c.seed));
    head += header_line("burn_in", std::to_string(c.burn_in));
    head += header_line("calib_seed", std::to_string(calib_seed));
    head += header_line("calib_replicates", std::to_string(c.calib_reps));
    head += header_line("calib_grid", std::to_string(c.calib_grid));
    head += header_line("threads", std::to_string(threads));
    file.write(head);

    // calibration tables per distinct EBEL (scheme, weight)
    std::vector<std::pair<std::pair<int, int>, TableHandle>> tables;
    auto table_for = [&](const MethodConfig& m) -> ebel_table* {
        const std::pair<int, int> key{m.m.family, m.m.weight};
        for (auto& kv : tables)
            if (kv.first == key) return kv.second.t;
        tables.emplace_back(key, TableHandle{});
        estimate_table(m.scheme(), static_cast<ebel_weight_kind>(m.m.weight), c.level,
                       c.calib_reps, c.calib_grid, calib_seed, threads, tables.back().second);
        return tables.back().second.t;
    };

    bool wrote_columns = false;
    for (const auto& m : methods) {
        const ebel_table* cal = m.is_bel() ? nullptr : table_for(m);
        const ebel_table* cals[1] = {cal};
        double cov = 0, se = 0;
        char* csv = nullptr;
        check_status(ebel_coverage(&pc.proc, c.n, &m.m, 1, c.level, c.reps, c.seed,
                                   threads, cals, &cov, &se, &csv),
                     "coverage for method '" + m.text + "'");
        std::string body(csv);
        ebel_string_free(csv);
        const size_t nl = body.find('\n');
        const std::string cols = body.substr(0, nl + 1);
        const std::string row = body.substr(nl + 1);
        if (!wrote_columns) {
            file.write(cols);
            std::cout << cols;
            wrote_columns = true;
        }
        file.write(row);
        std::cout << row;
    }
    return 0;
}

int run_power(const PowerCmd& c, int threads, bool overwrite) {
    if (c.process.empty()) fail_config("--process is required");
    if (c.n < 20) fail_config("n must be at least 20");
    if (c.reps < 1) fail_config("need at least one replicate");
    ProcessConfig pc = parse_process(c.process, c.burn_in);
    const MethodConfig m = parse_method(c.method);
    if (m.is_bel() && m.m.block_rule == 0 && m.m.fixed_b > c.n)
        fail_config("fixed block length exceeds n");
    double lrv = 0.0;
    check_status(ebel_long_run_variance(&pc.proc, &lrv), "long-run variance");
    if (!(lrv > 1e-12))
        fail_config("process long-run variance is degenerate; no local alternatives");

    std::vector<double> grid = c.c_grid;
    if (grid.empty())
        for (int i = 0; i <= 20; ++i) grid.push_back(0.25 * i);
    const uint64_t calib_seed = c.calib_seed_given ? c.calib_seed : c.seed + 1;

    OutputFile file(c.out, overwrite);
    std::string head;
    head += "# ebel power\n";
    head += header_line("process", c.process);
    head += header_line("n", std::to_string(c.n));
    head += header_line("method", c.method);
    head += header_line("c_grid", join(grid));
    head += header_line("level", fmt_full(c.level));
    head += header_line("replicates", std::to_string(c.reps));
    head += header_line("seed", std::to_string(c.seed));
    head += header_line("burn_in", std::to_string(c.burn_in));
    head += header_line("calib_seed", std::to_string(calib_seed));
    head += header_line("calib_replicates", std::to_string(c.calib_reps));
    head += header_line("calib_grid", std::to_string(c.calib_grid));
    head += header_line("threads", std::to_string(threads));
    file.write(head);

    TableHandle table;
    if (!m.is_bel())
        estimate_table(m.scheme(), static_cast<ebel_weight_kind>(m.m.weight), c.level,
                       c.calib_reps, c.calib_grid, calib_seed, threads, table);

    std::vector<double> raw(grid.size()), adj(grid.size());
    char* csv = nullptr;
    check_status(ebel_power(&pc.proc, c.n, grid.data(), static_cast<int>(grid.size()),
                            &m.m, c.level, c.reps, c.seed, threads, table.t, raw.data(),
                            adj.data(), &csv),
                 "power curve");
    std::string body(csv);
    ebel_string_free(csv);
    file.write(body);
    std::cout << body;
    return 0;
}

int run_select_block(const SelectBlockCmd& c, bool overwrite) {
    if (c.input.empty()) fail_config("--input is required");
    if (c.rule != "ftk" && c.rule != "aar" && c.rule != "both")
        fail_config("--rule must be ftk, aar, or both");
    const std::vector<double> xs = read_series(c.input);
    const int n = static_cast<int>(xs.size());

    OutputFile file(c.out, overwrite);
    std::string head;
    head += "# ebel select-block\n";
    head += header_line("input", c.input);
    head += header_line("rule", c.rule);
    std::string body = "rule,chosen_b,rho1,alpha1,bandwidth,g_hat,d_hat,c_hat\n";
    for (const std::string rule : {std::string("ftk"), std::string("aar")}) {
        if (c.rule != "both" && c.rule != rule) continue;
        ebel_block_selection sel{};
        check_status(ebel_select_block(xs.data(), n,
                                       rule == "ftk" ? EBEL_BLOCK_FTK : EBEL_BLOCK_AAR,
                                       &sel),
                     "block selection");
        body += rule + "," + std::to_string(sel.chosen_b) + "," + fmt_full(sel.rho1) +
                "," + fmt_full(sel.alpha1) + "," + fmt_full(sel.bandwidth) + "," +
                fmt_full(sel.g_hat) + "," + fmt_full(sel.d_hat) + "," +
                fmt_full(sel.c_hat) + "\n";
    }
    file.write(head + body);
    std::cout << body;
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Expansive-block empirical likelihood inference for stationary series"};
    app.require_subcommand(1);
    app.set_config("--config", "", "INI config file; command-line flags take precedence");

    int threads = default_threads();
    bool overwrite = false;
    app.add_option("--threads", threads, "worker threads (results are thread-count independent)");
    app.add_flag("--overwrite", overwrite, "replace existing output files");

    QuantilesCmd qc;
    auto* q = app.add_subcommand("quantiles", "simulate limit-law quantile tables");
    q->fallthrough();
    q->add_option("--scheme", qc.scheme, "ebel1|ebel2")->required();
    q->add_option("--weight", qc.weight, "constant|linear|cosine_bell");
    q->add_option("--d", qc.d, "dimension");
    q->add_option("--levels", qc.levels, "quantile levels")->delimiter(',');
    q->add_option("--reps", qc.reps, "replicates (>= 1000)");
    q->add_option("--grid", qc.grid, "Brownian grid size");
    q->add_option("--seed", qc.seed, "RNG seed")->required();
    q->add_option("--out", qc.out, "output CSV path");

    CiCmd cc;
    auto* ci = app.add_subcommand("ci", "confidence interval for the mean of a series");
    ci->fallthrough();
    ci->add_option("--input", cc.input, "single-column CSV")->required();
    ci->add_option("--method", cc.method, "ebel1|ebel2|bel");
    ci->add_option("--weight", cc.weight, "weight for ebel methods");
    ci->add_option("--block", cc.block, "bel block rule: ftk|aar|<length>");
    ci->add_option("--level", cc.level, "confidence level");
    auto* qopt = ci->add_option("--quantile", cc.quantile, "explicit calibration quantile");
    auto* sopt = ci->add_option("--seed", cc.seed, "seed for simulated calibration");
    ci->add_option("--calib-reps", cc.calib_reps, "calibration replicates");
    ci->add_option("--calib-grid", cc.calib_grid, "calibration grid size");
    ci->add_option("--out", cc.out, "output path");

    CoverageCmd vc;
    auto* cov = app.add_subcommand("coverage", "Monte Carlo coverage of the true mean");
    cov->fallthrough();
    cov->add_option("--process", vc.process,
                    "iid|ar(...)|ma(...)|arma(p|q)|ma1star with optional -innovation")
        ->required();
    cov->add_option("--n", vc.n, "series length")->required();
    cov->add_option("--methods", vc.methods, "comma-separated method list")
        ->required()
        ->delimiter(',');
    cov->add_option("--level", vc.level, "confidence level");
    cov->add_option("--reps", vc.reps, "replicates")->required();
    cov->add_option("--seed", vc.seed, "RNG seed")->required();
    cov->add_option("--burn-in", vc.burn_in, "simulation burn-in");
    auto* cs = cov->add_option("--calib-seed", vc.calib_seed, "calibration seed (default seed+1)");
    cov->add_option("--calib-reps", vc.calib_reps, "calibration replicates");
    cov->add_option("--calib-grid", vc.calib_grid, "calibration grid size");
    cov->add_option("--out", vc.out, "output CSV path");

    PowerCmd pw;
    auto* pow = app.add_subcommand("power", "rejection rates along local alternatives");
    pow->fallthrough();
    pow->add_option("--process", pw.process, "process spec")->required();
    pow->add_option("--n", pw.n, "series length")->required();
    pow->add_option("--method", pw.method, "single method spec");
    pow->add_option("--c-grid", pw.c_grid, "alternative scale points")->delimiter(',');
    pow->add_option("--level", pw.level, "confidence level");
    pow->add_option("--reps", pw.reps, "replicates")->required();
    pow->add_option("--seed", pw.seed, "RNG seed")->required();
    pow->add_option("--burn-in", pw.burn_in, "simulation burn-in");
    auto* ps = pow->add_option("--calib-seed", pw.calib_seed, "calibration seed (default seed+1)");
    pow->add_option("--calib-reps", pw.calib_reps, "calibration replicates");
    pow->add_option("--calib-grid", pw.calib_grid, "calibration grid size");
    pow->add_option("--out", pw.out, "output CSV path");

    SelectBlockCmd sb;
    auto* sel = app.add_subcommand("select-block", "data-driven block length for BEL");
    sel->fallthrough();
    sel->add_option("--input", sb.input, "single-column CSV")->required();
    sel->add_option("--rule", sb.rule, "ftk|aar|both");
    sel->add_option("--out", sb.out, "output CSV path");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitConfig;
    }

    cc.seed_given = sopt->count() > 0;
    cc.quantile_given = qopt->count() > 0;
    vc.calib_seed_given = cs->count() > 0;
    pw.calib_seed_given = ps->count() > 0;
    if (threads < 1) threads = 1;

    try {
        if (q->parsed()) return run_quantiles(qc, threads, overwrite);
        if (ci->parsed()) return run_ci(cc, threads, overwrite);
        if (cov->parsed()) return run_coverage(vc, threads, overwrite);
        if (pow->parsed()) return run_power(pw, threads, overwrite);
        if (sel->parsed()) return run_select_block(sb, overwrite);
    } catch (const CliError& e) {
        std::cerr << "error: " << e.message << "\n";
        return e.code;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNumeric;
    }
    return kExitConfig;
}
