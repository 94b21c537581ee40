#include "experiments.hpp"

#include <cmath>
#include <cstdlib>
#include <stdexcept>

#include "csv.hpp"
#include "errors.hpp"
#include "parallel.hpp"
#include "special.hpp"

namespace ebel {

namespace {

std::string join_coeffs(const std::vector<double>& v, char sep) {
    std::string s;
    for (size_t i = 0; i < v.size(); ++i) {
        if (i) s += sep;
        s += fmt_double(v[i]);
    }
    return s;
}

bool parse_coeffs(const std::string& s, std::vector<double>& out) {
    out.clear();
    size_t pos = 0;
    while (pos < s.size()) {
        size_t next = s.find_first_of(",|", pos);
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

// One replicate's membership decision for a method.
bool covers(const TimeSeries& X, const MethodSpec& m, double level,
            const CalibrationLookup& calib, double mu0) {
    const std::vector<double> mu{mu0};
    if (m.family == MethodSpec::Family::bel) {
        int b = m.fixed_b;
        if (m.rule == BlockRule::ftk) b = select_block_ftk(X).chosen_b;
        else if (m.rule == BlockRule::aar) b = select_block_aar(X).chosen_b;
        return bel_statistic(X, mu, b) <= chisq_quantile(level, 1);
    }
    EbelConfig cfg;
    cfg.scheme = m.family == MethodSpec::Family::ebel1 ? Scheme::ebel1 : Scheme::ebel2;
    cfg.weight = make_weight(m.weight);
    cfg.level = level;
    cfg.calibration = calib ? calib(cfg.scheme, m.weight) : nullptr;
    check_calibration(cfg, 1);
    return ebel_statistic(X, mu, cfg) <= table_quantile(*cfg.calibration, level);
}

}  // namespace

std::string process_label(const ProcessSpec& p) {
    if (p.kind == ProcessSpec::Kind::ma1star) return "ma1star";
    const auto& a = p.arma;
    std::string s;
    if (!a.phi.empty() && !a.theta.empty())
        s = "arma(" + join_coeffs(a.phi, ',') + "|" + join_coeffs(a.theta, ',') + ")";
    else if (!a.phi.empty())
        s = "ar(" + join_coeffs(a.phi, ',') + ")";
    else if (!a.theta.empty())
        s = "ma(" + join_coeffs(a.theta, ',') + ")";
    else
        s = "iid";
    return s + "-" + innovation_name(a.innovation);
}

bool process_from_string(const std::string& s, ProcessSpec& out) {
    out = ProcessSpec{};
    std::string body = s;
    // optional innovation suffix after the closing parenthesis (or bare name)
    Innovation inn = Innovation::centered_chisq1;
    const size_t dash = body.rfind('-');
    if (dash != std::string::npos && body.find(')', dash) == std::string::npos) {
        Innovation parsed;
        if (innovation_from_string(body.substr(dash + 1), parsed)) {
            inn = parsed;
            body = body.substr(0, dash);
        }
    }
    out.arma.innovation = inn;
    if (body == "ma1star") {
        out.kind = ProcessSpec::Kind::ma1star;
        return true;
    }
    if (body == "iid") return true;
    const size_t open = body.find('('), close = body.rfind(')');
    if (open == std::string::npos || close != body.size() - 1 || close <= open) return false;
    const std::string name = body.substr(0, open);
    const std::string args = body.substr(open + 1, close - open - 1);
    if (name == "ar") return parse_coeffs(args, out.arma.phi);
    if (name == "ma") return parse_coeffs(args, out.arma.theta);
    if (name == "arma") {
        const size_t bar = args.find('|');
        if (bar == std::string::npos) return false;
        return parse_coeffs(args.substr(0, bar), out.arma.phi) &&
               parse_coeffs(args.substr(bar + 1), out.arma.theta);
    }
    return false;
}

TimeSeries simulate_process(const ProcessSpec& p, int n, RngStream& rng) {
    if (p.kind == ProcessSpec::Kind::ma1star) return simulate_ma1_star(n, rng);
    return simulate_arma(p.arma, n, rng);
}

double process_long_run_variance(const ProcessSpec& p) {
    if (p.kind == ProcessSpec::Kind::ma1star) return ma1_star_long_run_variance();
    return long_run_variance(p.arma);
}

std::string method_label(const MethodSpec& m) {
    switch (m.family) {
        case MethodSpec::Family::ebel1: return "ebel1-" + weight_kind_name(m.weight);
        case MethodSpec::Family::ebel2: return "ebel2-" + weight_kind_name(m.weight);
        case MethodSpec::Family::bel:
            if (m.rule == BlockRule::ftk) return "bel-ftk";
            if (m.rule == BlockRule::aar) return "bel-aar";
            return "bel-b" + std::to_string(m.fixed_b);
    }
    return "?";
}

bool method_from_string(const std::string& s, MethodSpec& out) {
    out = MethodSpec{};
    const size_t dash = s.find('-');
    if (dash == std::string::npos) return false;
    const std::string fam = s.substr(0, dash), rest = s.substr(dash + 1);
    if (fam == "ebel1" || fam == "ebel2") {
        out.family = fam == "ebel1" ? MethodSpec::Family::ebel1 : MethodSpec::Family::ebel2;
        WeightKind k;
        if (!weight_kind_from_string(rest, k) || k == WeightKind::tabulated) return false;
        out.weight = k;
        return true;
    }
    if (fam != "bel") return false;
    out.family = MethodSpec::Family::bel;
    if (rest == "ftk") { out.rule = BlockRule::ftk; return true; }
    if (rest == "aar") { out.rule = BlockRule::aar; return true; }
    if (rest.size() > 1 && rest[0] == 'b') {
        char* end = nullptr;
        const long b = std::strtol(rest.c_str() + 1, &end, 10);
        if (end != rest.c_str() + rest.size() || b < 1) return false;
        out.rule = BlockRule::fixed;
        out.fixed_b = static_cast<int>(b);
        return true;
    }
    return false;
}

CoverageReport coverage_experiment(const ProcessSpec& process, int n,
                                   const std::vector<MethodSpec>& methods, double level,
                                   long replicates, std::uint64_t seed,
                                   const CalibrationLookup& calib, int threads) {
    if (replicates < 1) throw std::invalid_argument("need at least one replicate");
    if (methods.empty()) throw std::invalid_argument("need at least one method");
    if (!(level > 0.0 && level < 1.0)) throw std::invalid_argument("level must be in (0,1)");
    if (process.kind == ProcessSpec::Kind::arma) validate_arma(process.arma);

    const size_t K = methods.size();
    std::vector<std::vector<unsigned char>> hit(K, std::vector<unsigned char>(replicates, 0));
    parallel_for(replicates, threads, [&](long lo, long hi) {
        for (long idx = lo; idx < hi; ++idx) {
            RngStream rng(seed, static_cast<std::uint64_t>(idx));
            const TimeSeries X = simulate_process(process, n, rng);
            for (size_t k = 0; k < K; ++k)
                hit[k][idx] = covers(X, methods[k], level, calib, 0.0) ? 1 : 0;
        }
    });

    CoverageReport rep;
    rep.process = process;
    rep.n = n;
    rep.level = level;
    rep.replicates = replicates;
    rep.seed = seed;
    for (size_t k = 0; k < K; ++k) {
        CoverageCell cell;
        cell.method = methods[k];
        for (long idx = 0; idx < replicates; ++idx) cell.covered += hit[k][idx];
        const double p = static_cast<double>(cell.covered) / replicates;
        cell.coverage = 100.0 * p;
        cell.stderr_pp = 100.0 * std::sqrt(p * (1.0 - p) / replicates);
        rep.cells.push_back(cell);
    }
    return rep;
}

PowerReport power_curve(const ProcessSpec& process, int n,
                        const std::vector<double>& c_grid, const MethodSpec& method,
                        double level, long replicates, std::uint64_t seed,
                        const CalibrationLookup& calib, int threads) {
    if (replicates < 1) throw std::invalid_argument("need at least one replicate");
    if (c_grid.empty()) throw std::invalid_argument("need at least one alternative");
    if (!(level > 0.0 && level < 1.0)) throw std::invalid_argument("level must be in (0,1)");
    const double lrv = process_long_run_variance(process);
    if (!(lrv > 1e-12))
        throw degenerate_sample("long-run variance is degenerate; no local alternatives");
    const double scale = std::sqrt(lrv) / std::sqrt(static_cast<double>(n));

    const size_t C = c_grid.size();
    std::vector<std::vector<unsigned char>> rej(C, std::vector<unsigned char>(replicates, 0));
    parallel_for(replicates, threads, [&](long lo, long hi) {
        for (long idx = lo; idx < hi; ++idx) {
            RngStream rng(seed, static_cast<std::uint64_t>(idx));
            const TimeSeries X = simulate_process(process, n, rng);
            for (size_t ci = 0; ci < C; ++ci) {
                const double mu_c = c_grid[ci] * scale;  // truth is 0; test mu = mu_c
                rej[ci][idx] = covers(X, method, level, calib, mu_c) ? 0 : 1;
            }
        }
    });

    PowerReport rep;
    rep.process = process;
    rep.n = n;
    rep.method = method;
    rep.level = level;
    rep.replicates = replicates;
    rep.seed = seed;

    double raw0 = 0.0;
    bool have0 = false;
    for (size_t ci = 0; ci < C; ++ci) {
        long r = 0;
        for (long idx = 0; idx < replicates; ++idx) r += rej[ci][idx];
        PowerPoint pt;
        pt.c = c_grid[ci];
        pt.raw = 100.0 * static_cast<double>(r) / replicates;
        rep.points.push_back(pt);
        if (c_grid[ci] == 0.0 && !have0) {
            raw0 = pt.raw;
            have0 = true;
        }
    }
    const double nominal = 100.0 - 100.0 * level;
    const double shift = have0 ? nominal - raw0 : 0.0;
    for (auto& pt : rep.points)
        pt.adjusted = pt.c == 0.0 ? nominal : pt.raw + shift;
    return rep;
}

std::string coverage_report_csv(const CoverageReport& r) {
    std::string s = "process,n,method,coverage,stderr,coverage_full,stderr_full\n";
    for (const auto& cell : r.cells) {
        s += process_label(r.process);
        s += ',';
        s += std::to_string(r.n);
        s += ',';
        s += method_label(cell.method);
        s += ',';
        s += fmt_double6(cell.coverage);
        s += ',';
        s += fmt_double6(cell.stderr_pp);
        s += ',';
        s += fmt_double(cell.coverage);
        s += ',';
        s += fmt_double(cell.stderr_pp);
        s += '\n';
    }
    return s;
}

std::string power_report_csv(const PowerReport& r) {
    std::string s = "process,n,method,c,power,adjusted,power_full,adjusted_full\n";
    for (const auto& pt : r.points) {
        s += process_label(r.process);
        s += ',';
        s += std::to_string(r.n);
        s += ',';
        s += method_label(r.method);
        s += ',';
        s += fmt_double(pt.c);
        s += ',';
        s += fmt_double6(pt.raw);
        s += ',';
        s += fmt_double6(pt.adjusted);
        s += ',';
        s += fmt_double(pt.raw);
        s += ',';
        s += fmt_double(pt.adjusted);
        s += '\n';
    }
    return s;
}

}  // namespace ebel
