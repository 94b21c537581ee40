#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "bel.hpp"
#include "inference.hpp"
#include "processes.hpp"

namespace ebel {

struct ProcessSpec {
    enum class Kind { arma, ma1star } kind = Kind::arma;
    ArmaSpec arma;
};

std::string process_label(const ProcessSpec& p);
// Parses labels like "iid", "ar(0.9)", "ma(0.4,-0.6)", "arma(0.5|0.3)",
// "ma1star", with an optional "-chisq1|-normal|-bernoulli|-pareto" suffix.
bool process_from_string(const std::string& s, ProcessSpec& out);

TimeSeries simulate_process(const ProcessSpec& p, int n, RngStream& rng);
double process_long_run_variance(const ProcessSpec& p);

struct MethodSpec {
    enum class Family { ebel1, ebel2, bel } family = Family::ebel1;
    WeightKind weight = WeightKind::constant;  // EBEL families
    BlockRule rule = BlockRule::ftk;           // BEL family
    int fixed_b = 8;
};

std::string method_label(const MethodSpec& m);
// Parses "ebel1-constant", "ebel2-linear", "bel-ftk", "bel-aar", "bel-b8", ...
bool method_from_string(const std::string& s, MethodSpec& out);

// Supplies the calibration table for an EBEL method; may return null only for
// BEL methods (calibrated by chi-square).
using CalibrationLookup = std::function<const QuantileTable*(Scheme, WeightKind)>;

struct CoverageCell {
    MethodSpec method;
    double coverage = 0.0;  // percent
    double stderr_pp = 0.0;
    long covered = 0;
};

struct CoverageReport {
    ProcessSpec process;
    int n = 0;
    double level = 0.9;
    long replicates = 0;
    std::uint64_t seed = 0;
    std::vector<CoverageCell> cells;
};

// Membership of the true mean (0 for every supported process) in each
// method's region, over shared per-replicate series: replicate idx simulates
// with stream (seed, idx) and every method sees the same series.
CoverageReport coverage_experiment(const ProcessSpec& process, int n,
                                   const std::vector<MethodSpec>& methods, double level,
                                   long replicates, std::uint64_t seed,
                                   const CalibrationLookup& calib, int threads = 1);

struct PowerPoint {
    double c = 0.0;
    double raw = 0.0;       // percent rejections testing mu = 0 + n^{-1/2} sqrt(LRV) c
    double adjusted = 0.0;  // raw + (nominal size - raw at c = 0)
};

struct PowerReport {
    ProcessSpec process;
    int n = 0;
    MethodSpec method;
    double level = 0.9;
    long replicates = 0;
    std::uint64_t seed = 0;
    std::vector<PowerPoint> points;
};

PowerReport power_curve(const ProcessSpec& process, int n,
                        const std::vector<double>& c_grid, const MethodSpec& method,
                        double level, long replicates, std::uint64_t seed,
                        const CalibrationLookup& calib, int threads = 1);

std::string coverage_report_csv(const CoverageReport& r);
std::string power_report_csv(const PowerReport& r);

}  // namespace ebel
