#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "rrgg/builder.hpp"
#include "rrgg/certificate.hpp"
#include "rrgg/geometry.hpp"
#include "rrgg/process.hpp"

namespace rrgg {

// ---------------------------------------------------------------------------
// Limiting distributions of the hitting radii.

struct LimitLawParams {
    int d = 2;
    NormParam p{2.0};
    double theta = 0.0;
    double theta_prime = 0.0;
    /// ln(2^{1-2/d} (theta d)^{3-2/d} theta'^{d-2} / C(d,2)).
    double f = 0.0;

    static LimitLawParams from(int d, NormParam p);
};

/// exp(-e^{-alpha-f}).
double limit_cdf_pm(double alpha, const LimitLawParams& params);
/// d >= 3: exp(-2 e^{-alpha-f} / d); d = 2: exp(-e^{-alpha/2}(e^{-alpha/2} + 2 sqrt(theta)/theta')).
double limit_cdf_hc(double alpha, const LimitLawParams& params);

/// r with 2^{2-d} theta n r^d = (2/d) ln n + c ln ln n + alpha, where c = 3-d-2/d
/// (matching) or 4-d-2/d (cycle). Throws std::domain_error when the right side is <= 0.
double corollary_radius(std::size_t n, int d, NormParam p, double alpha, Structure kind);

// ---------------------------------------------------------------------------
// Batch experiments.

enum class ExperimentMode { HamiltonCycle, PerfectMatching, Both, MinDegreeOnly };

const char* to_string(ExperimentMode mode);
ExperimentMode parse_experiment_mode(std::string_view text);

struct ExperimentConfig {
    int d = 2;
    NormParam p{2.0};
    std::vector<std::size_t> n_list;
    double K = 20.0;
    double epsilon = 0.1;
    double A = 3.0;
    std::optional<double> omega;  // nullopt: default_omega(n)
    std::size_t trials = 10;
    Seed seed = 1;
    ExperimentMode mode = ExperimentMode::HamiltonCycle;
    /// Exact oracle runs (and backs up the builder) for n <= oracle_limit; 0 disables.
    std::size_t oracle_limit = 0;
    int retries = 0;
    bool diagnostics = false;
    std::vector<double> alphas{-1.0, 0.0, 1.0};
    std::string records_csv;
    std::string summary_json;
    std::string timing_csv;

    /// Throws std::invalid_argument describing the first violated precondition.
    void validate() const;
};

/// Seed of trial t at the k-th entry of the n-list.
Seed trial_seed(Seed master, std::size_t n_index, std::size_t trial);

struct StructureOutcome {
    bool success = false;
    std::string stage;  // failing stage, empty on success
    std::string piece;
    std::string detail;
    std::optional<double> radius;
    bool used_oracle = false;
    bool validated = false;
    bool ledger_ok = true;
    std::size_t ugly_paths = 0;
    std::size_t bad_paths = 0;
    std::size_t good_cells = 0;
    std::size_t oversized_forests = 0;
};

struct OracleOutcome {
    bool run = false;
    std::optional<double> r_rhc;
    std::optional<double> r_rpm;
    /// r_RHC >= r_{delta>=2} and r_RPM >= r_{delta>=1} wherever defined.
    bool necessity_ok = true;
    /// Every builder success matches the oracle's hitting radius.
    bool agrees = true;
};

struct TrialRecord {
    std::size_t n = 0;
    std::size_t trial = 0;
    Seed seed = 0;
    HittingRadii radii;
    std::optional<StructureOutcome> hc;
    std::optional<StructureOutcome> pm;
    OracleOutcome oracle;
    std::vector<DiagnosticCheck> diagnostics;
    /// Set when the trial threw; the batch continues.
    std::string error;
    double wall_seconds = 0.0;  // kept out of the deterministic outputs
};

/// One trial: sample, build the process, hitting radii, builder and oracle runs.
TrialRecord run_trial(const ExperimentConfig& config, std::size_t n_index, std::size_t trial);

/// All trials on a pool of `threads` workers; records ordered by (n index, trial).
std::vector<TrialRecord> run_trials(const ExperimentConfig& config, unsigned threads = 1);

struct StructureSummary {
    std::size_t attempted = 0;
    std::size_t success = 0;
    std::size_t oracle_fallbacks = 0;
    std::size_t invalid_certificates = 0;
    std::size_t ledger_failures = 0;
    double frequency = 0.0;
    double std_error = 0.0;
    std::map<std::string, std::size_t> failures_by_stage;
};

struct SizeSummary {
    std::size_t n = 0;
    std::size_t trials = 0;
    std::optional<StructureSummary> hc;
    std::optional<StructureSummary> pm;
    /// check name -> (passed, judged)
    std::map<std::string, std::pair<std::size_t, std::size_t>> diagnostics;
    std::size_t oracle_runs = 0;
    std::size_t oracle_agreements = 0;
    std::size_t necessity_violations = 0;
    std::size_t errors = 0;
};

struct ExperimentSummary {
    std::vector<SizeSummary> sizes;
    /// Certified-equality frequency non-decreasing along the n-list up to two standard errors.
    bool hc_trend_ok = true;
    bool pm_trend_ok = true;
};

ExperimentSummary summarize(const ExperimentConfig& config, const std::vector<TrialRecord>& records);

/// True when f2 >= f1 - 2 sqrt(se1^2 + se2^2).
bool non_decreasing_within_two_se(const StructureSummary& a, const StructureSummary& b);

// ---------------------------------------------------------------------------
// Minimum-degree law at the limit-law radius.

struct LawPoint {
    Structure kind;  // PM: delta >= 1, HC: delta >= 2
    std::size_t n;
    double alpha;
    double radius;
    std::size_t trials;
    std::size_t hits;
    double empirical;
    double limit;
};

/// For every n and alpha: fraction of trials where the minimum degree at
/// corollary_radius(alpha) reaches 1 (resp. 2), beside the limiting value.
std::vector<LawPoint> min_degree_law_experiment(const ExperimentConfig& config, unsigned threads = 1);

}  // namespace rrgg
