#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <thread>

#include "rrgg/harness.hpp"
#include "rrgg/neighbour_grid.hpp"
#include "rrgg/oracle.hpp"

namespace rrgg {

namespace {

// Runs job(i) for i in [0, count) on up to `threads` workers.
void parallel_for(std::size_t count, unsigned threads, const std::function<void(std::size_t)>& job) {
    threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(count, 1))));
    if (threads == 1) {
        for (std::size_t i = 0; i < count; ++i) job(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < threads; ++w) {
        pool.emplace_back([&] {
            for (std::size_t i = next++; i < count; i = next++) job(i);
        });
    }
    for (auto& t : pool) t.join();
}

StructureOutcome outcome_of(const BuildReport& r) {
    StructureOutcome o;
    o.success = r.success();
    if (r.failure) {
        o.stage = r.failure->stage;
        o.piece = r.failure->piece;
        o.detail = r.failure->detail;
    }
    o.radius = r.radius;
    o.used_oracle = r.used_oracle;
    o.validated = r.success() && r.certificate_violations.empty();
    o.ledger_ok = r.ledger_ok;
    o.ugly_paths = r.ugly_paths;
    o.bad_paths = r.bad_paths;
    o.good_cells = r.good_cells;
    o.oversized_forests = r.forest_stats.oversized_cells;
    return o;
}

double initial_cutoff(const PointSet& points, const ExperimentConfig& config) {
    const std::size_t n = points.size();
    double cutoff = corner_distance(points.dim(), points.norm());
    try {
        const auto ref = reference_radii(n, points.dim(), points.norm(), config.omega.value_or(default_omega(n)));
        cutoff = std::min(cutoff, 1.5 * ref.r1);
    } catch (const std::exception&) {
    }
    return cutoff;
}

// Builder radius agrees with the oracle: equal for min-degree radii, the oracle
// radius no larger for connectivity radii.
bool agrees(const std::optional<StructureOutcome>& o, const std::optional<double>& oracle_radius, bool l1) {
    if (!o || !o->success) return true;
    if (!oracle_radius || !o->radius) return false;
    return l1 ? *oracle_radius <= *o->radius : *oracle_radius == *o->radius;
}

}  // namespace

const char* to_string(ExperimentMode mode) {
    switch (mode) {
        case ExperimentMode::HamiltonCycle: return "HC";
        case ExperimentMode::PerfectMatching: return "PM";
        case ExperimentMode::Both: return "both";
        case ExperimentMode::MinDegreeOnly: return "min-degree-only";
    }
    return "?";
}

ExperimentMode parse_experiment_mode(std::string_view text) {
    if (text == "HC" || text == "hc") return ExperimentMode::HamiltonCycle;
    if (text == "PM" || text == "pm") return ExperimentMode::PerfectMatching;
    if (text == "both") return ExperimentMode::Both;
    if (text == "min-degree-only") return ExperimentMode::MinDegreeOnly;
    throw std::invalid_argument("unknown mode '" + std::string(text) + "' (HC, PM, both, min-degree-only)");
}

void ExperimentConfig::validate() const {
    if (d < 2) throw std::invalid_argument("config: d must be >= 2");
    if (n_list.empty()) throw std::invalid_argument("config: n_list is empty");
    for (auto n : n_list) {
        if (n < 2) throw std::invalid_argument("config: every n must be >= 2");
    }
    if (!(K > 0.0)) throw std::invalid_argument("config: K must be positive");
    if (!(epsilon > 0.0 && epsilon < 1.0)) throw std::invalid_argument("config: epsilon must lie in (0,1)");
    if (!(A > 0.0)) throw std::invalid_argument("config: A must be positive");
    if (omega && !(*omega > 0.0)) throw std::invalid_argument("config: omega must be positive");
    if (oracle_limit > kOracleMatchingLimit) {
        throw std::invalid_argument("config: oracle_limit above " + std::to_string(kOracleMatchingLimit));
    }
    if (retries < 0) throw std::invalid_argument("config: retries must be >= 0");
}

Seed trial_seed(Seed master, std::size_t n_index, std::size_t trial) {
    return mix_seed(master, n_index, trial);
}

TrialRecord run_trial(const ExperimentConfig& config, std::size_t n_index, std::size_t trial) {
    const auto start = std::chrono::steady_clock::now();
    TrialRecord rec;
    rec.n = config.n_list.at(n_index);
    rec.trial = trial;
    rec.seed = trial_seed(config.seed, n_index, trial);
    try {
        const std::size_t n = rec.n;
        const auto points = sample_points(n, config.d, mix_seed(rec.seed, 1), config.p);
        const Colour colours = colour_count_for(config.K, n);
        const Seed colour_seed = mix_seed(rec.seed, 2);
        const bool oracle = config.oracle_limit > 0 && n <= config.oracle_limit;
        const auto process =
            oracle ? build_process_with_colours(points, corner_distance(config.d, config.p), colours, colour_seed)
                   : build_process_reaching(points, initial_cutoff(points, config), colours, colour_seed, 2, true);
        rec.radii = compute_hitting_radii(process);

        BuildOptions opt;
        opt.epsilon = config.epsilon;
        opt.A = config.A;
        opt.omega = config.omega;
        opt.retries = config.retries;
        opt.oracle_fallback_limit = config.oracle_limit;
        opt.run_diagnostics = config.diagnostics;
        const bool want_hc = config.mode == ExperimentMode::HamiltonCycle || config.mode == ExperimentMode::Both;
        const bool want_pm = config.mode == ExperimentMode::PerfectMatching || config.mode == ExperimentMode::Both;
        if (want_hc && n >= 4) {
            const auto report = build_rainbow_on(process, Structure::HamiltonCycle, opt);
            rec.hc = outcome_of(report);
            if (report.diagnostics) rec.diagnostics = report.diagnostics->checks;
            opt.run_diagnostics = false;
        }
        if (want_pm && n % 2 == 0) {
            const auto report = build_rainbow_on(process, Structure::PerfectMatching, opt);
            rec.pm = outcome_of(report);
            if (report.diagnostics) rec.diagnostics = report.diagnostics->checks;
        }
        if (oracle && config.mode != ExperimentMode::MinDegreeOnly) {
            rec.oracle.run = true;
            if (n >= 3 && n <= std::max(config.oracle_limit, std::size_t{3})) {
                if (auto h = exact_hitting_rainbow(process, Structure::HamiltonCycle, config.oracle_limit)) {
                    rec.oracle.r_rhc = h->radius;
                }
            }
            if (n % 2 == 0) {
                if (auto h = exact_hitting_rainbow(process, Structure::PerfectMatching, config.oracle_limit)) {
                    rec.oracle.r_rpm = h->radius;
                }
            }
            rec.radii.r_rhc = rec.oracle.r_rhc;
            rec.radii.r_rpm = rec.oracle.r_rpm;
            auto at_least = [](const std::optional<double>& hit, const std::map<int, double>& m, int k) {
                if (!hit) return true;
                const auto it = m.find(k);
                return it != m.end() && *hit >= it->second;
            };
            rec.oracle.necessity_ok =
                at_least(rec.oracle.r_rhc, rec.radii.r_min_deg, 2) && at_least(rec.oracle.r_rpm, rec.radii.r_min_deg, 1);
            const bool l1 = config.p.is_l1();
            rec.oracle.agrees = agrees(rec.hc, rec.oracle.r_rhc, l1) && agrees(rec.pm, rec.oracle.r_rpm, l1);
        }
    } catch (const std::exception& e) {
        rec.error = e.what();
    }
    rec.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return rec;
}

std::vector<TrialRecord> run_trials(const ExperimentConfig& config, unsigned threads) {
    config.validate();
    const std::size_t per = config.trials;
    std::vector<TrialRecord> out(config.n_list.size() * per);
    parallel_for(out.size(), threads, [&](std::size_t i) { out[i] = run_trial(config, i / per, i % per); });
    return out;
}

bool non_decreasing_within_two_se(const StructureSummary& a, const StructureSummary& b) {
    const double se = std::sqrt(a.std_error * a.std_error + b.std_error * b.std_error);
    return b.frequency >= a.frequency - 2.0 * se;
}

ExperimentSummary summarize(const ExperimentConfig& config, const std::vector<TrialRecord>& records) {
    ExperimentSummary out;
    auto add = [](std::optional<StructureSummary>& s, const StructureOutcome& o) {
        if (!s) s.emplace();
        ++s->attempted;
        if (o.success) ++s->success;
        if (o.used_oracle) ++s->oracle_fallbacks;
        if (!o.ledger_ok) ++s->ledger_failures;
        if (o.stage == "validate") ++s->invalid_certificates;
        if (!o.success) ++s->failures_by_stage[o.stage];
    };
    auto finish = [](std::optional<StructureSummary>& s) {
        if (!s || s->attempted == 0) return;
        s->frequency = static_cast<double>(s->success) / static_cast<double>(s->attempted);
        s->std_error = std::sqrt(s->frequency * (1.0 - s->frequency) / static_cast<double>(s->attempted));
    };
    for (std::size_t k = 0; k < config.n_list.size(); ++k) {
        SizeSummary sz;
        sz.n = config.n_list[k];
        const std::size_t lo = std::min(records.size(), k * config.trials);
        const std::size_t hi = std::min(records.size(), (k + 1) * config.trials);
        for (std::size_t i = lo; i < hi; ++i) {
            const auto& r = records[i];
            ++sz.trials;
            if (!r.error.empty()) ++sz.errors;
            if (r.hc) add(sz.hc, *r.hc);
            if (r.pm) add(sz.pm, *r.pm);
            for (const auto& c : r.diagnostics) {
                if (!c.passed) continue;
                auto& [passed, judged] = sz.diagnostics[c.name];
                ++judged;
                if (*c.passed) ++passed;
            }
            if (r.oracle.run) {
                ++sz.oracle_runs;
                if (r.oracle.agrees) ++sz.oracle_agreements;
                if (!r.oracle.necessity_ok) ++sz.necessity_violations;
            }
        }
        finish(sz.hc);
        finish(sz.pm);
        out.sizes.push_back(std::move(sz));
    }
    for (std::size_t k = 1; k < out.sizes.size(); ++k) {
        const auto& a = out.sizes[k - 1];
        const auto& b = out.sizes[k];
        if (a.hc && b.hc && !non_decreasing_within_two_se(*a.hc, *b.hc)) out.hc_trend_ok = false;
        if (a.pm && b.pm && !non_decreasing_within_two_se(*a.pm, *b.pm)) out.pm_trend_ok = false;
    }
    return out;
}

std::vector<LawPoint> min_degree_law_experiment(const ExperimentConfig& config, unsigned threads) {
    config.validate();
    const auto params = LimitLawParams::from(config.d, config.p);
    std::vector<LawPoint> out;
    for (std::size_t k = 0; k < config.n_list.size(); ++k) {
        const std::size_t n = config.n_list[k];
        std::vector<double> r_pm, r_hc;
        double cutoff = 0.0;
        for (double a : config.alphas) {
            r_pm.push_back(corollary_radius(n, config.d, config.p, a, Structure::PerfectMatching));
            r_hc.push_back(corollary_radius(n, config.d, config.p, a, Structure::HamiltonCycle));
            cutoff = std::max({cutoff, r_pm.back(), r_hc.back()});
        }
        // Largest first- and second-neighbour distance per trial (inf beyond the cutoff).
        std::vector<std::pair<double, double>> worst(config.trials);
        parallel_for(config.trials, threads, [&](std::size_t t) {
            const auto points = sample_points(n, config.d, mix_seed(trial_seed(config.seed, k, t), 3), config.p);
            const auto d1 = kth_neighbour_distances(points, 1, cutoff);
            const auto d2 = kth_neighbour_distances(points, 2, cutoff);
            worst[t] = {*std::max_element(d1.begin(), d1.end()), *std::max_element(d2.begin(), d2.end())};
        });
        for (std::size_t a = 0; a < config.alphas.size(); ++a) {
            LawPoint pm{Structure::PerfectMatching, n, config.alphas[a], r_pm[a], config.trials, 0, 0.0,
                        limit_cdf_pm(config.alphas[a], params)};
            LawPoint hc{Structure::HamiltonCycle, n, config.alphas[a], r_hc[a], config.trials, 0, 0.0,
                        limit_cdf_hc(config.alphas[a], params)};
            for (const auto& [m1, m2] : worst) {
                if (m1 <= r_pm[a]) ++pm.hits;
                if (m2 <= r_hc[a]) ++hc.hits;
            }
            if (config.trials > 0) {
                pm.empirical = static_cast<double>(pm.hits) / static_cast<double>(config.trials);
                hc.empirical = static_cast<double>(hc.hits) / static_cast<double>(config.trials);
            }
            out.push_back(pm);
            out.push_back(hc);
        }
    }
    return out;
}

}  // namespace rrgg
