#include <cmath>
#include <stdexcept>

#include "rrgg/builder.hpp"
#include "rrgg/oracle.hpp"

namespace rrgg {

namespace {

bool colour_dependent(const std::string& stage) {
    return stage != "hitting" && stage != "tessellation";
}

void attempt(const ColouredProcess& process, Structure mode, const BuildOptions& opt, BuildReport& report) {
    const std::size_t n = process.n();
    const int d = process.points().dim();
    const NormParam p = process.points().norm();
    const int k = mode == Structure::HamiltonCycle ? 2 : 1;

    report.radius_kind = p.is_l1() ? RadiusKind::Connectivity : RadiusKind::MinDegree;
    const auto hit = p.is_l1() ? hitting_radius_kconn(process, k) : hitting_radius_min_degree(process, k);
    if (!hit) {
        report.failure = BuildFailure{"hitting", "process", "hitting radius not reached within the cutoff"};
        return;
    }
    const double radius = hit->radius;
    report.radius = radius;

    auto fallback = [&](const std::string& why) {
        if (n <= opt.oracle_fallback_limit) {
            if (auto cert = exact_certificate(process, mode, radius)) {
                report.certificate = std::move(*cert);
                report.used_oracle = true;
                return;
            }
            report.failure = BuildFailure{"oracle", "instance", "no rainbow structure at the hitting radius"};
            return;
        }
        report.failure = BuildFailure{"tessellation", "grid", why};
    };

    double r0 = 0.0;
    if (opt.r0_override) {
        r0 = *opt.r0_override;
    } else {
        try {
            r0 = reference_radii(n, d, p, opt.omega.value_or(default_omega(n))).r0;
        } catch (const std::exception& e) {
            return fallback(e.what());
        }
    }
    report.r0 = r0;
    if (r0 > radius) {
        return fallback("r0 exceeds the hitting radius");
    }

    std::optional<CellGrid> grid;
    std::optional<CellGraph> graph;
    try {
        grid.emplace(build_grid(process.points(), r0, opt.epsilon));
        graph.emplace(build_cell_graph(*grid, r0, p));
    } catch (const std::domain_error& e) {
        return fallback(e.what());
    }
    const auto cls = classify_cells(*grid, *graph, opt.epsilon, n);
    if (opt.run_diagnostics) {
        DiagnosticsParams dp;
        dp.n = n;
        dp.p = p;
        dp.r0 = r0;
        try {
            dp.r1 = reference_radii(n, d, p, opt.omega.value_or(default_omega(n))).r1;
        } catch (const std::exception&) {
            dp.r1 = r0;
        }
        dp.epsilon = opt.epsilon;
        dp.A = opt.A;
        dp.power = opt.power;
        dp.process = &process;
        report.diagnostics = diagnostics(*grid, *graph, cls, dp);
    }
    if (cls.degenerate) {
        return fallback("no dense cell");
    }

    const BuildContext ctx{process, *grid, *graph, cls, mode, radius, r0, opt.A, opt.epsilon};
    RainbowLedger ledger;
    auto finish = [&](const BuildFailure& f) {
        report.failure = f;
        report.ledger_ok = ledger.audit();
    };

    auto plan = plan_ugly_paths(ctx);
    if (!plan) return finish(plan.failure());
    report.ugly_paths = plan->paths.size();
    if (auto f = colour_ugly_paths(*plan, process, ledger)) return finish(*f);
    const auto forests = build_bad_forests(ctx, *plan, ledger, &report.forest_stats);
    for (const auto& f : forests) report.bad_paths += f.paths.size();
    auto cycles = build_good_cycles(ctx, *plan, ledger);
    if (!cycles) return finish(cycles.failure());
    report.good_cells = cycles->size();
    auto cert = stitch(ctx, *plan, forests, *cycles, ledger);
    report.ledger_ok = ledger.audit();
    if (!cert) return finish(cert.failure());
    report.certificate = std::move(*cert);
}

}  // namespace

const char* to_string(RadiusKind kind) {
    return kind == RadiusKind::MinDegree ? "min-degree" : "connectivity";
}

BuildReport build_rainbow_on(const ColouredProcess& process, Structure mode, const BuildOptions& options) {
    const std::size_t n = process.n();
    if (mode == Structure::HamiltonCycle && n < 4) {
        throw std::invalid_argument("build_rainbow: Hamilton cycle mode needs n >= 4");
    }
    if (mode == Structure::PerfectMatching && (n < 2 || n % 2 != 0)) {
        throw std::invalid_argument("build_rainbow: perfect matching mode needs even n >= 2");
    }
    BuildReport report;
    std::optional<ColouredProcess> recoloured;
    for (int a = 0; a <= std::max(0, options.retries); ++a) {
        const ColouredProcess* current = &process;
        if (a > 0) {
            recoloured.emplace(build_process_with_colours(process.points(), process.cutoff(), process.colour_count(),
                                                          mix_seed(process.colour_seed(), 0x7265747279ULL, a)));
            current = &*recoloured;
        }
        report = BuildReport{};
        report.attempts = a + 1;
        report.colour_seed = current->colour_seed();
        attempt(*current, mode, options, report);
        if (report.certificate) {
            report.certificate_violations = validate_certificate(*report.certificate, *current);
            if (!report.certificate_violations.empty()) {
                report.failure = BuildFailure{"validate", "certificate", report.certificate_violations.front()};
                report.certificate.reset();
            }
        }
        if (report.certificate || !colour_dependent(report.failure->stage)) break;
    }
    return report;
}

BuildReport build_rainbow(const PointSet& points, double K, Seed colour_seed, Structure mode,
                          const BuildOptions& options) {
    const std::size_t n = points.size();
    if (mode == Structure::HamiltonCycle && n < 4) {
        throw std::invalid_argument("build_rainbow: Hamilton cycle mode needs n >= 4");
    }
    if (mode == Structure::PerfectMatching && (n < 2 || n % 2 != 0)) {
        throw std::invalid_argument("build_rainbow: perfect matching mode needs even n >= 2");
    }
    const int k = mode == Structure::HamiltonCycle ? 2 : 1;
    double initial = corner_distance(points.dim(), points.norm());
    try {
        const auto ref = reference_radii(n, points.dim(), points.norm(), options.omega.value_or(default_omega(n)));
        initial = std::min(initial, 1.5 * ref.r1);
    } catch (const std::exception&) {
    }
    const auto process =
        build_process_reaching(points, initial, colour_count_for(K, n), colour_seed, k, points.norm().is_l1());
    return build_rainbow_on(process, mode, options);
}

}  // namespace rrgg
