#include <algorithm>
#include <cmath>
#include <unordered_set>

#include "rrgg/builder.hpp"
#include "rrgg/hamilton.hpp"

namespace rrgg {

namespace {

std::vector<char> covered_by(const UglyPathPlan& plan, std::size_t n) {
    std::vector<char> covered(n, 0);
    for (const auto& p : plan.paths) {
        for (Vertex v : p.vertices) covered[v] = 1;
    }
    return covered;
}

std::vector<Vertex> uncovered_in(const CellGrid& grid, CellId c, const std::vector<char>& covered) {
    std::vector<Vertex> xs;
    for (Vertex v : grid.vertices(c)) {
        if (!covered[v]) xs.push_back(v);
    }
    return xs;
}

}  // namespace

std::vector<BadForest> build_bad_forests(const BuildContext& ctx, const UglyPathPlan& plan, RainbowLedger& ledger,
                                         BadForestStats* stats) {
    const auto covered = covered_by(plan, ctx.process.n());
    const auto cap = static_cast<std::size_t>(std::ceil(4.0 / ctx.epsilon));
    std::vector<BadForest> out;
    BadForestStats local;
    for (CellId c : ctx.cls.cells_with(CellLabel::Bad)) {
        const auto xs = uncovered_in(ctx.grid, c, covered);
        BadForest forest{c, {}};
        if (!xs.empty()) {
            const std::string piece = "bad cell " + std::to_string(c);
            forest.paths.push_back({xs.front()});
            for (std::size_t t = 1; t < xs.size(); ++t) {
                if (ledger.try_register(ctx.process, xs[t - 1], xs[t], Stage::Bad, piece)) {
                    forest.paths.push_back({});
                }
                forest.paths.back().push_back(xs[t]);
            }
        }
        local.max_paths = std::max(local.max_paths, forest.paths.size());
        if (forest.paths.size() > cap) ++local.oversized_cells;
        out.push_back(std::move(forest));
    }
    if (stats) *stats = local;
    return out;
}

Result<std::vector<GoodCycle>> build_good_cycles(const BuildContext& ctx, const UglyPathPlan& plan,
                                                 RainbowLedger& ledger) {
    const auto covered = covered_by(plan, ctx.process.n());
    std::vector<GoodCycle> out;
    for (CellId c : ctx.cls.cells_with(CellLabel::Good)) {
        const auto xs = uncovered_in(ctx.grid, c, covered);
        const std::string piece = "good cell " + std::to_string(c);
        if (xs.size() < 3) {
            return BuildFailure{"good", piece, std::to_string(xs.size()) + " uncovered vertices, need 3"};
        }
        // Keep an edge if its colour is unused so far and new within this cell.
        LocalGraph survivors(xs.size());
        std::unordered_set<Colour> seen;
        for (std::uint32_t a = 0; a < xs.size(); ++a) {
            for (std::uint32_t b = a + 1; b < xs.size(); ++b) {
                const Colour col = ledger.reveal(ctx.process, xs[a], xs[b], Stage::Good);
                const bool fresh = !ledger.colour_used(col) && seen.insert(col).second;
                if (fresh) {
                    survivors[a].push_back(b);
                    survivors[b].push_back(a);
                }
            }
        }
        for (auto& list : survivors) std::sort(list.begin(), list.end());
        const auto order = find_hamilton_cycle(survivors);
        if (!order) {
            std::size_t min_deg = xs.size();
            for (const auto& list : survivors) min_deg = std::min(min_deg, list.size());
            return BuildFailure{"good", piece,
                                "surviving graph on " + std::to_string(xs.size()) +
                                    " vertices is not Hamiltonian (min degree " + std::to_string(min_deg) + ")"};
        }
        GoodCycle cycle{c, {}};
        for (auto i : *order) cycle.cycle.push_back(xs[i]);
        for (std::size_t t = 0; t < cycle.cycle.size(); ++t) {
            const Vertex u = cycle.cycle[t];
            const Vertex v = cycle.cycle[(t + 1) % cycle.cycle.size()];
            if (ledger.try_register(ctx.process, u, v, Stage::Good, piece)) {
                return BuildFailure{"good", piece, "colour collision while registering the cycle"};
            }
        }
        out.push_back(std::move(cycle));
    }
    return out;
}

}  // namespace rrgg
