#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <tuple>

#include "rrgg/builder.hpp"
#include "rrgg/hamilton.hpp"

namespace rrgg {

namespace {

constexpr std::size_t kMaxExactComponent = 16;
constexpr std::size_t kMaxExitPairs = 4096;

std::string component_name(std::size_t k, const std::vector<CellId>& cells) {
    std::string s = "ugly component " + std::to_string(k) + " (cells";
    for (std::size_t i = 0; i < cells.size() && i < 8; ++i) s += " " + std::to_string(cells[i]);
    if (cells.size() > 8) s += " ...";
    return s + ")";
}

class Planner {
public:
    Planner(const BuildContext& ctx)
        : ctx_(ctx),
          g_(snapshot(ctx.process, ctx.radius)),
          covered_(ctx.process.n(), 0),
          in_component_(ctx.process.n(), 0) {}

    Result<UglyPathPlan> run() {
        UglyPathPlan plan;
        plan.mode = ctx_.mode;
        const auto comps = label_components(ctx_.graph, ctx_.cls, CellLabel::Ugly);
        for (std::size_t k = 0; k < comps.size(); ++k) {
            std::vector<Vertex> xs;
            for (CellId c : comps[k]) {
                const auto vs = ctx_.grid.vertices(c);
                xs.insert(xs.end(), vs.begin(), vs.end());
            }
            if (xs.empty()) continue;
            std::sort(xs.begin(), xs.end());
            for (Vertex v : xs) in_component_[v] = 1;
            auto path = ctx_.mode == Structure::HamiltonCycle ? plan_cycle_mode(xs) : plan_matching_mode(xs);
            for (Vertex v : xs) in_component_[v] = 0;
            if (!path) {
                return BuildFailure{"ugly", component_name(k, comps[k]), reason_};
            }
            path->component = k;
            commit(*path);
            plan.paths.push_back(std::move(*path));
        }
        measure_separation(plan);
        return plan;
    }

private:
    struct Exit {
        double length;
        Vertex inside;
        Vertex outside;
    };

    CellId cell(Vertex v) const { return ctx_.grid.cell_of(v); }
    bool ugly(CellId c) const { return ctx_.cls.label[c] == CellLabel::Ugly; }
    bool good(CellId c) const { return ctx_.cls.label[c] == CellLabel::Good; }
    int load(CellId c) const {
        const auto it = load_.find(c);
        return it == load_.end() ? 0 : it->second;
    }
    bool within(Vertex a, Vertex b) const { return ctx_.process.length_of(a, b) <= ctx_.radius; }

    void commit(const UglyPath& path) {
        for (Vertex v : path.vertices) {
            covered_[v] = 1;
            if (!ugly(cell(v))) ++load_[cell(v)];
        }
    }

    // Edges from the component to uncovered vertices of non-ugly cells, shortest first.
    std::vector<Exit> exits(const std::vector<Vertex>& xs) const {
        std::vector<Exit> out;
        for (Vertex x : xs) {
            for (const auto& a : g_.neighbours(x)) {
                const Vertex y = a.to;
                if (in_component_[y] || covered_[y] || ugly(cell(y)) || load(cell(y)) >= 2) continue;
                out.push_back({a.length, x, y});
            }
        }
        std::sort(out.begin(), out.end(), [](const Exit& a, const Exit& b) {
            return std::tie(a.length, a.inside, a.outside) < std::tie(b.length, b.inside, b.outside);
        });
        return out;
    }

    // Hamilton path through xs (edges <= radius) with optional fixed ends.
    std::optional<std::vector<Vertex>> spanning_path(const std::vector<Vertex>& xs, std::optional<Vertex> s,
                                                     std::optional<Vertex> t) {
        const std::size_t m = xs.size();
        if (m == 1) return xs;
        bool clique = true;
        for (std::size_t a = 0; a < m && clique; ++a) {
            for (std::size_t b = a + 1; b < m && clique; ++b) clique = within(xs[a], xs[b]);
        }
        if (clique) {
            std::vector<Vertex> order;
            if (s) order.push_back(*s);
            for (Vertex v : xs) {
                if ((!s || v != *s) && (!t || v != *t)) order.push_back(v);
            }
            if (t) order.push_back(*t);
            return order;
        }
        if (m > kMaxExactComponent) {
            reason_ = std::to_string(m) + " vertices that are not a clique at the radius";
            return std::nullopt;
        }
        LocalGraph lg(m);
        for (std::size_t a = 0; a < m; ++a) {
            for (std::size_t b = 0; b < m; ++b) {
                if (a != b && within(xs[a], xs[b])) lg[a].push_back(static_cast<std::uint32_t>(b));
            }
        }
        auto local = [&](std::optional<Vertex> v) -> std::optional<std::uint32_t> {
            if (!v) return std::nullopt;
            return static_cast<std::uint32_t>(std::lower_bound(xs.begin(), xs.end(), *v) - xs.begin());
        };
        const auto order = exact_hamilton_path(lg, local(s), local(t));
        if (!order) {
            reason_ = "no Hamilton path through the component at the radius";
            return std::nullopt;
        }
        std::vector<Vertex> out;
        for (auto i : *order) out.push_back(xs[i]);
        return out;
    }

    std::optional<Vertex> free_vertex(CellId c, int extra_load, std::initializer_list<Vertex> exclude) const {
        if (load(c) + extra_load >= 2) return std::nullopt;
        for (Vertex v : ctx_.grid.vertices(c)) {
            if (covered_[v] || std::find(exclude.begin(), exclude.end(), v) != exclude.end()) continue;
            return v;
        }
        return std::nullopt;
    }

    std::optional<CellId> good_cell_at_or_next_to(CellId c) const {
        if (good(c)) return c;
        for (CellId w : ctx_.graph.neighbours(c)) {
            if (good(w)) return w;
        }
        return std::nullopt;
    }

    // Extends v P0 v' so that both ends sit next to one good cell.
    std::optional<UglyPath> complete(std::vector<Vertex> q) {
        const Vertex v = q.front();
        const Vertex v2 = q.back();
        const CellId d = cell(v);
        const CellId d2 = cell(v2);
        if (d == d2) {
            const auto anchor = good_cell_at_or_next_to(d);
            if (!anchor) return std::nullopt;
            return UglyPath{std::move(q), anchor, 0};
        }
        const bool adjacent = ctx_.graph.adjacent(d, d2);
        if (adjacent && good(d2)) {
            if (const auto extra = free_vertex(d2, 1, {v2}); extra && within(*extra, v)) {
                q.insert(q.begin(), *extra);
                return UglyPath{std::move(q), d2, 0};
            }
        }
        if (adjacent && good(d)) {
            if (const auto extra = free_vertex(d, 1, {v}); extra && within(v2, *extra)) {
                q.push_back(*extra);
                return UglyPath{std::move(q), d, 0};
            }
        }
        // Walk through good cells from D' until reaching one adjacent to D.
        const std::size_t total = ctx_.grid.cell_count();
        std::map<CellId, CellId> parent;
        std::vector<CellId> queue;
        auto next_to_d = [&](CellId c) { return ctx_.graph.adjacent(c, d); };
        auto usable = [&](CellId c) { return good(c) && c != d && c != d2; };
        std::optional<CellId> target;
        for (CellId c : ctx_.graph.neighbours(d2)) {
            if (!usable(c)) continue;
            parent.emplace(c, total);
            if (next_to_d(c)) {
                target = c;
                break;
            }
            if (free_vertex(c, 0, {})) queue.push_back(c);
        }
        for (std::size_t h = 0; h < queue.size() && !target; ++h) {
            for (CellId c : ctx_.graph.neighbours(queue[h])) {
                if (!usable(c) || parent.contains(c)) continue;
                parent.emplace(c, queue[h]);
                if (next_to_d(c)) {
                    target = c;
                    break;
                }
                if (free_vertex(c, 0, {})) queue.push_back(c);
            }
        }
        if (!target) return std::nullopt;
        std::vector<CellId> chain;
        for (CellId c = parent.at(*target); c != total; c = parent.at(c)) chain.push_back(c);
        std::reverse(chain.begin(), chain.end());
        for (CellId c : chain) {
            const auto extra = free_vertex(c, 0, {});
            if (!extra || !within(q.back(), *extra)) return std::nullopt;
            q.push_back(*extra);
        }
        return UglyPath{std::move(q), target, 0};
    }

    std::optional<UglyPath> plan_cycle_mode(const std::vector<Vertex>& xs) {
        const auto ex = exits(xs);
        const bool single = xs.size() == 1;
        std::size_t tried = 0;
        reason_ = "no two disjoint exit edges at the radius";
        for (std::size_t a = 0; a < ex.size(); ++a) {
            for (std::size_t b = a + 1; b < ex.size(); ++b) {
                const Exit& e1 = ex[a];
                const Exit& e2 = ex[b];
                if (e1.outside == e2.outside) continue;
                if (single != (e1.inside == e2.inside)) continue;
                if (cell(e1.outside) == cell(e2.outside) && load(cell(e1.outside)) > 0) continue;
                if (++tried > kMaxExitPairs) return std::nullopt;
                auto p0 = spanning_path(xs, e1.inside, single ? std::nullopt : std::optional<Vertex>(e2.inside));
                if (!p0) continue;
                std::vector<Vertex> q{e1.outside};
                q.insert(q.end(), p0->begin(), p0->end());
                q.push_back(e2.outside);
                if (auto path = complete(std::move(q))) return path;
                reason_ = "exit edges found but no good cell joins both ends";
            }
        }
        return std::nullopt;
    }

    std::optional<UglyPath> plan_matching_mode(const std::vector<Vertex>& xs) {
        if (xs.size() % 2 == 0) {
            auto p = spanning_path(xs, std::nullopt, std::nullopt);
            if (!p) return std::nullopt;
            return UglyPath{std::move(*p), std::nullopt, 0};
        }
        reason_ = "odd component without an exit edge at the radius";
        for (const Exit& e : exits(xs)) {
            auto p = spanning_path(xs, std::nullopt, e.inside);
            if (!p) continue;
            p->push_back(e.outside);
            return UglyPath{std::move(*p), std::nullopt, 0};
        }
        return std::nullopt;
    }

    void measure_separation(UglyPathPlan& plan) const {
        const auto& pts = ctx_.process.points();
        for (std::size_t a = 0; a < plan.paths.size(); ++a) {
            for (std::size_t b = a + 1; b < plan.paths.size(); ++b) {
                for (Vertex u : plan.paths[a].vertices) {
                    for (Vertex v : plan.paths[b].vertices) {
                        plan.min_separation = std::min(plan.min_separation, pts.distance(u, v));
                    }
                }
            }
        }
        plan.separation_ok = plan.min_separation >= ctx_.A * ctx_.r0;
    }

    const BuildContext& ctx_;
    Snapshot g_;
    std::vector<char> covered_;
    std::vector<char> in_component_;
    std::map<CellId, int> load_;
    std::string reason_;
};

}  // namespace

Result<UglyPathPlan> plan_ugly_paths(const BuildContext& ctx) {
    return Planner(ctx).run();
}

std::optional<BuildFailure> colour_ugly_paths(const UglyPathPlan& plan, const ColouredProcess& process,
                                              RainbowLedger& ledger) {
    for (std::size_t k = 0; k < plan.paths.size(); ++k) {
        const auto& vs = plan.paths[k].vertices;
        const std::string piece = "ugly path " + std::to_string(k);
        for (std::size_t t = 0; t + 1 < vs.size(); ++t) {
            if (const auto clash = ledger.try_register(process, vs[t], vs[t + 1], Stage::Ugly, piece)) {
                const auto& other = ledger.entries()[*clash];
                return BuildFailure{"ugly-colours", piece,
                                    "edges {" + std::to_string(vs[t]) + "," + std::to_string(vs[t + 1]) + "} and {" +
                                        std::to_string(other.i) + "," + std::to_string(other.j) +
                                        "} share colour " + std::to_string(other.colour)};
            }
        }
    }
    return std::nullopt;
}

}  // namespace rrgg
