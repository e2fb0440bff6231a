#include <algorithm>
#include <array>
#include <limits>
#include <map>

#include "rrgg/builder.hpp"

namespace rrgg {

namespace {

constexpr Vertex kNone = std::numeric_limits<Vertex>::max();

struct HookPool {
    std::vector<std::pair<Vertex, Vertex>> edges;  // alternating positions 0, 2, ... of the cycle
    std::vector<char> used;
};

class Stitcher {
public:
    Stitcher(const BuildContext& ctx, RainbowLedger& ledger, StitchPlan& plan)
        : ctx_(ctx), ledger_(ledger), plan_(plan), nb_(ctx.process.n(), {kNone, kNone}) {}

    void add_edge(Vertex a, Vertex b) {
        attach(a, b);
        attach(b, a);
    }

    void add_cycle(const GoodCycle& c) {
        const auto& cy = c.cycle;
        for (std::size_t t = 0; t < cy.size(); ++t) add_edge(cy[t], cy[(t + 1) % cy.size()]);
        HookPool pool;
        for (std::size_t p = 0; p + 2 <= cy.size(); p += 2) pool.edges.emplace_back(cy[p], cy[p + 1]);
        pool.used.assign(pool.edges.size(), 0);
        pools_.emplace(c.cell, std::move(pool));
    }

    void add_path(const std::vector<Vertex>& p) {
        for (std::size_t t = 0; t + 1 < p.size(); ++t) add_edge(p[t], p[t + 1]);
    }

    bool has_pool(CellId c) const { return pools_.contains(c); }

    // Replaces a hook edge x-y of the cell's cycle by x-a ... b-y.
    std::optional<BuildFailure> hook_path(CellId cell, Vertex a, Vertex b, const std::string& piece) {
        auto& pool = pools_.at(cell);
        for (std::size_t h = 0; h < pool.edges.size(); ++h) {
            if (pool.used[h]) continue;
            const auto [x, y] = pool.edges[h];
            for (int flip = 0; flip < (a == b ? 1 : 2); ++flip) {
                const Vertex s = flip ? b : a;
                const Vertex t = flip ? a : b;
                if (!fresh_pair(x, s, y, t)) continue;
                register_pair(x, s, piece);
                register_pair(y, t, piece);
                pool.used[h] = 1;
                replace(x, y, s);
                replace(y, x, t);
                attach(s, x);
                attach(t, y);
                plan_.hooks.emplace(piece, std::make_pair(x, y));
                return std::nullopt;
            }
        }
        return BuildFailure{"stitch", piece,
                            "no admissible hook edge in good cell " + std::to_string(cell) + " (" +
                                std::to_string(pool.edges.size()) + " alternating edges)"};
    }

    // Joins the child cycle into the parent cycle through one hook edge in each.
    std::optional<BuildFailure> merge(CellId parent, CellId child) {
        auto& pp = pools_.at(parent);
        auto& pc = pools_.at(child);
        const std::string piece = "tree edge " + std::to_string(child) + "-" + std::to_string(parent);
        for (std::size_t h = 0; h < pp.edges.size(); ++h) {
            if (pp.used[h]) continue;
            const auto [x, y] = pp.edges[h];
            for (std::size_t k = 0; k < pc.edges.size(); ++k) {
                if (pc.used[k]) continue;
                const auto [u, w] = pc.edges[k];
                for (int flip = 0; flip < 2; ++flip) {
                    const Vertex s = flip ? w : u;
                    const Vertex t = flip ? u : w;
                    if (!fresh_pair(x, s, y, t)) continue;
                    register_pair(x, s, piece);
                    register_pair(y, t, piece);
                    pp.used[h] = 1;
                    pc.used[k] = 1;
                    replace(x, y, s);
                    replace(y, x, t);
                    replace(s, t, x);
                    replace(t, s, y);
                    plan_.hooks.emplace(piece + " parent", std::make_pair(x, y));
                    plan_.hooks.emplace(piece + " child", std::make_pair(u, w));
                    return std::nullopt;
                }
            }
        }
        return BuildFailure{"stitch", piece, "no admissible pair of hook edges"};
    }

    // Walks the component of `start`; returns the vertex order if it is a cycle.
    std::optional<std::vector<Vertex>> walk_cycle(Vertex start) const {
        std::vector<Vertex> order;
        Vertex prev = kNone, cur = start;
        do {
            if (nb_[cur][0] == kNone || nb_[cur][1] == kNone) return std::nullopt;
            order.push_back(cur);
            const Vertex next = nb_[cur][0] != prev ? nb_[cur][0] : nb_[cur][1];
            prev = cur;
            cur = next;
            if (order.size() > nb_.size()) return std::nullopt;
        } while (cur != start);
        return order;
    }

private:
    void attach(Vertex a, Vertex b) {
        auto& slot = nb_[a];
        (slot[0] == kNone ? slot[0] : slot[1]) = b;
    }

    void replace(Vertex a, Vertex old_nb, Vertex new_nb) {
        auto& slot = nb_[a];
        (slot[0] == old_nb ? slot[0] : slot[1]) = new_nb;
    }

    bool admissible(Vertex a, Vertex b) const {
        const auto stage = ledger_.revealed_in(a, b);
        return (!stage || *stage == Stage::Stitch) && ctx_.process.length_of(a, b) <= ctx_.radius;
    }

    // Both new pairs unrevealed by earlier stages, with distinct unused colours.
    bool fresh_pair(Vertex a1, Vertex b1, Vertex a2, Vertex b2) {
        if (a1 == b1 || a2 == b2 || !admissible(a1, b1) || !admissible(a2, b2)) return false;
        const Colour c1 = ledger_.reveal(ctx_.process, a1, b1, Stage::Stitch);
        const Colour c2 = ledger_.reveal(ctx_.process, a2, b2, Stage::Stitch);
        return c1 != c2 && !ledger_.colour_used(c1) && !ledger_.colour_used(c2);
    }

    void register_pair(Vertex a, Vertex b, const std::string& piece) {
        ledger_.try_register(ctx_.process, a, b, Stage::Stitch, piece);
    }

    const BuildContext& ctx_;
    RainbowLedger& ledger_;
    StitchPlan& plan_;
    std::vector<std::array<Vertex, 2>> nb_;
    std::map<CellId, HookPool> pools_;
};

CertificateEdge cert_edge(const ColouredProcess& process, Vertex a, Vertex b) {
    return {std::min(a, b), std::max(a, b), process.colour_of(a, b), process.length_of(a, b)};
}

}  // namespace

Result<RainbowCertificate> stitch(const BuildContext& ctx, const UglyPathPlan& plan,
                                  const std::vector<BadForest>& forests, const std::vector<GoodCycle>& cycles,
                                  RainbowLedger& ledger, StitchPlan* out_plan) {
    StitchPlan local_plan;
    StitchPlan& sp = out_plan ? *out_plan : local_plan;
    Stitcher st(ctx, ledger, sp);
    const bool hc = ctx.mode == Structure::HamiltonCycle;
    if (cycles.empty()) return BuildFailure{"stitch", "tree", "no good cell"};

    for (const auto& c : cycles) st.add_cycle(c);

    // Spanning tree of the good cells by depth-first search, lowest ids first.
    const CellId root = cycles.front().cell;
    std::vector<CellId> preorder;
    {
        std::map<CellId, char> seen{{root, 1}};
        std::vector<std::pair<CellId, std::size_t>> stack{{root, 0}};
        preorder.push_back(root);
        while (!stack.empty()) {
            auto& [c, next] = stack.back();
            const auto nbs = ctx.graph.neighbours(c);
            bool pushed = false;
            while (next < nbs.size()) {
                const CellId w = nbs[next++];
                if (!st.has_pool(w) || seen.contains(w)) continue;
                seen.emplace(w, 1);
                sp.tree_parent.emplace(w, c);
                preorder.push_back(w);
                stack.emplace_back(w, 0);
                pushed = true;
                break;
            }
            if (!pushed) stack.pop_back();
        }
        if (preorder.size() != cycles.size()) {
            return BuildFailure{"stitch", "tree", "good cells do not form one component of the graph of cells"};
        }
    }

    if (hc) {
        for (std::size_t k = 0; k < plan.paths.size(); ++k) {
            const auto& p = plan.paths[k];
            const std::string piece = "ugly path " + std::to_string(k);
            if (!p.anchor || !st.has_pool(*p.anchor)) {
                return BuildFailure{"stitch", piece, "path has no good anchor cell"};
            }
            sp.ugly_parent.emplace(k, *p.anchor);
            st.add_path(p.vertices);
            if (auto f = st.hook_path(*p.anchor, p.vertices.front(), p.vertices.back(), piece)) return *f;
        }
    }

    for (const auto& forest : forests) {
        std::optional<CellId> parent;
        for (CellId w : ctx.graph.neighbours(forest.cell)) {
            if (st.has_pool(w)) {
                parent = w;
                break;
            }
        }
        const std::string cell_name = "bad cell " + std::to_string(forest.cell);
        if (!parent) return BuildFailure{"stitch", cell_name, "no adjacent good cell"};
        sp.bad_parent.emplace(forest.cell, *parent);
        for (std::size_t k = 0; k < forest.paths.size(); ++k) {
            const auto& path = forest.paths[k];
            st.add_path(path);
            const std::string piece = cell_name + " path " + std::to_string(k);
            if (auto f = st.hook_path(*parent, path.front(), path.back(), piece)) return *f;
        }
    }

    for (std::size_t t = 1; t < preorder.size(); ++t) {
        const CellId child = preorder[t];
        if (auto f = st.merge(sp.tree_parent.at(child), child)) return *f;
    }

    RainbowCertificate cert;
    cert.kind = ctx.mode;
    cert.radius = ctx.radius;
    const auto big = st.walk_cycle(cycles.front().cycle.front());
    if (!big) return BuildFailure{"stitch", "final", "pieces did not close into a cycle"};
    if (hc) {
        if (big->size() != ctx.process.n()) {
            return BuildFailure{"stitch", "final",
                                "cycle covers " + std::to_string(big->size()) + " of " +
                                    std::to_string(ctx.process.n()) + " vertices"};
        }
        for (std::size_t t = 0; t < big->size(); ++t) {
            cert.edges.push_back(cert_edge(ctx.process, (*big)[t], (*big)[(t + 1) % big->size()]));
        }
        return cert;
    }
    if (big->size() % 2 != 0) {
        return BuildFailure{"stitch", "final", "cycle through non-ugly vertices has odd length " +
                                                   std::to_string(big->size())};
    }
    for (std::size_t t = 0; t < big->size(); t += 2) cert.edges.push_back(cert_edge(ctx.process, (*big)[t], (*big)[t + 1]));
    for (const auto& p : plan.paths) {
        if (p.vertices.size() % 2 != 0) {
            return BuildFailure{"stitch", "final", "ugly path with an odd number of vertices"};
        }
        for (std::size_t t = 0; t < p.vertices.size(); t += 2) {
            cert.edges.push_back(cert_edge(ctx.process, p.vertices[t], p.vertices[t + 1]));
        }
    }
    if (cert.edges.size() * 2 != ctx.process.n()) {
        return BuildFailure{"stitch", "final", "matching leaves vertices uncovered"};
    }
    return cert;
}

}  // namespace rrgg
