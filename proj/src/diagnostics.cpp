#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>

#include "rrgg/process.hpp"
#include "rrgg/tessellation.hpp"

namespace rrgg {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Cells reachable from c in at most `hops` steps (excluding c).
void power_neighbours(const CellGraph& graph, CellId c, int hops, std::vector<CellId>& out,
                      std::vector<int>& depth_scratch) {
    out.clear();
    if (hops <= 1) {
        const auto nb = graph.neighbours(c);
        out.assign(nb.begin(), nb.end());
        return;
    }
    std::vector<CellId> frontier{c};
    depth_scratch[c] = 0;
    std::vector<CellId> touched{c};
    for (int h = 1; h <= hops; ++h) {
        std::vector<CellId> next;
        for (CellId v : frontier) {
            for (CellId w : graph.neighbours(v)) {
                if (depth_scratch[w] < 0) {
                    depth_scratch[w] = h;
                    touched.push_back(w);
                    next.push_back(w);
                    out.push_back(w);
                }
            }
        }
        frontier.swap(next);
    }
    for (CellId v : touched) depth_scratch[v] = -1;
}

// Connected sets of sparse cells in the power graph, each with the maximum
// number of facets within reach that any of its cells has.
struct SparseComponent {
    std::size_t size;
    int max_facets;
};

std::vector<SparseComponent> sparse_components(const CellGrid& grid, const CellGraph& graph,
                                               const CellClassification& cls, int hops, double reach) {
    const std::size_t total = grid.cell_count();
    std::vector<char> seen(total, 0);
    std::vector<int> depth(total, -1);
    std::vector<CellId> nb;
    std::vector<SparseComponent> out;
    auto facets_near = [&](CellId c) {
        const auto fd = grid.facet_distances(c);
        int count = 0;
        for (std::size_t j = 0; j < fd.size(); j += 2) {
            // Facets on the same axis are never both within reach for small cells.
            if (std::min(fd[j], fd[j + 1]) <= reach) ++count;
        }
        return count;
    };
    for (CellId c = 0; c < total; ++c) {
        if (seen[c] || cls.dense[c]) continue;
        SparseComponent comp{0, 0};
        std::vector<CellId> queue{c};
        seen[c] = 1;
        for (std::size_t head = 0; head < queue.size(); ++head) {
            const CellId v = queue[head];
            ++comp.size;
            comp.max_facets = std::max(comp.max_facets, facets_near(v));
            power_neighbours(graph, v, hops, nb, depth);
            for (CellId w : nb) {
                if (!seen[w] && !cls.dense[w]) {
                    seen[w] = 1;
                    queue.push_back(w);
                }
            }
        }
        out.push_back(comp);
    }
    return out;
}

// Graph diameter of the subgraph induced by `members`; -1 if disconnected.
// Exact for small sets, otherwise the double-sweep upper bound 2*ecc.
long induced_diameter(const CellGraph& graph, const std::vector<CellId>& members, bool& exact) {
    if (members.empty()) return -1;
    auto index_of = [&](CellId c) -> long {
        auto it = std::lower_bound(members.begin(), members.end(), c);
        return (it != members.end() && *it == c) ? static_cast<long>(it - members.begin()) : -1;
    };
    auto bfs = [&](std::size_t src, std::vector<long>& dist) {
        dist.assign(members.size(), -1);
        std::vector<std::size_t> q{src};
        dist[src] = 0;
        for (std::size_t h = 0; h < q.size(); ++h) {
            for (CellId w : graph.neighbours(members[q[h]])) {
                const long k = index_of(w);
                if (k >= 0 && dist[k] < 0) {
                    dist[k] = dist[q[h]] + 1;
                    q.push_back(static_cast<std::size_t>(k));
                }
            }
        }
        return q.size() == members.size();
    };
    std::vector<long> dist;
    if (!bfs(0, dist)) return -1;
    if (members.size() <= 64) {
        exact = true;
        long diam = *std::max_element(dist.begin(), dist.end());
        for (std::size_t s = 1; s < members.size(); ++s) {
            bfs(s, dist);
            diam = std::max(diam, *std::max_element(dist.begin(), dist.end()));
        }
        return diam;
    }
    exact = false;
    const auto far = static_cast<std::size_t>(std::max_element(dist.begin(), dist.end()) - dist.begin());
    bfs(far, dist);
    const long ecc = *std::max_element(dist.begin(), dist.end());
    return std::min<long>(2 * ecc, static_cast<long>(members.size()) - 1);
}

}  // namespace

const DiagnosticCheck* DiagnosticsReport::find(std::string_view name) const {
    for (const auto& c : checks) {
        if (c.name == name) return &c;
    }
    return nullptr;
}

bool DiagnosticsReport::all_judged_passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const DiagnosticCheck& c) { return c.passed.value_or(true); });
}

DiagnosticsReport diagnostics(const CellGrid& grid, const CellGraph& graph, const CellClassification& cls,
                              const DiagnosticsParams& params) {
    DiagnosticsReport report;
    const int d = grid.dim();
    const double s = grid.side();
    const double n = static_cast<double>(params.n);
    const double ln_n = std::log(n);
    const std::size_t total = grid.cell_count();

    // No cell holds more than ln n vertices.
    std::size_t max_occ = 0;
    for (CellId c = 0; c < total; ++c) max_occ = std::max(max_occ, grid.count(c));
    report.checks.push_back({"max_cell_occupancy", static_cast<double>(max_occ) <= ln_n,
                             static_cast<double>(max_occ), ln_n, "max vertices in one cell vs ln n"});

    // Few sparse cells.
    std::size_t sparse = 0;
    for (CellId c = 0; c < total; ++c) sparse += cls.dense[c] ? 0 : 1;
    const double sparse_bound = std::pow(n, 1.0 - params.epsilon / 2.0);
    report.checks.push_back({"sparse_cell_count", static_cast<double>(sparse) <= sparse_bound,
                             static_cast<double>(sparse), sparse_bound, "sparse cells vs n^{1-eps/2}"});

    // Connected sparse sets in the power graph.
    const double reach = params.A * params.r0;
    const auto comps = sparse_components(grid, graph, cls, params.power, reach);
    const double set_bound = (1.0 + params.epsilon) / params.epsilon;
    std::size_t largest = 0;
    for (const auto& c : comps) largest = std::max(largest, c.size);
    report.checks.push_back({"sparse_connected_set", static_cast<double>(largest) < set_bound,
                             static_cast<double>(largest), set_bound,
                             "largest connected sparse set in the power graph of cells"});
    for (int i = 1; i < d; ++i) {
        std::size_t worst = 0;
        for (const auto& c : comps) {
            if (c.max_facets >= i) worst = std::max(worst, c.size);
        }
        report.checks.push_back({"sparse_set_near_facets_" + std::to_string(i), std::nullopt, static_cast<double>(worst),
                                 static_cast<double>(d - i) / d * set_bound,
                                 "largest sparse set near >= i facets (reported only)"});
    }
    std::size_t corner_sparse = 0;
    for (CellId c = 0; c < total; ++c) {
        if (cls.dense[c]) continue;
        const auto fd = grid.facet_distances(c);
        int near = 0;
        for (std::size_t j = 0; j < fd.size(); j += 2) near += std::min(fd[j], fd[j + 1]) <= reach ? 1 : 0;
        if (near >= d) ++corner_sparse;
    }
    report.checks.push_back({"sparse_cells_near_corner", std::nullopt, static_cast<double>(corner_sparse), 0.0,
                             "sparse cells near d facets (reported only)"});

    // Bad and ugly counts.
    const auto bad = cls.cells_with(CellLabel::Bad);
    const auto ugly = cls.cells_with(CellLabel::Ugly);
    report.checks.push_back({"bad_cell_count", static_cast<double>(bad.size()) <= sparse_bound,
                             static_cast<double>(bad.size()), sparse_bound, "bad cells vs n^{1-eps/2}"});
    report.checks.push_back({"ugly_cell_count", std::nullopt, static_cast<double>(ugly.size()), 0.0,
                             "ugly cells (bound has an unspecified constant; reported only)"});

    // Ugly components are small in l_inf diameter.
    const auto ugly_parts = label_components(graph, cls, CellLabel::Ugly);
    const double diam_bound = 4.0 * d * d * s;
    double worst_diam = 0.0;
    for (const auto& part : ugly_parts) {
        for (int j = 0; j < d; ++j) {
            std::size_t lo = grid.cells_per_axis(), hi = 0;
            for (CellId c : part) {
                const auto k = grid.coords_of(c)[j];
                lo = std::min(lo, k);
                hi = std::max(hi, k);
            }
            worst_diam = std::max(worst_diam, static_cast<double>(hi - lo + 1) * s);
        }
    }
    report.checks.push_back({"ugly_component_diameter", worst_diam <= diam_bound * (1.0 + 1e-12), worst_diam,
                             diam_bound, "max l_inf diameter of an ugly component vs 4 d^2 s"});

    // Ugly cells in different components are far apart.
    std::vector<std::size_t> part_of(total, static_cast<std::size_t>(-1));
    for (std::size_t k = 0; k < ugly_parts.size(); ++k) {
        for (CellId c : ugly_parts[k]) part_of[c] = k;
    }
    double min_sep = kInf;
    {
        const auto box = static_cast<long>(std::ceil(reach / s)) + 1;
        const auto m = static_cast<long>(grid.cells_per_axis());
        std::vector<long> off(static_cast<std::size_t>(d));
        std::vector<std::size_t> q(static_cast<std::size_t>(d));
        for (CellId c : ugly) {
            const auto k = grid.coords_of(c);
            std::fill(off.begin(), off.end(), -box);
            for (;;) {
                bool inside = true;
                for (int j = 0; j < d; ++j) {
                    const long v = static_cast<long>(k[j]) + off[j];
                    if (v < 0 || v >= m) {
                        inside = false;
                        break;
                    }
                    q[j] = static_cast<std::size_t>(v);
                }
                if (inside) {
                    const CellId w = grid.id_of(q);
                    if (w > c && cls.label[w] == CellLabel::Ugly && part_of[w] != part_of[c]) {
                        min_sep = std::min(min_sep, cell_set_distance(grid, c, w, params.p));
                    }
                }
                int j = 0;
                while (j < d && off[j] == box) off[j++] = -box;
                if (j == d) break;
                ++off[j];
            }
        }
    }
    report.checks.push_back({"ugly_component_separation", min_sep >= reach, min_sep, reach,
                             "min distance between ugly cells of different components vs A r0"});

    // Good cells around each ugly cell induce a connected subgraph of small diameter.
    const double around_bound = 2.0 * std::pow(20.0 * d, d);
    bool around_ok = true;
    bool all_exact = true;
    long worst_around = 0;
    std::size_t empty_neighbourhoods = 0;
    {
        const auto box = static_cast<long>(std::ceil(3.0 * params.r0 / s)) + 1;
        const auto m = static_cast<long>(grid.cells_per_axis());
        std::vector<long> off(static_cast<std::size_t>(d));
        std::vector<std::size_t> q(static_cast<std::size_t>(d));
        std::vector<CellId> around;
        for (CellId c : ugly) {
            const auto k = grid.coords_of(c);
            around.clear();
            std::fill(off.begin(), off.end(), -box);
            for (;;) {
                bool inside = true;
                for (int j = 0; j < d; ++j) {
                    const long v = static_cast<long>(k[j]) + off[j];
                    if (v < 0 || v >= m) {
                        inside = false;
                        break;
                    }
                    q[j] = static_cast<std::size_t>(v);
                }
                if (inside) {
                    const CellId w = grid.id_of(q);
                    if (cls.label[w] == CellLabel::Good && cell_linf_distance(grid, c, w) <= 3.0 * params.r0) {
                        around.push_back(w);
                    }
                }
                int j = 0;
                while (j < d && off[j] == box) off[j++] = -box;
                if (j == d) break;
                ++off[j];
            }
            std::sort(around.begin(), around.end());
            if (around.empty()) {
                ++empty_neighbourhoods;
                around_ok = false;
                continue;
            }
            bool exact = true;
            const long diam = induced_diameter(graph, around, exact);
            all_exact = all_exact && exact;
            if (diam < 0 || static_cast<double>(diam) > around_bound) around_ok = false;
            worst_around = std::max(worst_around, diam < 0 ? static_cast<long>(around.size()) : diam);
        }
    }
    std::string note9 = "max diameter of good cells within l_inf 3 r0 of an ugly cell vs 2(20d)^d";
    if (empty_neighbourhoods > 0) {
        note9 += "; " + std::to_string(empty_neighbourhoods) + " ugly cells with no good cell nearby";
    }
    if (!all_exact) note9 += "; large sets use the double-sweep upper bound";
    report.checks.push_back({"good_cells_around_ugly", around_ok, static_cast<double>(worst_around), around_bound,
                             note9});

    // Degree of the graph of cells.
    report.checks.push_back({"cell_graph_max_degree", static_cast<double>(graph.max_degree()) <= graph.degree_bound(),
                             static_cast<double>(graph.max_degree()), graph.degree_bound(),
                             "max degree of the graph of cells vs vol(ball(r0+2ds))/s^d + 1"});

    // Degree of G(X; r1)^l relative to ln n.
    if (params.process != nullptr) {
        const auto& proc = *params.process;
        const double r = std::min(params.r1, proc.cutoff());
        const Snapshot g = snapshot(proc, r);
        std::size_t max_deg = 0;
        if (params.power <= 1) {
            for (Vertex v = 0; v < g.n(); ++v) max_deg = std::max(max_deg, g.degree(v));
        } else {
            std::vector<int> depth(g.n(), -1);
            for (Vertex v = 0; v < g.n(); ++v) {
                std::vector<Vertex> frontier{v}, touched{v};
                depth[v] = 0;
                for (int h = 1; h <= params.power; ++h) {
                    std::vector<Vertex> next;
                    for (Vertex u : frontier) {
                        for (const auto& a : g.neighbours(u)) {
                            if (depth[a.to] < 0) {
                                depth[a.to] = h;
                                touched.push_back(a.to);
                                next.push_back(a.to);
                            }
                        }
                    }
                    frontier.swap(next);
                }
                max_deg = std::max(max_deg, touched.size() - 1);
                for (Vertex u : touched) depth[u] = -1;
            }
        }
        std::string note = "max degree of the power graph of G(X; r1) divided by ln n (reported only)";
        if (r < params.r1) note += "; measured at the process cutoff below r1";
        report.checks.push_back({"power_graph_degree", std::nullopt, static_cast<double>(max_deg) / ln_n,
                                 0.0, note});
    }
    return report;
}

double max_cross_pair_distance(const PointSet& points, const CellGrid& grid, const CellGraph& graph) {
    double worst = 0.0;
    for (CellId a = 0; a < grid.cell_count(); ++a) {
        if (grid.count(a) == 0) continue;
        for (CellId b : graph.neighbours(a)) {
            if (b < a || grid.count(b) == 0) continue;
            for (Vertex u : grid.vertices(a)) {
                for (Vertex v : grid.vertices(b)) worst = std::max(worst, points.distance(u, v));
            }
        }
    }
    return worst;
}

}  // namespace rrgg
