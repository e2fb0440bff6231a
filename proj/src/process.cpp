#include "rrgg/process.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <tuple>

#include "rrgg/neighbour_grid.hpp"

namespace rrgg {

Colour colour_count_for(double K, std::size_t n) {
    if (!(K > 0.0)) {
        throw std::invalid_argument("colour factor K must be positive");
    }
    const double x = K * static_cast<double>(n);
    const double r = std::round(x);
    const double c = std::fabs(x - r) <= 1e-9 * std::max(1.0, x) ? r : std::ceil(x);
    if (c > 4.0e9) {
        throw std::invalid_argument("colour count too large");
    }
    return static_cast<Colour>(std::max(1.0, c));
}

Colour pair_colour(Seed colour_seed, Colour count, Vertex i, Vertex j) noexcept {
    const Vertex lo = std::min(i, j);
    const Vertex hi = std::max(i, j);
    return 1 + static_cast<Colour>(bounded(mix_seed(colour_seed, lo, hi), count));
}

ColouredProcess::ColouredProcess(PointSet points, double cutoff, bool clamped, Colour colour_count,
                                 Seed colour_seed, std::vector<EdgeEvent> events)
    : points_(std::move(points)),
      cutoff_(cutoff),
      clamped_(clamped),
      colour_count_(colour_count),
      colour_seed_(colour_seed),
      events_(std::move(events)) {}

Colour ColouredProcess::colour_of(Vertex i, Vertex j) const noexcept {
    return pair_colour(colour_seed_, colour_count_, i, j);
}

std::size_t ColouredProcess::prefix_for_radius(double r) const {
    auto it = std::upper_bound(events_.begin(), events_.end(), r,
                               [](double value, const EdgeEvent& e) { return value < e.length; });
    return static_cast<std::size_t>(it - events_.begin());
}

ColouredProcess build_process_with_colours(PointSet points, double cutoff, Colour colour_count, Seed colour_seed) {
    if (!(cutoff > 0.0)) {
        throw std::invalid_argument("build_process: cutoff must be positive");
    }
    if (colour_count < 1) {
        throw std::invalid_argument("build_process: need at least one colour");
    }
    const double corner = corner_distance(points.dim(), points.norm());
    bool clamped = false;
    if (cutoff > corner) {
        cutoff = corner;
        clamped = true;
    }
    std::vector<EdgeEvent> events;
    if (points.size() >= 2) {
        // Grid radius padded by one ulp-scale margin so pairs at exactly the
        // corner distance are still enumerated; the exact filter is below.
        NeighbourGrid grid(points, cutoff * (1.0 + 1e-12));
        grid.for_each_pair([&](Vertex i, Vertex j, double len) {
            if (len <= cutoff) {
                events.push_back({i, j, len, pair_colour(colour_seed, colour_count, i, j)});
            }
        });
    }
    std::sort(events.begin(), events.end(), [](const EdgeEvent& a, const EdgeEvent& b) {
        return std::tie(a.length, a.i, a.j) < std::tie(b.length, b.i, b.j);
    });
    return ColouredProcess(std::move(points), cutoff, clamped, colour_count, colour_seed, std::move(events));
}

ColouredProcess build_process(PointSet points, double cutoff, double K, Seed colour_seed) {
    const Colour c = colour_count_for(K, points.size());
    return build_process_with_colours(std::move(points), cutoff, c, colour_seed);
}

Snapshot::Snapshot(std::size_t n, std::span<const EdgeEvent> events, double radius)
    : start_(n + 1, 0), edge_count_(events.size()), radius_(radius) {
    for (const auto& e : events) {
        ++start_[e.i + 1];
        ++start_[e.j + 1];
    }
    for (std::size_t v = 0; v < n; ++v) start_[v + 1] += start_[v];
    arcs_.resize(start_[n]);
    std::vector<std::size_t> fill(start_.begin(), start_.end() - 1);
    for (const auto& e : events) {
        arcs_[fill[e.i]++] = {e.j, e.colour, e.length};
        arcs_[fill[e.j]++] = {e.i, e.colour, e.length};
    }
}

std::size_t Snapshot::min_degree() const noexcept {
    std::size_t m = n() == 0 ? 0 : degree(0);
    for (Vertex v = 1; v < n(); ++v) m = std::min(m, degree(v));
    return m;
}

bool Snapshot::has_edge(Vertex u, Vertex v) const noexcept {
    for (const auto& a : neighbours(u)) {
        if (a.to == v) return true;
    }
    return false;
}

Snapshot snapshot(const ColouredProcess& process, double r) {
    if (r > process.cutoff()) {
        throw std::out_of_range("snapshot: radius exceeds the process cutoff");
    }
    const std::size_t count = r < 0.0 ? 0 : process.prefix_for_radius(r);
    return Snapshot(process.n(), process.events().first(count), r);
}

Snapshot snapshot_prefix(const ColouredProcess& process, std::size_t count) {
    count = std::min(count, process.events().size());
    const double r = count == 0 ? 0.0 : process.events()[count - 1].length;
    return Snapshot(process.n(), process.events().first(count), r);
}

bool is_connected(const Snapshot& g) {
    const std::size_t n = g.n();
    if (n <= 1) return true;
    std::vector<char> seen(n, 0);
    std::vector<Vertex> stack{0};
    seen[0] = 1;
    std::size_t reached = 1;
    while (!stack.empty()) {
        const Vertex v = stack.back();
        stack.pop_back();
        for (const auto& a : g.neighbours(v)) {
            if (!seen[a.to]) {
                seen[a.to] = 1;
                ++reached;
                stack.push_back(a.to);
            }
        }
    }
    return reached == n;
}

bool is_biconnected(const Snapshot& g) {
    const std::size_t n = g.n();
    if (n < 3 || g.min_degree() < 2) return false;
    // Iterative Tarjan low-link from root 0.
    std::vector<std::size_t> disc(n, 0), low(n, 0), next_arc(n, 0);
    std::vector<Vertex> parent(n, static_cast<Vertex>(-1));
    std::size_t timer = 1;
    std::size_t root_children = 0;
    std::vector<Vertex> stack{0};
    disc[0] = low[0] = timer++;
    while (!stack.empty()) {
        const Vertex v = stack.back();
        auto arcs = g.neighbours(v);
        if (next_arc[v] < arcs.size()) {
            const Vertex w = arcs[next_arc[v]++].to;
            if (disc[w] == 0) {
                parent[w] = v;
                disc[w] = low[w] = timer++;
                if (v == 0) ++root_children;
                stack.push_back(w);
            } else if (w != parent[v]) {
                low[v] = std::min(low[v], disc[w]);
            }
        } else {
            stack.pop_back();
            if (!stack.empty()) {
                const Vertex u = parent[v];
                low[u] = std::min(low[u], low[v]);
                if (u != 0 && low[v] >= disc[u]) return false;  // u is an articulation point
            }
        }
    }
    if (timer - 1 != n) return false;  // disconnected
    return root_children < 2;
}

std::optional<Hit> hitting_radius_min_degree(const ColouredProcess& process, int k) {
    const std::size_t n = process.n();
    if (k < 1 || n <= static_cast<std::size_t>(k)) {
        throw std::invalid_argument("hitting_radius_min_degree: need n > k >= 1");
    }
    std::vector<int> degree(n, 0);
    std::size_t satisfied = 0;
    const auto events = process.events();
    for (std::size_t idx = 0; idx < events.size(); ++idx) {
        for (Vertex v : {events[idx].i, events[idx].j}) {
            if (++degree[v] == k) ++satisfied;
        }
        if (satisfied == n) return Hit{idx, events[idx].length};
    }
    return std::nullopt;
}

namespace {

class DisjointSets {
public:
    explicit DisjointSets(std::size_t n) : parent_(n), size_(n, 1) { std::iota(parent_.begin(), parent_.end(), 0); }

    std::size_t find(std::size_t x) {
        while (parent_[x] != x) {
            parent_[x] = parent_[parent_[x]];
            x = parent_[x];
        }
        return x;
    }

    bool unite(std::size_t a, std::size_t b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        if (size_[a] < size_[b]) std::swap(a, b);
        parent_[b] = a;
        size_[a] += size_[b];
        return true;
    }

private:
    std::vector<std::size_t> parent_;
    std::vector<std::size_t> size_;
};

}  // namespace

std::optional<Hit> hitting_radius_kconn(const ColouredProcess& process, int k) {
    const std::size_t n = process.n();
    if (k != 1 && k != 2) {
        throw std::invalid_argument("hitting_radius_kconn: only k = 1, 2 are supported");
    }
    if (n <= static_cast<std::size_t>(k)) {
        throw std::invalid_argument("hitting_radius_kconn: need n > k");
    }
    const auto events = process.events();
    if (k == 1) {
        DisjointSets sets(n);
        std::size_t components = n;
        for (std::size_t idx = 0; idx < events.size(); ++idx) {
            if (sets.unite(events[idx].i, events[idx].j) && --components == 1) {
                return Hit{idx, events[idx].length};
            }
        }
        return std::nullopt;
    }
    // 2-connectivity implies minimum degree 2, so the search starts there.
    const auto min_deg = hitting_radius_min_degree(process, 2);
    if (!min_deg) return std::nullopt;
    if (!is_biconnected(snapshot_prefix(process, events.size()))) return std::nullopt;
    std::size_t lo = min_deg->event_index + 1;  // candidate prefix lengths
    std::size_t hi = events.size();
    while (lo < hi) {
        const std::size_t mid = lo + (hi - lo) / 2;
        if (is_biconnected(snapshot_prefix(process, mid))) {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    return Hit{lo - 1, events[lo - 1].length};
}

HittingRadii compute_hitting_radii(const ColouredProcess& process) {
    HittingRadii out;
    for (int k : {1, 2}) {
        if (process.n() <= static_cast<std::size_t>(k)) continue;
        if (auto h = hitting_radius_min_degree(process, k)) out.r_min_deg[k] = h->radius;
        if (auto h = hitting_radius_kconn(process, k)) out.r_kconn[k] = h->radius;
    }
    return out;
}

double default_omega(std::size_t n) {
    const double lln = std::log(std::log(static_cast<double>(n)));
    return std::max(0.1, lln > 0.0 ? std::sqrt(lln) : 0.0);
}

double reference_rhs_r0(std::size_t n, int d, double omega) {
    const double ln = std::log(static_cast<double>(n));
    const double lln = std::log(ln);
    const double dd = d;
    return std::ldexp(1.0, d - 1) / dd * ln + std::ldexp(1.0, d - 2) * (3.0 - dd - 2.0 / dd) * lln - omega;
}

double reference_rhs_r1(std::size_t n, int d, double omega) {
    const double ln = std::log(static_cast<double>(n));
    const double lln = std::log(ln);
    const double dd = d;
    return std::ldexp(1.0, d - 1) / dd * ln + std::ldexp(1.0, d - 2) * (4.0 - dd - 2.0 / dd) * lln + omega;
}

ReferenceRadii reference_radii(std::size_t n, int d, NormParam p, double omega) {
    if (n < 3) {
        throw std::invalid_argument("reference_radii: need n >= 3");
    }
    if (d < 2) {
        throw std::invalid_argument("reference_radii: need d >= 2");
    }
    if (!(omega > 0.0)) {
        throw std::invalid_argument("reference_radii: omega must be positive");
    }
    const double rhs0 = reference_rhs_r0(n, d, omega);
    const double rhs1 = reference_rhs_r1(n, d, omega);
    if (!(rhs0 > 0.0)) {
        throw std::domain_error("reference_radii: n too small, right-hand side for r0 is non-positive");
    }
    const double theta_n = unit_ball_volume(d, p) * static_cast<double>(n);
    return {std::pow(rhs0 / theta_n, 1.0 / d), std::pow(rhs1 / theta_n, 1.0 / d), omega};
}

ColouredProcess build_process_reaching(const PointSet& points, double initial_cutoff, Colour colour_count,
                                       Seed colour_seed, int k, bool need_kconn) {
    const double corner = corner_distance(points.dim(), points.norm());
    double cutoff = std::min(std::max(initial_cutoff, 1e-9), corner);
    for (;;) {
        auto process = build_process_with_colours(points, cutoff, colour_count, colour_seed);
        const bool deg_ok = hitting_radius_min_degree(process, k).has_value();
        const bool conn_ok = !need_kconn || hitting_radius_kconn(process, k).has_value();
        if ((deg_ok && conn_ok) || cutoff >= corner) return process;
        cutoff = std::min(cutoff * 2.0, corner);
    }
}

}  // namespace rrgg
