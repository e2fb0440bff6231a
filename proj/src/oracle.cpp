#include "rrgg/oracle.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <set>
#include <string>
#include <utility>

namespace rrgg {

namespace {

struct Adjacent {
    Vertex to;
    Colour colour;
    std::size_t edge;
};

std::vector<std::vector<Adjacent>> adjacency(const ColouredGraphInstance& g) {
    std::vector<std::vector<Adjacent>> adj(g.n);
    for (std::size_t e = 0; e < g.edges.size(); ++e) {
        const auto& ed = g.edges[e];
        adj[ed.i].push_back({ed.j, ed.colour, e});
        adj[ed.j].push_back({ed.i, ed.colour, e});
    }
    for (auto& list : adj) {
        std::sort(list.begin(), list.end(), [](const Adjacent& a, const Adjacent& b) { return a.to < b.to; });
    }
    return adj;
}

Colour max_colour(const ColouredGraphInstance& g) {
    Colour m = 0;
    for (const auto& e : g.edges) m = std::max(m, e.colour);
    return m;
}

class HamiltonSearch {
public:
    explicit HamiltonSearch(const ColouredGraphInstance& g)
        : g_(g), adj_(adjacency(g)), used_(max_colour(g) + 1, 0), visited_(g.n, 0) {}

    std::optional<std::vector<ColouredEdge>> run() {
        for (const auto& list : adj_) {
            if (list.size() < 2) return std::nullopt;
        }
        path_.push_back(0);
        visited_[0] = 1;
        if (!extend()) return std::nullopt;
        std::vector<ColouredEdge> out;
        for (std::size_t e : edges_) out.push_back(g_.edges[e]);
        return out;
    }

private:
    bool extend() {
        const Vertex v = path_.back();
        if (path_.size() == g_.n) {
            // Each cycle is found once: second vertex below the last.
            if (path_[1] > path_.back()) return false;
            for (const auto& a : adj_[v]) {
                if (a.to == 0 && !used_[a.colour]) {
                    edges_.push_back(a.edge);
                    return true;
                }
            }
            return false;
        }
        for (const auto& a : adj_[v]) {
            if (visited_[a.to] || used_[a.colour]) continue;
            visited_[a.to] = 1;
            used_[a.colour] = 1;
            path_.push_back(a.to);
            edges_.push_back(a.edge);
            if (extend()) return true;
            edges_.pop_back();
            path_.pop_back();
            used_[a.colour] = 0;
            visited_[a.to] = 0;
        }
        return false;
    }

    const ColouredGraphInstance& g_;
    std::vector<std::vector<Adjacent>> adj_;
    std::vector<char> used_;
    std::vector<char> visited_;
    std::vector<Vertex> path_;
    std::vector<std::size_t> edges_;
};

class MatchingSearch {
public:
    explicit MatchingSearch(const ColouredGraphInstance& g)
        : g_(g), adj_(adjacency(g)), used_(max_colour(g) + 1, 0), matched_(g.n, 0) {}

    std::optional<std::vector<ColouredEdge>> run() {
        if (!extend()) return std::nullopt;
        std::vector<ColouredEdge> out;
        for (std::size_t e : edges_) out.push_back(g_.edges[e]);
        return out;
    }

private:
    bool extend() {
        Vertex u = 0;
        while (u < g_.n && matched_[u]) ++u;
        if (u == g_.n) return true;
        matched_[u] = 1;
        for (const auto& a : adj_[u]) {
            if (matched_[a.to] || used_[a.colour]) continue;
            matched_[a.to] = 1;
            used_[a.colour] = 1;
            edges_.push_back(a.edge);
            if (extend()) return true;
            edges_.pop_back();
            used_[a.colour] = 0;
            matched_[a.to] = 0;
        }
        matched_[u] = 0;
        return false;
    }

    const ColouredGraphInstance& g_;
    std::vector<std::vector<Adjacent>> adj_;
    std::vector<char> used_;
    std::vector<char> matched_;
    std::vector<std::size_t> edges_;
};

std::size_t default_limit(Structure kind, std::size_t limit) {
    if (limit != 0) return limit;
    return kind == Structure::HamiltonCycle ? kOracleHamiltonLimit : kOracleMatchingLimit;
}

std::optional<std::vector<ColouredEdge>> exists(const ColouredGraphInstance& g, Structure kind, std::size_t limit) {
    return kind == Structure::HamiltonCycle ? exact_rainbow_hc(g, limit) : exact_rainbow_pm(g, limit);
}

RainbowCertificate to_certificate(const std::vector<ColouredEdge>& witness, const ColouredProcess& process,
                                  Structure kind, double radius) {
    RainbowCertificate cert;
    cert.kind = kind;
    cert.radius = radius;
    for (const auto& e : witness) {
        cert.edges.push_back({e.i, e.j, e.colour, e.length.value_or(process.length_of(e.i, e.j))});
    }
    return cert;
}

std::string edge_name(const CertificateEdge& e) {
    return "{" + std::to_string(e.i) + "," + std::to_string(e.j) + "}";
}

}  // namespace

const char* to_string(Structure s) {
    return s == Structure::HamiltonCycle ? "HC" : "PM";
}

Structure parse_structure(std::string_view text) {
    std::string t(text);
    for (auto& ch : t) ch = static_cast<char>(std::toupper(static_cast<unsigned char>(ch)));
    if (t == "HC") return Structure::HamiltonCycle;
    if (t == "PM") return Structure::PerfectMatching;
    throw std::invalid_argument("unknown structure '" + std::string(text) + "' (expected HC or PM)");
}

void ColouredGraphInstance::check() const {
    std::set<std::pair<Vertex, Vertex>> seen;
    for (const auto& e : edges) {
        if (e.i >= n || e.j >= n) throw std::invalid_argument("instance: vertex index out of range");
        if (e.i == e.j) throw std::invalid_argument("instance: loop edge");
        if (e.colour == 0) throw std::invalid_argument("instance: colours must be positive");
        if (!seen.insert(std::minmax(e.i, e.j)).second) throw std::invalid_argument("instance: parallel edge");
    }
}

ColouredGraphInstance instance_from_prefix(const ColouredProcess& process, std::size_t count) {
    const auto events = process.events();
    count = std::min(count, events.size());
    ColouredGraphInstance g;
    g.n = process.n();
    g.edges.reserve(count);
    for (std::size_t k = 0; k < count; ++k) {
        g.edges.push_back({events[k].i, events[k].j, events[k].colour, events[k].length});
    }
    return g;
}

std::optional<std::vector<ColouredEdge>> exact_rainbow_hc(const ColouredGraphInstance& g, std::size_t limit) {
    if (g.n < 3) throw std::invalid_argument("exact_rainbow_hc: need n >= 3");
    if (g.n > limit) {
        throw OracleRefused("exact_rainbow_hc: n = " + std::to_string(g.n) + " exceeds the limit " +
                            std::to_string(limit));
    }
    return HamiltonSearch(g).run();
}

std::optional<std::vector<ColouredEdge>> exact_rainbow_pm(const ColouredGraphInstance& g, std::size_t limit) {
    if (g.n % 2 != 0) throw std::invalid_argument("exact_rainbow_pm: n must be even");
    if (g.n > limit) {
        throw OracleRefused("exact_rainbow_pm: n = " + std::to_string(g.n) + " exceeds the limit " +
                            std::to_string(limit));
    }
    return MatchingSearch(g).run();
}

std::optional<RainbowHit> exact_hitting_rainbow(const ColouredProcess& process, Structure kind, std::size_t limit) {
    limit = default_limit(kind, limit);
    const std::size_t total = process.events().size();
    if (!exists(instance_from_prefix(process, total), kind, limit)) return std::nullopt;
    // Minimum degree is necessary, so the search starts at its hitting event.
    const auto deg = hitting_radius_min_degree(process, kind == Structure::HamiltonCycle ? 2 : 1);
    std::size_t lo = deg ? deg->event_index : 0;  // largest count known to fail, when below hi
    std::size_t hi = total;                      // smallest count known to succeed
    if (lo > 0 && exists(instance_from_prefix(process, lo + 1), kind, limit)) {
        hi = lo + 1;
    } else {
        while (hi - lo > 1) {
            const std::size_t mid = lo + (hi - lo) / 2;
            if (exists(instance_from_prefix(process, mid), kind, limit)) {
                hi = mid;
            } else {
                lo = mid;
            }
        }
    }
    if (hi == 0) return std::nullopt;  // n >= 2 needs at least one edge
    const auto witness = exists(instance_from_prefix(process, hi), kind, limit);
    const double radius = process.events()[hi - 1].length;
    return RainbowHit{hi - 1, radius, to_certificate(*witness, process, kind, radius)};
}

std::optional<RainbowCertificate> exact_certificate(const ColouredProcess& process, Structure kind, double radius,
                                                    std::size_t limit) {
    limit = default_limit(kind, limit);
    const auto witness = exists(instance_from_prefix(process, process.prefix_for_radius(radius)), kind, limit);
    if (!witness) return std::nullopt;
    return to_certificate(*witness, process, kind, radius);
}

std::vector<std::string> validate_certificate(const RainbowCertificate& cert, const ColouredProcess& process) {
    std::vector<std::string> violations;
    const std::size_t n = process.n();
    const auto& edges = cert.edges;

    for (const auto& e : edges) {
        if (e.i >= n || e.j >= n || e.i == e.j) {
            violations.push_back("edge " + edge_name(e) + " has invalid endpoints");
        }
    }
    if (!violations.empty()) return violations;

    if (cert.kind == Structure::HamiltonCycle) {
        if (edges.size() != n) {
            violations.push_back("structure: expected " + std::to_string(n) + " edges, got " +
                                 std::to_string(edges.size()));
        } else {
            std::vector<std::vector<Vertex>> adj(n);
            for (const auto& e : edges) {
                adj[e.i].push_back(e.j);
                adj[e.j].push_back(e.i);
            }
            bool degrees_ok = std::all_of(adj.begin(), adj.end(), [](const auto& a) { return a.size() == 2; });
            if (!degrees_ok) {
                violations.push_back("structure: some vertex does not have degree 2");
            } else {
                std::size_t steps = 0;
                Vertex prev = 0, cur = 0;
                do {
                    const Vertex next = adj[cur][0] != prev || steps == 0 ? adj[cur][0] : adj[cur][1];
                    prev = cur;
                    cur = next;
                    ++steps;
                } while (cur != 0 && steps <= n);
                if (steps != n) violations.push_back("structure: edges do not form a single cycle on all vertices");
            }
        }
    } else {
        if (n % 2 != 0 || edges.size() * 2 != n) {
            violations.push_back("structure: expected " + std::to_string(n / 2) + " edges, got " +
                                 std::to_string(edges.size()));
        }
        std::vector<char> covered(n, 0);
        for (const auto& e : edges) {
            if (covered[e.i] || covered[e.j]) {
                violations.push_back("structure: edges " + edge_name(e) + " share a vertex with another edge");
            }
            covered[e.i] = covered[e.j] = 1;
        }
        if (std::find(covered.begin(), covered.end(), 0) != covered.end()) {
            violations.push_back("structure: some vertex is not matched");
        }
    }

    std::set<Colour> colours;
    for (const auto& e : edges) {
        if (!colours.insert(e.colour).second) {
            violations.push_back("colour repeated: " + std::to_string(e.colour) + " on " + edge_name(e));
        }
        if (process.colour_of(e.i, e.j) != e.colour) {
            violations.push_back("colour mismatch on " + edge_name(e));
        }
        if (e.length > cert.radius) {
            violations.push_back("length exceeds radius on " + edge_name(e));
        }
        const double actual = process.length_of(e.i, e.j);
        if (std::abs(actual - e.length) > 1e-12 * std::max(1.0, actual)) {
            violations.push_back("length disagrees with point distance on " + edge_name(e));
        }
    }
    return violations;
}

}  // namespace rrgg
