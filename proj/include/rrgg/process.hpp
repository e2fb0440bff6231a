#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "rrgg/geometry.hpp"

namespace rrgg {

using Colour = std::uint32_t;

struct EdgeEvent {
    Vertex i;  // i < j
    Vertex j;
    double length;
    Colour colour;

    friend bool operator==(const EdgeEvent&, const EdgeEvent&) = default;
};

/// Number of colours ceil(K n), robust to K given as c/n in floating point.
Colour colour_count_for(double K, std::size_t n);

/// Colour of pair {i,j}: a fixed function of (seed, min, max), uniform on {1..count}.
/// It does not depend on the edge length or on any build cutoff.
Colour pair_colour(Seed colour_seed, Colour count, Vertex i, Vertex j) noexcept;

/// The edge-coloured geometric graph process truncated at a cutoff radius.
/// Events are sorted by (length, i, j). Immutable after construction.
class ColouredProcess {
public:
    ColouredProcess(PointSet points, double cutoff, bool clamped, Colour colour_count, Seed colour_seed,
                    std::vector<EdgeEvent> events);

    const PointSet& points() const noexcept { return points_; }
    std::size_t n() const noexcept { return points_.size(); }
    double cutoff() const noexcept { return cutoff_; }
    /// True when the requested cutoff exceeded the corner distance and was reduced.
    bool cutoff_clamped() const noexcept { return clamped_; }
    Colour colour_count() const noexcept { return colour_count_; }
    Seed colour_seed() const noexcept { return colour_seed_; }
    std::span<const EdgeEvent> events() const noexcept { return events_; }

    Colour colour_of(Vertex i, Vertex j) const noexcept;
    double length_of(Vertex i, Vertex j) const { return points_.distance(i, j); }

    /// Number of events with length <= r.
    std::size_t prefix_for_radius(double r) const;

private:
    PointSet points_;
    double cutoff_;
    bool clamped_;
    Colour colour_count_;
    Seed colour_seed_;
    std::vector<EdgeEvent> events_;
};

ColouredProcess build_process(PointSet points, double cutoff, double K, Seed colour_seed);
ColouredProcess build_process_with_colours(PointSet points, double cutoff, Colour colour_count, Seed colour_seed);

/// Undirected adjacency view of a prefix of the event stream.
class Snapshot {
public:
    struct Arc {
        Vertex to;
        Colour colour;
        double length;
    };

    Snapshot(std::size_t n, std::span<const EdgeEvent> events, double radius);

    std::size_t n() const noexcept { return start_.size() - 1; }
    std::size_t edge_count() const noexcept { return edge_count_; }
    double radius() const noexcept { return radius_; }
    std::span<const Arc> neighbours(Vertex v) const noexcept {
        return {arcs_.data() + start_[v], arcs_.data() + start_[v + 1]};
    }
    std::size_t degree(Vertex v) const noexcept { return start_[v + 1] - start_[v]; }
    std::size_t min_degree() const noexcept;
    bool has_edge(Vertex u, Vertex v) const noexcept;

private:
    std::vector<std::size_t> start_;
    std::vector<Arc> arcs_;
    std::size_t edge_count_;
    double radius_;
};

/// All events with length <= r. Throws std::out_of_range when r exceeds the cutoff.
Snapshot snapshot(const ColouredProcess& process, double r);
/// The first `count` events.
Snapshot snapshot_prefix(const ColouredProcess& process, std::size_t count);

bool is_connected(const Snapshot& g);
/// 2-vertex-connected: connected, at least 3 vertices, no articulation point.
bool is_biconnected(const Snapshot& g);

/// The event whose insertion first makes a monotone property hold.
struct Hit {
    std::size_t event_index;
    double radius;
};

/// Hitting radius for minimum degree >= k. nullopt: not reached within the cutoff.
std::optional<Hit> hitting_radius_min_degree(const ColouredProcess& process, int k);

/// Hitting radius for k-vertex-connectivity, k in {1, 2}.
std::optional<Hit> hitting_radius_kconn(const ColouredProcess& process, int k);

struct HittingRadii {
    std::map<int, double> r_min_deg;
    std::map<int, double> r_kconn;
    std::optional<double> r_rhc;
    std::optional<double> r_rpm;
};

/// Minimum-degree and connectivity radii for k = 1, 2 (entries absent when not reached).
HittingRadii compute_hitting_radii(const ColouredProcess& process);

struct ReferenceRadii {
    double r0;
    double r1;
    double omega;
};

/// Default slowly diverging omega(n) = max(0.1, sqrt(ln ln n)).
double default_omega(std::size_t n);

/// Solves theta n r0^d = (2^{d-1}/d) ln n + 2^{d-2}(3-d-2/d) ln ln n - omega and the
/// matching r1 equation (coefficient 4-d-2/d, +omega).
ReferenceRadii reference_radii(std::size_t n, int d, NormParam p, double omega);

/// Right-hand sides of the two defining equations.
double reference_rhs_r0(std::size_t n, int d, double omega);
double reference_rhs_r1(std::size_t n, int d, double omega);

/// Builds a process whose cutoff reaches minimum degree k (doubling from `initial`).
ColouredProcess build_process_reaching(const PointSet& points, double initial_cutoff, Colour colour_count,
                                       Seed colour_seed, int k, bool need_kconn);

}  // namespace rrgg
