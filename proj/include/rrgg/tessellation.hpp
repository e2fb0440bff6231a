#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "rrgg/geometry.hpp"

namespace rrgg {

class ColouredProcess;

using CellId = std::size_t;

/// Provisional side s' = (2 eps d theta)^{1/d} r0 / 2.
double provisional_cell_side(int d, NormParam p, double r0, double epsilon);

/// Rounds s' to s = 1 / ceil(1/s') so that an integer number of cells tiles [0,1].
std::size_t cells_per_axis_for(double provisional_side);

/// Cubic tessellation of [0,1]^d into m^d cells of side s = 1/m.
class CellGrid {
public:
    /// Throws std::invalid_argument when m == 0.
    CellGrid(const PointSet& points, std::size_t cells_per_axis);

    int dim() const noexcept { return dim_; }
    std::size_t cells_per_axis() const noexcept { return m_; }
    double side() const noexcept { return side_; }
    std::size_t cell_count() const noexcept { return start_.size() - 1; }
    std::size_t vertex_count() const noexcept { return cell_of_vertex_.size(); }

    CellId cell_of(Vertex v) const noexcept { return cell_of_vertex_[v]; }
    std::size_t count(CellId c) const noexcept { return start_[c + 1] - start_[c]; }
    /// Vertices of a cell in increasing index order.
    std::span<const Vertex> vertices(CellId c) const noexcept {
        return {members_.data() + start_[c], members_.data() + start_[c + 1]};
    }

    std::vector<std::size_t> coords_of(CellId c) const;
    CellId id_of(std::span<const std::size_t> coords) const;

    /// Distances from the cell to the 2d facets of [0,1]^d: entry 2j is the facet
    /// x_j = 0, entry 2j+1 the facet x_j = 1.
    std::vector<double> facet_distances(CellId c) const;

    /// Closed box [lo, lo+s] containment with a relative tolerance of 1e-12.
    bool contains(CellId c, std::span<const double> x) const;

private:
    int dim_;
    std::size_t m_;
    double side_;
    std::vector<CellId> cell_of_vertex_;
    std::vector<std::size_t> start_;
    std::vector<Vertex> members_;
};

/// Grid with side derived from r0 and epsilon. Throws std::domain_error if s' >= 1.
CellGrid build_grid(const PointSet& points, double r0, double epsilon);

/// l_p set-distance between two closed cells: per-axis interval gaps, then the norm.
double cell_set_distance(const CellGrid& grid, CellId a, CellId b, NormParam p);

/// l_inf set-distance between two cells.
double cell_linf_distance(const CellGrid& grid, CellId a, CellId b);

/// Graph of cells: two cells are adjacent iff their set-distance is <= r0 - 2ds.
class CellGraph {
public:
    CellGraph(std::vector<std::size_t> start, std::vector<CellId> adjacency, double threshold, double degree_bound);

    std::size_t cell_count() const noexcept { return start_.size() - 1; }
    std::span<const CellId> neighbours(CellId c) const noexcept {
        return {adjacency_.data() + start_[c], adjacency_.data() + start_[c + 1]};
    }
    bool adjacent(CellId a, CellId b) const noexcept;
    std::size_t max_degree() const noexcept;
    /// Adjacency distance r0 - 2ds.
    double threshold() const noexcept { return threshold_; }
    /// vol(ball(r0 + 2ds)) / s^d + 1.
    double degree_bound() const noexcept { return degree_bound_; }

private:
    std::vector<std::size_t> start_;
    std::vector<CellId> adjacency_;
    double threshold_;
    double degree_bound_;
};

/// Throws std::domain_error when r0 - 2ds <= 0 (epsilon too large for r0).
CellGraph build_cell_graph(const CellGrid& grid, double r0, NormParam p);

enum class CellLabel : std::uint8_t { Good, Bad, Ugly };

const char* to_string(CellLabel label);

struct CellClassification {
    std::vector<CellLabel> label;
    std::vector<bool> dense;
    std::size_t dense_threshold = 0;
    /// No dense cell exists: everything is ugly.
    bool degenerate = false;

    std::vector<CellId> cells_with(CellLabel l) const;
};

/// max(3, ceil(eps^3 ln n)).
std::size_t dense_threshold_for(double epsilon, std::size_t n);

/// Good = largest dense component (ties: smallest minimum cell id); bad = non-good
/// neighbour of a good cell; ugly = the rest.
CellClassification classify_cells(const CellGrid& grid, const CellGraph& graph, double epsilon, std::size_t n);

/// Connected components of the subgraph induced by cells with the given label.
std::vector<std::vector<CellId>> label_components(const CellGraph& graph, const CellClassification& cls,
                                                  CellLabel label);

// ---------------------------------------------------------------------------
// Diagnostics: structural claims about the tessellation, measured on one instance.

struct DiagnosticCheck {
    std::string name;
    std::optional<bool> passed;  // nullopt: reported without judgment
    double statistic = 0.0;
    double bound = 0.0;
    std::string note;
};

struct DiagnosticsReport {
    std::vector<DiagnosticCheck> checks;

    const DiagnosticCheck* find(std::string_view name) const;
    bool all_judged_passed() const;
};

struct DiagnosticsParams {
    std::size_t n = 0;
    NormParam p{2.0};
    double r0 = 0.0;
    double r1 = 0.0;
    double epsilon = 0.1;
    double A = 3.0;
    int power = 1;  // power of the cell graph used by the sparse-set checks
    /// When set, the maximum degree of G(X; r1) is measured against ln n.
    const ColouredProcess* process = nullptr;
};

DiagnosticsReport diagnostics(const CellGrid& grid, const CellGraph& graph, const CellClassification& cls,
                              const DiagnosticsParams& params);

/// Largest l_p distance over cross pairs of residents of adjacent cells, over all
/// adjacent pairs. Returns 0 if there are no such pairs.
double max_cross_pair_distance(const PointSet& points, const CellGrid& grid, const CellGraph& graph);

}  // namespace rrgg
