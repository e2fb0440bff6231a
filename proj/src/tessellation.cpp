#include "rrgg/tessellation.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <stdexcept>

namespace rrgg {

double provisional_cell_side(int d, NormParam p, double r0, double epsilon) {
    const double theta = unit_ball_volume(d, p);
    return std::pow(2.0 * epsilon * d * theta, 1.0 / d) * r0 / 2.0;
}

std::size_t cells_per_axis_for(double provisional_side) {
    if (!(provisional_side > 0.0)) {
        throw std::invalid_argument("cell side must be positive");
    }
    const double inv = 1.0 / provisional_side;
    // ceil with a guard against 1/0.25 evaluating to 4.000000000000001
    const double r = std::round(inv);
    const double m = std::fabs(inv - r) <= 1e-12 * inv ? r : std::ceil(inv);
    return static_cast<std::size_t>(m);
}

CellGrid::CellGrid(const PointSet& points, std::size_t cells_per_axis)
    : dim_(points.dim()), m_(cells_per_axis), side_(0.0) {
    if (m_ == 0) {
        throw std::invalid_argument("CellGrid: need at least one cell per axis");
    }
    side_ = 1.0 / static_cast<double>(m_);
    std::size_t total = 1;
    for (int k = 0; k < dim_; ++k) total *= m_;
    start_.assign(total + 1, 0);
    cell_of_vertex_.resize(points.size());
    for (std::size_t v = 0; v < points.size(); ++v) {
        const auto x = points[v];
        std::size_t id = 0;
        std::size_t stride = 1;
        for (int k = 0; k < dim_; ++k) {
            auto c = static_cast<std::size_t>(std::floor(x[k] * static_cast<double>(m_)));
            c = std::min(c, m_ - 1);
            // Correct floating rounding so that c*s <= x <= (c+1)*s.
            while (c > 0 && static_cast<double>(c) * side_ > x[k]) --c;
            while (c + 1 < m_ && static_cast<double>(c + 1) * side_ <= x[k]) ++c;
            id += c * stride;
            stride *= m_;
        }
        cell_of_vertex_[v] = id;
        ++start_[id + 1];
    }
    for (std::size_t c = 0; c < total; ++c) start_[c + 1] += start_[c];
    members_.resize(points.size());
    std::vector<std::size_t> fill(start_.begin(), start_.end() - 1);
    for (std::size_t v = 0; v < points.size(); ++v) {
        members_[fill[cell_of_vertex_[v]]++] = static_cast<Vertex>(v);
    }
}

std::vector<std::size_t> CellGrid::coords_of(CellId c) const {
    std::vector<std::size_t> out(static_cast<std::size_t>(dim_));
    for (int k = 0; k < dim_; ++k) {
        out[k] = c % m_;
        c /= m_;
    }
    return out;
}

CellId CellGrid::id_of(std::span<const std::size_t> coords) const {
    CellId id = 0;
    std::size_t stride = 1;
    for (int k = 0; k < dim_; ++k) {
        id += coords[k] * stride;
        stride *= m_;
    }
    return id;
}

std::vector<double> CellGrid::facet_distances(CellId c) const {
    const auto k = coords_of(c);
    std::vector<double> out(2 * static_cast<std::size_t>(dim_));
    for (int j = 0; j < dim_; ++j) {
        out[2 * j] = static_cast<double>(k[j]) * side_;
        out[2 * j + 1] = static_cast<double>(m_ - 1 - k[j]) * side_;
    }
    return out;
}

bool CellGrid::contains(CellId c, std::span<const double> x) const {
    const auto k = coords_of(c);
    constexpr double tol = 1e-12;
    for (int j = 0; j < dim_; ++j) {
        const double lo = static_cast<double>(k[j]) * side_;
        if (x[j] < lo - tol || x[j] > lo + side_ + tol) return false;
    }
    return true;
}

CellGrid build_grid(const PointSet& points, double r0, double epsilon) {
    if (!(r0 > 0.0) || !(epsilon > 0.0)) {
        throw std::invalid_argument("build_grid: r0 and epsilon must be positive");
    }
    const double s_prime = provisional_cell_side(points.dim(), points.norm(), r0, epsilon);
    if (!(s_prime < 1.0)) {
        throw std::domain_error("build_grid: provisional side s' >= 1, instance too small for tessellation");
    }
    return CellGrid(points, cells_per_axis_for(s_prime));
}

namespace {

std::vector<double> gaps_between(const CellGrid& grid, CellId a, CellId b) {
    const auto ka = grid.coords_of(a);
    const auto kb = grid.coords_of(b);
    std::vector<double> gap(ka.size());
    for (std::size_t j = 0; j < ka.size(); ++j) {
        const std::size_t diff = ka[j] > kb[j] ? ka[j] - kb[j] : kb[j] - ka[j];
        gap[j] = diff > 0 ? static_cast<double>(diff - 1) * grid.side() : 0.0;
    }
    return gap;
}

}  // namespace

double cell_set_distance(const CellGrid& grid, CellId a, CellId b, NormParam p) {
    const auto gap = gaps_between(grid, a, b);
    return norm_of(gap, p);
}

double cell_linf_distance(const CellGrid& grid, CellId a, CellId b) {
    const auto gap = gaps_between(grid, a, b);
    return gap.empty() ? 0.0 : *std::max_element(gap.begin(), gap.end());
}

CellGraph::CellGraph(std::vector<std::size_t> start, std::vector<CellId> adjacency, double threshold,
                     double degree_bound)
    : start_(std::move(start)), adjacency_(std::move(adjacency)), threshold_(threshold), degree_bound_(degree_bound) {}

bool CellGraph::adjacent(CellId a, CellId b) const noexcept {
    const auto nb = neighbours(a);
    return std::binary_search(nb.begin(), nb.end(), b);
}

std::size_t CellGraph::max_degree() const noexcept {
    std::size_t m = 0;
    for (std::size_t c = 0; c + 1 < start_.size(); ++c) m = std::max(m, start_[c + 1] - start_[c]);
    return m;
}

CellGraph build_cell_graph(const CellGrid& grid, double r0, NormParam p) {
    const int d = grid.dim();
    const double s = grid.side();
    const double threshold = r0 - 2.0 * d * s;
    if (!(threshold > 0.0)) {
        throw std::domain_error("build_cell_graph: r0 - 2ds <= 0, epsilon too large");
    }
    const double theta = unit_ball_volume(d, p);
    const double degree_bound = theta * std::pow((r0 + 2.0 * d * s) / s, d) + 1.0;

    // Offsets whose set-distance is within the threshold. Gap on an axis with
    // offset k is (|k|-1)s, so |k| <= threshold/s + 1.
    const auto reach = static_cast<long>(std::floor(threshold / s)) + 1;
    std::vector<std::vector<long>> stencil;
    std::vector<long> off(static_cast<std::size_t>(d), -reach);
    std::vector<double> gap(static_cast<std::size_t>(d));
    for (;;) {
        bool zero = true;
        for (int j = 0; j < d; ++j) {
            const long a = std::labs(off[j]);
            zero = zero && a == 0;
            gap[j] = a > 0 ? static_cast<double>(a - 1) * s : 0.0;
        }
        if (!zero && norm_of(gap, p) <= threshold) stencil.push_back(off);
        int j = 0;
        while (j < d && off[j] == reach) off[j++] = -reach;
        if (j == d) break;
        ++off[j];
    }

    const std::size_t total = grid.cell_count();
    const auto m = static_cast<long>(grid.cells_per_axis());
    std::vector<std::size_t> start(total + 1, 0);
    std::vector<CellId> adjacency;
    std::vector<CellId> row;
    for (CellId c = 0; c < total; ++c) {
        const auto k = grid.coords_of(c);
        row.clear();
        for (const auto& o : stencil) {
            CellId id = 0;
            std::size_t stride = 1;
            bool inside = true;
            for (int j = 0; j < d; ++j) {
                const long q = static_cast<long>(k[j]) + o[j];
                if (q < 0 || q >= m) {
                    inside = false;
                    break;
                }
                id += static_cast<std::size_t>(q) * stride;
                stride *= grid.cells_per_axis();
            }
            if (inside) row.push_back(id);
        }
        std::sort(row.begin(), row.end());
        adjacency.insert(adjacency.end(), row.begin(), row.end());
        start[c + 1] = adjacency.size();
    }
    return CellGraph(std::move(start), std::move(adjacency), threshold, degree_bound);
}

const char* to_string(CellLabel label) {
    switch (label) {
        case CellLabel::Good: return "good";
        case CellLabel::Bad: return "bad";
        case CellLabel::Ugly: return "ugly";
    }
    return "?";
}

std::vector<CellId> CellClassification::cells_with(CellLabel l) const {
    std::vector<CellId> out;
    for (CellId c = 0; c < label.size(); ++c) {
        if (label[c] == l) out.push_back(c);
    }
    return out;
}

std::size_t dense_threshold_for(double epsilon, std::size_t n) {
    const double scaled = std::ceil(epsilon * epsilon * epsilon * std::log(static_cast<double>(n)));
    return std::max<std::size_t>(3, scaled > 0.0 ? static_cast<std::size_t>(scaled) : 0);
}

namespace {

template <class Pred>
std::vector<std::vector<CellId>> components_where(const CellGraph& graph, Pred member) {
    const std::size_t total = graph.cell_count();
    std::vector<char> seen(total, 0);
    std::vector<std::vector<CellId>> out;
    for (CellId c = 0; c < total; ++c) {
        if (seen[c] || !member(c)) continue;
        std::vector<CellId> comp{c};
        seen[c] = 1;
        for (std::size_t head = 0; head < comp.size(); ++head) {
            for (CellId w : graph.neighbours(comp[head])) {
                if (!seen[w] && member(w)) {
                    seen[w] = 1;
                    comp.push_back(w);
                }
            }
        }
        std::sort(comp.begin(), comp.end());
        out.push_back(std::move(comp));
    }
    return out;
}

}  // namespace

CellClassification classify_cells(const CellGrid& grid, const CellGraph& graph, double epsilon, std::size_t n) {
    if (grid.cell_count() != graph.cell_count()) {
        throw std::invalid_argument("classify_cells: grid and cell graph disagree");
    }
    CellClassification cls;
    cls.dense_threshold = dense_threshold_for(epsilon, n);
    const std::size_t total = grid.cell_count();
    cls.dense.resize(total);
    for (CellId c = 0; c < total; ++c) cls.dense[c] = grid.count(c) >= cls.dense_threshold;
    cls.label.assign(total, CellLabel::Ugly);

    const auto dense_parts = components_where(graph, [&](CellId c) { return bool(cls.dense[c]); });
    if (dense_parts.empty()) {
        cls.degenerate = true;
        return cls;
    }
    // Components come out ordered by their minimum cell id, so the first
    // largest one wins ties.
    const std::vector<CellId>* good = &dense_parts.front();
    for (const auto& comp : dense_parts) {
        if (comp.size() > good->size()) good = &comp;
    }
    for (CellId c : *good) cls.label[c] = CellLabel::Good;
    for (CellId c : *good) {
        for (CellId w : graph.neighbours(c)) {
            if (cls.label[w] == CellLabel::Ugly) cls.label[w] = CellLabel::Bad;
        }
    }
    return cls;
}

std::vector<std::vector<CellId>> label_components(const CellGraph& graph, const CellClassification& cls,
                                                  CellLabel label) {
    return components_where(graph, [&](CellId c) { return cls.label[c] == label; });
}

}  // namespace rrgg
