#include <cmath>
#include <random>
#include <set>
#include <stdexcept>
#include <algorithm>

#include "doctest.h"
#include "rrgg/process.hpp"
#include "rrgg/tessellation.hpp"

using namespace rrgg;

namespace {

CellGraph graph_from_lists(const std::vector<std::vector<CellId>>& lists) {
    std::vector<std::size_t> start{0};
    std::vector<CellId> adj;
    for (const auto& l : lists) {
        adj.insert(adj.end(), l.begin(), l.end());
        start.push_back(adj.size());
    }
    return CellGraph(std::move(start), std::move(adj), 0.1, 1e9);
}

// Every cell dense; points at the centres of a 2x2 grid, four per cell.
PointSet four_per_cell() {
    std::vector<double> c;
    for (double x : {0.2, 0.3, 0.7, 0.8})
        for (double y : {0.2, 0.3, 0.7, 0.8}) {
            c.push_back(x);
            c.push_back(y);
        }
    return PointSet(2, NormParam(2.0), c);
}

}  // namespace

TEST_CASE("cell side rounding") {
    CHECK(cells_per_axis_for(0.3) == 4);
    CHECK(cells_per_axis_for(0.25) == 4);
    CHECK(cells_per_axis_for(0.2) == 5);
    const double sp = provisional_cell_side(2, NormParam(2.0), 0.1, 0.1);
    CHECK(sp == doctest::Approx(std::sqrt(2.0 * 0.1 * 2.0 * M_PI) * 0.05));
    const auto pts = sample_points(10, 2, 1);
    CHECK_THROWS_AS(build_grid(pts, 5.0, 0.1), std::domain_error);
    CHECK_THROWS_AS(CellGrid(pts, 0), std::invalid_argument);
}

TEST_CASE("grid assignment and containment") {
    const auto pts = sample_points(500, 2, 4);
    const auto r = reference_radii(500, 2, NormParam(2.0), default_omega(500));
    const auto grid = build_grid(pts, r.r0, 0.1);
    const std::size_t m = grid.cells_per_axis();
    CHECK(static_cast<double>(m) * grid.side() == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(grid.cell_count() == m * m);
    std::size_t total = 0;
    for (CellId c = 0; c < grid.cell_count(); ++c) {
        total += grid.count(c);
        for (Vertex v : grid.vertices(c)) {
            CHECK(grid.cell_of(v) == c);
            CHECK(grid.contains(c, pts[v]));
        }
        CHECK(grid.id_of(grid.coords_of(c)) == c);
    }
    CHECK(total == 500);
}

TEST_CASE("boundary points land in a valid cell") {
    PointSet pts(2, NormParam(2.0), {0.0, 0.0, 1.0, 1.0, 0.5, 0.25, 0.25, 1.0});
    CellGrid grid(pts, 4);
    CHECK(grid.cell_of(0) == 0);
    CHECK(grid.cell_of(1) == 15);
    for (Vertex v = 0; v < 4; ++v) CHECK(grid.contains(grid.cell_of(v), pts[v]));
    CHECK(grid.coords_of(grid.cell_of(2)) == std::vector<std::size_t>{2, 1});
}

TEST_CASE("cell set distances and adjacency") {
    PointSet pts(2, NormParam(2.0), {0.5, 0.5});
    CellGrid grid(pts, 10);
    const CellId a = grid.id_of(std::vector<std::size_t>{0, 0});
    const CellId face = grid.id_of(std::vector<std::size_t>{1, 0});
    const CellId diag = grid.id_of(std::vector<std::size_t>{2, 2});
    const CellId far = grid.id_of(std::vector<std::size_t>{9, 9});
    CHECK(cell_set_distance(grid, a, face, NormParam(2.0)) == 0.0);
    CHECK(cell_set_distance(grid, a, diag, NormParam(2.0)) == doctest::Approx(std::sqrt(0.02)));
    CHECK(cell_set_distance(grid, a, diag, NormParam(1.0)) == doctest::Approx(0.2));
    CHECK(cell_linf_distance(grid, a, diag) == doctest::Approx(0.1));

    const auto g = build_cell_graph(grid, 0.45, NormParam(2.0));
    CHECK(g.threshold() == doctest::Approx(0.05));
    CHECK(g.adjacent(a, face));
    CHECK(g.adjacent(face, a));
    CHECK_FALSE(g.adjacent(a, a));
    CHECK_FALSE(g.adjacent(a, diag));
    CHECK_FALSE(g.adjacent(a, far));
    CHECK(static_cast<double>(g.max_degree()) <= g.degree_bound());

    CHECK_THROWS_AS(build_cell_graph(grid, 0.4, NormParam(2.0)), std::domain_error);
}

TEST_CASE("adjacent cells only hold vertices within r0") {
    for (double pv : {1.5, 2.0, double(INFINITY)}) {
        const NormParam p = std::isinf(pv) ? NormParam::infinity() : NormParam(pv);
        const auto pts = sample_points(2000, 2, 17, p);
        const auto r = reference_radii(2000, 2, p, default_omega(2000));
        const auto grid = build_grid(pts, r.r0, 0.015);
        const auto g = build_cell_graph(grid, r.r0, p);
        CHECK(max_cross_pair_distance(pts, grid, g) <= r.r0);
        CHECK(static_cast<double>(g.max_degree()) <= g.degree_bound());
        for (CellId c = 0; c < g.cell_count(); ++c)
            for (CellId w : g.neighbours(c)) CHECK(g.adjacent(w, c));
    }
}

TEST_CASE("classification label invariants on random instances") {
    const std::size_t n = 2000;
    const auto pts = sample_points(n, 2, 23);
    const auto r = reference_radii(n, 2, NormParam(2.0), default_omega(n));
    const auto grid = build_grid(pts, r.r0, 0.015);
    const auto g = build_cell_graph(grid, r.r0, NormParam(2.0));
    const auto cls = classify_cells(grid, g, 0.015, n);
    CHECK(cls.dense_threshold == dense_threshold_for(0.015, n));
    REQUIRE_FALSE(cls.degenerate);

    const auto good_parts = label_components(g, cls, CellLabel::Good);
    CHECK(good_parts.size() == 1);
    std::set<CellId> good(good_parts.front().begin(), good_parts.front().end());
    for (CellId c = 0; c < grid.cell_count(); ++c) {
        bool touches_good = false;
        for (CellId w : g.neighbours(c)) touches_good |= good.count(w) > 0;
        switch (cls.label[c]) {
            case CellLabel::Good: CHECK(cls.dense[c]); break;
            case CellLabel::Bad:
                CHECK(touches_good);
                CHECK_FALSE(cls.dense[c]);
                break;
            case CellLabel::Ugly: CHECK_FALSE(touches_good); break;
        }
    }
    // No other dense component is larger than the good one.
    CellClassification all_dense = cls;
    for (CellId c = 0; c < grid.cell_count(); ++c)
        all_dense.label[c] = cls.dense[c] ? CellLabel::Good : CellLabel::Ugly;
    for (const auto& part : label_components(g, all_dense, CellLabel::Good))
        CHECK(part.size() <= good.size());

    const auto again = classify_cells(build_grid(pts, r.r0, 0.015), g, 0.015, n);
    CHECK(again.label == cls.label);
}

TEST_CASE("classification examples") {
    const auto pts = four_per_cell();
    CellGrid grid(pts, 2);
    const auto g = build_cell_graph(grid, 2.5, NormParam(2.0));
    const auto cls = classify_cells(grid, g, 0.1, pts.size());
    CHECK(cls.cells_with(CellLabel::Good).size() == 4);

    // An isolated sparse cell is ugly; an empty grid is degenerate.
    auto lists = std::vector<std::vector<CellId>>{{1}, {0}, {}, {}};
    const auto iso = graph_from_lists(lists);
    PointSet sparse(2, NormParam(2.0), {0.1, 0.1, 0.2, 0.2, 0.3, 0.3, 0.9, 0.1, 0.8, 0.1, 0.7, 0.2, 0.9, 0.9});
    CellGrid sgrid(sparse, 2);
    const auto c2 = classify_cells(sgrid, iso, 0.1, sparse.size());
    CHECK(c2.label[0] == CellLabel::Good);
    CHECK(c2.label[1] == CellLabel::Good);
    CHECK(c2.label[3] == CellLabel::Ugly);

    PointSet one(2, NormParam(2.0), {0.1, 0.1});
    CellGrid ogrid(one, 2);
    const auto c3 = classify_cells(ogrid, iso, 0.1, 1);
    CHECK(c3.degenerate);
    CHECK(c3.cells_with(CellLabel::Ugly).size() == 4);

    CHECK(dense_threshold_for(0.1, 1000) == 3);
}

TEST_CASE("dense threshold lower clamp") {
    CHECK(dense_threshold_for(0.5, 100000) == std::max<std::size_t>(3, std::ceil(0.125 * std::log(1e5))));
}

TEST_CASE("diagnostics on an all-good grid") {
    const auto pts = four_per_cell();
    CellGrid grid(pts, 2);
    const auto g = build_cell_graph(grid, 2.5, NormParam(2.0));
    const auto cls = classify_cells(grid, g, 0.1, pts.size());
    DiagnosticsParams params;
    params.n = pts.size();
    params.r0 = 2.5;
    params.r1 = 2.6;
    const auto rep = diagnostics(grid, g, cls, params);
    for (const char* name : {"ugly_component_diameter", "ugly_component_separation", "good_cells_around_ugly"}) {
        const auto* chk = rep.find(name);
        REQUIRE(chk != nullptr);
        CHECK(chk->passed == std::optional<bool>(true));
    }
    CHECK(rep.find("no_such_check") == nullptr);
}

TEST_CASE("diagnostics flag a wide ugly cluster") {
    // 20x20 grid; cells (0,0) and (19,0) are ugly and joined, everything else good.
    const std::size_t m = 20;
    PointSet pts(2, NormParam(2.0), {0.5, 0.5});
    CellGrid grid(pts, m);
    std::vector<std::vector<CellId>> lists(m * m);
    const CellId a = 0, b = 19;
    for (CellId c = 0; c < m * m; ++c) {
        const auto xy = grid.coords_of(c);
        if (c == a || c == b) continue;
        if (xy[0] + 1 < m && c + 1 != b) lists[c].push_back(c + 1), lists[c + 1].push_back(c);
        if (xy[1] + 1 < m) lists[c].push_back(c + m), lists[c + m].push_back(c);
    }
    lists[a].push_back(b);
    lists[b].push_back(a);
    for (auto& l : lists) std::sort(l.begin(), l.end());
    const auto g = graph_from_lists(lists);

    CellClassification cls;
    cls.label.assign(m * m, CellLabel::Good);
    cls.dense.assign(m * m, true);
    cls.label[a] = cls.label[b] = CellLabel::Ugly;
    cls.dense[a] = cls.dense[b] = false;
    cls.dense_threshold = 3;

    DiagnosticsParams params;
    params.n = 1;
    params.r0 = 0.3;
    params.r1 = 0.35;
    const auto rep = diagnostics(grid, g, cls, params);
    const auto* chk = rep.find("ugly_component_diameter");
    REQUIRE(chk != nullptr);
    CHECK(chk->passed == std::optional<bool>(false));
    CHECK(chk->statistic == doctest::Approx(1.0));
    CHECK(chk->bound == doctest::Approx(16.0 * 0.05));
    CHECK_FALSE(rep.all_judged_passed());
}
