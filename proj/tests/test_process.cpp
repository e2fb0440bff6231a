#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <tuple>

#include "doctest.h"
#include "rrgg/neighbour_grid.hpp"
#include "rrgg/process.hpp"

using namespace rrgg;

namespace {

PointSet line_points(std::vector<double> xs) {
    std::vector<double> c;
    for (double x : xs) {
        c.push_back(x);
        c.push_back(0.0);
    }
    return PointSet(2, NormParam(2.0), std::move(c));
}

std::vector<EdgeEvent> brute_force_events(const PointSet& pts, double cutoff, Colour count, Seed seed) {
    std::vector<EdgeEvent> out;
    for (Vertex i = 0; i < pts.size(); ++i)
        for (Vertex j = i + 1; j < pts.size(); ++j) {
            const double len = distance(pts[i], pts[j], pts.norm());
            if (len <= cutoff) out.push_back({i, j, len, pair_colour(seed, count, i, j)});
        }
    std::sort(out.begin(), out.end(), [](const EdgeEvent& a, const EdgeEvent& b) {
        return std::tie(a.length, a.i, a.j) < std::tie(b.length, b.i, b.j);
    });
    return out;
}

double brute_force_max_knn(const PointSet& pts, int k) {
    double worst = 0.0;
    for (Vertex i = 0; i < pts.size(); ++i) {
        std::vector<double> d;
        for (Vertex j = 0; j < pts.size(); ++j)
            if (j != i) d.push_back(distance(pts[i], pts[j], pts.norm()));
        std::nth_element(d.begin(), d.begin() + (k - 1), d.end());
        worst = std::max(worst, d[k - 1]);
    }
    return worst;
}

// Prim on the complete graph; returns the longest tree edge.
double prim_longest_edge(const PointSet& pts) {
    const std::size_t n = pts.size();
    std::vector<double> key(n, std::numeric_limits<double>::infinity());
    std::vector<bool> in(n, false);
    key[0] = 0.0;
    double longest = 0.0;
    for (std::size_t step = 0; step < n; ++step) {
        std::size_t u = n;
        for (std::size_t v = 0; v < n; ++v)
            if (!in[v] && (u == n || key[v] < key[u])) u = v;
        in[u] = true;
        longest = std::max(longest, key[u]);
        for (std::size_t v = 0; v < n; ++v)
            if (!in[v]) key[v] = std::min(key[v], distance(pts[u], pts[v], pts.norm()));
    }
    return longest;
}

// Smallest event prefix whose graph has no articulation point, by deleting each vertex.
double brute_force_biconnected_radius(const ColouredProcess& proc) {
    const std::size_t n = proc.n();
    auto ok = [&](std::size_t count) {
        for (Vertex skip = 0; skip <= n; ++skip) {
            std::vector<std::size_t> parent(n);
            std::iota(parent.begin(), parent.end(), 0);
            auto find = [&](std::size_t x) {
                while (parent[x] != x) x = parent[x] = parent[parent[x]];
                return x;
            };
            for (std::size_t e = 0; e < count; ++e) {
                const auto& ev = proc.events()[e];
                if (ev.i == skip || ev.j == skip) continue;
                parent[find(ev.i)] = find(ev.j);
            }
            std::size_t roots = 0;
            for (Vertex v = 0; v < n; ++v)
                if (v != skip && find(v) == v) ++roots;
            if (roots != 1) return false;
        }
        return true;
    };
    for (std::size_t c = 1; c <= proc.events().size(); ++c)
        if (ok(c)) return proc.events()[c - 1].length;
    return -1.0;
}

}  // namespace

TEST_CASE("colour count and pair colours") {
    CHECK(colour_count_for(20.0, 100) == 2000);
    CHECK(colour_count_for(7.0 / 5.0, 5) == 7);
    CHECK(colour_count_for(0.5, 3) == 2);
    for (Vertex i = 0; i < 30; ++i)
        for (Vertex j = i + 1; j < 30; ++j) {
            const Colour c = pair_colour(9, 17, i, j);
            CHECK(c >= 1);
            CHECK(c <= 17);
            CHECK(c == pair_colour(9, 17, j, i));
        }
}

TEST_CASE("colours are roughly uniform") {
    const Colour count = 10;
    std::vector<int> hist(count + 1, 0);
    for (Vertex i = 0; i < 300; ++i)
        for (Vertex j = i + 1; j < 300; ++j) ++hist[pair_colour(4, count, i, j)];
    const double expected = 300.0 * 299.0 / 2.0 / count;
    for (Colour c = 1; c <= count; ++c) CHECK(std::abs(hist[c] - expected) < 0.05 * expected);
}

TEST_CASE("build_process small examples") {
    auto two = build_process(line_points({0.0, 0.5}), 0.4, 20.0, 1);
    CHECK(two.events().empty());

    PointSet three(2, NormParam(2.0), {0.1, 0.1, 0.9, 0.2, 0.4, 0.8});
    const double D = corner_distance(2, NormParam(2.0));
    auto all = build_process(three, D, 20.0, 1);
    CHECK(all.events().size() == 3);
    CHECK_FALSE(all.cutoff_clamped());

    auto clamped = build_process(three, 5.0, 20.0, 1);
    CHECK(clamped.cutoff_clamped());
    CHECK(clamped.cutoff() == doctest::Approx(D));
    CHECK(clamped.events().size() == 3);

    CHECK_THROWS(build_process(three, 0.0, 20.0, 1));
    CHECK_THROWS(build_process(three, 0.5, 0.0, 1));
}

TEST_CASE("event list matches brute force enumeration") {
    for (double pv : {1.5, 2.0, double(INFINITY)}) {
        const NormParam p = std::isinf(pv) ? NormParam::infinity() : NormParam(pv);
        for (Seed s = 1; s <= 5; ++s) {
            const auto pts = sample_points(50, 2, s, p);
            const auto proc = build_process(pts, 0.3, 20.0, s + 100);
            const auto expect = brute_force_events(pts, 0.3, proc.colour_count(), s + 100);
            REQUIRE(proc.events().size() == expect.size());
            CHECK(std::equal(expect.begin(), expect.end(), proc.events().begin()));
        }
    }
    const auto pts3 = sample_points(60, 3, 8);
    const auto proc3 = build_process(pts3, 0.5, 3.0, 2);
    const auto expect3 = brute_force_events(pts3, 0.5, proc3.colour_count(), 2);
    CHECK(std::equal(expect3.begin(), expect3.end(), proc3.events().begin(), proc3.events().end()));
}

TEST_CASE("colours do not depend on the cutoff") {
    const auto pts = sample_points(200, 2, 3);
    const auto small = build_process(pts, 0.1, 20.0, 77);
    const auto large = build_process(pts, 0.3, 20.0, 77);
    REQUIRE(small.events().size() < large.events().size());
    CHECK(std::equal(small.events().begin(), small.events().end(), large.events().begin()));
}

TEST_CASE("hitting radii on a segment") {
    auto proc = build_process(line_points({0.0, 0.3, 0.9}), 2.0, 20.0, 1);
    CHECK(hitting_radius_min_degree(proc, 1)->radius == doctest::Approx(0.6));
    CHECK(hitting_radius_kconn(proc, 1)->radius == doctest::Approx(0.6));
    CHECK(hitting_radius_kconn(proc, 2)->radius == doctest::Approx(0.9));

    auto pair = build_process(line_points({0.2, 0.7}), 1.0, 20.0, 1);
    CHECK(hitting_radius_min_degree(pair, 1)->radius == doctest::Approx(0.5));

    PointSet tri(2, NormParam(2.0), {0.1, 0.1, 0.9, 0.2, 0.4, 0.8});
    auto tp = build_process(tri, 2.0, 20.0, 1);
    CHECK(hitting_radius_kconn(tp, 2)->radius == tp.events().back().length);

    auto short_cut = build_process(line_points({0.0, 0.3, 0.9}), 0.4, 20.0, 1);
    CHECK_FALSE(hitting_radius_min_degree(short_cut, 1).has_value());
    CHECK_FALSE(hitting_radius_kconn(short_cut, 1).has_value());
}

TEST_CASE("min-degree radius equals the maximum k-NN distance") {
    for (Seed s = 1; s <= 40; ++s) {
        const auto pts = sample_points(30, 2, s, s % 2 ? NormParam(2.0) : NormParam(1.5));
        const auto proc = build_process(pts, corner_distance(2, pts.norm()), 20.0, s);
        for (int k : {1, 2, 3}) {
            const auto hit = hitting_radius_min_degree(proc, k);
            REQUIRE(hit.has_value());
            CHECK(hit->radius == brute_force_max_knn(pts, k));
            CHECK(proc.events()[hit->event_index].length == hit->radius);
        }
        const auto kth = kth_neighbour_distances(pts, 2, 1.0);
        CHECK(*std::max_element(kth.begin(), kth.end()) == brute_force_max_knn(pts, 2));
    }
}

TEST_CASE("connectivity radii against MST and vertex deletion oracles") {
    for (Seed s = 1; s <= 20; ++s) {
        const auto pts = sample_points(40, 2, s);
        const auto proc = build_process(pts, corner_distance(2, pts.norm()), 20.0, s);
        CHECK(hitting_radius_kconn(proc, 1)->radius == prim_longest_edge(pts));
        const double r2 = hitting_radius_kconn(proc, 2)->radius;
        CHECK(r2 == brute_force_biconnected_radius(proc));
        CHECK(hitting_radius_min_degree(proc, 2)->radius <= r2);
        const auto radii = compute_hitting_radii(proc);
        CHECK(radii.r_kconn.at(1) <= radii.r_kconn.at(2));
        CHECK(radii.r_min_deg.at(1) <= radii.r_kconn.at(1));
    }
}

TEST_CASE("snapshots") {
    const auto pts = sample_points(80, 2, 12);
    const auto proc = build_process(pts, 0.4, 20.0, 3);
    CHECK(snapshot(proc, 0.0).edge_count() == 0);
    CHECK(snapshot(proc, proc.cutoff()).edge_count() == proc.events().size());
    CHECK_THROWS_AS(snapshot(proc, 0.5), std::out_of_range);

    const std::size_t mid = proc.events().size() / 2;
    const auto g = snapshot(proc, proc.events()[mid].length);
    CHECK(g.edge_count() == mid + 1);

    const auto a = snapshot(proc, 0.1), b = snapshot(proc, 0.2);
    for (Vertex u = 0; u < 80; ++u)
        for (const auto& arc : a.neighbours(u)) {
            CHECK(b.has_edge(u, arc.to));
            CHECK(arc.colour == proc.colour_of(u, arc.to));
        }
    std::size_t deg_sum = 0;
    for (Vertex u = 0; u < 80; ++u) deg_sum += b.degree(u);
    CHECK(deg_sum == 2 * b.edge_count());
}

TEST_CASE("reference radii") {
    const auto rr = reference_radii(10'000, 2, NormParam::infinity(), 1.0);
    CHECK(rr.r0 == doctest::Approx(0.014326845755413318).epsilon(1e-13));
    CHECK(rr.r1 == doctest::Approx(0.01762857565030711).epsilon(1e-13));

    for (int d : {2, 3}) {
        for (double pv : {1.5, 2.0, double(INFINITY)}) {
            const NormParam p = std::isinf(pv) ? NormParam::infinity() : NormParam(pv);
            for (std::size_t n : {100u, 1000u, 100000u}) {
                const double omega = default_omega(n);
                const auto r = reference_radii(n, d, p, omega);
                const double theta = unit_ball_volume(d, p);
                const double ln = std::log(double(n)), lnln = std::log(ln);
                const double lhs0 = theta * n * std::pow(r.r0, d) + omega - std::ldexp(1.0, d - 1) / d * ln -
                                    std::ldexp(1.0, d - 2) * (3.0 - d - 2.0 / d) * lnln;
                CHECK(std::abs(lhs0) < 1e-9 * ln);
                CHECK(r.r1 > r.r0);
            }
        }
    }
    CHECK(default_omega(16) == doctest::Approx(std::sqrt(std::log(std::log(16.0)))));
    CHECK(default_omega(3) == doctest::Approx(std::sqrt(std::log(std::log(3.0)))));
    CHECK(default_omega(3) > 0.1);
    CHECK_THROWS(reference_radii(2, 2, NormParam(2.0), 1.0));
    CHECK_THROWS(reference_radii(10, 2, NormParam(2.0), 50.0));
}

TEST_CASE("build_process_reaching extends the cutoff") {
    const auto pts = sample_points(300, 2, 21);
    const auto proc = build_process_reaching(pts, 0.001, 6000, 5, 2, true);
    CHECK(hitting_radius_min_degree(proc, 2).has_value());
    CHECK(hitting_radius_kconn(proc, 2).has_value());
}
