#include <algorithm>
#include <numeric>
#include <random>
#include <set>
#include <stdexcept>

#include "doctest.h"
#include "rrgg/oracle.hpp"
#include "rrgg/process.hpp"

using namespace rrgg;

namespace {

ColouredGraphInstance k4(Colour c01, Colour c12, Colour c23, Colour c03, Colour c02, Colour c13) {
    return {4, {{0, 1, c01, {}}, {1, 2, c12, {}}, {2, 3, c23, {}}, {0, 3, c03, {}}, {0, 2, c02, {}}, {1, 3, c13, {}}}};
}

std::optional<Colour> colour_between(const ColouredGraphInstance& g, Vertex a, Vertex b) {
    for (const auto& e : g.edges)
        if ((e.i == a && e.j == b) || (e.i == b && e.j == a)) return e.colour;
    return std::nullopt;
}

// Enumerates vertex orders starting at 0.
bool brute_force_rainbow_hc(const ColouredGraphInstance& g) {
    std::vector<Vertex> perm(g.n);
    std::iota(perm.begin(), perm.end(), 0);
    do {
        std::set<Colour> seen;
        bool ok = true;
        for (std::size_t k = 0; k < g.n && ok; ++k) {
            const auto c = colour_between(g, perm[k], perm[(k + 1) % g.n]);
            ok = c && seen.insert(*c).second;
        }
        if (ok) return true;
    } while (std::next_permutation(perm.begin() + 1, perm.end()));
    return false;
}

// Enumerates permutations and pairs consecutive entries.
bool brute_force_rainbow_pm(const ColouredGraphInstance& g) {
    std::vector<Vertex> perm(g.n);
    std::iota(perm.begin(), perm.end(), 0);
    do {
        std::set<Colour> seen;
        bool ok = true;
        for (std::size_t k = 0; k < g.n && ok; k += 2) {
            const auto c = colour_between(g, perm[k], perm[k + 1]);
            ok = c && seen.insert(*c).second;
        }
        if (ok) return true;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return false;
}

ColouredGraphInstance random_instance(std::size_t n, double prob, Colour colours, std::mt19937_64& gen) {
    std::bernoulli_distribution coin(prob);
    ColouredGraphInstance g{n, {}};
    for (Vertex a = 0; a < n; ++a)
        for (Vertex b = a + 1; b < n; ++b)
            if (coin(gen)) g.edges.push_back({a, b, static_cast<Colour>(1 + gen() % colours), {}});
    return g;
}

void check_witness(const ColouredGraphInstance& g, const std::vector<ColouredEdge>& w, Structure kind) {
    std::set<Colour> colours;
    std::vector<int> deg(g.n, 0);
    for (const auto& e : w) {
        CHECK(colour_between(g, e.i, e.j) == e.colour);
        colours.insert(e.colour);
        ++deg[e.i], ++deg[e.j];
    }
    CHECK(colours.size() == w.size());
    const int want = kind == Structure::HamiltonCycle ? 2 : 1;
    for (int d : deg) CHECK(d == want);
    CHECK(w.size() == (kind == Structure::HamiltonCycle ? g.n : g.n / 2));
}

ColouredProcess square_process(Colour count, Seed seed) {
    PointSet pts(2, NormParam(2.0), {0.2, 0.2, 0.7, 0.2, 0.7, 0.6, 0.2, 0.6});
    return build_process_with_colours(pts, corner_distance(2, pts.norm()), count, seed);
}

}  // namespace

TEST_CASE("structure names") {
    CHECK(parse_structure("hc") == Structure::HamiltonCycle);
    CHECK(parse_structure("PM") == Structure::PerfectMatching);
    CHECK(std::string(to_string(Structure::PerfectMatching)) == "PM");
    CHECK_THROWS(parse_structure("cycle"));
}

TEST_CASE("instance checks") {
    ColouredGraphInstance loop{3, {{1, 1, 1, {}}}};
    CHECK_THROWS_AS(loop.check(), std::invalid_argument);
    ColouredGraphInstance zero{3, {{0, 1, 0, {}}}};
    CHECK_THROWS_AS(zero.check(), std::invalid_argument);
    ColouredGraphInstance dup{3, {{0, 1, 1, {}}, {1, 0, 2, {}}}};
    CHECK_THROWS_AS(dup.check(), std::invalid_argument);
    ColouredGraphInstance range{3, {{0, 3, 1, {}}}};
    CHECK_THROWS_AS(range.check(), std::invalid_argument);
}

TEST_CASE("rainbow Hamilton cycle examples") {
    ColouredGraphInstance tri{3, {{0, 1, 1, {}}, {1, 2, 2, {}}, {0, 2, 3, {}}}};
    CHECK(exact_rainbow_hc(tri).has_value());
    ColouredGraphInstance tri_mono{3, {{0, 1, 1, {}}, {1, 2, 1, {}}, {0, 2, 3, {}}}};
    CHECK_FALSE(exact_rainbow_hc(tri_mono).has_value());

    // Cycle edges a,b,a,b and both diagonals c.
    CHECK_FALSE(exact_rainbow_hc(k4(1, 2, 1, 2, 3, 3)).has_value());
    const auto all = k4(1, 2, 3, 4, 5, 6);
    const auto w = exact_rainbow_hc(all);
    REQUIRE(w);
    check_witness(all, *w, Structure::HamiltonCycle);

    CHECK_THROWS_AS(exact_rainbow_hc(ColouredGraphInstance{2, {{0, 1, 1, {}}}}), std::invalid_argument);
    CHECK_THROWS_AS(exact_rainbow_hc(ColouredGraphInstance{15, {}}), OracleRefused);
    CHECK_NOTHROW(exact_rainbow_hc(ColouredGraphInstance{15, {}}, 15));
}

TEST_CASE("rainbow perfect matching examples") {
    // Each perfect matching of K4 monochromatic.
    CHECK_FALSE(exact_rainbow_pm(k4(1, 2, 1, 2, 3, 3)).has_value());
    const auto g = k4(1, 2, 3, 4, 5, 6);
    const auto w = exact_rainbow_pm(g);
    REQUIRE(w);
    check_witness(g, *w, Structure::PerfectMatching);
    CHECK_THROWS_AS(exact_rainbow_pm(ColouredGraphInstance{3, {}}), std::invalid_argument);
    CHECK_THROWS_AS(exact_rainbow_pm(ColouredGraphInstance{22, {}}), OracleRefused);
}

TEST_CASE("oracles agree with permutation enumeration") {
    std::mt19937_64 gen(31);
    int hc_yes = 0, pm_yes = 0;
    for (int t = 0; t < 400; ++t) {
        const std::size_t n = 4 + t % 4;
        const auto g = random_instance(n, 0.5 + 0.1 * (t % 5), static_cast<Colour>(n + t % 5), gen);
        const auto hc = exact_rainbow_hc(g);
        CHECK(hc.has_value() == brute_force_rainbow_hc(g));
        if (hc) check_witness(g, *hc, Structure::HamiltonCycle), ++hc_yes;
        if (n % 2 == 0) {
            const auto pm = exact_rainbow_pm(g);
            CHECK(pm.has_value() == brute_force_rainbow_pm(g));
            if (pm) check_witness(g, *pm, Structure::PerfectMatching), ++pm_yes;
        }
    }
    CHECK(hc_yes > 20);
    CHECK(pm_yes > 20);
}

TEST_CASE("hitting radius on a rectangle") {
    Seed seed = 1;
    auto proc = square_process(1'000'000, seed);
    std::set<Colour> cs;
    for (const auto& e : proc.events()) cs.insert(e.colour);
    REQUIRE(cs.size() == proc.events().size());
    const auto hc = exact_hitting_rainbow(proc, Structure::HamiltonCycle);
    REQUIRE(hc);
    CHECK(hc->radius == doctest::Approx(0.5));
    CHECK(hc->event_index == 3);
    CHECK(validate_certificate(hc->certificate, proc).empty());
    const auto pm = exact_hitting_rainbow(proc, Structure::PerfectMatching);
    REQUIRE(pm);
    CHECK(pm->radius == doctest::Approx(0.4));
    CHECK(validate_certificate(pm->certificate, proc).empty());

    // Two colours: every Hamilton cycle of K4 repeats one.
    auto two = square_process(1, seed);
    CHECK_FALSE(exact_hitting_rainbow(two, Structure::HamiltonCycle));
}

TEST_CASE("hitting radius agrees with a linear scan over prefixes") {
    for (Seed s = 1; s <= 60; ++s) {
        const std::size_t n = 4 + s % 5;
        const auto pts = sample_points(n, 2, s);
        const auto proc = build_process_with_colours(pts, corner_distance(2, pts.norm()), static_cast<Colour>(n + 2), s);
        for (Structure kind : {Structure::HamiltonCycle, Structure::PerfectMatching}) {
            if (kind == Structure::PerfectMatching && n % 2) continue;
            std::optional<std::size_t> first;
            for (std::size_t c = 1; c <= proc.events().size() && !first; ++c) {
                const auto g = instance_from_prefix(proc, c);
                const bool yes = kind == Structure::HamiltonCycle ? exact_rainbow_hc(g).has_value()
                                                                   : exact_rainbow_pm(g).has_value();
                if (yes) first = c - 1;
            }
            const auto hit = exact_hitting_rainbow(proc, kind);
            CHECK(hit.has_value() == first.has_value());
            if (!hit || !first) continue;
            CHECK(hit->event_index == *first);
            const int k = kind == Structure::HamiltonCycle ? 2 : 1;
            CHECK(hit->radius >= hitting_radius_min_degree(proc, k)->radius);
            CHECK(validate_certificate(hit->certificate, proc).empty());
            const auto again = exact_certificate(proc, kind, hit->radius);
            CHECK(again.has_value());
        }
    }
}

TEST_CASE("certificate validation catches violations") {
    auto proc = square_process(1'000'000, 1);
    const auto hit = exact_hitting_rainbow(proc, Structure::HamiltonCycle);
    REQUIRE(hit);
    const auto good = hit->certificate;
    REQUIRE(validate_certificate(good, proc).empty());

    auto has = [](const std::vector<std::string>& v, const std::string& prefix) {
        return std::any_of(v.begin(), v.end(), [&](const std::string& s) { return s.find(prefix) != std::string::npos; });
    };

    auto dup = good;
    dup.edges[1].colour = dup.edges[0].colour;
    CHECK(has(validate_certificate(dup, proc), "colour repeated"));
    CHECK(has(validate_certificate(dup, proc), "colour mismatch"));

    auto shortened = good;
    shortened.radius = 0.45;
    CHECK(has(validate_certificate(shortened, proc), "length exceeds radius"));

    auto lied = good;
    lied.edges[0].length *= 0.5;
    CHECK(has(validate_certificate(lied, proc), "length disagrees"));

    auto broken = good;
    broken.edges.pop_back();
    CHECK(has(validate_certificate(broken, proc), "structure"));

    auto wrong_kind = good;
    wrong_kind.kind = Structure::PerfectMatching;
    CHECK(has(validate_certificate(wrong_kind, proc), "structure"));
}
