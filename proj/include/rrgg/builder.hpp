#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "rrgg/certificate.hpp"
#include "rrgg/process.hpp"
#include "rrgg/tessellation.hpp"

namespace rrgg {

// ---------------------------------------------------------------------------
// Ledger of accepted edges. A colour is never registered twice.

struct LedgerEntry {
    Vertex i;
    Vertex j;
    Colour colour;
    double length;
    std::string piece;
};

enum class Stage : std::uint8_t { Ugly = 1, Bad = 2, Good = 3, Stitch = 4 };

const char* to_string(Stage stage);

class RainbowLedger {
public:
    bool colour_used(Colour c) const { return used_.contains(c); }
    std::size_t used_colour_count() const noexcept { return used_.size(); }
    const std::vector<LedgerEntry>& entries() const noexcept { return entries_; }

    /// Reads the colour of pair {i,j}, remembering the first stage that looked at it.
    Colour reveal(const ColouredProcess& process, Vertex i, Vertex j, Stage stage);
    /// The stage that first revealed the pair, if any.
    std::optional<Stage> revealed_in(Vertex i, Vertex j) const;

    /// Registers {i,j} under its process colour. On a colour collision nothing is
    /// registered and the index of the entry holding the colour is returned.
    std::optional<std::size_t> try_register(const ColouredProcess& process, Vertex i, Vertex j, Stage stage,
                                            std::string piece);

    /// True iff no colour occurs twice among the entries.
    bool audit() const;

private:
    static std::uint64_t key(Vertex i, Vertex j) noexcept;

    std::unordered_map<Colour, std::size_t> used_;
    std::vector<LedgerEntry> entries_;
    std::unordered_map<std::uint64_t, Stage> revealed_;
};

// ---------------------------------------------------------------------------
// Shared state of one build: the instance, the radius and the tessellation.

struct BuildContext {
    const ColouredProcess& process;
    const CellGrid& grid;
    const CellGraph& graph;
    const CellClassification& cls;
    Structure mode;
    double radius;  // hitting radius the certificate is built at
    double r0;
    double A = 3.0;
    double epsilon = 0.1;
};

struct UglyPath {
    std::vector<Vertex> vertices;
    /// Good cell the path hooks into (Hamilton cycle mode only).
    std::optional<CellId> anchor;
    /// Index of the ugly component the path covers.
    std::size_t component = 0;
};

struct UglyPathPlan {
    std::vector<UglyPath> paths;
    Structure mode = Structure::HamiltonCycle;
    /// Minimum l_p distance between vertices of different paths (inf if < 2 paths).
    double min_separation = std::numeric_limits<double>::infinity();
    bool separation_ok = true;
};

/// Paths covering the vertices of every ugly component, using edges of length <= radius.
Result<UglyPathPlan> plan_ugly_paths(const BuildContext& ctx);

/// Registers every ugly-path edge; fails on the first colour collision.
std::optional<BuildFailure> colour_ugly_paths(const UglyPathPlan& plan, const ColouredProcess& process,
                                              RainbowLedger& ledger);

struct BadForest {
    CellId cell;
    std::vector<std::vector<Vertex>> paths;
};

struct BadForestStats {
    std::size_t oversized_cells = 0;  // forests with more than ceil(4/eps) paths
    std::size_t max_paths = 0;
};

/// Per bad cell: a path through the uncovered vertices in index order, cut at
/// edges whose colour is already used.
std::vector<BadForest> build_bad_forests(const BuildContext& ctx, const UglyPathPlan& plan, RainbowLedger& ledger,
                                         BadForestStats* stats = nullptr);

struct GoodCycle {
    CellId cell;
    std::vector<Vertex> cycle;
};

/// Per good cell: a rainbow Hamilton cycle on the uncovered vertices with fresh colours.
Result<std::vector<GoodCycle>> build_good_cycles(const BuildContext& ctx, const UglyPathPlan& plan,
                                                 RainbowLedger& ledger);

struct StitchPlan {
    /// Spanning tree of the good cells as child -> parent (the root is absent).
    std::map<CellId, CellId> tree_parent;
    /// Bad cell -> good cell it hangs from.
    std::map<CellId, CellId> bad_parent;
    /// Ugly path index -> good cell it hangs from (Hamilton cycle mode).
    std::map<std::size_t, CellId> ugly_parent;
    /// Piece label -> hook edge {u, v} in a good cycle.
    std::map<std::string, std::pair<Vertex, Vertex>> hooks;
};

/// Joins all pieces into one certificate at ctx.radius.
Result<RainbowCertificate> stitch(const BuildContext& ctx, const UglyPathPlan& plan,
                                  const std::vector<BadForest>& forests, const std::vector<GoodCycle>& cycles,
                                  RainbowLedger& ledger, StitchPlan* out_plan = nullptr);

// ---------------------------------------------------------------------------
// End-to-end build.

/// Which hitting radius the certificate is built at.
enum class RadiusKind { MinDegree, Connectivity };

const char* to_string(RadiusKind kind);

struct BuildOptions {
    double epsilon = 0.1;
    double A = 3.0;
    std::optional<double> omega;  // default: default_omega(n)
    int power = 1;
    /// Exact oracle is used when the tessellation stage fails and n <= this limit.
    std::size_t oracle_fallback_limit = 12;
    /// Fresh colour seeds tried after a colour-dependent failure.
    int retries = 0;
    bool run_diagnostics = false;
    /// Overrides the reference radius r0 (instances built by hand).
    std::optional<double> r0_override;
};

struct BuildReport {
    std::optional<RainbowCertificate> certificate;
    std::optional<BuildFailure> failure;
    RadiusKind radius_kind = RadiusKind::MinDegree;
    std::optional<double> radius;  // hitting radius, when reached
    std::optional<double> r0;
    Seed colour_seed = 0;
    int attempts = 0;
    bool used_oracle = false;
    bool ledger_ok = true;
    std::vector<std::string> certificate_violations;
    std::size_t ugly_paths = 0;
    std::size_t bad_paths = 0;
    std::size_t good_cells = 0;
    BadForestStats forest_stats;
    std::optional<DiagnosticsReport> diagnostics;

    bool success() const { return certificate.has_value(); }
};

/// Colours the points with ceil(K n) colours from `colour_seed` and builds a rainbow
/// Hamilton cycle (n >= 4) or perfect matching (n even) at the matching hitting
/// radius. Throws std::invalid_argument when n violates those preconditions.
BuildReport build_rainbow(const PointSet& points, double K, Seed colour_seed, Structure mode,
                          const BuildOptions& options = {});

/// Same, on an existing process (colour count and seed taken from it).
BuildReport build_rainbow_on(const ColouredProcess& process, Structure mode, const BuildOptions& options = {});

}  // namespace rrgg
