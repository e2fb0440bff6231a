#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "rrgg/certificate.hpp"
#include "rrgg/process.hpp"

namespace rrgg {

struct ColouredEdge {
    Vertex i;
    Vertex j;
    Colour colour;
    std::optional<double> length;
};

/// Generic edge-coloured graph on vertices 0..n-1.
struct ColouredGraphInstance {
    std::size_t n = 0;
    std::vector<ColouredEdge> edges;

    /// Throws std::invalid_argument on loops, parallel edges, colour 0 or bad indices.
    void check() const;
};

/// The first `count` events of the process as an instance (lengths included).
ColouredGraphInstance instance_from_prefix(const ColouredProcess& process, std::size_t count);

/// Default hard limits on n.
inline constexpr std::size_t kOracleHamiltonLimit = 14;
inline constexpr std::size_t kOracleMatchingLimit = 20;

class OracleRefused : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Rainbow Hamilton cycle by backtracking from vertex 0 with a used-colour bitmap.
/// Witness edges in cycle order. Throws std::invalid_argument for n < 3 and
/// OracleRefused for n > limit.
std::optional<std::vector<ColouredEdge>> exact_rainbow_hc(const ColouredGraphInstance& g,
                                                          std::size_t limit = kOracleHamiltonLimit);

/// Rainbow perfect matching, always branching on the lowest unmatched vertex.
/// Throws std::invalid_argument for odd n and OracleRefused for n > limit.
std::optional<std::vector<ColouredEdge>> exact_rainbow_pm(const ColouredGraphInstance& g,
                                                          std::size_t limit = kOracleMatchingLimit);

struct RainbowHit {
    std::size_t event_index;  // the event whose insertion creates the structure
    double radius;
    RainbowCertificate certificate;
};

/// Exact hitting radius of a rainbow structure within the process cutoff, found by
/// binary search over event prefixes. nullopt: not reached.
std::optional<RainbowHit> exact_hitting_rainbow(const ColouredProcess& process, Structure kind,
                                                std::size_t limit = 0);

/// Exact rainbow structure in G(X; radius), as a certificate at that radius.
std::optional<RainbowCertificate> exact_certificate(const ColouredProcess& process, Structure kind, double radius,
                                                    std::size_t limit = 0);

/// Empty when the certificate is valid. Checks structure, colour distinctness,
/// colours against the process, lengths against the radius and the points.
std::vector<std::string> validate_certificate(const RainbowCertificate& cert, const ColouredProcess& process);

}  // namespace rrgg
