#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

namespace rrgg {

/// Small undirected graph on vertices 0..size-1 with sorted adjacency lists.
using LocalGraph = std::vector<std::vector<std::uint32_t>>;

/// Largest vertex count accepted by the exact subset dynamic programmes.
inline constexpr std::size_t kExactHamiltonLimit = 20;

/// Hamilton cycle via rotation-extension with lowest-index tie-breaking, falling
/// back to the exact search when the heuristic stalls and size <= kExactHamiltonLimit.
/// Returns the cycle as a vertex order (closing edge implied). Needs size >= 3.
std::optional<std::vector<std::uint32_t>> find_hamilton_cycle(const LocalGraph& g);

/// Exact Hamilton cycle search over subsets; nullopt if none or size out of range.
std::optional<std::vector<std::uint32_t>> exact_hamilton_cycle(const LocalGraph& g);

/// Exact Hamilton path; each end is fixed when given and free otherwise.
std::optional<std::vector<std::uint32_t>> exact_hamilton_path(const LocalGraph& g,
                                                             std::optional<std::uint32_t> s = std::nullopt,
                                                             std::optional<std::uint32_t> t = std::nullopt);

}  // namespace rrgg
