#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "rrgg/geometry.hpp"

namespace rrgg {

/// Uniform bucket grid over [0,1]^d with bucket side >= a query radius.
/// Every pair within the radius lies in the same or in neighbouring buckets.
class NeighbourGrid {
public:
    NeighbourGrid(const PointSet& points, double radius);

    std::size_t buckets_per_axis() const noexcept { return m_; }

    /// Calls fn(i, j, length) once for every unordered pair i < j with length <= radius.
    void for_each_pair(const std::function<void(Vertex, Vertex, double)>& fn) const;

    /// Calls fn(j, length) for every j != i with length <= radius.
    void for_each_neighbour(Vertex i, const std::function<void(Vertex, double)>& fn) const;

private:
    std::size_t bucket_of(std::span<const double> x) const;
    void stencil_of(std::size_t bucket, std::vector<std::size_t>& out) const;

    const PointSet* points_;
    double radius_;
    int dim_;
    std::size_t m_;
    std::vector<std::size_t> start_;
    std::vector<Vertex> items_;
};

/// Distance from each vertex to its k-th nearest neighbour, or +inf when fewer
/// than k neighbours lie within `radius`.
std::vector<double> kth_neighbour_distances(const PointSet& points, int k, double radius);

}  // namespace rrgg
