#include "rrgg/neighbour_grid.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace rrgg {

NeighbourGrid::NeighbourGrid(const PointSet& points, double radius)
    : points_(&points), radius_(radius), dim_(points.dim()) {
    if (!(radius > 0.0)) {
        throw std::invalid_argument("NeighbourGrid: radius must be positive");
    }
    // Bucket side 1/m >= radius; cap the bucket count at a few per point.
    const double per_axis = std::floor(1.0 / radius);
    std::size_t m = per_axis < 1.0 ? 1 : static_cast<std::size_t>(std::min(per_axis, 1e9));
    const double cap = std::max(1.0, 4.0 * static_cast<double>(points.size()) + 16.0);
    while (m > 1 && std::pow(static_cast<double>(m), dim_) > cap) {
        m = static_cast<std::size_t>(std::pow(cap, 1.0 / dim_));
        if (std::pow(static_cast<double>(m), dim_) > cap) --m;
    }
    m_ = m;

    std::size_t total = 1;
    for (int k = 0; k < dim_; ++k) total *= m_;
    start_.assign(total + 1, 0);
    std::vector<std::size_t> bucket(points.size());
    for (std::size_t i = 0; i < points.size(); ++i) {
        bucket[i] = bucket_of(points[i]);
        ++start_[bucket[i] + 1];
    }
    for (std::size_t b = 0; b < total; ++b) start_[b + 1] += start_[b];
    items_.resize(points.size());
    std::vector<std::size_t> fill(start_.begin(), start_.end() - 1);
    for (std::size_t i = 0; i < points.size(); ++i) {
        items_[fill[bucket[i]]++] = static_cast<Vertex>(i);
    }
}

std::size_t NeighbourGrid::bucket_of(std::span<const double> x) const {
    std::size_t idx = 0;
    std::size_t stride = 1;
    for (int k = 0; k < dim_; ++k) {
        auto c = static_cast<std::size_t>(x[k] * static_cast<double>(m_));
        c = std::min(c, m_ - 1);
        idx += c * stride;
        stride *= m_;
    }
    return idx;
}

void NeighbourGrid::stencil_of(std::size_t bucket, std::vector<std::size_t>& out) const {
    out.clear();
    std::vector<long> coord(static_cast<std::size_t>(dim_));
    std::size_t rest = bucket;
    for (int k = 0; k < dim_; ++k) {
        coord[k] = static_cast<long>(rest % m_);
        rest /= m_;
    }
    std::vector<int> off(static_cast<std::size_t>(dim_), -1);
    for (;;) {
        std::size_t idx = 0;
        std::size_t stride = 1;
        bool inside = true;
        for (int k = 0; k < dim_; ++k) {
            const long c = coord[k] + off[k];
            if (c < 0 || c >= static_cast<long>(m_)) {
                inside = false;
                break;
            }
            idx += static_cast<std::size_t>(c) * stride;
            stride *= m_;
        }
        if (inside) out.push_back(idx);
        int k = 0;
        while (k < dim_ && off[k] == 1) off[k++] = -1;
        if (k == dim_) break;
        ++off[k];
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
}

void NeighbourGrid::for_each_pair(const std::function<void(Vertex, Vertex, double)>& fn) const {
    const NormParam p = points_->norm();
    std::vector<std::size_t> stencil;
    const std::size_t total = start_.size() - 1;
    for (std::size_t b = 0; b < total; ++b) {
        if (start_[b] == start_[b + 1]) continue;
        stencil_of(b, stencil);
        for (std::size_t nb : stencil) {
            if (nb < b) continue;
            for (std::size_t a = start_[b]; a < start_[b + 1]; ++a) {
                const Vertex i = items_[a];
                const std::size_t from = nb == b ? a + 1 : start_[nb];
                for (std::size_t c = from; c < start_[nb + 1]; ++c) {
                    const Vertex j = items_[c];
                    const double len = distance((*points_)[i], (*points_)[j], p);
                    if (len <= radius_) {
                        fn(std::min(i, j), std::max(i, j), len);
                    }
                }
            }
        }
    }
}

void NeighbourGrid::for_each_neighbour(Vertex i, const std::function<void(Vertex, double)>& fn) const {
    const NormParam p = points_->norm();
    std::vector<std::size_t> stencil;
    stencil_of(bucket_of((*points_)[i]), stencil);
    for (std::size_t nb : stencil) {
        for (std::size_t c = start_[nb]; c < start_[nb + 1]; ++c) {
            const Vertex j = items_[c];
            if (j == i) continue;
            const double len = distance((*points_)[i], (*points_)[j], p);
            if (len <= radius_) fn(j, len);
        }
    }
}

std::vector<double> kth_neighbour_distances(const PointSet& points, int k, double radius) {
    if (k < 1) {
        throw std::invalid_argument("kth_neighbour_distances: k must be positive");
    }
    constexpr double inf = std::numeric_limits<double>::infinity();
    const std::size_t n = points.size();
    // best[v*k .. v*k+k) holds the k smallest lengths seen, ascending.
    std::vector<double> best(n * static_cast<std::size_t>(k), inf);
    auto offer = [&](Vertex v, double len) {
        double* row = best.data() + static_cast<std::size_t>(v) * k;
        if (len >= row[k - 1]) return;
        int pos = k - 1;
        while (pos > 0 && row[pos - 1] > len) {
            row[pos] = row[pos - 1];
            --pos;
        }
        row[pos] = len;
    };
    NeighbourGrid grid(points, radius);
    grid.for_each_pair([&](Vertex i, Vertex j, double len) {
        offer(i, len);
        offer(j, len);
    });
    std::vector<double> out(n);
    for (std::size_t v = 0; v < n; ++v) out[v] = best[v * k + (k - 1)];
    return out;
}

}  // namespace rrgg
