#include "rrgg/hamilton.hpp"

#include <algorithm>
#include <deque>

namespace rrgg {

namespace {

using Path = std::vector<std::uint32_t>;

class Matrix {
public:
    explicit Matrix(const LocalGraph& g) : n_(g.size()), bits_(n_ * n_, 0) {
        for (std::size_t v = 0; v < n_; ++v) {
            for (auto w : g[v]) {
                bits_[v * n_ + w] = 1;
                bits_[w * n_ + v] = 1;
            }
        }
    }
    bool operator()(std::uint32_t a, std::uint32_t b) const { return bits_[a * n_ + b] != 0; }

private:
    std::size_t n_;
    std::vector<char> bits_;
};

void extend_end(const LocalGraph& g, Path& path, std::vector<char>& in_path) {
    for (;;) {
        bool grew = false;
        for (auto w : g[path.back()]) {
            if (!in_path[w]) {
                in_path[w] = 1;
                path.push_back(w);
                grew = true;
                break;
            }
        }
        if (!grew) return;
    }
}

bool has_outside_neighbour(const LocalGraph& g, std::uint32_t v, const std::vector<char>& in_path) {
    return std::any_of(g[v].begin(), g[v].end(), [&](std::uint32_t w) { return !in_path[w]; });
}

// Closes a path into a cycle on the same vertex set, directly or by one crossing.
std::optional<Path> close_path(const Matrix& adj, const Path& path) {
    const std::size_t k = path.size() - 1;
    if (path.size() < 3) return std::nullopt;
    if (adj(path.front(), path.back())) return path;
    for (std::size_t i = 0; i + 1 < k; ++i) {
        if (adj(path.front(), path[i + 1]) && adj(path[i], path[k])) {
            Path cycle(path.begin(), path.begin() + static_cast<long>(i) + 1);
            for (std::size_t j = k; j > i; --j) cycle.push_back(path[j]);
            return cycle;
        }
    }
    return std::nullopt;
}

// Posa rotations with the start fixed, breadth first over new endpoints.
std::optional<Path> rotate_to_useful(const LocalGraph& g, const Matrix& adj, const Path& path,
                                     const std::vector<char>& in_path) {
    const std::size_t n = g.size();
    std::vector<char> seen_end(n, 0);
    std::deque<Path> queue{path};
    seen_end[path.back()] = 1;
    while (!queue.empty()) {
        Path cur = std::move(queue.front());
        queue.pop_front();
        const std::size_t k = cur.size() - 1;
        std::vector<std::size_t> pos(n, n);
        for (std::size_t i = 0; i <= k; ++i) pos[cur[i]] = i;
        for (auto w : g[cur.back()]) {
            const std::size_t i = pos[w];
            if (i >= n || i + 1 >= k) continue;
            Path next(cur.begin(), cur.begin() + static_cast<long>(i) + 1);
            for (std::size_t j = k; j > i; --j) next.push_back(cur[j]);
            const auto end = next.back();
            if (seen_end[end]) continue;
            seen_end[end] = 1;
            if (has_outside_neighbour(g, end, in_path) || close_path(adj, next)) return next;
            queue.push_back(std::move(next));
        }
    }
    return std::nullopt;
}

std::optional<Path> rotation_extension(const LocalGraph& g) {
    const std::size_t n = g.size();
    const Matrix adj(g);
    Path path{0};
    std::vector<char> in_path(n, 0);
    in_path[0] = 1;
    for (std::size_t round = 0; round < 4 * n * n + 16; ++round) {
        extend_end(g, path, in_path);
        std::reverse(path.begin(), path.end());
        extend_end(g, path, in_path);
        if (auto cycle = close_path(adj, path)) {
            if (cycle->size() == n) return cycle;
            // Open the cycle next to the lowest outside vertex that touches it.
            bool opened = false;
            std::vector<std::size_t> pos(n, n);
            for (std::size_t i = 0; i < cycle->size(); ++i) pos[(*cycle)[i]] = i;
            for (std::uint32_t w = 0; w < n && !opened; ++w) {
                if (in_path[w]) continue;
                for (auto c : g[w]) {
                    if (pos[c] >= n) continue;
                    const std::size_t at = pos[c];
                    Path next;
                    for (std::size_t j = 1; j <= cycle->size(); ++j) next.push_back((*cycle)[(at + j) % cycle->size()]);
                    next.push_back(w);
                    in_path[w] = 1;
                    path = std::move(next);
                    opened = true;
                    break;
                }
            }
            if (!opened) return std::nullopt;
            continue;
        }
        auto rotated = rotate_to_useful(g, adj, path, in_path);
        if (!rotated) {
            std::reverse(path.begin(), path.end());
            rotated = rotate_to_useful(g, adj, path, in_path);
        }
        if (!rotated) return std::nullopt;
        path = std::move(*rotated);
    }
    return std::nullopt;
}

Path reconstruct_cycle(const std::vector<std::uint32_t>& reach, const Matrix& adj, std::size_t n,
                                   std::uint32_t last) {
    Path order{last};
    std::uint32_t mask = (1u << n) - 1;
    std::uint32_t v = last;
    while (v != 0) {
        const std::uint32_t prev_mask = mask & ~(1u << v);
        std::uint32_t pick = 0;
        for (std::uint32_t u = 0; u < n; ++u) {
            if ((reach[prev_mask] >> u & 1u) && adj(u, v)) {
                pick = u;
                break;
            }
        }
        mask = prev_mask;
        v = pick;
        order.push_back(v);
    }
    std::reverse(order.begin(), order.end());
    return order;
}

}  // namespace

std::optional<std::vector<std::uint32_t>> exact_hamilton_cycle(const LocalGraph& g) {
    const std::size_t n = g.size();
    if (n < 3 || n > kExactHamiltonLimit) return std::nullopt;
    const Matrix adj(g);
    // reach[mask]: ends v such that a path from 0 covers exactly mask and ends at v.
    std::vector<std::uint32_t> reach(std::size_t{1} << n, 0);
    reach[1] = 1;
    for (std::uint32_t mask = 1; mask < (1u << n); mask += 2) {
        const std::uint32_t ends = reach[mask];
        if (ends == 0) continue;
        for (std::uint32_t v = 0; v < n; ++v) {
            if (!(ends >> v & 1u)) continue;
            for (auto w : g[v]) {
                if (!(mask >> w & 1u)) reach[mask | (1u << w)] |= 1u << w;
            }
        }
    }
    const std::uint32_t full = (1u << n) - 1;
    for (std::uint32_t v = 1; v < n; ++v) {
        if ((reach[full] >> v & 1u) && adj(v, 0)) return reconstruct_cycle(reach, adj, n, v);
    }
    return std::nullopt;
}

std::optional<std::vector<std::uint32_t>> exact_hamilton_path(const LocalGraph& g, std::optional<std::uint32_t> s,
                                                             std::optional<std::uint32_t> t) {
    const std::size_t n = g.size();
    if (n == 0 || n > kExactHamiltonLimit || (s && *s >= n) || (t && *t >= n)) return std::nullopt;
    if (n == 1) return Path{0};
    if (s && t && *s == *t) return std::nullopt;
    const Matrix adj(g);
    // reach[mask]: ends of paths covering exactly mask that start at an allowed vertex.
    std::vector<std::uint32_t> reach(std::size_t{1} << n, 0);
    for (std::uint32_t v = 0; v < n; ++v) {
        if (!s || *s == v) reach[1u << v] = 1u << v;
    }
    for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
        const std::uint32_t ends = reach[mask];
        if (ends == 0) continue;
        for (std::uint32_t v = 0; v < n; ++v) {
            if (!(ends >> v & 1u)) continue;
            for (auto w : g[v]) {
                if (!(mask >> w & 1u)) reach[mask | (1u << w)] |= 1u << w;
            }
        }
    }
    std::uint32_t mask = (1u << n) - 1;
    std::uint32_t v = n;
    for (std::uint32_t u = 0; u < n; ++u) {
        if ((reach[mask] >> u & 1u) && (!t || *t == u)) {
            v = u;
            break;
        }
    }
    if (v == n) return std::nullopt;
    Path order{v};
    while (mask != (1u << v)) {
        const std::uint32_t prev_mask = mask & ~(1u << v);
        std::uint32_t pick = n;
        for (std::uint32_t u = 0; u < n; ++u) {
            if ((reach[prev_mask] >> u & 1u) && adj(u, v)) {
                pick = u;
                break;
            }
        }
        mask = prev_mask;
        v = pick;
        order.push_back(v);
    }
    std::reverse(order.begin(), order.end());
    return order;
}

std::optional<std::vector<std::uint32_t>> find_hamilton_cycle(const LocalGraph& g) {
    if (g.size() < 3) return std::nullopt;
    if (auto cycle = rotation_extension(g)) return cycle;
    return exact_hamilton_cycle(g);
}

}  // namespace rrgg
