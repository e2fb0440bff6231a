#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "rrgg/rng.hpp"

namespace rrgg {

using Vertex = std::uint32_t;

/// Exponent of an l_p norm, p in [1, inf]. Infinity is stored exactly.
class NormParam {
public:
    explicit NormParam(double p);

    static NormParam infinity();
    static NormParam parse(std::string_view text);

    double value() const noexcept { return p_; }
    bool is_infinite() const noexcept;
    /// p = 1 is outside the main regime; callers switch to connectivity radii.
    bool is_l1() const noexcept { return p_ == 1.0; }
    std::string to_string() const;

    friend bool operator==(const NormParam&, const NormParam&) = default;

private:
    double p_;
};

/// n points in [0,1]^d, stored row-major. Point order is the vertex indexing.
class PointSet {
public:
    PointSet(int dim, NormParam norm, std::vector<double> coords, Seed seed = 0);

    std::size_t size() const noexcept { return coords_.size() / static_cast<std::size_t>(dim_); }
    int dim() const noexcept { return dim_; }
    NormParam norm() const noexcept { return norm_; }
    Seed seed() const noexcept { return seed_; }

    std::span<const double> operator[](std::size_t i) const noexcept {
        return {coords_.data() + i * static_cast<std::size_t>(dim_), static_cast<std::size_t>(dim_)};
    }
    const std::vector<double>& coords() const noexcept { return coords_; }

    double distance(Vertex i, Vertex j) const;

private:
    int dim_;
    NormParam norm_;
    std::vector<double> coords_;
    Seed seed_;
};

PointSet sample_points(std::size_t n, int d, Seed seed, NormParam norm = NormParam(2.0));

double distance(std::span<const double> a, std::span<const double> b, NormParam p);

/// l_p norm of a vector given by its coordinates.
double norm_of(std::span<const double> v, NormParam p);

/// Exact volume of the unit l_p ball in R^d: (2 Gamma(1+1/p))^d / Gamma(1+d/p).
double unit_ball_volume(int d, NormParam p);

struct BallVolumes {
    double theta;        // d-dimensional
    double theta_prime;  // (d-1)-dimensional
};

BallVolumes ball_volumes(int d, NormParam p);

/// Distance between opposite corners of [0,1]^d, d^{1/p}.
double corner_distance(int d, NormParam p);

}  // namespace rrgg
