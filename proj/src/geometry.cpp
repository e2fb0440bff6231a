#include "rrgg/geometry.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <limits>
#include <random>
#include <stdexcept>

namespace rrgg {

NormParam::NormParam(double p) : p_(p) {
    if (std::isnan(p) || p < 1.0) {
        throw std::invalid_argument("norm exponent must satisfy p >= 1");
    }
}

NormParam NormParam::infinity() { return NormParam(std::numeric_limits<double>::infinity()); }

NormParam NormParam::parse(std::string_view text) {
    if (text == "inf" || text == "infinity" || text == "Inf") {
        return infinity();
    }
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc{} || ptr != text.data() + text.size()) {
        throw std::invalid_argument("cannot parse norm exponent '" + std::string(text) + "'");
    }
    return NormParam(v);
}

bool NormParam::is_infinite() const noexcept { return std::isinf(p_); }

std::string NormParam::to_string() const {
    if (is_infinite()) {
        return "inf";
    }
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", p_);
    return buf;
}

PointSet::PointSet(int dim, NormParam norm, std::vector<double> coords, Seed seed)
    : dim_(dim), norm_(norm), coords_(std::move(coords)), seed_(seed) {
    if (dim_ < 1) {
        throw std::invalid_argument("point dimension must be positive");
    }
    if (coords_.size() % static_cast<std::size_t>(dim_) != 0) {
        throw std::invalid_argument("coordinate count is not a multiple of the dimension");
    }
    for (double x : coords_) {
        if (!(x >= 0.0 && x <= 1.0)) {
            throw std::invalid_argument("coordinates must lie in [0,1]");
        }
    }
}

double PointSet::distance(Vertex i, Vertex j) const { return rrgg::distance((*this)[i], (*this)[j], norm_); }

PointSet sample_points(std::size_t n, int d, Seed seed, NormParam norm) {
    if (n < 1) {
        throw std::invalid_argument("sample_points: need at least one point");
    }
    if (d < 2) {
        throw std::invalid_argument("sample_points: dimension must be at least 2");
    }
    std::mt19937_64 gen(seed);
    std::vector<double> coords(n * static_cast<std::size_t>(d));
    for (double& x : coords) {
        x = to_unit_double(gen());
    }
    return PointSet(d, norm, std::move(coords), seed);
}

double norm_of(std::span<const double> v, NormParam p) {
    if (p.is_infinite()) {
        double m = 0.0;
        for (double x : v) m = std::max(m, std::fabs(x));
        return m;
    }
    const double e = p.value();
    if (e == 1.0) {
        double s = 0.0;
        for (double x : v) s += std::fabs(x);
        return s;
    }
    if (e == 2.0) {
        double s = 0.0;
        for (double x : v) s += x * x;
        return std::sqrt(s);
    }
    // Scale by the max entry to avoid underflow of tiny powers.
    double m = 0.0;
    for (double x : v) m = std::max(m, std::fabs(x));
    if (m == 0.0) return 0.0;
    double s = 0.0;
    for (double x : v) s += std::pow(std::fabs(x) / m, e);
    return m * std::pow(s, 1.0 / e);
}

double distance(std::span<const double> a, std::span<const double> b, NormParam p) {
    if (a.size() != b.size()) {
        throw std::invalid_argument("distance: dimension mismatch");
    }
    double diff[16];
    std::vector<double> big;
    std::span<double> buf;
    if (a.size() <= 16) {
        buf = std::span<double>(diff, a.size());
    } else {
        big.resize(a.size());
        buf = big;
    }
    for (std::size_t k = 0; k < a.size(); ++k) buf[k] = a[k] - b[k];
    return norm_of(buf, p);
}

double unit_ball_volume(int d, NormParam p) {
    if (d < 1) {
        throw std::invalid_argument("unit_ball_volume: dimension must be positive");
    }
    if (p.is_infinite()) {
        return std::ldexp(1.0, d);
    }
    const double e = p.value();
    const double log_vol = d * (std::log(2.0) + std::lgamma(1.0 + 1.0 / e)) - std::lgamma(1.0 + d / e);
    return std::exp(log_vol);
}

BallVolumes ball_volumes(int d, NormParam p) {
    if (d < 2) {
        throw std::invalid_argument("ball_volumes: dimension must be at least 2");
    }
    return {unit_ball_volume(d, p), unit_ball_volume(d - 1, p)};
}

double corner_distance(int d, NormParam p) {
    if (p.is_infinite()) return 1.0;
    return std::pow(static_cast<double>(d), 1.0 / p.value());
}

}  // namespace rrgg
