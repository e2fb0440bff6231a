#include <cmath>
#include <stdexcept>

#include "rrgg/harness.hpp"

namespace rrgg {

LimitLawParams LimitLawParams::from(int d, NormParam p) {
    if (d < 2) throw std::invalid_argument("LimitLawParams: need d >= 2");
    const auto vols = ball_volumes(d, p);
    const double dd = d;
    const double pairs = dd * (dd - 1.0) / 2.0;
    LimitLawParams out;
    out.d = d;
    out.p = p;
    out.theta = vols.theta;
    out.theta_prime = vols.theta_prime;
    out.f = (1.0 - 2.0 / dd) * std::log(2.0) + (3.0 - 2.0 / dd) * std::log(vols.theta * dd) +
            (dd - 2.0) * std::log(vols.theta_prime) - std::log(pairs);
    return out;
}

double limit_cdf_pm(double alpha, const LimitLawParams& params) {
    return std::exp(-std::exp(-alpha - params.f));
}

double limit_cdf_hc(double alpha, const LimitLawParams& params) {
    if (params.d >= 3) return std::exp(-2.0 * std::exp(-alpha - params.f) / params.d);
    const double h = std::exp(-alpha / 2.0);
    return std::exp(-h * (h + 2.0 * std::sqrt(params.theta) / params.theta_prime));
}

double corollary_radius(std::size_t n, int d, NormParam p, double alpha, Structure kind) {
    if (n < 3 || d < 2) throw std::invalid_argument("corollary_radius: need n >= 3 and d >= 2");
    const double dd = d;
    const double ln = std::log(static_cast<double>(n));
    const double coeff = (kind == Structure::PerfectMatching ? 3.0 : 4.0) - dd - 2.0 / dd;
    const double bracket = (2.0 / dd) * ln + coeff * std::log(ln) + alpha;
    if (!(bracket > 0.0)) throw std::domain_error("corollary_radius: non-positive bracket");
    const double denom = std::ldexp(1.0, 2 - d) * unit_ball_volume(d, p) * static_cast<double>(n);
    return std::pow(bracket / denom, 1.0 / dd);
}

}  // namespace rrgg
