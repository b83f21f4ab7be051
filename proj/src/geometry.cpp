#include "polyuni/geometry.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "polyuni/error.hpp"

namespace polyuni {

bool CPoint::interior() const noexcept
{
    for (const auto& z : coords)
        if (!(std::abs(z) < 1.0)) return false;
    return true;
}

TorusPoint::TorusPoint(std::vector<Complex> coords) : coords_(std::move(coords))
{
    if (coords_.empty()) throw Error(ErrorCode::ValidityError, "torus point needs at least one coordinate");
    for (const auto& z : coords_)
        if (std::abs(std::abs(z) - 1.0) > 1e-12)
            throw Error(ErrorCode::ValidityError, "torus point coordinate is not unimodular");
}

TorusPoint TorusPoint::ones(std::size_t n) { return TorusPoint(std::vector<Complex>(n, Complex(1.0, 0.0))); }

CompactProbe::CompactProbe(double radius, std::size_t points_per_dim, std::size_t dimension)
    : radius_(radius), points_per_dim_(points_per_dim), dimension_(dimension)
{
    if (!(radius > 0.0 && radius < 1.0))
        throw Error(ErrorCode::ValidityError, "probe radius must lie in (0,1)");
    if (points_per_dim == 0 || dimension == 0)
        throw Error(ErrorCode::ValidityError, "probe needs positive resolution and dimension");

    const auto ax = axis();
    std::size_t total = 1;
    for (std::size_t d = 0; d < dimension_; ++d) total *= ax.size();
    grid_.reserve(total);
    std::vector<std::size_t> idx(dimension_, 0);
    for (std::size_t count = 0; count < total; ++count) {
        std::vector<Complex> c(dimension_);
        for (std::size_t d = 0; d < dimension_; ++d) c[d] = ax[idx[d]];
        grid_.emplace_back(std::move(c));
        for (std::size_t d = dimension_; d-- > 0;) {
            if (++idx[d] < ax.size()) break;
            idx[d] = 0;
        }
    }
}

std::vector<Complex> CompactProbe::axis() const
{
    std::vector<Complex> out;
    out.reserve(2 * points_per_dim_ + 1);
    out.emplace_back(0.0, 0.0);
    for (double rho : {radius_ / 2.0, radius_}) {
        for (std::size_t t = 0; t < points_per_dim_; ++t) {
            const double angle = 2.0 * std::numbers::pi * double(t) / double(points_per_dim_);
            out.push_back(std::polar(rho, angle));
        }
    }
    return out;
}

std::size_t default_points_per_dim(std::size_t dimension) noexcept
{
    if (dimension <= 1) return 64;
    if (dimension == 2) return 24;
    return 12;
}

COMetric::COMetric(std::size_t dimension, std::size_t levels, std::size_t points_per_dim)
{
    if (levels == 0) throw Error(ErrorCode::ValidityError, "metric needs at least one level");
    if (points_per_dim == 0) points_per_dim = default_points_per_dim(dimension);
    for (std::size_t m = 1; m <= levels; ++m)
        probes_.emplace_back(double(m) / double(m + 1), points_per_dim, dimension);
}

double COMetric::weight(std::size_t level) const { return std::ldexp(1.0, -int(level)); }

}  // namespace polyuni
