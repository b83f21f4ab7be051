#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace polyuni {

using Complex = std::complex<double>;

/// A point of C^n. Coordinates are unconstrained; `interior()` tells whether
/// the point lies in the open unit polydisk.
struct CPoint {
    std::vector<Complex> coords;

    CPoint() = default;
    explicit CPoint(std::vector<Complex> c) : coords(std::move(c)) {}
    CPoint(std::initializer_list<Complex> c) : coords(c) {}

    std::size_t dimension() const noexcept { return coords.size(); }
    bool interior() const noexcept;
    std::span<const Complex> view() const noexcept { return coords; }

    bool operator==(const CPoint&) const = default;
};

/// Point of the distinguished boundary T^n. Construction fails with
/// ValidityError unless every coordinate is unimodular to 1e-12.
class TorusPoint {
public:
    explicit TorusPoint(std::vector<Complex> coords);

    static TorusPoint ones(std::size_t n);

    std::size_t dimension() const noexcept { return coords_.size(); }
    const std::vector<Complex>& coords() const noexcept { return coords_; }
    std::span<const Complex> view() const noexcept { return coords_; }
    CPoint point() const { return CPoint(coords_); }

private:
    std::vector<Complex> coords_;
};

/// Closed sub-polydisk of the given radius, sampled on the tensor power of
/// the one-dimensional set {0} U {rho e^{2 pi i t/Q} : rho in {r/2, r}}.
class CompactProbe {
public:
    CompactProbe(double radius, std::size_t points_per_dim, std::size_t dimension);

    double radius() const noexcept { return radius_; }
    std::size_t points_per_dim() const noexcept { return points_per_dim_; }
    std::size_t dimension() const noexcept { return dimension_; }

    /// One-dimensional sample set; 2Q + 1 values, the origin first.
    std::vector<Complex> axis() const;

    /// Tensor grid, lexicographic in the axis order (last coordinate fastest).
    const std::vector<CPoint>& grid() const noexcept { return grid_; }

    std::size_t size() const noexcept { return grid_.size(); }

private:
    double radius_;
    std::size_t points_per_dim_;
    std::size_t dimension_;
    std::vector<CPoint> grid_;
};

/// Default grid resolution per dimension: 64 for n=1, 24 for n=2, 12 otherwise.
std::size_t default_points_per_dim(std::size_t dimension) noexcept;

/// Truncated compact-open pseudo-metric over the exhaustion r_m = m/(m+1).
class COMetric {
public:
    explicit COMetric(std::size_t dimension, std::size_t levels = 8,
                      std::size_t points_per_dim = 0);

    std::size_t levels() const noexcept { return probes_.size(); }
    const std::vector<CompactProbe>& probes() const noexcept { return probes_; }
    double weight(std::size_t level) const;  // 2^{-m}, m is 1-based

private:
    std::vector<CompactProbe> probes_;
};

}  // namespace polyuni
