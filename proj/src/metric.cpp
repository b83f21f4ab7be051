#include "polyuni/metric.hpp"

#include <algorithm>
#include <cmath>

#include "polyuni/error.hpp"

namespace polyuni {

namespace {

void check(const HoloFunction& f, const CompactProbe& probe)
{
    if (f.dimension() != probe.dimension())
        throw Error(ErrorCode::DimensionMismatch, "probe dimension differs from function dimension");
}

template <typename Diff>
double grid_max(const CompactProbe& probe, const Diff& diff)
{
    double best = 0.0;
    for (const auto& z : probe.grid()) {
        if (!z.interior()) throw Error(ErrorCode::EvaluationOutsideDomain, "probe point outside the open polydisk");
        best = std::max(best, std::abs(diff(z)));
    }
    return best;
}

}  // namespace

double probe_sup(const HoloFunction& f, const HoloFunction& g, const CompactProbe& probe)
{
    check(f, probe);
    check(g, probe);
    return grid_max(probe, [&](const CPoint& z) { return f(z) - g(z); });
}

double probe_sup(const HoloFunction& f, Complex value, const CompactProbe& probe)
{
    check(f, probe);
    return grid_max(probe, [&](const CPoint& z) { return f(z) - value; });
}

double metric_distance(const HoloFunction& f, const HoloFunction& g, const COMetric& metric)
{
    double d = 0.0;
    for (std::size_t m = 1; m <= metric.levels(); ++m)
        d += metric.weight(m) * std::min(1.0, probe_sup(f, g, metric.probes()[m - 1]));
    return d;
}

}  // namespace polyuni
