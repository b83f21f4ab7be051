#pragma once

#include "polyuni/geometry.hpp"
#include "polyuni/holo.hpp"

namespace polyuni {

/// Grid maximum of |f - g| over the probe.
double probe_sup(const HoloFunction& f, const HoloFunction& g, const CompactProbe& probe);

/// Grid maximum of |f(z) - value| for a scalar target.
double probe_sup(const HoloFunction& f, Complex value, const CompactProbe& probe);

/// sum_m 2^{-m} min(1, probe_sup over level m).
double metric_distance(const HoloFunction& f, const HoloFunction& g, const COMetric& metric);

}  // namespace polyuni
