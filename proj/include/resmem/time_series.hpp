#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

namespace resmem {

/// A scalar time series. dt is 1.0 for discrete-time systems.
struct TimeSeries {
    std::vector<double> values;
    double dt = 1.0;

    TimeSeries() = default;
    explicit TimeSeries(std::vector<double> v, double step = 1.0)
        : values(std::move(v)), dt(step)
    {
    }

    std::size_t size() const { return values.size(); }
    double operator[](std::size_t i) const { return values[i]; }
    double& operator[](std::size_t i) { return values[i]; }

    bool all_finite() const
    {
        for (double v : values)
            if (!std::isfinite(v)) return false;
        return true;
    }
};

}  // namespace resmem
