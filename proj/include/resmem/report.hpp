#pragma once

// Result rows and their CSV/JSON serialization.

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

namespace resmem {

/// One metric value with its full parameter tuple. Fields that do not apply
/// are left at their sentinel (NaN / -1) and serialize as empty CSV fields.
struct MetricRow {
    std::string experiment;
    std::string driver;
    std::string metric;
    long tau = -1;
    double value = std::nan("");
    double g = std::nan("");
    double epsilon = std::nan("");
    double eta_f = std::nan("");
    int d_e = -1;
    int n_narma = -1;
    double rho = std::nan("");
    long seed = -1;
    bool is_mean = false; ///< row averages the per-seed values

    std::string seed_label() const { return is_mean ? "mean" : std::to_string(seed); }
};

/// RFC-4180 CSV with '.' decimal separator and %.17g floats.
std::string to_csv(const std::vector<MetricRow>& rows);
void write_csv(const std::vector<MetricRow>& rows, const std::string& path);

std::vector<MetricRow> read_csv(const std::string& path);

}  // namespace resmem
