#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>

#include "nimhoff/common.hpp"

namespace nimhoff {

enum class PeriodicityClass { purely_periodic, periodic, arithmetic_periodic, undetected };

inline std::string_view to_string(PeriodicityClass c) {
    switch (c) {
        case PeriodicityClass::purely_periodic: return "purely-periodic";
        case PeriodicityClass::periodic: return "periodic";
        case PeriodicityClass::arithmetic_periodic: return "arithmetic-periodic";
        case PeriodicityClass::undetected: return "undetected";
    }
    return "undetected";
}

struct PeriodicityReport {
    PeriodicityClass classification = PeriodicityClass::undetected;
    std::uint64_t period = 0;
    std::size_t preperiod = 0;
    std::int64_t saltus = 0;
    std::size_t checked_length = 0;
};

/// Scans the prefix for the least period p <= max_period such that
/// a(n+p) = a(n) + s holds from some preperiod up to the end of the prefix.
///
/// A fit is only accepted when the relation is verified on the second half of
/// the prefix and over at least one full period; a short run of agreeing
/// differences at the very end of the data is not periodicity. A plain
/// periodic fit (s = 0) is preferred over an arithmetic one (s != 0); within
/// a class the period is minimized first and then the preperiod. Prefixes
/// shorter than 2*max_period are reported as undetected.
inline PeriodicityReport detect_periodicity(std::span<const Grundy> values,
                                            std::uint64_t max_period) {
    PeriodicityReport report;
    report.checked_length = values.size();
    const std::size_t n = values.size();
    if (max_period == 0 || max_period > n / 2) return report;

    std::optional<PeriodicityReport> arithmetic;
    for (std::uint64_t p = 1; p <= max_period; ++p) {
        const std::size_t relations = n - p;  // a(i+p)-a(i) defined for i < relations
        const auto diff = [&](std::size_t i) {
            return static_cast<std::int64_t>(values[i + p]) - static_cast<std::int64_t>(values[i]);
        };
        const std::int64_t s = diff(relations - 1);
        std::size_t preperiod = relations - 1;
        while (preperiod > 0 && diff(preperiod - 1) == s) --preperiod;
        if (preperiod + 2 * p > n) continue;
        if (preperiod > (n - p) / 2) continue;
        PeriodicityReport fit;
        fit.period = p;
        fit.preperiod = preperiod;
        fit.saltus = s;
        fit.checked_length = n;
        if (s == 0) {
            fit.classification = preperiod == 0 ? PeriodicityClass::purely_periodic
                                                : PeriodicityClass::periodic;
            return fit;
        }
        if (!arithmetic) {
            fit.classification = PeriodicityClass::arithmetic_periodic;
            arithmetic = fit;
        }
    }
    return arithmetic.value_or(report);
}

/// Flat key=value serialization of a report.
inline std::string to_key_value_block(const PeriodicityReport& report) {
    std::string out;
    out += "classification=";
    out += to_string(report.classification);
    out += "\np=" + std::to_string(report.period);
    out += "\nn0=" + std::to_string(report.preperiod);
    out += "\nsaltus=" + std::to_string(report.saltus);
    out += "\nchecked_length=" + std::to_string(report.checked_length);
    out += "\n";
    return out;
}

}  // namespace nimhoff
