#include <catch2/catch_amalgamated.hpp>

#include <nimhoff/grundy.hpp>
#include <nimhoff/periodicity.hpp>

#include <optional>
#include <random>

using namespace nimhoff;

namespace {

// Independent brute-force reference: try every (p, n0) under the same
// acceptance window and preference order as the detector documents.
PeriodicityReport reference_detect(const std::vector<Grundy>& a, std::uint64_t max_period) {
    PeriodicityReport report;
    report.checked_length = a.size();
    const std::size_t n = a.size();
    if (max_period == 0 || max_period > n / 2) return report;
    std::optional<PeriodicityReport> plain, arithmetic;
    for (std::uint64_t p = 1; p <= max_period; ++p) {
        for (std::size_t n0 = 0; n0 + p < n; ++n0) {
            const std::int64_t s =
                static_cast<std::int64_t>(a[n0 + p]) - static_cast<std::int64_t>(a[n0]);
            bool holds = true;
            for (std::size_t i = n0; i + p < n && holds; ++i) {
                holds = static_cast<std::int64_t>(a[i + p]) - static_cast<std::int64_t>(a[i]) == s;
            }
            if (!holds) continue;
            if (n0 + 2 * p > n || n0 > (n - p) / 2) continue;
            PeriodicityReport fit;
            fit.period = p;
            fit.preperiod = n0;
            fit.saltus = s;
            fit.checked_length = n;
            if (s == 0) {
                fit.classification = n0 == 0 ? PeriodicityClass::purely_periodic
                                             : PeriodicityClass::periodic;
                if (!plain) plain = fit;
            } else {
                fit.classification = PeriodicityClass::arithmetic_periodic;
                if (!arithmetic) arithmetic = fit;
            }
            break;  // smallest n0 for this p found
        }
        if (plain) break;
    }
    if (plain) return *plain;
    return arithmetic.value_or(report);
}

bool same_report(const PeriodicityReport& a, const PeriodicityReport& b) {
    return a.classification == b.classification && a.period == b.period &&
           a.preperiod == b.preperiod && a.saltus == b.saltus &&
           a.checked_length == b.checked_length;
}

}  // namespace

TEST_CASE("a repeating block is purely periodic", "[period]") {
    const std::vector<Grundy> a{0, 1, 2, 0, 1, 2, 0, 1, 2};
    const auto report = detect_periodicity(a, 4);
    CHECK(report.classification == PeriodicityClass::purely_periodic);
    CHECK(report.period == 3);
    CHECK(report.preperiod == 0);
    CHECK(report.saltus == 0);
    CHECK(report.checked_length == 9);
}

TEST_CASE("the identity sequence is arithmetic periodic with period one", "[period]") {
    const std::vector<Grundy> a{0, 1, 2, 3, 4, 5, 6, 7};
    const auto report = detect_periodicity(a, 4);
    CHECK(report.classification == PeriodicityClass::arithmetic_periodic);
    CHECK(report.period == 1);
    CHECK(report.saltus == 1);
    CHECK(report.preperiod == 0);
}

TEST_CASE("junk before a cycle yields a nonzero preperiod", "[period]") {
    const std::vector<Grundy> a{9, 9, 0, 1, 2, 0, 1, 2, 0, 1, 2, 0, 1, 2};
    const auto report = detect_periodicity(a, 4);
    CHECK(report.classification == PeriodicityClass::periodic);
    CHECK(report.period == 3);
    CHECK(report.preperiod == 2);
}

TEST_CASE("short prefixes and end-of-data flukes are undetected", "[period]") {
    const std::vector<Grundy> short_prefix{0, 1, 0, 1};
    CHECK(detect_periodicity(short_prefix, 3).classification == PeriodicityClass::undetected);

    // agreement only over the last few entries is not periodicity
    const std::vector<Grundy> fluke{5, 1, 4, 1, 5, 9, 2, 6, 3, 3, 3, 3};
    const auto report = detect_periodicity(fluke, 2);
    CHECK(report.classification == PeriodicityClass::undetected);
}

TEST_CASE("all-but{3,5} has period 6 and saltus 3", "[period]") {
    const auto seq = grundy_sequence(SubtractionSet::all_but({3, 5}), 10000);
    const auto report = detect_periodicity(seq.values, 100);
    CHECK(report.classification == PeriodicityClass::arithmetic_periodic);
    CHECK(report.period == 6);
    CHECK(report.saltus == 3);
    CHECK(report.preperiod == 0);
}

TEST_CASE("block repetition is found, not a small-period artifact", "[period]") {
    const std::vector<Grundy> a{0, 1, 2, 3, 0, 1, 2, 3, 0, 1, 2, 3, 0, 1, 2, 3};
    const auto report = detect_periodicity(a, 6);
    CHECK(report.classification == PeriodicityClass::purely_periodic);
    CHECK(report.period == 4);
    CHECK(report.preperiod == 0);
}

TEST_CASE("the detector agrees with a brute-force scan", "[period]") {
    std::mt19937 rng(20260809);
    for (int round = 0; round < 300; ++round) {
        // build prefix + repeated block, optionally with a saltus
        std::vector<Grundy> a;
        const std::size_t junk = rng() % 4;
        for (std::size_t i = 0; i < junk; ++i) a.push_back(rng() % 50 + 50);
        const std::size_t block_len = 1 + rng() % 5;
        std::vector<Grundy> block(block_len);
        for (auto& v : block) v = rng() % 6;
        const std::uint64_t saltus = rng() % 3;
        const std::size_t repeats = 4 + rng() % 5;
        for (std::size_t k = 0; k < repeats; ++k) {
            for (Grundy v : block) a.push_back(v + k * saltus);
        }
        const std::uint64_t max_period = 1 + rng() % 8;
        const auto got = detect_periodicity(a, max_period);
        const auto expected = reference_detect(a, max_period);
        INFO("round " << round);
        CHECK(same_report(got, expected));
    }
}

TEST_CASE("reports serialize as a flat key=value block", "[period]") {
    PeriodicityReport report;
    report.classification = PeriodicityClass::arithmetic_periodic;
    report.period = 6;
    report.preperiod = 0;
    report.saltus = 3;
    report.checked_length = 10000;
    CHECK(to_key_value_block(report) ==
          "classification=arithmetic-periodic\np=6\nn0=0\nsaltus=3\nchecked_length=10000\n");
}
