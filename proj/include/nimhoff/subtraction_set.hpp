#pragma once

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "nimhoff/common.hpp"

namespace nimhoff {

/// A set of positive integers with eventually periodic membership.
///
/// Values below `threshold` are listed explicitly in `prefix_members`; a value
/// s >= threshold is a member iff (s mod modulus) is in `residues`. Every
/// instance is kept canonical: the modulus is the least period of the tail
/// pattern and the threshold is the least index from which the periodic rule
/// is exact. Two instances therefore describe the same set iff they compare
/// equal field by field.
class SubtractionSet {
public:
    /// The empty set.
    SubtractionSet() = default;

    /// Every positive integer.
    static SubtractionSet all() {
        SubtractionSet s;
        s.residues_ = {0};
        return s;
    }

    /// Exactly the listed positive integers.
    static SubtractionSet finite(std::vector<std::uint64_t> members) {
        std::sort(members.begin(), members.end());
        members.erase(std::unique(members.begin(), members.end()), members.end());
        require(members.empty() || members.front() >= 1, "set members must be positive");
        check_description_size(members.empty() ? 1 : members.back());
        SubtractionSet s;
        s.threshold_ = members.empty() ? 1 : members.back() + 1;
        s.prefix_ = std::move(members);
        s.canonicalize();
        return s;
    }

    /// Every positive integer except the listed ones.
    static SubtractionSet all_but(std::vector<std::uint64_t> missing) {
        std::sort(missing.begin(), missing.end());
        missing.erase(std::unique(missing.begin(), missing.end()), missing.end());
        require(missing.empty() || missing.front() >= 1, "excluded members must be positive");
        if (missing.empty()) return all();
        check_description_size(missing.back());
        SubtractionSet s;
        s.threshold_ = missing.back() + 1;
        s.prefix_.reserve(static_cast<std::size_t>(s.threshold_ - 1 - missing.size()));
        std::size_t next_missing = 0;
        for (std::uint64_t v = 1; v < s.threshold_; ++v) {
            if (next_missing < missing.size() && missing[next_missing] == v) {
                ++next_missing;
            } else {
                s.prefix_.push_back(v);
            }
        }
        s.residues_ = {0};
        s.canonicalize();
        return s;
    }

    /// Arbitrary eventually periodic membership, given explicitly.
    static SubtractionSet periodic(std::uint64_t threshold, std::vector<std::uint64_t> prefix,
                                   std::uint64_t modulus, std::vector<std::uint64_t> residues) {
        require(threshold >= 1, "threshold must be at least 1");
        require(modulus >= 1, "modulus must be at least 1");
        check_description_size(threshold);
        check_description_size(modulus);
        std::sort(prefix.begin(), prefix.end());
        prefix.erase(std::unique(prefix.begin(), prefix.end()), prefix.end());
        std::sort(residues.begin(), residues.end());
        residues.erase(std::unique(residues.begin(), residues.end()), residues.end());
        require(prefix.empty() || prefix.front() >= 1, "prefix members must be positive");
        require(prefix.empty() || prefix.back() < threshold, "prefix members must lie below the threshold");
        require(residues.empty() || residues.back() < modulus, "residues must lie below the modulus");
        SubtractionSet s;
        s.threshold_ = threshold;
        s.prefix_ = std::move(prefix);
        s.modulus_ = modulus;
        s.residues_ = std::move(residues);
        s.canonicalize();
        return s;
    }

    /// Membership test; defined for s >= 1 only.
    bool contains(std::uint64_t s) const {
        if (s == 0) throw std::invalid_argument("membership is defined for positive amounts only");
        if (s < threshold_) return std::binary_search(prefix_.begin(), prefix_.end(), s);
        return std::binary_search(residues_.begin(), residues_.end(), s % modulus_);
    }

    std::uint64_t threshold() const noexcept { return threshold_; }
    const std::vector<std::uint64_t>& prefix_members() const noexcept { return prefix_; }
    std::uint64_t modulus() const noexcept { return modulus_; }
    const std::vector<std::uint64_t>& residues() const noexcept { return residues_; }

    bool empty() const noexcept { return prefix_.empty() && residues_.empty(); }
    bool is_all() const noexcept {
        return threshold_ == 1 && modulus_ == 1 && residues_.size() == 1;
    }
    /// Tail contains nothing: the members are exactly the prefix.
    bool is_finite() const noexcept { return residues_.empty(); }
    /// Tail contains everything: the non-members are exactly the gaps below the threshold.
    bool is_cofinite() const noexcept { return modulus_ == 1 && residues_.size() == 1; }

    /// The non-members below the threshold (the excluded list of a cofinite set).
    std::vector<std::uint64_t> missing_below_threshold() const {
        std::vector<std::uint64_t> out;
        std::size_t next = 0;
        for (std::uint64_t v = 1; v < threshold_; ++v) {
            if (next < prefix_.size() && prefix_[next] == v) {
                ++next;
            } else {
                out.push_back(v);
            }
        }
        return out;
    }

    friend bool operator==(const SubtractionSet&, const SubtractionSet&) = default;

private:
    std::uint64_t threshold_ = 1;
    std::vector<std::uint64_t> prefix_;
    std::uint64_t modulus_ = 1;
    std::vector<std::uint64_t> residues_;

    static void require(bool ok, const char* message) {
        if (!ok) throw std::invalid_argument(message);
    }

    static void check_description_size(std::uint64_t value) {
        if (value >= set_description_limit) {
            throw ResourceLimitError("set_description_limit", set_description_limit,
                                     "set description needs " + std::to_string(value) + " entries");
        }
    }

    bool tail_contains(std::uint64_t residue) const {
        return std::binary_search(residues_.begin(), residues_.end(), residue % modulus_);
    }

    void canonicalize() {
        // Least period of the tail pattern; must divide the current modulus.
        for (std::uint64_t d = 1; d < modulus_; ++d) {
            if (modulus_ % d != 0) continue;
            bool invariant = true;
            for (std::uint64_t r = 0; r < modulus_ && invariant; ++r) {
                invariant = tail_contains(r) == tail_contains((r + d) % modulus_);
            }
            if (invariant) {
                std::vector<std::uint64_t> reduced;
                for (std::uint64_t r : residues_) {
                    if (r < d) reduced.push_back(r);
                }
                residues_ = std::move(reduced);
                modulus_ = d;
                break;
            }
        }
        // Least threshold: absorb boundary values whose explicit membership already
        // matches the periodic rule.
        while (threshold_ > 1) {
            const std::uint64_t v = threshold_ - 1;
            const bool explicit_member = !prefix_.empty() && prefix_.back() == v;
            if (explicit_member != tail_contains(v)) break;
            if (explicit_member) prefix_.pop_back();
            --threshold_;
        }
    }
};

/// The set whose Grundy sequence is the h-stair of the given set's sequence:
/// every multiple k*h with k outside `s` is removed from the positive integers.
inline SubtractionSet lift_set(const SubtractionSet& s, std::uint64_t h) {
    if (h < 1) throw std::invalid_argument("stair height h must be positive");
    if (h == 1) return s;
    if (h >= set_description_limit / std::max(s.threshold(), s.modulus())) {
        throw ResourceLimitError("set_description_limit", set_description_limit,
                                 "lifted set description too large");
    }
    const std::uint64_t new_threshold = s.threshold() * h;
    const std::uint64_t new_modulus = s.modulus() * h;
    std::vector<std::uint64_t> prefix;
    for (std::uint64_t x = 1; x < new_threshold; ++x) {
        if (x % h != 0 || s.contains(x / h)) prefix.push_back(x);
    }
    std::vector<std::uint64_t> residues;
    for (std::uint64_t r = 0; r < new_modulus; ++r) {
        if (r % h != 0) {
            residues.push_back(r);
        } else if (std::binary_search(s.residues().begin(), s.residues().end(),
                                      (r / h) % s.modulus())) {
            residues.push_back(r);
        }
    }
    return SubtractionSet::periodic(new_threshold, std::move(prefix), new_modulus,
                                    std::move(residues));
}

}  // namespace nimhoff
