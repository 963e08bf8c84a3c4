#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>

namespace nimhoff {

using Grundy = std::uint64_t;
using HeapSize = std::uint64_t;

// Largest admissible heap size. Keeps every Q*h + R computation inside 64 bits.
inline constexpr HeapSize heap_size_limit = 0xFFFF'FFFFull;

// Bound on threshold and modulus of a stored subtraction set.
inline constexpr std::uint64_t set_description_limit = 1ull << 20;

struct Caps {
    std::uint64_t dp_cap = 100'000;      // longest Grundy sequence a DP may produce
    std::uint64_t node_cap = 5'000'000;  // most positions an exhaustive search may touch
};

class ResourceLimitError : public std::runtime_error {
public:
    ResourceLimitError(std::string cap_name, std::uint64_t limit, const std::string& detail)
        : std::runtime_error(detail + " (" + cap_name + "=" + std::to_string(limit) + ")"),
          cap_name_(std::move(cap_name)),
          limit_(limit) {}

    const std::string& cap_name() const noexcept { return cap_name_; }
    std::uint64_t limit() const noexcept { return limit_; }

private:
    std::string cap_name_;
    std::uint64_t limit_;
};

class ParseError : public std::runtime_error {
public:
    ParseError(std::size_t position, const std::string& message)
        : std::runtime_error(message + " at position " + std::to_string(position)),
          position_(position) {}

    std::size_t position() const noexcept { return position_; }

private:
    std::size_t position_;
};

// A per-heap Grundy sequence does not reach the index the closed form needs.
class CoverageError : public std::runtime_error {
public:
    CoverageError(std::size_t heap, std::uint64_t needed_index, std::size_t available)
        : std::runtime_error("sequence for heap " + std::to_string(heap + 1) + " covers " +
                             std::to_string(available) + " values, index " +
                             std::to_string(needed_index) + " required"),
          heap_(heap) {}

    std::size_t heap() const noexcept { return heap_; }

private:
    std::size_t heap_;
};

// A per-heap Grundy sequence fails the stair shape the closed form relies on.
class StairPreconditionError : public std::runtime_error {
public:
    StairPreconditionError(std::size_t heap, std::size_t index)
        : std::runtime_error("sequence for heap " + std::to_string(heap + 1) +
                             " is not a stair: violation at index " + std::to_string(index)),
          heap_(heap),
          index_(index) {}

    std::size_t heap() const noexcept { return heap_; }
    std::size_t index() const noexcept { return index_; }

private:
    std::size_t heap_;
    std::size_t index_;
};

}  // namespace nimhoff
