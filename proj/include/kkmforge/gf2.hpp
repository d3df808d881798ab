#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

namespace kkmforge {

/// Packed GF(2) vector.
class BitVector {
public:
    BitVector() = default;
    explicit BitVector(std::size_t size) : size_(size), words_((size + 63) / 64, 0) {}

    std::size_t size() const noexcept { return size_; }

    bool test(std::size_t i) const { return (words_[i >> 6] >> (i & 63)) & 1u; }
    void set(std::size_t i, bool value = true) {
        const std::uint64_t mask = std::uint64_t{1} << (i & 63);
        if (value) {
            words_[i >> 6] |= mask;
        } else {
            words_[i >> 6] &= ~mask;
        }
    }
    void flip(std::size_t i) { words_[i >> 6] ^= std::uint64_t{1} << (i & 63); }

    BitVector& operator^=(const BitVector& other);
    bool operator==(const BitVector& other) const = default;

    bool any() const noexcept;
    bool none() const noexcept { return !any(); }
    std::size_t count() const noexcept;
    /// Index of the lowest set bit, or size() when empty.
    std::size_t lowest() const noexcept;
    /// Parity of the bitwise AND.
    bool dot(const BitVector& other) const;

    std::vector<std::size_t> ones() const;

private:
    std::size_t size_ = 0;
    std::vector<std::uint64_t> words_;
};

/// Incremental column reduction over GF(2), kept fully reduced: each stored
/// vector owns one pivot bit that no other stored vector has. Every stored
/// vector carries the combination of inserted generators that produced it.
class Gf2Reducer {
public:
    Gf2Reducer(std::size_t vector_size, std::size_t generator_count)
        : vector_size_(vector_size), generator_count_(generator_count) {}

    /// Adds generator `index` with value `v`. Returns true when `v` was
    /// independent of previously inserted generators; otherwise `dependency`
    /// (if non-null) receives a combination of generators summing to zero that
    /// includes `index`.
    bool insert(const BitVector& v, std::size_t index, BitVector* dependency = nullptr);

    std::size_t rank() const noexcept { return basis_.size(); }

    /// Solves sum_j u_j g_j = target. On failure returns nullopt and, if
    /// `witness` is non-null, a vector y with y.g_j = 0 for every generator and
    /// y.target = 1.
    std::optional<BitVector> solve(const BitVector& target, BitVector* witness = nullptr) const;

    /// Reduces v against the span (fully); result is zero iff v is in the span.
    BitVector reduce(const BitVector& v) const;

private:
    struct Entry {
        BitVector value;
        BitVector combination;
        std::size_t pivot;
    };
    std::size_t vector_size_;
    std::size_t generator_count_;
    std::vector<Entry> basis_;
};

}  // namespace kkmforge
