#include "kkmforge/gf2.hpp"

#include <bit>
#include <stdexcept>

namespace kkmforge {

BitVector& BitVector::operator^=(const BitVector& other) {
    if (other.size_ != size_) throw std::invalid_argument("BitVector: size mismatch");
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] ^= other.words_[i];
    return *this;
}

bool BitVector::any() const noexcept {
    for (auto w : words_) {
        if (w) return true;
    }
    return false;
}

std::size_t BitVector::count() const noexcept {
    std::size_t c = 0;
    for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
    return c;
}

std::size_t BitVector::lowest() const noexcept {
    for (std::size_t i = 0; i < words_.size(); ++i) {
        if (words_[i]) return (i << 6) + static_cast<std::size_t>(std::countr_zero(words_[i]));
    }
    return size_;
}

bool BitVector::dot(const BitVector& other) const {
    if (other.size_ != size_) throw std::invalid_argument("BitVector: size mismatch");
    std::uint64_t acc = 0;
    for (std::size_t i = 0; i < words_.size(); ++i) acc ^= words_[i] & other.words_[i];
    return std::popcount(acc) & 1;
}

std::vector<std::size_t> BitVector::ones() const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < words_.size(); ++i) {
        std::uint64_t w = words_[i];
        while (w) {
            out.push_back((i << 6) + static_cast<std::size_t>(std::countr_zero(w)));
            w &= w - 1;
        }
    }
    return out;
}

BitVector Gf2Reducer::reduce(const BitVector& v) const {
    BitVector r = v;
    for (const auto& e : basis_) {
        if (r.test(e.pivot)) r ^= e.value;
    }
    return r;
}

bool Gf2Reducer::insert(const BitVector& v, std::size_t index, BitVector* dependency) {
    if (v.size() != vector_size_ || index >= generator_count_) {
        throw std::invalid_argument("Gf2Reducer::insert: bad dimensions");
    }
    BitVector r = v;
    BitVector comb(generator_count_);
    comb.set(index);
    for (const auto& e : basis_) {
        if (r.test(e.pivot)) {
            r ^= e.value;
            comb ^= e.combination;
        }
    }
    if (r.none()) {
        if (dependency) *dependency = std::move(comb);
        return false;
    }
    const std::size_t pivot = r.lowest();
    for (auto& e : basis_) {
        if (e.value.test(pivot)) {
            e.value ^= r;
            e.combination ^= comb;
        }
    }
    basis_.push_back(Entry{std::move(r), std::move(comb), pivot});
    return true;
}

std::optional<BitVector> Gf2Reducer::solve(const BitVector& target, BitVector* witness) const {
    if (target.size() != vector_size_) throw std::invalid_argument("Gf2Reducer::solve: size mismatch");
    BitVector r = target;
    BitVector comb(generator_count_);
    for (const auto& e : basis_) {
        if (r.test(e.pivot)) {
            r ^= e.value;
            comb ^= e.combination;
        }
    }
    if (r.none()) return comb;
    if (witness) {
        // Pick a non-pivot bit q of the residual; y = e_q + sum_j [b_j(q)] e_{p_j}.
        const std::size_t q = r.lowest();
        BitVector y(vector_size_);
        y.set(q);
        for (const auto& e : basis_) {
            if (e.value.test(q)) y.flip(e.pivot);
        }
        *witness = std::move(y);
    }
    return std::nullopt;
}

}  // namespace kkmforge
