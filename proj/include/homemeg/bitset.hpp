#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace homemeg {

// Fixed-size bitset sized at runtime; used for informed-node sets and edge masks.
class Bitset {
  public:
    Bitset() = default;
    explicit Bitset(std::size_t size) : n_(size), words_((size + 63) / 64, 0) {}

    std::size_t size() const { return n_; }

    void set(std::size_t i) { words_[i >> 6] |= (std::uint64_t{1} << (i & 63)); }
    void reset(std::size_t i) { words_[i >> 6] &= ~(std::uint64_t{1} << (i & 63)); }
    void assign(std::size_t i, bool v) { v ? set(i) : reset(i); }
    bool test(std::size_t i) const {
        return (words_[i >> 6] >> (i & 63)) & 1;
    }

    std::size_t count() const {
        std::size_t c = 0;
        for (std::uint64_t w : words_) c += static_cast<std::size_t>(__builtin_popcountll(w));
        return c;
    }

    bool all() const { return count() == n_; }
    bool none() const {
        for (std::uint64_t w : words_) {
            if (w != 0) return false;
        }
        return true;
    }

    // True iff other is a subset of *this.
    bool contains(const Bitset& other) const {
        for (std::size_t i = 0; i < words_.size(); ++i) {
            if (other.words_[i] & ~words_[i]) return false;
        }
        return true;
    }

    Bitset& operator|=(const Bitset& other) {
        for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= other.words_[i];
        return *this;
    }

    friend bool operator==(const Bitset& a, const Bitset& b) {
        return a.n_ == b.n_ && a.words_ == b.words_;
    }

    const std::vector<std::uint64_t>& words() const { return words_; }

  private:
    std::size_t n_ = 0;
    std::vector<std::uint64_t> words_;
};

}  // namespace homemeg
