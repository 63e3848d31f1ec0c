#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace girg {

// Plain bit sequence with constant-time-ish rank and select.  Positions are
// 1-based: bit 0 of word 0 is position 1.  rank(p) counts ones among
// positions 1..p (so rank(0) = 0 and rank(size()) = ones()); select(k) is the
// position of the k-th one.  The rank index keeps one absolute counter per
// 512-bit superblock and a 16-bit relative counter per word; select keeps a
// sampled position every 64 ones and scans from there.
class BitVector {
public:
    class Builder {
    public:
        void push(bool bit) {
            if ((n_ & 63) == 0) words_.push_back(0);
            if (bit) words_.back() |= 1ull << (n_ & 63);
            ++n_;
        }
        std::uint64_t size() const { return n_; }
        BitVector build() { return BitVector(std::move(words_), n_); }

    private:
        std::vector<std::uint64_t> words_;
        std::uint64_t n_ = 0;
    };

    BitVector() = default;
    BitVector(std::vector<std::uint64_t> words, std::uint64_t nbits);

    std::uint64_t size() const { return nbits_; }
    std::uint64_t ones() const { return ones_; }

    bool get(std::uint64_t pos) const; // pos in [1, size]

    std::uint64_t rank(std::uint64_t pos) const;  // pos in [0, size]
    std::uint64_t select(std::uint64_t k) const;  // k in [1, ones]

    // Bits pos..pos+nbits-1 (1-based, nbits <= 64) packed with the first bit
    // in the least significant position.
    std::uint64_t read_window(std::uint64_t pos, int nbits) const;

    std::span<const std::uint64_t> words() const { return words_; }

private:
    void build_index();

    std::vector<std::uint64_t> words_;
    std::uint64_t nbits_ = 0;
    std::uint64_t ones_ = 0;
    std::vector<std::uint64_t> super_;       // ones before each 8-word superblock
    std::vector<std::uint16_t> word_rel_;    // ones before each word, within its superblock
    std::vector<std::uint64_t> select_hint_; // position of ones number 1, 65, 129, ...
};

} // namespace girg
