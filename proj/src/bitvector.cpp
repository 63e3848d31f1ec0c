#include "girg/bitvector.hpp"

#include <bit>

#include "girg/errors.hpp"

namespace girg {

BitVector::BitVector(std::vector<std::uint64_t> words, std::uint64_t nbits)
    : words_(std::move(words)), nbits_(nbits) {
    if (words_.size() != (nbits_ + 63) / 64)
        throw UsageError("bit vector: word count does not match bit length");
    if ((nbits_ & 63) != 0 && !words_.empty()) {
        // stray bits above the logical end would corrupt the counters
        words_.back() &= (1ull << (nbits_ & 63)) - 1;
    }
    build_index();
}

void BitVector::build_index() {
    const std::size_t nw = words_.size();
    super_.assign(nw / 8 + 1, 0);
    word_rel_.assign(nw + 1, 0);
    select_hint_.clear();
    std::uint64_t total = 0;
    for (std::size_t w = 0; w < nw; ++w) {
        if ((w & 7) == 0) super_[w / 8] = total;
        word_rel_[w] = static_cast<std::uint16_t>(total - super_[w / 8]);
        std::uint64_t x = words_[w];
        while (x) {
            if ((total & 63) == 0)
                select_hint_.push_back(w * 64 + std::countr_zero(x) + 1);
            x &= x - 1;
            ++total;
        }
    }
    if ((nw & 7) == 0) super_[nw / 8] = total;
    word_rel_[nw] = static_cast<std::uint16_t>(total - super_[nw / 8]);
    ones_ = total;
}

bool BitVector::get(std::uint64_t pos) const {
    if (pos < 1 || pos > nbits_) throw UsageError("bit vector: position out of range");
    const std::uint64_t i = pos - 1;
    return (words_[i / 64] >> (i & 63)) & 1;
}

std::uint64_t BitVector::rank(std::uint64_t pos) const {
    if (pos > nbits_) throw UsageError("bit vector: rank position out of range");
    if (pos == 0) return 0;
    const std::uint64_t i = pos - 1;
    const std::uint64_t w = i / 64;
    const int r = static_cast<int>(i & 63);
    const std::uint64_t mask = r == 63 ? ~0ull : (1ull << (r + 1)) - 1;
    return super_[w / 8] + word_rel_[w] +
           static_cast<std::uint64_t>(std::popcount(words_[w] & mask));
}

std::uint64_t BitVector::select(std::uint64_t k) const {
    if (k < 1 || k > ones_) throw UsageError("bit vector: select rank out of range");
    const std::uint64_t hint = select_hint_[(k - 1) / 64];
    std::uint64_t w = (hint - 1) / 64;
    std::uint64_t rem = k - ((k - 1) / 64) * 64; // rank within the hinted run, >= 1
    std::uint64_t x = words_[w] & ~((1ull << ((hint - 1) & 63)) - 1);
    for (;;) {
        const auto c = static_cast<std::uint64_t>(std::popcount(x));
        if (rem <= c) break;
        rem -= c;
        x = words_[++w];
    }
    for (std::uint64_t t = 1; t < rem; ++t) x &= x - 1;
    return w * 64 + std::countr_zero(x) + 1;
}

std::uint64_t BitVector::read_window(std::uint64_t pos, int nbits) const {
    if (nbits < 0 || nbits > 64) throw UsageError("bit vector: window width out of range");
    if (nbits == 0) return 0;
    if (pos < 1 || pos + nbits - 1 > nbits_)
        throw UsageError("bit vector: window out of range");
    const std::uint64_t i = pos - 1;
    const std::uint64_t w = i / 64;
    const int off = static_cast<int>(i & 63);
    std::uint64_t out = words_[w] >> off;
    if (off + nbits > 64) out |= words_[w + 1] << (64 - off);
    if (nbits < 64) out &= (1ull << nbits) - 1;
    return out;
}

} // namespace girg
