#ifndef RECSEQ_BIGINDEX_HPP
#define RECSEQ_BIGINDEX_HPP

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace recseq {

// Arbitrary-precision nonnegative integer used for sequence indices.
// Deliberately minimal: decimal I/O, most-significant-first bit access,
// subtraction of a machine word, comparison, and reduction mod a word.
class BigIndex {
public:
    BigIndex() = default; // zero
    explicit BigIndex(std::uint64_t v);

    // Throws Error(out_of_range) on empty input or non-digit characters.
    static BigIndex from_decimal(std::string_view s);
    // Limbs are little-endian base-2^64; trailing zero limbs are stripped.
    static BigIndex from_limbs(std::vector<std::uint64_t> limbs);

    std::string to_decimal() const;

    bool is_zero() const { return limbs_.empty(); }
    // Number of significant bits; 0 for zero.
    std::size_t bit_length() const;
    // Bit i, with bit 0 the least significant. Out-of-range reads are 0.
    bool bit(std::size_t i) const;

    bool fits_u64() const { return limbs_.size() <= 1; }
    std::uint64_t to_u64() const; // throws Error(out_of_range) unless fits_u64()

    std::uint64_t mod_u64(std::uint64_t m) const; // m must be nonzero

    // In-place subtraction; requires *this >= k.
    BigIndex& sub_u64(std::uint64_t k);

    std::strong_ordering operator<=>(const BigIndex& o) const;
    bool operator==(const BigIndex& o) const { return limbs_ == o.limbs_; }

private:
    void trim();
    void mul_add_small(std::uint64_t mul, std::uint64_t add);

    std::vector<std::uint64_t> limbs_; // little-endian, canonical (no zero top limb)
};

} // namespace recseq

#endif
