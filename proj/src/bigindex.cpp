#include "recseq/bigindex.hpp"

#include <algorithm>
#include <bit>
#include <cstdio>

#include "recseq/errors.hpp"

namespace recseq {

namespace {
using u64 = std::uint64_t;
using u128 = unsigned __int128;

constexpr u64 DEC_CHUNK = 10'000'000'000'000'000'000ull; // 10^19
constexpr int DEC_CHUNK_DIGITS = 19;

u64 pow10_u64(int k) {
    u64 r = 1;
    while (k-- > 0) r *= 10;
    return r;
}
} // namespace

BigIndex::BigIndex(u64 v) {
    if (v != 0) limbs_.push_back(v);
}

void BigIndex::trim() {
    while (!limbs_.empty() && limbs_.back() == 0) limbs_.pop_back();
}

void BigIndex::mul_add_small(u64 mul, u64 add) {
    u64 carry = add;
    for (auto& limb : limbs_) {
        u128 t = static_cast<u128>(limb) * mul + carry;
        limb = static_cast<u64>(t);
        carry = static_cast<u64>(t >> 64);
    }
    if (carry != 0) limbs_.push_back(carry);
}

BigIndex BigIndex::from_decimal(std::string_view s) {
    if (s.empty()) raise(errc::out_of_range, "BigIndex: empty decimal string");
    for (char ch : s)
        if (ch < '0' || ch > '9') raise(errc::out_of_range, "BigIndex: invalid decimal digit");
    BigIndex r;
    std::size_t pos = 0;
    while (pos < s.size()) {
        std::size_t take = std::min<std::size_t>(DEC_CHUNK_DIGITS, s.size() - pos);
        u64 chunk = 0;
        for (std::size_t i = 0; i < take; ++i) chunk = chunk * 10 + static_cast<u64>(s[pos + i] - '0');
        r.mul_add_small(pow10_u64(static_cast<int>(take)), chunk);
        pos += take;
    }
    r.trim();
    return r;
}

BigIndex BigIndex::from_limbs(std::vector<u64> limbs) {
    BigIndex r;
    r.limbs_ = std::move(limbs);
    r.trim();
    return r;
}

std::string BigIndex::to_decimal() const {
    if (is_zero()) return "0";
    std::vector<u64> work = limbs_;
    std::vector<u64> chunks;
    while (!work.empty()) {
        u64 rem = 0;
        for (std::size_t i = work.size(); i-- > 0;) {
            u128 cur = (static_cast<u128>(rem) << 64) | work[i];
            work[i] = static_cast<u64>(cur / DEC_CHUNK);
            rem = static_cast<u64>(cur % DEC_CHUNK);
        }
        chunks.push_back(rem);
        while (!work.empty() && work.back() == 0) work.pop_back();
    }
    char buf[32];
    std::string out;
    std::snprintf(buf, sizeof buf, "%llu", static_cast<unsigned long long>(chunks.back()));
    out = buf;
    for (std::size_t i = chunks.size() - 1; i-- > 0;) {
        std::snprintf(buf, sizeof buf, "%019llu", static_cast<unsigned long long>(chunks[i]));
        out += buf;
    }
    return out;
}

std::size_t BigIndex::bit_length() const {
    if (limbs_.empty()) return 0;
    return 64 * (limbs_.size() - 1) + (64 - static_cast<std::size_t>(std::countl_zero(limbs_.back())));
}

bool BigIndex::bit(std::size_t i) const {
    std::size_t limb = i / 64;
    if (limb >= limbs_.size()) return false;
    return (limbs_[limb] >> (i % 64)) & 1u;
}

u64 BigIndex::to_u64() const {
    if (!fits_u64()) raise(errc::out_of_range, "BigIndex: value exceeds 64 bits");
    return limbs_.empty() ? 0 : limbs_[0];
}

u64 BigIndex::mod_u64(u64 m) const {
    if (m == 0) raise(errc::division_by_zero, "BigIndex: mod 0");
    u64 r = 0;
    for (std::size_t i = limbs_.size(); i-- > 0;) {
        u128 cur = (static_cast<u128>(r) << 64) | limbs_[i];
        r = static_cast<u64>(cur % m);
    }
    return r;
}

BigIndex& BigIndex::sub_u64(u64 k) {
    if (*this < BigIndex(k)) raise(errc::out_of_range, "BigIndex: subtraction below zero");
    u64 borrow = k;
    for (std::size_t i = 0; i < limbs_.size() && borrow != 0; ++i) {
        u64 before = limbs_[i];
        limbs_[i] = before - borrow;
        borrow = before < borrow ? 1 : 0;
    }
    trim();
    return *this;
}

std::strong_ordering BigIndex::operator<=>(const BigIndex& o) const {
    if (limbs_.size() != o.limbs_.size()) return limbs_.size() <=> o.limbs_.size();
    for (std::size_t i = limbs_.size(); i-- > 0;)
        if (limbs_[i] != o.limbs_[i]) return limbs_[i] <=> o.limbs_[i];
    return std::strong_ordering::equal;
}

} // namespace recseq
