#pragma once

#include <algorithm>
#include <array>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace idealcount {

// Small bitsets used for vertex sets inside the counting engine.  The engine
// is templated on the set type so that graphs up to 512 vertices run entirely
// on stack-allocated words; larger graphs fall back to the heap-backed
// variant.  Interfaces are kept identical so the engine code does not care
// which one it got.

template <std::size_t W>
class FixedBits {
public:
    FixedBits() : w_{} {}

    static FixedBits zeros(std::size_t /*nbits*/) { return FixedBits(); }

    static FixedBits full(std::size_t nbits) {
        FixedBits b;
        for (std::size_t i = 0; i < W; ++i) {
            std::size_t lo = i * 64;
            if (nbits >= lo + 64) {
                b.w_[i] = ~std::uint64_t{0};
            } else if (nbits > lo) {
                b.w_[i] = (std::uint64_t{1} << (nbits - lo)) - 1;
            }
        }
        return b;
    }

    bool test(std::size_t i) const { return (w_[i >> 6] >> (i & 63)) & 1; }
    void set(std::size_t i) { w_[i >> 6] |= std::uint64_t{1} << (i & 63); }
    void reset(std::size_t i) { w_[i >> 6] &= ~(std::uint64_t{1} << (i & 63)); }

    bool none() const {
        for (auto x : w_)
            if (x) return false;
        return true;
    }
    bool any() const { return !none(); }

    std::size_t count() const {
        std::size_t c = 0;
        for (auto x : w_) c += static_cast<std::size_t>(std::popcount(x));
        return c;
    }

    FixedBits& operator|=(const FixedBits& o) {
        for (std::size_t i = 0; i < W; ++i) w_[i] |= o.w_[i];
        return *this;
    }
    FixedBits& operator&=(const FixedBits& o) {
        for (std::size_t i = 0; i < W; ++i) w_[i] &= o.w_[i];
        return *this;
    }
    // this &= ~o
    FixedBits& subtract(const FixedBits& o) {
        for (std::size_t i = 0; i < W; ++i) w_[i] &= ~o.w_[i];
        return *this;
    }

    bool operator==(const FixedBits& o) const { return w_ == o.w_; }

    bool intersects(const FixedBits& o) const {
        for (std::size_t i = 0; i < W; ++i)
            if (w_[i] & o.w_[i]) return true;
        return false;
    }

    void clear_all() { w_.fill(0); }

    // lowest set bit, or npos when empty
    static constexpr std::size_t npos = static_cast<std::size_t>(-1);
    std::size_t first() const {
        for (std::size_t i = 0; i < W; ++i)
            if (w_[i]) return i * 64 + static_cast<std::size_t>(std::countr_zero(w_[i]));
        return npos;
    }

    // lowest set bit >= from, or npos
    std::size_t next(std::size_t from) const {
        std::size_t wi = from >> 6;
        if (wi >= W) return npos;
        std::uint64_t x = w_[wi] & (~std::uint64_t{0} << (from & 63));
        while (true) {
            if (x) return wi * 64 + static_cast<std::size_t>(std::countr_zero(x));
            if (++wi >= W) return npos;
            x = w_[wi];
        }
    }

    template <class F>
    void for_each(F&& f) const {
        for (std::size_t i = 0; i < W; ++i) {
            std::uint64_t x = w_[i];
            while (x) {
                f(i * 64 + static_cast<std::size_t>(std::countr_zero(x)));
                x &= x - 1;
            }
        }
    }

private:
    std::array<std::uint64_t, W> w_;
};

class DynBits {
public:
    DynBits() = default;
    explicit DynBits(std::size_t nwords) : w_(nwords, 0) {}

    static DynBits zeros(std::size_t nbits) { return DynBits((nbits + 63) / 64); }

    static DynBits full(std::size_t nbits) {
        DynBits b = zeros(nbits);
        for (std::size_t i = 0; i < b.w_.size(); ++i) {
            std::size_t lo = i * 64;
            if (nbits >= lo + 64) {
                b.w_[i] = ~std::uint64_t{0};
            } else if (nbits > lo) {
                b.w_[i] = (std::uint64_t{1} << (nbits - lo)) - 1;
            }
        }
        return b;
    }

    bool test(std::size_t i) const { return (w_[i >> 6] >> (i & 63)) & 1; }
    void set(std::size_t i) { w_[i >> 6] |= std::uint64_t{1} << (i & 63); }
    void reset(std::size_t i) { w_[i >> 6] &= ~(std::uint64_t{1} << (i & 63)); }

    bool none() const {
        for (auto x : w_)
            if (x) return false;
        return true;
    }
    bool any() const { return !none(); }

    std::size_t count() const {
        std::size_t c = 0;
        for (auto x : w_) c += static_cast<std::size_t>(std::popcount(x));
        return c;
    }

    DynBits& operator|=(const DynBits& o) {
        for (std::size_t i = 0; i < w_.size(); ++i) w_[i] |= o.w_[i];
        return *this;
    }
    DynBits& operator&=(const DynBits& o) {
        for (std::size_t i = 0; i < w_.size(); ++i) w_[i] &= o.w_[i];
        return *this;
    }
    DynBits& subtract(const DynBits& o) {
        for (std::size_t i = 0; i < w_.size(); ++i) w_[i] &= ~o.w_[i];
        return *this;
    }

    bool operator==(const DynBits& o) const { return w_ == o.w_; }

    bool intersects(const DynBits& o) const {
        for (std::size_t i = 0; i < w_.size(); ++i)
            if (w_[i] & o.w_[i]) return true;
        return false;
    }

    void clear_all() { std::fill(w_.begin(), w_.end(), 0); }

    static constexpr std::size_t npos = static_cast<std::size_t>(-1);
    std::size_t first() const {
        for (std::size_t i = 0; i < w_.size(); ++i)
            if (w_[i]) return i * 64 + static_cast<std::size_t>(std::countr_zero(w_[i]));
        return npos;
    }

    std::size_t next(std::size_t from) const {
        std::size_t wi = from >> 6;
        if (wi >= w_.size()) return npos;
        std::uint64_t x = w_[wi] & (~std::uint64_t{0} << (from & 63));
        while (true) {
            if (x) return wi * 64 + static_cast<std::size_t>(std::countr_zero(x));
            if (++wi >= w_.size()) return npos;
            x = w_[wi];
        }
    }

    template <class F>
    void for_each(F&& f) const {
        for (std::size_t i = 0; i < w_.size(); ++i) {
            std::uint64_t x = w_[i];
            while (x) {
                f(i * 64 + static_cast<std::size_t>(std::countr_zero(x)));
                x &= x - 1;
            }
        }
    }

private:
    std::vector<std::uint64_t> w_;
};

}  // namespace idealcount
