#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace sheafcon {

  /// A subset of {0, ..., 63}, used for subsets of poset elements and of
  /// algebra carriers. Every structure that indexes into an ElemSet is
  /// limited to 64 elements.
  class ElemSet {
   public:
    static constexpr std::size_t capacity = 64;

    constexpr ElemSet() = default;
    constexpr explicit ElemSet(std::uint64_t bits) : bits_(bits) {}

    static constexpr ElemSet full(std::size_t n) {
      return ElemSet(n >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1);
    }
    static constexpr ElemSet single(std::size_t i) {
      return ElemSet(std::uint64_t{1} << i);
    }

    constexpr std::uint64_t bits() const { return bits_; }
    constexpr bool empty() const { return bits_ == 0; }
    constexpr std::size_t size() const { return std::popcount(bits_); }
    constexpr bool contains(std::size_t i) const { return (bits_ >> i) & 1U; }
    constexpr bool subset_of(ElemSet other) const {
      return (bits_ & ~other.bits_) == 0;
    }

    constexpr void insert(std::size_t i) { bits_ |= std::uint64_t{1} << i; }
    constexpr void erase(std::size_t i) { bits_ &= ~(std::uint64_t{1} << i); }

    constexpr ElemSet operator|(ElemSet o) const { return ElemSet(bits_ | o.bits_); }
    constexpr ElemSet operator&(ElemSet o) const { return ElemSet(bits_ & o.bits_); }
    constexpr ElemSet minus(ElemSet o) const { return ElemSet(bits_ & ~o.bits_); }
    /// Complement relative to {0, ..., n-1}.
    constexpr ElemSet complement(std::size_t n) const {
      return ElemSet(~bits_ & full(n).bits_);
    }

    constexpr bool operator==(const ElemSet&) const = default;
    constexpr auto operator<=>(const ElemSet&) const = default;

    std::vector<std::size_t> members() const {
      std::vector<std::size_t> out;
      for (std::uint64_t b = bits_; b != 0; b &= b - 1) {
        out.push_back(static_cast<std::size_t>(std::countr_zero(b)));
      }
      return out;
    }

   private:
    std::uint64_t bits_ = 0;
  };

}  // namespace sheafcon
