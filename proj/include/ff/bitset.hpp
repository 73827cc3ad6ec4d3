#pragma once

#include <bit>
#include <cstdint>
#include <functional>
#include <vector>

namespace ff {

class DynBitset {
 public:
  DynBitset() = default;
  explicit DynBitset(std::size_t n) : words_((n + 63) / 64, 0), n_(n) {}

  std::size_t size() const { return n_; }

  void set(std::size_t i) { words_[i >> 6] |= std::uint64_t(1) << (i & 63); }
  void reset(std::size_t i) { words_[i >> 6] &= ~(std::uint64_t(1) << (i & 63)); }
  bool test(std::size_t i) const { return (words_[i >> 6] >> (i & 63)) & 1; }

  std::size_t count() const {
    std::size_t c = 0;
    for (std::uint64_t w : words_) c += std::popcount(w);
    return c;
  }

  bool is_subset_of(const DynBitset& o) const {
    for (std::size_t i = 0; i < words_.size(); ++i)
      if (words_[i] & ~o.words_[i]) return false;
    return true;
  }

  DynBitset operator&(const DynBitset& o) const {
    DynBitset r(n_);
    for (std::size_t i = 0; i < words_.size(); ++i) r.words_[i] = words_[i] & o.words_[i];
    return r;
  }

  bool operator==(const DynBitset& o) const = default;

  // Lexicographic on the id sequence: smaller first member wins.
  bool lex_less(const DynBitset& o) const {
    for (std::size_t i = 0; i < words_.size(); ++i) {
      if (words_[i] == o.words_[i]) continue;
      // The set whose lowest differing bit is set has the smaller element.
      std::uint64_t diff = words_[i] ^ o.words_[i];
      std::uint64_t low = diff & (~diff + 1);
      return words_[i] & low;
    }
    return false;
  }

  template <typename Fn>
  void for_each(Fn&& fn) const {
    for (std::size_t wi = 0; wi < words_.size(); ++wi) {
      std::uint64_t w = words_[wi];
      while (w) {
        unsigned b = std::countr_zero(w);
        fn(static_cast<std::uint32_t>(wi * 64 + b));
        w &= w - 1;
      }
    }
  }

  std::vector<std::uint32_t> to_ids() const {
    std::vector<std::uint32_t> ids;
    ids.reserve(count());
    for_each([&](std::uint32_t i) { ids.push_back(i); });
    return ids;
  }

  std::uint64_t hash() const {
    std::uint64_t h = 1469598103934665603ull;
    for (std::uint64_t w : words_) {
      h ^= w;
      h *= 1099511628211ull;
    }
    return h;
  }

 private:
  std::vector<std::uint64_t> words_;
  std::size_t n_ = 0;
};

struct DynBitsetHash {
  std::size_t operator()(const DynBitset& b) const { return b.hash(); }
};

}  // namespace ff
