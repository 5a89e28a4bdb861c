#include "tempo/bitmap.hpp"

#include <algorithm>
#include <string>

#include "tempo/error.hpp"

namespace tempo {

Bitmap::Bitmap(std::size_t size, bool value)
    : size_(size), words_((size + 63) / 64, value ? ~std::uint64_t{0} : 0) {
  // keep the tail of the last word clear so count() stays exact
  if (value && (size & 63) != 0) words_.back() &= (std::uint64_t{1} << (size & 63)) - 1;
}

Bitmap::Bitmap(std::initializer_list<int> bits) : Bitmap(bits.size()) {
  std::size_t i = 0;
  for (int b : bits) {
    if (b != 0) set(i);
    ++i;
  }
}

std::size_t Bitmap::count() const noexcept {
  std::size_t n = 0;
  for (auto w : words_) n += static_cast<std::size_t>(std::popcount(w));
  return n;
}

bool Bitmap::any() const noexcept {
  return std::any_of(words_.begin(), words_.end(), [](auto w) { return w != 0; });
}

Bitmap& Bitmap::operator&=(const Bitmap& other) {
  if (other.size_ != size_) {
    throw ConfigError("bitmap length mismatch: " + std::to_string(size_) + " vs " +
                      std::to_string(other.size_));
  }
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= other.words_[i];
  return *this;
}

Bitmap& Bitmap::operator|=(const Bitmap& other) {
  if (other.size_ != size_) {
    throw ConfigError("bitmap length mismatch: " + std::to_string(size_) + " vs " +
                      std::to_string(other.size_));
  }
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= other.words_[i];
  return *this;
}

std::vector<int> Bitmap::to_vector() const {
  std::vector<int> out(size_, 0);
  for_each_set([&](std::size_t i) { out[i] = 1; });
  return out;
}

Bitmap bitmap_and(const Bitmap& a, const Bitmap& b) {
  Bitmap out = a;
  out &= b;
  return out;
}

std::size_t bitmap_count(const Bitmap& b) { return b.count(); }

}  // namespace tempo
