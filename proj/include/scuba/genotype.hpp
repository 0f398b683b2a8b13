#ifndef SCUBA_GENOTYPE_HPP
#define SCUBA_GENOTYPE_HPP

// Fixed-length bit string genotypes. Character i of the textual form is the
// allele at locus i; the integer form reads the string as a binary number, so
// locus 0 is the most significant bit ("01000" == 8).

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace scuba {

class Genotype {
 public:
  Genotype() = default;
  explicit Genotype(std::size_t length) : bits_(length, 0) {}

  static Genotype from_string(std::string_view text) {
    Genotype g(text.size());
    for (std::size_t i = 0; i < text.size(); ++i) {
      if (text[i] != '0' && text[i] != '1')
        throw std::invalid_argument("genotype string may only contain '0' and '1'");
      g.bits_[i] = static_cast<std::uint8_t>(text[i] - '0');
    }
    return g;
  }

  static Genotype from_integer(std::uint64_t value, std::size_t length) {
    if (length > 64) throw std::invalid_argument("integer genotypes are limited to 64 loci");
    Genotype g(length);
    for (std::size_t i = 0; i < length; ++i)
      g.bits_[i] = static_cast<std::uint8_t>((value >> (length - 1 - i)) & 1u);
    return g;
  }

  std::size_t size() const noexcept { return bits_.size(); }
  bool operator[](std::size_t locus) const noexcept { return bits_[locus] != 0; }

  void set(std::size_t locus, bool allele) noexcept { bits_[locus] = allele ? 1 : 0; }
  void flip(std::size_t locus) noexcept { bits_[locus] ^= 1u; }

  Genotype flipped(std::size_t locus) const {
    Genotype copy = *this;
    copy.flip(locus);
    return copy;
  }

  std::uint64_t to_integer() const {
    if (size() > 64) throw std::domain_error("genotype too long for integer form");
    std::uint64_t value = 0;
    for (auto b : bits_) value = (value << 1) | b;
    return value;
  }

  std::string to_string() const {
    std::string text(bits_.size(), '0');
    for (std::size_t i = 0; i < bits_.size(); ++i)
      if (bits_[i]) text[i] = '1';
    return text;
  }

  friend bool operator==(const Genotype&, const Genotype&) = default;

 private:
  std::vector<std::uint8_t> bits_;
};

inline std::size_t hamming(const Genotype& a, const Genotype& b) {
  if (a.size() != b.size()) throw std::invalid_argument("hamming: length mismatch");
  std::size_t d = 0;
  for (std::size_t i = 0; i < a.size(); ++i) d += (a[i] != b[i]) ? 1 : 0;
  return d;
}

}  // namespace scuba

#endif  // SCUBA_GENOTYPE_HPP
