#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "tracelang/error.hpp"

namespace tracelang {

/// Index of a letter within its alphabet (position in the declared order).
using Letter = std::size_t;

/// Bit set of letters; alphabets are limited to 64 letters.
using LetterMask = std::uint64_t;

/// A finite alphabet of single-character symbols together with an
/// irreflexive, symmetric independence relation. The declaration order of the
/// letters is the total order used for trace normal forms.
class DependenceAlphabet {
 public:
  static constexpr std::size_t kMaxLetters = 64;

  DependenceAlphabet() { index_.fill(-1); }

  DependenceAlphabet(std::vector<char> letters,
                     const std::vector<std::pair<char, char>>& independent)
      : letters_(std::move(letters)) {
    index_.fill(-1);
    if (letters_.size() > kMaxLetters) {
      throw Error(ErrorKind::SizeLimit, "at most 64 letters are supported");
    }
    for (std::size_t i = 0; i < letters_.size(); ++i) {
      auto slot = static_cast<unsigned char>(letters_[i]);
      if (index_[slot] != -1) {
        throw Error(ErrorKind::DuplicateLetter, std::string("letter '") + letters_[i] + "' declared twice");
      }
      index_[slot] = static_cast<std::int16_t>(i);
    }
    dependent_.assign(letters_.size(), 0);
    for (Letter a = 0; a < letters_.size(); ++a) {
      dependent_[a] = ~LetterMask{0};
    }
    for (auto [x, y] : independent) {
      if (!contains(x)) throw Error(ErrorKind::UnknownLetter, std::string("independence pair uses '") + x + "'");
      if (!contains(y)) throw Error(ErrorKind::UnknownLetter, std::string("independence pair uses '") + y + "'");
      if (x == y) throw Error(ErrorKind::ReflexivePair, std::string("pair (") + x + "," + y + ")");
      Letter a = index(x);
      Letter b = index(y);
      dependent_[a] &= ~bit(b);
      dependent_[b] &= ~bit(a);
    }
    LetterMask all = letters_.size() == 64 ? ~LetterMask{0} : (LetterMask{1} << letters_.size()) - 1;
    for (auto& mask : dependent_) mask &= all;
  }

  static LetterMask bit(Letter a) { return LetterMask{1} << a; }

  std::size_t size() const { return letters_.size(); }
  const std::vector<char>& letters() const { return letters_; }
  std::string letters_string() const { return {letters_.begin(), letters_.end()}; }
  char symbol(Letter a) const { return letters_.at(a); }

  bool contains(char c) const { return index_[static_cast<unsigned char>(c)] >= 0; }

  Letter index(char c) const {
    auto i = index_[static_cast<unsigned char>(c)];
    if (i < 0) throw Error(ErrorKind::UnknownLetter, std::string("'") + c + "' is not in the alphabet");
    return static_cast<Letter>(i);
  }

  bool independent(Letter a, Letter b) const { return (dependent_[a] & bit(b)) == 0; }
  bool dependent(Letter a, Letter b) const { return !independent(a, b); }
  bool independent(char a, char b) const { return independent(index(a), index(b)); }

  /// D_a as a mask; always contains a itself.
  LetterMask dependence_mask(Letter a) const { return dependent_[a]; }

  /// I_a in letter order.
  std::vector<Letter> independent_of(Letter a) const {
    std::vector<Letter> out;
    for (Letter b = 0; b < size(); ++b)
      if (independent(a, b)) out.push_back(b);
    return out;
  }

  /// D_a in letter order.
  std::vector<Letter> dependent_on(Letter a) const {
    std::vector<Letter> out;
    for (Letter b = 0; b < size(); ++b)
      if (dependent(a, b)) out.push_back(b);
    return out;
  }

  /// Independent pairs (a, b) with a < b, in lexicographic order.
  std::vector<std::pair<Letter, Letter>> independent_pairs() const {
    std::vector<std::pair<Letter, Letter>> out;
    for (Letter a = 0; a < size(); ++a)
      for (Letter b = a + 1; b < size(); ++b)
        if (independent(a, b)) out.emplace_back(a, b);
    return out;
  }

  bool has_independence() const { return !independent_pairs().empty(); }

  void check_word(std::string_view word) const {
    for (char c : word) (void)index(c);
  }

  std::vector<Letter> indices(std::string_view word) const {
    std::vector<Letter> out;
    out.reserve(word.size());
    for (char c : word) out.push_back(index(c));
    return out;
  }

  bool operator==(const DependenceAlphabet& other) const {
    return letters_ == other.letters_ && dependent_ == other.dependent_;
  }

 private:
  std::vector<char> letters_;
  std::vector<LetterMask> dependent_;
  std::array<std::int16_t, 256> index_{};
};

/// Validated construction from symbol lists; the pair list is closed under symmetry.
inline DependenceAlphabet build_alphabet(std::string_view letters,
                                         const std::vector<std::pair<char, char>>& independent = {}) {
  return DependenceAlphabet(std::vector<char>(letters.begin(), letters.end()), independent);
}

inline void require_same_alphabet(const DependenceAlphabet& a, const DependenceAlphabet& b) {
  if (!(a == b)) {
    throw Error(ErrorKind::AlphabetMismatch,
                "operands use different dependence alphabets (" + a.letters_string() + " vs " +
                    b.letters_string() + ")");
  }
}

}  // namespace tracelang
