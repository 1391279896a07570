#include "melograph/vowel.h"

#include <cctype>

namespace melograph {
namespace {

constexpr std::array<std::string_view, 8> kVowelNames = {"a", "e", "i", "o", "u", "io", "ia", "consonant_only"};

bool is_vowel(char c) { return c == 'a' || c == 'e' || c == 'i' || c == 'o' || c == 'u'; }

// Latin-1 supplement code points reachable with a 0xC3 lead byte.
char fold_accent(unsigned char trail) {
  switch (trail) {
    case 0xA0: case 0x80: return 'a';  // à À
    case 0xA8: case 0x88:              // è È
    case 0xA9: case 0x89: return 'e';  // é É
    case 0xAC: case 0x8C: return 'i';  // ì Ì
    case 0xB2: case 0x92: return 'o';  // ò Ò
    case 0xB9: case 0x99: return 'u';  // ù Ù
    default: return '\0';
  }
}

}  // namespace

std::string fold_syllable(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  for (std::size_t i = 0; i < text.size(); ++i) {
    const auto c = static_cast<unsigned char>(text[i]);
    if (c == 0xC3 && i + 1 < text.size()) {
      if (const char base = fold_accent(static_cast<unsigned char>(text[i + 1])); base != '\0') {
        out.push_back(base);
        ++i;
        continue;
      }
    }
    out.push_back(c < 0x80 ? static_cast<char>(std::tolower(c)) : static_cast<char>(c));
  }
  return out;
}

Vowel principal_vowel(std::string_view syllable_text) {
  const std::string folded = fold_syllable(syllable_text);
  std::size_t start = 0;
  while (start < folded.size() && !is_vowel(folded[start])) ++start;
  if (start == folded.size()) return Vowel::consonant_only;
  std::size_t end = start;
  while (end < folded.size() && is_vowel(folded[end])) ++end;

  const std::string_view run(folded.data() + start, end - start);
  if (run == "io") return Vowel::io;
  if (run == "ia") return Vowel::ia;
  switch (run.front()) {
    case 'a': return Vowel::a;
    case 'e': return Vowel::e;
    case 'i': return Vowel::i;
    case 'o': return Vowel::o;
    default: return Vowel::u;
  }
}

std::string_view to_string(Vowel vowel) noexcept { return kVowelNames[static_cast<std::size_t>(vowel)]; }

std::optional<Vowel> parse_vowel(std::string_view name) noexcept {
  for (std::size_t i = 0; i < kVowelNames.size(); ++i) {
    if (kVowelNames[i] == name) return static_cast<Vowel>(i);
  }
  return std::nullopt;
}

}  // namespace melograph
