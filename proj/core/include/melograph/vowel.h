// Principal-vowel classification of Italian syllables.

#ifndef MELOGRAPH_VOWEL_H_
#define MELOGRAPH_VOWEL_H_

#include <array>
#include <optional>
#include <string>
#include <string_view>

namespace melograph {

enum class Vowel { a, e, i, o, u, io, ia, consonant_only };

inline constexpr std::array<Vowel, 8> kVowelClasses = {Vowel::a,  Vowel::e,  Vowel::i, Vowel::o,
                                                       Vowel::u,  Vowel::io, Vowel::ia, Vowel::consonant_only};

/// Lower-cases ASCII letters and folds à è é ì ò ù (either case) onto their
/// base vowel. Other bytes pass through unchanged.
std::string fold_syllable(std::string_view text);

/// The first vowel run of the folded syllable decides the class: "io" and
/// "ia" are diphthong classes, any other run yields its first vowel, and a
/// syllable without vowels is consonant_only.
Vowel principal_vowel(std::string_view syllable_text);

std::string_view to_string(Vowel vowel) noexcept;
std::optional<Vowel> parse_vowel(std::string_view name) noexcept;

}  // namespace melograph

#endif  // MELOGRAPH_VOWEL_H_
