#ifndef DIALOMETER_TOKENIZER_H_
#define DIALOMETER_TOKENIZER_H_

#include <string>
#include <string_view>
#include <vector>

namespace dialometer {

using TokenList = std::vector<std::string>;

struct TokenizerConfig {
  bool lowercase = true;
  // Punctuation (Unicode general category P*) always splits tokens. When
  // set it is dropped, otherwise each mark is kept as its own token.
  // Apostrophes between two alphanumerics stay inside the word.
  bool strip_punctuation = true;
  bool unicode_nfc = true;

  bool operator==(const TokenizerConfig&) const = default;
};

// Total and deterministic. Invalid UTF-8 sequences are replaced by U+FFFD.
TokenList Tokenize(std::string_view text, const TokenizerConfig& config = {});

// True if the UTF-8 string holds at least one alphabetic code point.
bool HasAlphabetic(std::string_view token);

}  // namespace dialometer

#endif  // DIALOMETER_TOKENIZER_H_
