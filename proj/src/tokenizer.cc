#include "dialometer/tokenizer.h"

#include <unicode/locid.h>
#include <unicode/normalizer2.h>
#include <unicode/uchar.h>
#include <unicode/unistr.h>
#include <unicode/utf8.h>

#include <algorithm>

namespace dialometer {
namespace {

bool IsApostrophe(UChar32 c) { return c == 0x27 || c == 0x2019; }

bool IsWordChar(UChar32 c) { return u_isalnum(c) != 0; }

void AppendUtf8(std::string& out, UChar32 c) {
  char buf[U8_MAX_LENGTH];
  int32_t len = 0;
  UBool error = false;
  U8_APPEND(reinterpret_cast<uint8_t*>(buf), len, U8_MAX_LENGTH, c, error);
  if (!error) out.append(buf, static_cast<size_t>(len));
}

// Splits a sequence of already normalized code points.
TokenList SplitCodePoints(const std::vector<UChar32>& cps,
                          const TokenizerConfig& config) {
  TokenList tokens;
  std::string current;
  UChar32 prev = U_SENTINEL;
  auto flush = [&] {
    if (!current.empty()) tokens.push_back(std::move(current));
    current.clear();
  };
  for (size_t i = 0; i < cps.size(); ++i) {
    const UChar32 c = cps[i];
    if (u_isUWhiteSpace(c)) {
      flush();
    } else if (IsApostrophe(c) && !current.empty() && IsWordChar(prev) &&
               i + 1 < cps.size() && IsWordChar(cps[i + 1])) {
      AppendUtf8(current, c);
    } else if (u_ispunct(c) || IsApostrophe(c)) {
      flush();
      if (!config.strip_punctuation) {
        std::string mark;
        AppendUtf8(mark, c);
        tokens.push_back(std::move(mark));
      }
    } else {
      AppendUtf8(current, c);
    }
    prev = c;
  }
  flush();
  return tokens;
}

bool IsAscii(std::string_view text) {
  return std::all_of(text.begin(), text.end(),
                     [](char ch) { return static_cast<unsigned char>(ch) < 0x80; });
}

}  // namespace

TokenList Tokenize(std::string_view text, const TokenizerConfig& config) {
  std::vector<UChar32> cps;
  cps.reserve(text.size());
  if (IsAscii(text)) {
    // NFC and full case mapping are the identity/ASCII mapping here.
    for (char ch : text) {
      UChar32 c = static_cast<unsigned char>(ch);
      if (config.lowercase && c >= 'A' && c <= 'Z') c += 'a' - 'A';
      cps.push_back(c);
    }
    return SplitCodePoints(cps, config);
  }

  icu::UnicodeString s = icu::UnicodeString::fromUTF8(
      icu::StringPiece(text.data(), static_cast<int32_t>(text.size())));
  UErrorCode status = U_ZERO_ERROR;
  const icu::Normalizer2* nfc = icu::Normalizer2::getNFCInstance(status);
  if (config.unicode_nfc && U_SUCCESS(status)) {
    s = nfc->normalize(s, status);
  }
  if (config.lowercase) {
    s.toLower(icu::Locale::getRoot());
    if (config.unicode_nfc && U_SUCCESS(status)) s = nfc->normalize(s, status);
  }
  for (int32_t i = 0; i < s.length();) {
    const UChar32 c = s.char32At(i);
    cps.push_back(c);
    i += U16_LENGTH(c);
  }
  return SplitCodePoints(cps, config);
}

bool HasAlphabetic(std::string_view token) {
  const auto* bytes = reinterpret_cast<const uint8_t*>(token.data());
  const auto length = static_cast<int32_t>(token.size());
  for (int32_t i = 0; i < length;) {
    UChar32 c;
    U8_NEXT(bytes, i, length, c);
    if (c >= 0 && u_isalpha(c)) return true;
  }
  return false;
}

}  // namespace dialometer
