#include "lsakit/corpusio.hpp"

#include <unicode/normalizer2.h>
#include <unicode/uchar.h>
#include <unicode/unistr.h>

#include "lsakit/errors.hpp"

namespace lsakit::corpusio {
namespace {

icu::UnicodeString fold_nfc(std::string_view text) {
  icu::UnicodeString s =
      icu::UnicodeString::fromUTF8(icu::StringPiece(text.data(), static_cast<int32_t>(text.size())));
  s.foldCase(U_FOLD_CASE_DEFAULT);
  UErrorCode status = U_ZERO_ERROR;
  const icu::Normalizer2* nfc = icu::Normalizer2::getNFCInstance(status);
  if (U_FAILURE(status)) throw Error("ICU NFC normalizer unavailable");
  icu::UnicodeString out = nfc->normalize(s, status);
  if (U_FAILURE(status)) throw InputError("text is not valid Unicode");
  return out;
}

bool is_word_char(UChar32 c) {
  if (u_isalnum(c)) return true;
  switch (u_charType(c)) {
    case U_NON_SPACING_MARK:
    case U_COMBINING_SPACING_MARK:
    case U_ENCLOSING_MARK:
      return true;
    default:
      return false;
  }
}

bool is_apostrophe(UChar32 c) { return c == 0x27 || c == 0x2019 || c == 0x02BC; }
bool is_hyphen(UChar32 c) { return c == 0x2D || c == 0x2010 || c == 0x2011; }
bool is_terminal(UChar32 c) { return c == '.' || c == '!' || c == '?' || c == 0x2026; }

}  // namespace

std::string normalize(std::string_view text) {
  std::string out;
  fold_nfc(text).toUTF8String(out);
  return out;
}

Tokenized tokenize(std::string_view text, const TokenizePolicy& policy) {
  const icu::UnicodeString s = fold_nfc(text);

  std::vector<UChar32> cps;
  cps.reserve(static_cast<std::size_t>(s.length()));
  for (int32_t i = 0; i < s.length();) {
    UChar32 c = s.char32At(i);
    cps.push_back(c);
    i += U16_LENGTH(c);
  }

  Tokenized result;
  icu::UnicodeString current;
  std::size_t in_sentence = 0;

  auto flush_token = [&] {
    if (current.isEmpty()) return;
    std::string tok;
    current.toUTF8String(tok);
    result.tokens.push_back(std::move(tok));
    current.remove();
    ++in_sentence;
  };
  auto flush_sentence = [&] {
    flush_token();
    if (in_sentence > 0) result.sentence_lengths.push_back(in_sentence);
    in_sentence = 0;
  };

  const std::size_t n = cps.size();
  for (std::size_t i = 0; i < n; ++i) {
    const UChar32 c = cps[i];
    const bool prev_word = i > 0 && is_word_char(cps[i - 1]);
    const bool next_word = i + 1 < n && is_word_char(cps[i + 1]);

    if (is_word_char(c)) {
      current.append(c);
    } else if (is_apostrophe(c) && prev_word && next_word) {
      if (policy.apostrophes == MarkPolicy::keep) {
        current.append(static_cast<UChar32>('\''));
      } else {
        flush_token();
      }
    } else if (is_hyphen(c) && prev_word && next_word) {
      if (policy.hyphens == MarkPolicy::keep) {
        current.append(static_cast<UChar32>('-'));
      } else {
        flush_token();
      }
    } else if ((c == '.' || c == ',') && i > 0 && u_isdigit(cps[i - 1]) && i + 1 < n &&
               u_isdigit(cps[i + 1])) {
      // decimal separator inside a number
      current.append(c);
    } else if (is_terminal(c)) {
      flush_sentence();
    } else {
      flush_token();
    }
  }
  flush_sentence();
  return result;
}

}  // namespace lsakit::corpusio
