#include "osn/normalize.h"

#include <stdexcept>

#include <unicode/normalizer2.h>
#include <unicode/uchar.h>
#include <unicode/unistr.h>

namespace osn {
namespace {

const icu::Normalizer2& instance(bool fold) {
  UErrorCode status = U_ZERO_ERROR;
  const icu::Normalizer2* n = fold ? icu::Normalizer2::getNFKCCasefoldInstance(status)
                                   : icu::Normalizer2::getNFKCInstance(status);
  if (U_FAILURE(status) || n == nullptr) {
    throw std::runtime_error(std::string("ICU normalizer unavailable: ") +
                             u_errorName(status));
  }
  return *n;
}

icu::UnicodeString collapse(const icu::UnicodeString& in) {
  icu::UnicodeString out;
  bool pending_space = false;
  for (int32_t i = 0; i < in.length();) {
    UChar32 c = in.char32At(i);
    i += U16_LENGTH(c);
    if (u_isUWhiteSpace(c)) {
      pending_space = !out.isEmpty();
      continue;
    }
    if (pending_space) out.append(static_cast<UChar>(0x20));
    pending_space = false;
    out.append(c);
  }
  return out;
}

}  // namespace

std::string normalize(std::string_view label, const NormalizationPolicy& policy) {
  icu::UnicodeString s = icu::UnicodeString::fromUTF8(
      icu::StringPiece(label.data(), static_cast<int32_t>(label.size())));
  if (policy.compatibility_normalize) {
    UErrorCode status = U_ZERO_ERROR;
    s = instance(policy.case_fold).normalize(s, status);
    if (U_FAILURE(status)) {
      throw std::runtime_error(std::string("normalization failed: ") +
                               u_errorName(status));
    }
  } else if (policy.case_fold) {
    s.foldCase();
  }
  if (policy.collapse_whitespace) s = collapse(s);
  std::string out;
  s.toUTF8String(out);
  return out;
}

}  // namespace osn
