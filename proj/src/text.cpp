#include "cforge/text.hpp"

#include <unicode/normalizer2.h>
#include <unicode/uchar.h>
#include <unicode/unistr.h>
#include <unicode/utf8.h>

#include <stdexcept>

namespace cforge::text {

namespace {

const icu::Normalizer2 &nfc_normalizer() {
    UErrorCode status = U_ZERO_ERROR;
    const icu::Normalizer2 *n = icu::Normalizer2::getNFCInstance(status);
    if (U_FAILURE(status) || n == nullptr) {
        throw std::runtime_error("ICU NFC normalizer unavailable");
    }
    return *n;
}

template <class Fn>
void for_each_code_point(std::string_view s, Fn &&fn) {
    const auto *bytes = reinterpret_cast<const uint8_t *>(s.data());
    const int32_t length = static_cast<int32_t>(s.size());
    int32_t i = 0;
    while (i < length) {
        const int32_t start = i;
        UChar32 c;
        U8_NEXT(bytes, i, length, c);
        fn(c, start, i);
    }
}

void append_utf8(std::string &out, UChar32 c) {
    uint8_t buf[U8_MAX_LENGTH];
    int32_t len = 0;
    UBool error = false;
    U8_APPEND(buf, len, U8_MAX_LENGTH, c, error);
    if (error) {
        out += "\xEF\xBF\xBD";
        return;
    }
    out.append(reinterpret_cast<const char *>(buf), static_cast<std::size_t>(len));
}

} // namespace

std::string nfc(std::string_view s) {
    const auto &normalizer = nfc_normalizer();
    UErrorCode status = U_ZERO_ERROR;
    icu::StringPiece piece(s.data(), static_cast<int32_t>(s.size()));
    if (normalizer.isNormalizedUTF8(piece, status) && U_SUCCESS(status)) {
        return std::string(s);
    }
    status = U_ZERO_ERROR;
    icu::UnicodeString normalized = normalizer.normalize(icu::UnicodeString::fromUTF8(piece), status);
    if (U_FAILURE(status)) {
        throw std::runtime_error("NFC normalization failed");
    }
    std::string out;
    normalized.toUTF8String(out);
    return out;
}

std::string case_fold(std::string_view s) {
    icu::UnicodeString u = icu::UnicodeString::fromUTF8(icu::StringPiece(s.data(), static_cast<int32_t>(s.size())));
    u.foldCase();
    std::string out;
    u.toUTF8String(out);
    return out;
}

std::string trim(std::string_view s) {
    int32_t first = -1;
    int32_t last_end = 0;
    for_each_code_point(s, [&](UChar32 c, int32_t start, int32_t end) {
        if (!u_isUWhiteSpace(c)) {
            if (first < 0) first = start;
            last_end = end;
        }
    });
    if (first < 0) return {};
    return std::string(s.substr(static_cast<std::size_t>(first), static_cast<std::size_t>(last_end - first)));
}

std::vector<std::string> split_tokens(std::string_view s) {
    const std::string normalized = nfc(s);
    std::vector<std::string> tokens;
    std::string current;
    for_each_code_point(normalized, [&](UChar32 c, int32_t start, int32_t end) {
        if (u_isUWhiteSpace(c)) {
            if (!current.empty()) tokens.push_back(std::move(current));
            current.clear();
        } else {
            current.append(normalized, static_cast<std::size_t>(start), static_cast<std::size_t>(end - start));
        }
    });
    if (!current.empty()) tokens.push_back(std::move(current));
    return tokens;
}

std::string normalize_spaces(std::string_view s) { return join(split_tokens(s), " "); }

bool has_line_break(std::string_view s) {
    bool found = false;
    for_each_code_point(s, [&](UChar32 c, int32_t, int32_t) {
        switch (c) {
        case 0x0A: case 0x0B: case 0x0C: case 0x0D: case 0x85: case 0x2028: case 0x2029:
            found = true;
            break;
        default:
            break;
        }
    });
    return found;
}

std::vector<std::string> code_points(std::string_view s) {
    std::vector<std::string> out;
    for_each_code_point(s, [&](UChar32 c, int32_t start, int32_t end) {
        if (c < 0) {
            std::string replacement;
            append_utf8(replacement, 0xFFFD);
            out.push_back(std::move(replacement));
        } else {
            out.emplace_back(s.substr(static_cast<std::size_t>(start), static_cast<std::size_t>(end - start)));
        }
    });
    return out;
}

std::string join(const std::vector<std::string> &parts, std::string_view sep) {
    std::string out;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (i > 0) out.append(sep);
        out.append(parts[i]);
    }
    return out;
}

} // namespace cforge::text
