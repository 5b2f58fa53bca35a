#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace textsan {

// Canonical form shared by the lexicon, the corpus queries and the policy
// entries: ASCII-lowercased, trimmed, internal whitespace collapsed to
// single spaces.
std::string normalize(std::string_view text);

struct TokenSpan {
    std::size_t begin = 0;  // byte offsets into the source text
    std::size_t end = 0;
    std::string norm;       // lowercased token text

    std::size_t size() const { return end - begin; }
};

// A token is a maximal run of alphanumeric bytes; bytes >= 0x80 count as
// letters so multibyte UTF-8 words stay intact. Everything else separates.
std::vector<TokenSpan> tokenize(std::string_view text);

// Token strings of normalize(phrase); empty for all-separator input.
std::vector<std::string> phrase_tokens(std::string_view phrase);

bool is_blank(std::string_view line);

// 64-bit FNV-1a, hex-encoded. Stable across platforms; used to fingerprint
// input files in run metadata.
std::string fnv1a_hex(std::string_view bytes);

}  // namespace textsan
