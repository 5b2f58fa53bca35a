#include "textsan/textproc.hpp"

#include <algorithm>
#include <fstream>
#include <stdexcept>

#include "textsan/errors.hpp"
#include "textsan/text.hpp"

namespace textsan {

namespace {

std::vector<ContextSpan> spans_from_starts(const std::vector<std::size_t>& starts,
                                           std::size_t text_size) {
    std::vector<ContextSpan> out;
    for (std::size_t i = 0; i < starts.size(); ++i) {
        const std::size_t end = i + 1 < starts.size() ? starts[i + 1] : text_size;
        out.push_back(ContextSpan{starts[i], end});
    }
    return out;
}

}  // namespace

std::vector<ContextSpan> split_contexts(std::string_view text, ContextMode mode,
                                        std::size_t window_tokens) {
    if (text.empty()) return {};
    switch (mode) {
        case ContextMode::WholeDocument:
            return {ContextSpan{0, text.size()}};

        case ContextMode::Paragraph: {
            // New context at each line that follows a blank-line run.
            std::vector<std::size_t> starts{0};
            std::size_t line_start = 0;
            bool saw_blank = false;
            for (std::size_t i = 0; i <= text.size(); ++i) {
                if (i == text.size() || text[i] == '\n') {
                    const std::string_view line = text.substr(line_start, i - line_start);
                    if (is_blank(line)) {
                        saw_blank = true;
                    } else {
                        if (saw_blank && line_start > 0) starts.push_back(line_start);
                        saw_blank = false;
                    }
                    line_start = i + 1;
                }
            }
            return spans_from_starts(starts, text.size());
        }

        case ContextMode::Sentence: {
            std::vector<std::size_t> starts{0};
            std::size_t i = 0;
            while (i < text.size()) {
                if (text[i] == '.' || text[i] == '?' || text[i] == '!') {
                    std::size_t j = i;
                    while (j < text.size() && (text[j] == '.' || text[j] == '?' || text[j] == '!')) ++j;
                    std::size_t k = j;
                    while (k < text.size() && is_blank(text.substr(k, 1))) ++k;
                    if (k > j && k < text.size()) starts.push_back(k);
                    i = k > j ? k : j;
                } else {
                    ++i;
                }
            }
            return spans_from_starts(starts, text.size());
        }

        case ContextMode::Window: {
            if (window_tokens == 0) throw ConfigError("window mode requires k >= 1 tokens");
            const auto tokens = tokenize(text);
            if (tokens.empty()) return {};
            std::vector<std::size_t> starts{0};
            for (std::size_t t = window_tokens; t < tokens.size(); t += window_tokens) {
                starts.push_back(tokens[t].begin);
            }
            return spans_from_starts(starts, text.size());
        }
    }
    throw std::logic_error("unhandled context mode");
}

StopwordList StopwordList::load(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open stopword list: " + path.string());
    StopwordList list;
    std::string line;
    while (std::getline(in, line)) {
        if (is_blank(line) || line.front() == '#') continue;
        list.add(line);
    }
    return list;
}

std::vector<LexiconMatcher::Match> LexiconMatcher::match(std::span<const std::string> tokens) const {
    std::vector<Match> out;
    const std::size_t max_len = tax_.max_surface_tokens();
    std::size_t i = 0;
    while (i < tokens.size()) {
        bool matched = false;
        for (std::size_t len = std::min(max_len, tokens.size() - i); len >= 1; --len) {
            std::string surface = tokens[i];
            for (std::size_t k = 1; k < len; ++k) {
                surface += ' ';
                surface += tokens[i + k];
            }
            if (auto concept_name = tax_.resolve(surface)) {
                out.push_back(Match{i, len, std::move(surface), std::move(*concept_name)});
                i += len;
                matched = true;
                break;
            }
        }
        if (!matched) ++i;
    }
    return out;
}

std::vector<TermOccurrence> extract_terms(std::string_view text, const ContextSpan& context,
                                          const Taxonomy& tax, const StopwordList& stopwords,
                                          const ExtractionOptions& options) {
    const std::string_view slice = text.substr(context.begin, context.end - context.begin);
    auto tokens = tokenize(slice);
    std::vector<std::string> token_strings;
    token_strings.reserve(tokens.size());
    for (const auto& t : tokens) token_strings.push_back(t.norm);

    const LexiconMatcher matcher(tax);
    const auto matches = matcher.match(token_strings);

    std::vector<TermOccurrence> out;
    std::size_t next_match = 0;
    std::size_t i = 0;
    while (i < tokens.size()) {
        if (next_match < matches.size() && matches[next_match].first_token == i) {
            const auto& m = matches[next_match];
            out.push_back(TermOccurrence{
                m.surface, m.concept,
                context.begin + tokens[i].begin,
                context.begin + tokens[i + m.token_count - 1].end});
            i += m.token_count;
            ++next_match;
            continue;
        }
        const auto& t = tokens[i];
        if (!stopwords.contains(t.norm) && t.norm.size() >= options.min_oov_length) {
            out.push_back(TermOccurrence{t.norm, std::nullopt,
                                         context.begin + t.begin, context.begin + t.end});
        }
        ++i;
    }
    return out;
}

std::string apply_replacements(std::string_view text, std::vector<SpanReplacement> replacements) {
    std::sort(replacements.begin(), replacements.end(),
              [](const SpanReplacement& a, const SpanReplacement& b) { return a.begin < b.begin; });
    std::size_t cursor = 0;
    std::string out;
    out.reserve(text.size());
    for (const auto& rep : replacements) {
        if (rep.begin > rep.end || rep.end > text.size() || rep.begin < cursor) {
            throw std::logic_error("overlapping or out-of-range replacement spans");
        }
        out.append(text.substr(cursor, rep.begin - cursor));
        out.append(rep.text);
        cursor = rep.end;
    }
    out.append(text.substr(cursor));
    return out;
}

}  // namespace textsan
