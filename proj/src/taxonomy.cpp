#include "textsan/taxonomy.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include "textsan/errors.hpp"
#include "textsan/text.hpp"

namespace textsan {

namespace {

std::vector<std::string> split_tabs(std::string_view line) {
    std::vector<std::string> fields;
    std::size_t start = 0;
    while (true) {
        std::size_t tab = line.find('\t', start);
        if (tab == std::string_view::npos) {
            fields.emplace_back(line.substr(start));
            break;
        }
        fields.emplace_back(line.substr(start, tab - start));
        start = tab + 1;
    }
    return fields;
}

[[noreturn]] void fail(std::string_view origin, std::size_t line_no, const std::string& msg) {
    std::ostringstream os;
    os << origin << ":" << line_no << ": " << msg;
    throw ParseError(os.str());
}

}  // namespace

Taxonomy Taxonomy::load(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open taxonomy file: " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse(buf.str(), path.string());
}

Taxonomy Taxonomy::parse(std::string_view content, std::string_view origin) {
    Taxonomy tax;
    std::set<std::string> concept_set;

    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= content.size()) {
        std::size_t eol = content.find('\n', pos);
        std::string_view line = content.substr(
            pos, eol == std::string_view::npos ? content.size() - pos : eol - pos);
        pos = eol == std::string_view::npos ? content.size() + 1 : eol + 1;
        ++line_no;

        if (is_blank(line) || line.front() == '#') continue;

        auto fields = split_tabs(line);
        if (fields.size() == 2) {
            std::string child = normalize(fields[0]);
            std::string parent = normalize(fields[1]);
            if (child.empty() || parent.empty()) fail(origin, line_no, "empty field in edge record");
            if (child == parent) fail(origin, line_no, "self-edge on concept '" + child + "'");
            concept_set.insert(child);
            concept_set.insert(parent);
            auto& ps = tax.parents_[child];
            if (std::find(ps.begin(), ps.end(), parent) == ps.end()) {
                ps.push_back(parent);
                tax.children_[parent].push_back(child);
            }
        } else if (fields.size() == 3 && normalize(fields[0]) == "syn") {
            std::string surface = normalize(fields[1]);
            std::string concept_name = normalize(fields[2]);
            if (surface.empty() || concept_name.empty()) fail(origin, line_no, "empty field in synonym record");
            auto it = tax.synonyms_.find(surface);
            if (it != tax.synonyms_.end() && it->second != concept_name) {
                fail(origin, line_no,
                     "ambiguous surface form '" + surface + "': maps to both '" +
                         it->second + "' and '" + concept_name + "'");
            }
            tax.synonyms_[surface] = concept_name;
        } else {
            fail(origin, line_no, "malformed record (expected child<TAB>parent or syn<TAB>surface<TAB>concept)");
        }
    }

    if (concept_set.empty()) {
        throw ParseError(std::string(origin) + ": taxonomy defines no concepts");
    }

    // Synonym targets must be concepts; a synonym surface that collides with
    // a concept name would make lookups ambiguous.
    for (const auto& [surface, concept_name] : tax.synonyms_) {
        if (!concept_set.count(concept_name)) {
            throw ParseError(std::string(origin) + ": synonym '" + surface +
                             "' references unknown concept '" + concept_name + "'");
        }
        if (concept_set.count(surface) && surface != concept_name) {
            throw ParseError(std::string(origin) + ": surface form '" + surface +
                             "' is a concept but mapped to '" + concept_name + "'");
        }
    }

    // Cycle check: iterative DFS over parent edges, reporting an offender.
    enum class Mark { White, Grey, Black };
    std::unordered_map<std::string, Mark> marks;
    for (const auto& c : concept_set) marks[c] = Mark::White;
    for (const auto& start : concept_set) {
        if (marks[start] != Mark::White) continue;
        std::vector<std::pair<std::string, std::size_t>> stack{{start, 0}};
        marks[start] = Mark::Grey;
        while (!stack.empty()) {
            auto& [node, next] = stack.back();
            const auto pit = tax.parents_.find(node);
            const auto& parents = pit == tax.parents_.end()
                                      ? std::vector<std::string>{}
                                      : pit->second;
            if (next >= parents.size()) {
                marks[node] = Mark::Black;
                stack.pop_back();
                continue;
            }
            const std::string& p = parents[next++];
            if (marks[p] == Mark::Grey) {
                throw ParseError(std::string(origin) + ": hypernym cycle through concept '" + p + "'");
            }
            if (marks[p] == Mark::White) {
                marks[p] = Mark::Grey;
                stack.emplace_back(p, 0);
            }
        }
    }

    std::vector<std::string> roots;
    for (const auto& c : concept_set) {
        if (!tax.parents_.count(c)) roots.push_back(c);
    }
    if (roots.size() > 1) {
        std::string list;
        for (const auto& r : roots) list += (list.empty() ? "" : ", ") + r;
        throw ParseError(std::string(origin) + ": multiple roots: " + list);
    }
    tax.root_ = roots.front();

    tax.concepts_.assign(concept_set.begin(), concept_set.end());
    tax.max_surface_tokens_ = 1;
    for (const auto& c : tax.concepts_) {
        tax.max_surface_tokens_ = std::max(tax.max_surface_tokens_, phrase_tokens(c).size());
    }
    for (const auto& [surface, _] : tax.synonyms_) {
        tax.max_surface_tokens_ = std::max(tax.max_surface_tokens_, phrase_tokens(surface).size());
    }
    return tax;
}

bool Taxonomy::contains(std::string_view concept_name) const {
    return std::binary_search(concepts_.begin(), concepts_.end(), concept_name);
}

const std::string& Taxonomy::require(std::string_view concept_name) const {
    auto it = std::lower_bound(concepts_.begin(), concepts_.end(), concept_name);
    if (it == concepts_.end() || *it != concept_name) {
        throw ConfigError("unknown concept: '" + std::string(concept_name) + "'");
    }
    return *it;
}

std::optional<std::string> Taxonomy::resolve(std::string_view surface) const {
    std::string norm = normalize(surface);
    if (contains(norm)) return norm;
    auto it = synonyms_.find(norm);
    if (it != synonyms_.end()) return it->second;
    return std::nullopt;
}

std::vector<std::string> Taxonomy::chain(std::string_view concept_name) const {
    std::string cur = require(concept_name);
    std::vector<std::string> steps;
    while (true) {
        auto it = parents_.find(cur);
        if (it == parents_.end()) break;  // reached the root
        cur = it->second.front();         // first-listed parent defines the chain
        steps.push_back(cur);
    }
    return steps;
}

bool Taxonomy::is_hypernym(std::string_view ancestor, std::string_view descendant) const {
    const std::string& target = require(ancestor);
    std::vector<std::string> frontier{require(descendant)};
    std::set<std::string> seen(frontier.begin(), frontier.end());
    while (!frontier.empty()) {
        std::string cur = std::move(frontier.back());
        frontier.pop_back();
        if (cur == target) return true;
        auto it = parents_.find(cur);
        if (it == parents_.end()) continue;
        for (const auto& p : it->second) {
            if (seen.insert(p).second) frontier.push_back(p);
        }
    }
    return false;
}

std::vector<std::string> Taxonomy::descendants(std::string_view concept_name) const {
    std::vector<std::string> out{require(concept_name)};
    std::set<std::string> seen(out.begin(), out.end());
    for (std::size_t i = 0; i < out.size(); ++i) {
        auto it = children_.find(out[i]);
        if (it == children_.end()) continue;
        for (const auto& ch : it->second) {
            if (seen.insert(ch).second) out.push_back(ch);
        }
    }
    std::sort(out.begin() + 1, out.end());
    return out;
}

std::string Taxonomy::serialize() const {
    std::ostringstream os;
    for (const auto& c : concepts_) {
        auto it = parents_.find(c);
        if (it == parents_.end()) continue;
        for (const auto& p : it->second) os << c << '\t' << p << '\n';
    }
    std::vector<std::pair<std::string, std::string>> syns(synonyms_.begin(), synonyms_.end());
    std::sort(syns.begin(), syns.end());
    for (const auto& [surface, concept_name] : syns) {
        os << "syn\t" << surface << '\t' << concept_name << '\n';
    }
    return os.str();
}

}  // namespace textsan
