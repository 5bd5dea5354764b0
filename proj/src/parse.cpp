#include <cctype>
#include <fstream>
#include <regex>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "altsum/errors.hpp"
#include "altsum/realnum.hpp"

namespace altsum {

namespace {

Int int_from(const std::string& s) { return Int(s); }

AlphaSource parse_quotient_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw ParseError("alpha spec \"@path\": cannot open quotient file '" + path + "'");
    std::vector<Int> tokens;
    std::string line;
    while (std::getline(in, line)) {
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::string tok;
        while (ls >> tok) {
            try {
                tokens.push_back(int_from(tok));
            } catch (const std::exception&) {
                throw ParseError("alpha spec \"@path\": quotient file token '" + tok +
                                 "' is not an integer");
            }
        }
    }
    if (tokens.empty())
        throw ParseError("alpha spec \"@path\": quotient file holds no tokens (first token is a_0)");
    Int a0 = tokens.front();
    std::vector<Int> tail(tokens.begin() + 1, tokens.end());
    try {
        return AlphaSource::rule(QuotientRule::explicit_list(std::move(a0), std::move(tail)));
    } catch (const std::invalid_argument& e) {
        throw ParseError(std::string("alpha spec \"@path\": ") + e.what());
    }
}

AlphaSource parse_bracket(const std::string& body) {
    static const std::regex shape(R"(^(-?\d+);(.+)$)");
    std::smatch m;
    if (!std::regex_match(body, m, shape))
        throw ParseError("alpha spec \"[a0;...]\": expected an integer a0, then ';', then a tail");
    Int a0 = int_from(m[1].str());
    std::string tail = m[2].str();
    static const std::regex ap(R"(^(-?\d+)\+(-?\d+)\*k$)");
    std::smatch am;
    try {
        if (std::regex_match(tail, am, ap)) {
            Int c = int_from(am[1].str());
            Int d = int_from(am[2].str());
            if (d == 0) return AlphaSource::rule(QuotientRule::constant(std::move(a0), std::move(c)));
            return AlphaSource::rule(QuotientRule::arithmetic(std::move(a0), std::move(c), std::move(d)));
        }
        static const std::regex term(R"(^-?\d+$)");
        std::vector<Int> terms;
        std::size_t start = 0;
        while (start <= tail.size()) {
            std::size_t comma = tail.find(',', start);
            std::string piece = tail.substr(start, comma == std::string::npos ? std::string::npos
                                                                              : comma - start);
            if (!std::regex_match(piece, term))
                throw ParseError("alpha spec \"[a0;a1,a2,...]\": tail term '" + piece +
                                 "' is not an integer");
            terms.push_back(int_from(piece));
            if (comma == std::string::npos) break;
            start = comma + 1;
        }
        return AlphaSource::rule(QuotientRule::explicit_list(std::move(a0), std::move(terms)));
    } catch (const std::invalid_argument& e) {
        throw ParseError(std::string("alpha spec \"[a0;...]\": ") + e.what());
    }
}

}  // namespace

AlphaSource parse_alpha(const std::string& text) {
    // The file form keeps its path verbatim (bar outer whitespace); everything
    // else is insensitive to embedded spaces.
    std::string t = text;
    auto first = t.find_first_not_of(" \t\r\n");
    if (first == std::string::npos) throw ParseError("alpha spec: empty string");
    auto last = t.find_last_not_of(" \t\r\n");
    t = t.substr(first, last - first + 1);
    if (t[0] == '@') {
        std::string path = t.substr(1);
        if (path.empty()) throw ParseError("alpha spec \"@path\": missing file path");
        return parse_quotient_file(path);
    }
    std::string s;
    s.reserve(t.size());
    for (char ch : t)
        if (!std::isspace(static_cast<unsigned char>(ch))) s.push_back(ch);

    std::smatch m;

    static const std::regex sqrt_form(R"(^sqrt\((-?\d+)\)$)");
    if (std::regex_match(s, m, sqrt_form)) {
        Int d = int_from(m[1].str());
        if (d < 0) throw ParseError("alpha spec \"sqrt(D)\": D must be a nonnegative integer");
        return AlphaSource::surd(0, d, 1);
    }

    static const std::regex surd_form(R"(^\((-?\d+)\+sqrt\((-?\d+)\)\)/(-?\d+)$)");
    if (std::regex_match(s, m, surd_form)) {
        Int p = int_from(m[1].str());
        Int d = int_from(m[2].str());
        Int q = int_from(m[3].str());
        if (d < 0) throw ParseError("alpha spec \"(P+sqrt(D))/Q\": D must be a nonnegative integer");
        if (q == 0) throw ParseError("alpha spec \"(P+sqrt(D))/Q\": Q must be a nonzero integer");
        return AlphaSource::surd(p, d, q);
    }

    if (!s.empty() && s.front() == '[') {
        if (s.back() != ']')
            throw ParseError("alpha spec \"[a0;...]\": missing closing ']'");
        return parse_bracket(s.substr(1, s.size() - 2));
    }

    static const std::regex frac_form(R"(^(-?\d+)/(-?\d+)$)");
    if (std::regex_match(s, m, frac_form)) {
        Int p = int_from(m[1].str());
        Int q = int_from(m[2].str());
        if (q == 0) throw ParseError("alpha spec \"p/q\": q must be a nonzero integer");
        return AlphaSource::rational(p, q);
    }

    static const std::regex int_form(R"(^-?\d+$)");
    if (std::regex_match(s, m, int_form)) return AlphaSource::rational(int_from(s), 1);

    throw ParseError(
        "alpha spec: unrecognized form; expected \"sqrt(D)\", \"(P+sqrt(D))/Q\", \"p/q\", an "
        "integer, \"[a0;a1,a2,...]\", \"[a0;c+d*k]\", or \"@path\"");
}

}  // namespace altsum
