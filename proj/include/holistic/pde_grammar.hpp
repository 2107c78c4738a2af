#pragma once

#include <cctype>
#include <stdexcept>
#include <string>
#include <vector>

#include "holistic/pde_spec.hpp"

namespace holistic {

struct PdeParseError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Mini-grammar for the CLI:
///   pde   := "ut" "=" term ("+"|"-" term)*
///   term  := factor ("*" factor)*           -- at most one u-factor, required
///   factor:= rational | "eps" | "u" "x"*
/// The number of trailing x's is the derivative order; an eps factor routes
/// the term to the first-order perturbation slot; rational literals are exact
/// ("3", "-1/2"). Examples: "ut = -eps*ux + uxx", "ut = uxx + eps*1/4*uxxxx".
inline PdeSpec parse_pde(const std::string& text) {
    std::string s;
    for (char c : text)
        if (!std::isspace((unsigned char)c)) s += c;

    auto fail = [&](const std::string& why) {
        throw PdeParseError("parse_pde: " + why + " in \"" + text + "\"");
    };

    if (s.rfind("ut=", 0) != 0) fail("expected the form \"ut = ...\"");
    s = s.substr(3);
    if (s.empty()) fail("empty right-hand side");

    // split into signed terms
    std::vector<std::string> terms;
    std::vector<int> signs;
    std::size_t pos = 0;
    while (pos < s.size()) {
        int sign = 1;
        while (pos < s.size() && (s[pos] == '+' || s[pos] == '-')) {
            if (s[pos] == '-') sign = -sign;
            ++pos;
        }
        std::size_t end = pos;
        while (end < s.size()) {
            // a sign right after '*' or '/' belongs to a rational literal
            if ((s[end] == '+' || s[end] == '-') && end > pos && s[end - 1] != '*' &&
                s[end - 1] != '/')
                break;
            ++end;
        }
        if (end == pos) fail("dangling sign");
        terms.push_back(s.substr(pos, end - pos));
        signs.push_back(sign);
        pos = end;
    }

    PdeSpec::DerivMap even_terms, eps_terms;
    for (std::size_t i = 0; i < terms.size(); ++i) {
        Rational coeff(signs[i]);
        bool has_eps = false;
        int order = -1;

        std::size_t start = 0;
        const std::string& t = terms[i];
        while (start < t.size()) {
            std::size_t stop = t.find('*', start);
            if (stop == std::string::npos) stop = t.size();
            const std::string f = t.substr(start, stop - start);
            if (f.empty()) fail("empty factor");
            if (f == "eps") {
                if (has_eps) fail("repeated eps factor (only first order in eps is supported)");
                has_eps = true;
            } else if (f[0] == 'u') {
                if (order >= 0) fail("repeated u factor");
                order = 0;
                for (std::size_t k = 1; k < f.size(); ++k) {
                    if (f[k] != 'x') fail("unrecognised factor \"" + f + "\"");
                    ++order;
                }
            } else {
                try {
                    coeff *= Rational::from_string(f);
                } catch (const std::exception&) {
                    fail("unrecognised factor \"" + f + "\"");
                }
            }
            start = stop + 1;
        }
        if (order < 0) fail("term without a u factor: \"" + t + "\"");

        if (has_eps) {
            eps_terms[order] += coeff;
        } else {
            if (order % 2 != 0)
                fail("odd-order term \"" + t + "\" needs an eps* prefix (u_t = A u + eps B u)");
            even_terms[order] += coeff;
        }
    }
    return PdeSpec::from_derivatives(std::move(even_terms), std::move(eps_terms));
}

}  // namespace holistic
