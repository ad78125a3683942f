#include "drg/intersection_array.hpp"

#include <cctype>
#include <sstream>
#include <stdexcept>

namespace drg {

Rational parse_rational(const std::string& text) {
    std::string t;
    for (char ch : text)
        if (!std::isspace(static_cast<unsigned char>(ch))) t += ch;
    if (t.empty()) throw std::invalid_argument("empty number");
    Rational r;
    try {
        r = Rational(t, 10);
    } catch (const std::invalid_argument&) {
        throw std::invalid_argument("bad number '" + text + "'");
    }
    if (r.get_den() == 0) throw std::invalid_argument("zero denominator in '" + text + "'");
    r.canonicalize();
    return r;
}

bool IntersectionArray::shells_integral() const {
    for (const auto& s : shell)
        if (!is_integer(s)) return false;
    return true;
}

IntersectionArray make_array(std::vector<Rational> b, std::vector<Rational> c) {
    if (b.size() != c.size())
        throw std::invalid_argument("intersection array needs as many b as c entries");
    const int d = static_cast<int>(b.size());
    if (d < 3) throw std::invalid_argument("diameter must be at least 3");

    IntersectionArray ia;
    ia.d = d;
    ia.b = std::move(b);
    ia.c.assign(d + 1, 0);
    for (int i = 1; i <= d; ++i) ia.c[i] = c[i - 1];

    for (int i = 0; i < d; ++i)
        if (ia.b[i] <= 0) throw std::invalid_argument("b entries must be positive");
    for (int i = 1; i <= d; ++i)
        if (ia.c[i] <= 0) throw std::invalid_argument("c entries must be positive");
    if (ia.c[1] != 1) throw std::invalid_argument("c_1 must equal 1");

    const Rational k = ia.b[0];
    ia.a.assign(d + 1, 0);
    for (int i = 0; i <= d; ++i) {
        Rational bi = i < d ? ia.b[i] : Rational(0);
        ia.a[i] = k - bi - ia.c[i];
        if (ia.a[i] < 0)
            throw std::invalid_argument("a_" + std::to_string(i) +
                                        " is negative; entries exceed the valency");
    }

    ia.shell.assign(d + 1, 1);
    for (int i = 1; i <= d; ++i) ia.shell[i] = ia.shell[i - 1] * ia.b[i - 1] / ia.c[i];
    ia.n = 0;
    for (const auto& s : ia.shell) ia.n += s;
    return ia;
}

IntersectionArray parse_array(const std::string& text) {
    auto semi = text.find(';');
    if (semi == std::string::npos)
        throw std::invalid_argument("expected 'b0,...,b_{D-1};c1,...,cD'");
    auto split = [](const std::string& part) {
        std::vector<Rational> out;
        std::string tok;
        std::istringstream in(part);
        while (std::getline(in, tok, ',')) out.push_back(parse_rational(tok));
        if (!part.empty() && part.back() == ',')
            throw std::invalid_argument("trailing comma");
        return out;
    };
    return make_array(split(text.substr(0, semi)), split(text.substr(semi + 1)));
}

std::string format_array(const IntersectionArray& ia) {
    std::string s;
    for (int i = 0; i < ia.d; ++i) {
        if (i) s += ",";
        s += to_string(ia.b[i]);
    }
    s += ";";
    for (int i = 1; i <= ia.d; ++i) {
        if (i > 1) s += ",";
        s += to_string(ia.c[i]);
    }
    return s;
}

IntersectionNumbers intersection_numbers(const IntersectionArray& ia) {
    const int d = ia.d;
    IntersectionNumbers out;
    out.d = d;
    out.p.assign(static_cast<std::size_t>(d + 1) * (d + 1) * (d + 1), 0);

    // multiplication by the adjacency variable in the {v_h} basis, with the
    // degree-(D+1) overflow dropped (it vanishes in the algebra)
    auto mul_lambda = [&](const std::vector<Rational>& t) {
        std::vector<Rational> r(d + 1, 0);
        for (int g = 0; g <= d; ++g) {
            if (g < d) r[g] += ia.b[g] * t[g + 1];
            r[g] += ia.a[g] * t[g];
            if (g >= 1) r[g] += ia.c[g] * t[g - 1];
        }
        return r;
    };

    for (int i = 0; i <= d; ++i) {
        // expand v_i * v_j for j = 0..d by the three-term recurrence on j
        std::vector<Rational> prev;                 // v_i * v_{j-1}
        std::vector<Rational> cur(d + 1, 0);        // v_i * v_j
        cur[i] = 1;
        for (int j = 0; j <= d; ++j) {
            for (int h = 0; h <= d; ++h) out.at(h, i, j) = cur[h];
            if (j == d) break;
            auto next = mul_lambda(cur);
            for (int h = 0; h <= d; ++h) {
                next[h] -= ia.a[j] * cur[h];
                if (j >= 1) next[h] -= ia.b[j - 1] * prev[h];
                next[h] /= ia.c[j + 1];
            }
            prev = std::move(cur);
            cur = std::move(next);
        }
    }
    return out;
}

} // namespace drg
