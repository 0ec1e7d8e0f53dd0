#include "qqinv/words.hpp"

#include <cctype>
#include <cmath>
#include <stdexcept>

namespace qqinv {

GenSet::GenSet(int r_, int s_, int n_) : r(r_), s(s_), n(n_) {
    if (r < 0 || s < 0 || n < 1 || size() > 250) throw std::invalid_argument("GenSet: bad parameters");
}

char GenSet::t(int i, int a) const {
    if (i < 1 || i > r || a == 0 || a < -n || a > n) throw std::out_of_range("GenSet::t index");
    return static_cast<char>((i - 1) * 2 * n + pos(a));
}

char GenSet::tb(int al, int b) const {
    if (al < 1 || al > s || b == 0 || b < -n || b > n) throw std::out_of_range("GenSet::tb index");
    return static_cast<char>(num_t() + (al - 1) * 2 * n + pos(b));
}

int GenSet::row(char id) const {
    int k = static_cast<unsigned char>(id);
    if (k >= num_t()) k -= num_t();
    return k / (2 * n) + 1;
}

int GenSet::col(char id) const {
    int k = static_cast<unsigned char>(id);
    if (k >= num_t()) k -= num_t();
    return index_at(k % (2 * n));
}

std::string GenSet::name(char id) const {
    return std::string(is_t(id) ? "t[" : "tb[") + std::to_string(row(id)) + "," + std::to_string(col(id)) + "]";
}

std::pair<int, char> GenSet::fold_t(int i, int a) const {
    if (i < 0) return {1, t(-i, -a)};
    return {1, t(i, a)};
}

std::pair<int, char> GenSet::fold_tb(int al, int b) const {
    if (al < 0) {
        int e = qqinv::parity(al) + qqinv::parity(b);
        return {e % 2 ? -1 : 1, tb(-al, -b)};
    }
    return {1, tb(al, b)};
}

int GenSet::word_parity(const Word& w) const {
    int p = 0;
    for (char c : w) p ^= parity(c);
    return p;
}

std::pair<int, int> GenSet::bidegree(const Word& w) const {
    int dt = 0;
    for (char c : w) dt += is_t(c) ? 1 : 0;
    return {dt, static_cast<int>(w.size()) - dt};
}

std::string GenSet::word_name(const Word& w) const {
    if (w.empty()) return "1";
    std::string out;
    for (std::size_t k = 0; k < w.size(); ++k) {
        if (k) out += ' ';
        out += name(w[k]);
    }
    return out;
}

void elem_add(Elem& into, const Word& w, const QScalar& c) {
    if (c.is_zero()) return;
    auto it = into.find(w);
    if (it == into.end()) {
        into.emplace(w, c);
        return;
    }
    it->second += c;
    if (it->second.is_zero()) into.erase(it);
}

void elem_add(Elem& into, const Elem& x, const QScalar& c) {
    if (c.is_zero()) return;
    for (const auto& [w, v] : x) elem_add(into, w, c.is_one() ? v : v * c);
}

Elem elem_scaled(const Elem& x, const QScalar& c) {
    Elem out;
    if (c.is_zero()) return out;
    for (const auto& [w, v] : x) out.emplace(w, v * c);
    return out;
}

Elem elem_concat(const Elem& x, const Elem& y) {
    Elem out;
    for (const auto& [wx, cx] : x)
        for (const auto& [wy, cy] : y) elem_add(out, wx + wy, cx * cy);
    return out;
}

Elem elem_word(const Word& w, const QScalar& c) {
    Elem out;
    if (!c.is_zero()) out.emplace(w, c);
    return out;
}

int elem_parity(const GenSet& g, const Elem& x) {
    int p = -2;
    for (const auto& [w, c] : x) {
        int t = g.word_parity(w);
        if (p == -2) p = t;
        else if (p != t) return -1;
    }
    return p == -2 ? 0 : p;
}

std::string elem_to_string(const GenSet& g, const Elem& x) {
    if (x.empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [w, c] : x) {
        if (!first) out += " + ";
        first = false;
        out += c.to_string();
        out += " * ";
        out += g.word_name(w);
    }
    return out;
}

namespace {

void skip_ws(std::string_view s, std::size_t& i) {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
}

int parse_int(std::string_view s, std::size_t& i) {
    skip_ws(s, i);
    bool neg = false;
    if (i < s.size() && (s[i] == '-' || s[i] == '+')) neg = s[i++] == '-';
    skip_ws(s, i);
    if (i >= s.size() || !std::isdigit(static_cast<unsigned char>(s[i]))) throw ParseError("expected an integer index");
    int v = 0;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) v = v * 10 + (s[i++] - '0');
    return neg ? -v : v;
}

void expect(std::string_view s, std::size_t& i, char c) {
    skip_ws(s, i);
    if (i >= s.size() || s[i] != c) throw ParseError(std::string("expected '") + c + "'");
    ++i;
}

}  // namespace

Elem elem_parse(const GenSet& g, std::string_view text) {
    Elem out;
    std::size_t i = 0;
    skip_ws(text, i);
    if (text.substr(i) == "0") return out;
    while (true) {
        skip_ws(text, i);
        // coefficient: everything up to the top-level '*'
        std::size_t start = i;
        int depth = 0;
        while (i < text.size() && !(depth == 0 && text[i] == '*' && (i + 1 >= text.size() || text[i + 1] != 'q'))) {
            if (text[i] == '(') ++depth;
            if (text[i] == ')') --depth;
            ++i;
        }
        if (i >= text.size()) throw ParseError("term without '*' separator");
        QScalar c = QScalar::parse(text.substr(start, i - start));
        ++i;
        Word w;
        int sign = 1;
        while (true) {
            skip_ws(text, i);
            if (i >= text.size() || text[i] == '+') break;
            if (text[i] == '1') {
                ++i;
                continue;
            }
            bool bar = false;
            if (text.compare(i, 3, "tb[") == 0) {
                bar = true;
                i += 3;
            } else if (text.compare(i, 2, "t[") == 0) {
                i += 2;
            } else {
                throw ParseError("expected a generator t[i,a] or tb[al,b]");
            }
            int row = parse_int(text, i);
            expect(text, i, ',');
            int col = parse_int(text, i);
            expect(text, i, ']');
            if (row == 0 || col == 0 || std::abs(col) > g.n || std::abs(row) > (bar ? g.s : g.r))
                throw ParseError("generator index out of range");
            auto [sg, id] = bar ? g.fold_tb(row, col) : g.fold_t(row, col);
            sign *= sg;
            w.push_back(id);
        }
        elem_add(out, w, sign < 0 ? -c : c);
        if (i >= text.size()) break;
        ++i;  // '+'
    }
    return out;
}

double word_count(const GenSet& g, int dt, int db) {
    double c = 1;
    for (int k = 1; k <= db; ++k) c = c * (dt + k) / k;
    return c * std::pow(double(g.num_t()), dt) * std::pow(double(g.size() - g.num_t()), db);
}

std::vector<Word> enumerate_words(const GenSet& g, int dt, int db) {
    std::vector<Word> out;
    const int len = dt + db;
    if ((dt > 0 && g.num_t() == 0) || (db > 0 && g.size() == g.num_t())) return out;
    Word w(static_cast<std::size_t>(len), '\0');
    auto rec = [&](auto&& self, int k, int left_t, int left_b) -> void {
        if (k == len) {
            out.push_back(w);
            return;
        }
        if (left_t > 0)
            for (int id = 0; id < g.num_t(); ++id) {
                w[static_cast<std::size_t>(k)] = static_cast<char>(id);
                self(self, k + 1, left_t - 1, left_b);
            }
        if (left_b > 0)
            for (int id = g.num_t(); id < g.size(); ++id) {
                w[static_cast<std::size_t>(k)] = static_cast<char>(id);
                self(self, k + 1, left_t, left_b - 1);
            }
    };
    rec(rec, 0, dt, db);
    return out;
}

}  // namespace qqinv
