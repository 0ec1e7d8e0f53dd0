#include "qqinv/qfield.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>
#include <utility>

namespace qqinv {

// ---------------------------------------------------------------- Poly

Poly::Poly(std::vector<mpz_class> coeffs) : c_(std::move(coeffs)) { trim(); }

Poly Poly::constant(const mpz_class& c) {
    Poly p;
    if (c != 0) p.c_.push_back(c);
    return p;
}

Poly Poly::monomial(const mpz_class& c, int degree) {
    Poly p;
    if (c != 0) {
        p.c_.assign(static_cast<std::size_t>(degree) + 1, mpz_class(0));
        p.c_.back() = c;
    }
    return p;
}

void Poly::trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

int Poly::valuation() const {
    for (std::size_t k = 0; k < c_.size(); ++k)
        if (c_[k] != 0) return static_cast<int>(k);
    return 0;
}

Poly Poly::shifted_down(int k) const {
    if (k == 0 || is_zero()) return *this;
    Poly p;
    p.c_.assign(c_.begin() + k, c_.end());
    return p;
}

Poly Poly::shifted_up(int k) const {
    if (k == 0 || is_zero()) return *this;
    Poly p;
    p.c_.assign(static_cast<std::size_t>(k), mpz_class(0));
    p.c_.insert(p.c_.end(), c_.begin(), c_.end());
    return p;
}

mpz_class Poly::content() const {
    mpz_class g = 0;
    for (const auto& a : c_) {
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), a.get_mpz_t());
        if (g == 1) break;
    }
    return g;
}

Poly Poly::div_scalar(const mpz_class& d) const {
    Poly p;
    p.c_.reserve(c_.size());
    for (const auto& a : c_) {
        mpz_class r;
        mpz_divexact(r.get_mpz_t(), a.get_mpz_t(), d.get_mpz_t());
        p.c_.push_back(std::move(r));
    }
    return p;
}

Poly Poly::primitive_part() const {
    if (is_zero()) return *this;
    mpz_class g = content();
    return g == 1 ? *this : div_scalar(g);
}

Poly Poly::negated() const {
    Poly p = *this;
    for (auto& a : p.c_) a = -a;
    return p;
}

Poly operator+(const Poly& a, const Poly& b) {
    const Poly& lo = a.size() < b.size() ? a : b;
    const Poly& hi = a.size() < b.size() ? b : a;
    std::vector<mpz_class> c = hi.c_;
    for (std::size_t k = 0; k < lo.size(); ++k) c[k] += lo.c_[k];
    return Poly(std::move(c));
}

Poly operator-(const Poly& a, const Poly& b) { return a + b.negated(); }

Poly operator*(const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<mpz_class> c(a.size() + b.size() - 1, mpz_class(0));
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a.c_[i] == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
    }
    return Poly(std::move(c));
}

Poly Poly::div_exact(const Poly& a, const Poly& b) {
    if (b.is_zero()) throw DivisionByZero();
    if (a.is_zero()) return {};
    std::vector<mpz_class> rem = a.c_;
    const int db = b.degree();
    const int dq = a.degree() - db;
    if (dq < 0) throw std::logic_error("Poly::div_exact: divisor does not divide");
    std::vector<mpz_class> quo(static_cast<std::size_t>(dq) + 1, mpz_class(0));
    for (int k = dq; k >= 0; --k) {
        mpz_class& top = rem[static_cast<std::size_t>(k + db)];
        if (top == 0) continue;
        mpz_class t;
        mpz_divexact(t.get_mpz_t(), top.get_mpz_t(), b.lc().get_mpz_t());
        for (int j = 0; j <= db; ++j) rem[static_cast<std::size_t>(k + j)] -= t * b.c_[static_cast<std::size_t>(j)];
        quo[static_cast<std::size_t>(k)] = std::move(t);
    }
    return Poly(std::move(quo));
}

namespace {

// lc(b)^(deg a - deg b + 1) * a mod b
Poly pseudo_remainder(const Poly& a, const Poly& b) {
    std::vector<mpz_class> r = a.coeffs();
    const int db = b.degree();
    const mpz_class& lb = b.lc();
    int dr = a.degree();
    while (dr >= db && !r.empty()) {
        mpz_class top = r[static_cast<std::size_t>(dr)];
        for (auto& x : r) x *= lb;
        for (int j = 0; j <= db; ++j)
            r[static_cast<std::size_t>(dr - db + j)] -= top * b[static_cast<std::size_t>(j)];
        while (!r.empty() && r.back() == 0) r.pop_back();
        dr = static_cast<int>(r.size()) - 1;
    }
    return Poly(std::move(r));
}

Poly positive_primitive(const Poly& p) {
    Poly g = p.primitive_part();
    return g.lc() < 0 ? g.negated() : g;
}

}  // namespace

Poly Poly::gcd_primitive(const Poly& a0, const Poly& b0) {
    if (a0.is_zero()) return b0.is_zero() ? Poly::constant(1) : positive_primitive(b0);
    if (b0.is_zero()) return positive_primitive(a0);
    Poly a = a0.primitive_part();
    Poly b = b0.primitive_part();
    if (a.degree() < b.degree()) std::swap(a, b);
    while (!b.is_zero()) {
        if (b.degree() == 0) return Poly::constant(1);
        Poly r = pseudo_remainder(a, b);
        a = std::move(b);
        b = r.primitive_part();
    }
    return positive_primitive(a);
}

std::string Poly::to_string() const {
    if (is_zero()) return "0";
    std::string out;
    bool first = true;
    for (int k = degree(); k >= 0; --k) {
        const mpz_class& a = c_[static_cast<std::size_t>(k)];
        if (a == 0) continue;
        if (a < 0) {
            out += '-';
        } else if (!first) {
            out += '+';
        }
        mpz_class mag = abs(a);
        out += mag.get_str();
        out += "*q^";
        out += std::to_string(k);
        first = false;
    }
    return out;
}

// ------------------------------------------------------------- QScalar

QScalar::QScalar(long v) : num_(Poly::constant(mpz_class(v))), den_(Poly::constant(1)) {}

QScalar QScalar::from_mpz(const mpz_class& v) {
    QScalar a;
    a.num_ = Poly::constant(v);
    return a;
}

QScalar QScalar::q_pow(int k) {
    QScalar a(1);
    a.shift_ = k;
    return a;
}

QScalar QScalar::xi() { return q() - q_pow(-1); }

QScalar QScalar::from_parts(int shift, Poly num, Poly den) {
    return normalize(shift, std::move(num), std::move(den));
}

QScalar QScalar::normalize(int shift, Poly num, Poly den) {
    if (den.is_zero()) throw DivisionByZero();
    QScalar out;
    if (num.is_zero()) return out;
    const int vn = num.valuation();
    const int vd = den.valuation();
    num = num.shifted_down(vn);
    den = den.shifted_down(vd);
    shift += vn - vd;
    if (num.degree() > 0 && den.degree() > 0) {
        Poly g = Poly::gcd_primitive(num, den);
        if (g.degree() > 0) {
            num = Poly::div_exact(num, g);
            den = Poly::div_exact(den, g);
        }
    }
    mpz_class cn = num.content();
    mpz_class cd = den.content();
    mpz_class c;
    mpz_gcd(c.get_mpz_t(), cn.get_mpz_t(), cd.get_mpz_t());
    if (c != 1) {
        num = num.div_scalar(c);
        den = den.div_scalar(c);
    }
    if (den.lc() < 0) {
        num = num.negated();
        den = den.negated();
    }
    out.shift_ = shift;
    out.num_ = std::move(num);
    out.den_ = std::move(den);
    return out;
}

Poly QScalar::numerator() const { return shift_ > 0 ? num_.shifted_up(shift_) : num_; }
Poly QScalar::denominator() const { return shift_ < 0 ? den_.shifted_up(-shift_) : den_; }

QScalar QScalar::operator-() const {
    QScalar a = *this;
    a.num_ = a.num_.negated();
    return a;
}

QScalar operator+(const QScalar& a, const QScalar& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    const int m = std::min(a.shift_, b.shift_);
    if (a.is_laurent() && b.is_laurent()) {
        Poly n = a.num_.shifted_up(a.shift_ - m) + b.num_.shifted_up(b.shift_ - m);
        QScalar out;
        if (n.is_zero()) return out;
        const int v = n.valuation();
        out.num_ = n.shifted_down(v);
        out.shift_ = m + v;
        return out;
    }
    if (a.den_ == b.den_) {
        Poly n = a.num_.shifted_up(a.shift_ - m) + b.num_.shifted_up(b.shift_ - m);
        return QScalar::normalize(m, std::move(n), a.den_);
    }
    Poly n = (a.num_ * b.den_).shifted_up(a.shift_ - m) + (b.num_ * a.den_).shifted_up(b.shift_ - m);
    return QScalar::normalize(m, std::move(n), a.den_ * b.den_);
}

QScalar operator-(const QScalar& a, const QScalar& b) { return a + (-b); }

QScalar operator*(const QScalar& a, const QScalar& b) {
    if (a.is_zero() || b.is_zero()) return {};
    if (a.is_laurent() && b.is_laurent()) {
        QScalar out;
        out.num_ = a.num_ * b.num_;
        out.shift_ = a.shift_ + b.shift_;
        return out;
    }
    return QScalar::normalize(a.shift_ + b.shift_, a.num_ * b.num_, a.den_ * b.den_);
}

QScalar QScalar::inverse() const {
    if (is_zero()) throw DivisionByZero();
    QScalar out;
    out.shift_ = -shift_;
    out.num_ = den_;
    out.den_ = num_;
    if (out.den_.lc() < 0) {
        out.num_ = out.num_.negated();
        out.den_ = out.den_.negated();
    }
    return out;
}

std::optional<QScalar> QScalar::try_inverse() const {
    if (is_zero()) return std::nullopt;
    return inverse();
}

QScalar operator/(const QScalar& a, const QScalar& b) { return a * b.inverse(); }

std::string QScalar::to_string() const {
    return "(" + numerator().to_string() + ")/(" + denominator().to_string() + ")";
}

std::ostream& operator<<(std::ostream& os, const QScalar& a) { return os << a.to_string(); }

namespace {

class PolyParser {
public:
    explicit PolyParser(std::string_view s) : s_(s) {}

    // Parses a sparse term list; negative exponents are allowed and reported
    // through the returned minimum exponent.
    std::pair<Poly, int> parse_poly() {
        std::vector<std::pair<mpz_class, long>> terms;
        skip_ws();
        if (peek() == '0' && !looks_like_term()) {
            ++pos_;
            return {Poly(), 0};
        }
        bool first = true;
        while (true) {
            skip_ws();
            int sign = 1;
            if (peek() == '+' || peek() == '-') {
                sign = peek() == '-' ? -1 : 1;
                ++pos_;
            } else if (!first) {
                break;
            }
            skip_ws();
            mpz_class c = read_int();
            skip_ws();
            expect('*');
            skip_ws();
            expect('q');
            skip_ws();
            expect('^');
            skip_ws();
            long e = read_signed_long();
            terms.emplace_back(sign * c, e);
            first = false;
            skip_ws();
            if (peek() != '+' && peek() != '-') break;
        }
        long lo = 0;
        for (const auto& t : terms) lo = std::min(lo, t.second);
        long hi = 0;
        for (const auto& t : terms) hi = std::max(hi, t.second - lo);
        std::vector<mpz_class> c(static_cast<std::size_t>(hi) + 1, mpz_class(0));
        for (const auto& t : terms) c[static_cast<std::size_t>(t.second - lo)] += t.first;
        return {Poly(std::move(c)), static_cast<int>(lo)};
    }

    void skip_ws() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    char peek() const { return pos_ < s_.size() ? s_[pos_] : '\0'; }
    void expect(char c) {
        if (peek() != c) fail(std::string("expected '") + c + "'");
        ++pos_;
    }
    bool at_end() {
        skip_ws();
        return pos_ >= s_.size();
    }
    [[noreturn]] void fail(const std::string& why) const {
        throw ParseError("QScalar parse error at offset " + std::to_string(pos_) + ": " + why);
    }

private:
    bool looks_like_term() const {
        std::size_t p = pos_;
        while (p < s_.size() && std::isdigit(static_cast<unsigned char>(s_[p]))) ++p;
        while (p < s_.size() && std::isspace(static_cast<unsigned char>(s_[p]))) ++p;
        return p < s_.size() && s_[p] == '*';
    }
    mpz_class read_int() {
        std::size_t start = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        if (start == pos_) fail("expected integer");
        return mpz_class(std::string(s_.substr(start, pos_ - start)));
    }
    long read_signed_long() {
        bool neg = false;
        if (peek() == '-') {
            neg = true;
            ++pos_;
        }
        mpz_class v = read_int();
        if (!v.fits_slong_p()) fail("exponent out of range");
        return neg ? -v.get_si() : v.get_si();
    }

    std::string_view s_;
    std::size_t pos_ = 0;
};

}  // namespace

QScalar QScalar::parse(std::string_view text) {
    PolyParser p(text);
    p.skip_ws();
    if (p.peek() != '(') {
        auto [n, lo] = p.parse_poly();
        if (!p.at_end()) p.fail("trailing characters");
        return normalize(lo, std::move(n), Poly::constant(1));
    }
    p.expect('(');
    auto [n, lo_n] = p.parse_poly();
    p.skip_ws();
    p.expect(')');
    p.skip_ws();
    p.expect('/');
    p.skip_ws();
    p.expect('(');
    auto [d, lo_d] = p.parse_poly();
    p.skip_ws();
    p.expect(')');
    if (!p.at_end()) p.fail("trailing characters");
    if (d.is_zero()) throw DivisionByZero();
    return normalize(lo_n - lo_d, std::move(n), std::move(d));
}

namespace {

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % p);
}

std::uint64_t powmod(std::uint64_t b, std::uint64_t e, std::uint64_t p) {
    std::uint64_t r = 1 % p;
    b %= p;
    while (e) {
        if (e & 1) r = mulmod(r, b, p);
        b = mulmod(b, b, p);
        e >>= 1;
    }
    return r;
}

std::uint64_t eval_poly_mod(const Poly& f, std::uint64_t p, std::uint64_t x) {
    std::uint64_t acc = 0;
    for (int k = f.degree(); k >= 0; --k) {
        mpz_class r;
        mpz_fdiv_r_ui(r.get_mpz_t(), f[static_cast<std::size_t>(k)].get_mpz_t(), p);
        acc = (mulmod(acc, x, p) + r.get_ui()) % p;
    }
    return acc;
}

}  // namespace

ModScalar QScalar::eval_mod(std::uint64_t p, std::uint64_t q0) const {
    q0 %= p;
    ModScalar n(eval_poly_mod(num_, p, q0), p);
    ModScalar d(eval_poly_mod(den_, p, q0), p);
    if (d.is_zero())
        throw BadEvaluationPoint("denominator vanishes at q0=" + std::to_string(q0) + " mod " + std::to_string(p));
    ModScalar qq(q0, p);
    if (shift_ < 0 && qq.is_zero()) throw BadEvaluationPoint("q0 = 0 with a negative q-power");
    return n / d * qq.pow(shift_);
}

// ----------------------------------------------------------- ModScalar

ModScalar ModScalar::from_signed(long long value, std::uint64_t p) {
    long long r = value % static_cast<long long>(p);
    if (r < 0) r += static_cast<long long>(p);
    return {static_cast<std::uint64_t>(r), p};
}

ModScalar operator+(const ModScalar& a, const ModScalar& b) {
    ModScalar r;
    r.p_ = a.p_ ? a.p_ : b.p_;
    std::uint64_t s = a.v_ + b.v_;
    if (r.p_ && s >= r.p_) s -= r.p_;
    r.v_ = s;
    return r;
}

ModScalar operator-(const ModScalar& a, const ModScalar& b) { return a + (-b); }

ModScalar operator*(const ModScalar& a, const ModScalar& b) {
    ModScalar r;
    r.p_ = a.p_ ? a.p_ : b.p_;
    r.v_ = r.p_ ? mulmod(a.v_, b.v_, r.p_) : 0;
    return r;
}

ModScalar ModScalar::inverse() const {
    if (v_ == 0) throw DivisionByZero();
    return {powmod(v_, p_ - 2, p_), p_};
}

ModScalar ModScalar::pow(long long e) const {
    if (e < 0) return inverse().pow(-e);
    return {powmod(v_, static_cast<std::uint64_t>(e), p_), p_};
}

ModScalar operator/(const ModScalar& a, const ModScalar& b) { return a * b.inverse(); }

std::ostream& operator<<(std::ostream& os, const ModScalar& a) { return os << a.value(); }

bool is_prime_u64(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t small : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        if (n % small == 0) return n == small;
    }
    std::uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    for (std::uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        std::uint64_t x = powmod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int r = 1; r < s; ++r) {
            x = mulmod(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

}  // namespace qqinv
