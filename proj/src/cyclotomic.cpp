#include "rtinv/cyclotomic.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <sstream>

#include "rtinv/arith.hpp"

namespace rtinv {

namespace {

using Poly = std::vector<int64_t>;

// Exact division of integer polynomials by a monic divisor.
Poly poly_div_exact(Poly num, const Poly& den) {
    const size_t dn = den.size() - 1;
    Poly q(num.size() - dn, 0);
    for (size_t i = num.size(); i-- > dn;) {
        int64_t c = num[i];
        q[i - dn] = c;
        if (c == 0) continue;
        for (size_t j = 0; j <= dn; ++j) num[i - dn + j] -= c * den[j];
    }
    for (size_t j = 0; j < dn; ++j)
        if (num[j] != 0) throw std::logic_error("cyclotomic polynomial division not exact");
    return q;
}

Poly cyclotomic_poly(int n) {
    static std::map<int, Poly> cache;
    if (auto it = cache.find(n); it != cache.end()) return it->second;
    Poly p(n + 1, 0);
    p[0] = -1;
    p[n] = 1;
    for (int64_t d : divisors(n))
        if (d < n) p = poly_div_exact(p, cyclotomic_poly(static_cast<int>(d)));
    cache.emplace(n, p);
    return p;
}

std::unique_ptr<CyclotomicField> build_field(int n) {
    auto f = std::make_unique<CyclotomicField>();
    f->order = n;
    f->poly = cyclotomic_poly(n);
    const int phi = static_cast<int>(f->poly.size()) - 1;
    f->degree = phi;
    const int count = std::max(n, 2 * phi - 1);
    f->zeta_power.assign(count, std::vector<int64_t>(phi, 0));
    for (int k = 0; k < count; ++k) {
        if (k < phi) {
            f->zeta_power[k][k] = 1;
            continue;
        }
        // z^k = z * z^{k-1}; the overflow coefficient wraps via z^phi = -sum poly[j] z^j.
        const auto& prev = f->zeta_power[k - 1];
        auto& cur = f->zeta_power[k];
        const int64_t top = prev[phi - 1];
        for (int j = phi - 1; j > 0; --j) cur[j] = prev[j - 1];
        cur[0] = 0;
        for (int j = 0; j < phi; ++j) cur[j] -= top * f->poly[j];
    }
    return f;
}

void require_same(const CycNum& a, const CycNum& b) {
    if (a.order() != b.order())
        throw OrderMismatch("cyclotomic order mismatch: " + std::to_string(a.order()) + " vs " +
                            std::to_string(b.order()));
}

}  // namespace

const CyclotomicField& CyclotomicField::get(int n) {
    if (n < 1) throw std::invalid_argument("cyclotomic order must be positive");
    static std::mutex mu;
    static std::map<int, std::unique_ptr<CyclotomicField>> fields;
    std::lock_guard<std::mutex> lock(mu);
    auto& slot = fields[n];
    if (!slot) slot = build_field(n);
    return *slot;
}

int common_order(int a, int b) { return static_cast<int>(lcm64(a, b)); }

CycNum::CycNum(int order) : order_(order), c_(CyclotomicField::get(order).degree) {}

CycNum CycNum::rational(int n, const Rational& q) {
    CycNum r(n);
    r.c_[0] = q;
    return r;
}

CycNum CycNum::zeta(int n, int64_t k) {
    const auto& f = CyclotomicField::get(n);
    CycNum r(n);
    const auto& row = f.zeta_power[mod_pos(k, n)];
    for (int j = 0; j < f.degree; ++j) r.c_[j] = static_cast<long>(row[j]);
    return r;
}

CycNum CycNum::from_coeffs(int n, std::vector<Rational> coeffs) {
    CycNum r(n);
    if (coeffs.size() != r.c_.size())
        throw std::invalid_argument("expected " + std::to_string(r.c_.size()) +
                                    " coefficients for order " + std::to_string(n));
    for (auto& c : coeffs) c.canonicalize();
    r.c_ = std::move(coeffs);
    return r;
}

bool CycNum::is_zero() const {
    return std::all_of(c_.begin(), c_.end(), [](const Rational& q) { return sgn(q) == 0; });
}

bool CycNum::is_rational() const {
    return std::all_of(c_.begin() + 1, c_.end(), [](const Rational& q) { return sgn(q) == 0; });
}

bool CycNum::is_one() const { return is_rational() && c_[0] == 1; }

bool CycNum::is_integral() const {
    return std::all_of(c_.begin(), c_.end(), [](const Rational& q) { return q.get_den() == 1; });
}

std::optional<Rational> CycNum::to_rational() const {
    if (!is_rational()) return std::nullopt;
    return c_[0];
}

CycNum& CycNum::operator+=(const CycNum& o) {
    require_same(*this, o);
    for (size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
    return *this;
}

CycNum& CycNum::operator-=(const CycNum& o) {
    require_same(*this, o);
    for (size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
    return *this;
}

CycNum& CycNum::operator*=(const Rational& q) {
    for (auto& c : c_) c *= q;
    return *this;
}

CycNum& CycNum::operator*=(const CycNum& o) { return *this = *this * o; }

CycNum operator*(const CycNum& a, const CycNum& b) {
    require_same(a, b);
    const auto& f = CyclotomicField::get(a.order_);
    const int phi = f.degree;
    std::vector<Rational> wide(2 * phi - 1);
    Rational t;
    for (int i = 0; i < phi; ++i) {
        if (sgn(a.c_[i]) == 0) continue;
        for (int j = 0; j < phi; ++j) {
            if (sgn(b.c_[j]) == 0) continue;
            mpq_mul(t.get_mpq_t(), a.c_[i].get_mpq_t(), b.c_[j].get_mpq_t());
            wide[i + j] += t;
        }
    }
    CycNum r(a.order_);
    for (int i = 0; i < phi; ++i) r.c_[i] = std::move(wide[i]);
    for (int k = phi; k < 2 * phi - 1; ++k) {
        if (sgn(wide[k]) == 0) continue;
        const auto& row = f.zeta_power[k];
        for (int j = 0; j < phi; ++j)
            if (row[j] != 0) r.c_[j] += wide[k] * static_cast<long>(row[j]);
    }
    return r;
}

CycNum CycNum::operator-() const {
    CycNum r = *this;
    for (auto& c : r.c_) c = -c;
    return r;
}

bool operator==(const CycNum& a, const CycNum& b) {
    if (a.order_ == b.order_) return a.c_ == b.c_;
    const int m = common_order(a.order_, b.order_);
    return a.embed(m).c_ == b.embed(m).c_;
}

CycNum CycNum::inverse() const {
    if (is_zero()) throw DivisionByZero("inverse of zero cyclotomic number");
    const int phi = static_cast<int>(c_.size());
    if (is_rational()) return rational(order_, 1 / c_[0]);
    // Column j of the multiplication matrix is this * z^j; solve M v = e_0.
    std::vector<std::vector<Rational>> m(phi, std::vector<Rational>(phi + 1));
    for (int j = 0; j < phi; ++j) {
        CycNum col = *this * zeta(order_, j);
        for (int i = 0; i < phi; ++i) m[i][j] = col.c_[i];
    }
    m[0][phi] = 1;
    for (int col = 0; col < phi; ++col) {
        int piv = col;
        while (piv < phi && sgn(m[piv][col]) == 0) ++piv;
        if (piv == phi) throw std::logic_error("singular multiplication matrix for nonzero element");
        std::swap(m[piv], m[col]);
        const Rational inv = 1 / m[col][col];
        for (int j = col; j <= phi; ++j) m[col][j] *= inv;
        for (int i = 0; i < phi; ++i) {
            if (i == col || sgn(m[i][col]) == 0) continue;
            const Rational factor = m[i][col];
            for (int j = col; j <= phi; ++j) m[i][j] -= factor * m[col][j];
        }
    }
    CycNum r(order_);
    for (int i = 0; i < phi; ++i) r.c_[i] = m[i][phi];
    return r;
}

CycNum CycNum::pow(int64_t e) const {
    CycNum base = e < 0 ? inverse() : *this;
    uint64_t k = e < 0 ? static_cast<uint64_t>(-(e + 1)) + 1 : static_cast<uint64_t>(e);
    CycNum r = one(order_);
    while (k) {
        if (k & 1) r = r * base;
        k >>= 1;
        if (k) base = base * base;
    }
    return r;
}

CycNum CycNum::embed(int m) const {
    if (m == order_) return *this;
    if (m % order_ != 0)
        throw OrderMismatch("cannot embed order " + std::to_string(order_) + " into " + std::to_string(m));
    const int step = m / order_;
    const auto& f = CyclotomicField::get(m);
    CycNum r(m);
    for (size_t i = 0; i < c_.size(); ++i) {
        if (sgn(c_[i]) == 0) continue;
        const auto& row = f.zeta_power[(static_cast<int64_t>(i) * step) % m];
        for (int j = 0; j < f.degree; ++j)
            if (row[j] != 0) r.c_[j] += c_[i] * static_cast<long>(row[j]);
    }
    return r;
}

CycNum CycNum::galois(int64_t k) const {
    if (std::gcd(mod_pos(k, order_), static_cast<int64_t>(order_)) != 1)
        throw std::invalid_argument("galois exponent must be coprime to the order");
    const auto& f = CyclotomicField::get(order_);
    CycNum r(order_);
    for (size_t i = 0; i < c_.size(); ++i) {
        if (sgn(c_[i]) == 0) continue;
        const auto& row = f.zeta_power[mod_pos(static_cast<int64_t>(i) * k, order_)];
        for (int j = 0; j < f.degree; ++j)
            if (row[j] != 0) r.c_[j] += c_[i] * static_cast<long>(row[j]);
    }
    return r;
}

std::complex<double> CycNum::approx() const {
    std::complex<double> s = 0;
    for (size_t k = 0; k < c_.size(); ++k) {
        if (sgn(c_[k]) == 0) continue;
        const double ang = 2.0 * std::numbers::pi * static_cast<double>(k) / order_;
        s += c_[k].get_d() * std::complex<double>(std::cos(ang), std::sin(ang));
    }
    return s;
}

std::string rational_token(const Rational& q) {
    if (q.get_den() == 1) return q.get_num().get_str();
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

Rational parse_rational(std::string_view s) {
    std::string t(s);
    t.erase(std::remove_if(t.begin(), t.end(), [](unsigned char ch) { return std::isspace(ch); }), t.end());
    if (t.empty()) throw ParseError("empty rational");
    const auto slash = t.find('/');
    auto valid_int = [](const std::string& x) {
        size_t i = (!x.empty() && (x[0] == '-' || x[0] == '+')) ? 1 : 0;
        if (i >= x.size()) return false;
        return std::all_of(x.begin() + i, x.end(), [](unsigned char ch) { return std::isdigit(ch); });
    };
    std::string num = slash == std::string::npos ? t : t.substr(0, slash);
    std::string den = slash == std::string::npos ? "1" : t.substr(slash + 1);
    if (!num.empty() && num[0] == '+') num.erase(0, 1);
    if (!valid_int(num) || !valid_int(den)) throw ParseError("malformed rational '" + t + "'");
    Rational q{BigInt(num), BigInt(den)};
    if (q.get_den() == 0) throw ParseError("zero denominator in '" + t + "'");
    q.canonicalize();
    return q;
}

std::string CycNum::token() const {
    std::string s = std::to_string(order_) + ":[";
    for (size_t i = 0; i < c_.size(); ++i) {
        if (i) s += ',';
        s += rational_token(c_[i]);
    }
    return s + "]";
}

CycNum CycNum::parse(std::string_view text) {
    const auto colon = text.find(':');
    const auto open = text.find('[');
    const auto close = text.rfind(']');
    if (colon == std::string_view::npos || open == std::string_view::npos || close == std::string_view::npos ||
        open < colon || close < open)
        throw ParseError("malformed cyclotomic token '" + std::string(text) + "'");
    int n = 0;
    try {
        size_t used = 0;
        std::string head(text.substr(0, colon));
        n = std::stoi(head, &used);
        if (used != head.size() || n < 1) throw ParseError("");
    } catch (const std::exception&) {
        throw ParseError("malformed order in '" + std::string(text) + "'");
    }
    std::vector<Rational> coeffs;
    std::string_view body = text.substr(open + 1, close - open - 1);
    size_t pos = 0;
    while (pos <= body.size()) {
        size_t comma = body.find(',', pos);
        if (comma == std::string_view::npos) comma = body.size();
        coeffs.push_back(parse_rational(body.substr(pos, comma - pos)));
        pos = comma + 1;
    }
    if (static_cast<int64_t>(coeffs.size()) != euler_phi(n))
        throw ParseError("token '" + std::string(text) + "' needs " + std::to_string(euler_phi(n)) +
                         " coefficients");
    return from_coeffs(n, std::move(coeffs));
}

std::string CycNum::pretty() const {
    std::string s;
    for (size_t k = 0; k < c_.size(); ++k) {
        const Rational& c = c_[k];
        if (sgn(c) == 0) continue;
        Rational mag = abs(c);
        if (s.empty())
            s += sgn(c) < 0 ? "-" : "";
        else
            s += sgn(c) < 0 ? " - " : " + ";
        const std::string z = k == 0   ? ""
                               : k == 1 ? "z" + std::to_string(order_)
                                        : "z" + std::to_string(order_) + "^" + std::to_string(k);
        if (z.empty())
            s += rational_token(mag);
        else if (mag == 1)
            s += z;
        else
            s += rational_token(mag) + "*" + z;
    }
    return s.empty() ? "0" : s;
}

CycNum cyc_mul(const CycNum& a, const CycNum& b) { return a * b; }

CycNum cyc_inv(const CycNum& a) { return a.inverse(); }

std::optional<int64_t> cyc_root_of_unity_order(const CycNum& a) {
    // Roots of unity are algebraic integers and Z[z_n] is the full ring of integers.
    if (a.is_zero() || !a.is_integral()) return std::nullopt;
    const int64_t n = a.order();
    const int64_t group = n % 2 == 0 ? n : 2 * n;
    if (!a.pow(group).is_one()) return std::nullopt;
    for (int64_t d : divisors(group))
        if (a.pow(d).is_one()) return d;
    return group;
}

}  // namespace rtinv
