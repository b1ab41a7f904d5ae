#include "qtrade/gf.hpp"

#include <algorithm>
#include <sstream>

namespace qtrade {

bool is_prime(unsigned n) {
    if (n < 2) return false;
    for (unsigned d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

namespace {

using Poly = std::vector<unsigned>;  // coefficients mod p, low degree first

int degree_of(const Poly& f) {
    for (int i = static_cast<int>(f.size()) - 1; i >= 0; --i)
        if (f[static_cast<size_t>(i)] != 0) return i;
    return -1;
}

// Remainder of f by monic divisor g, both over GF(p).
Poly poly_mod(Poly f, const Poly& g, unsigned p) {
    int dg = degree_of(g);
    for (int df = degree_of(f); df >= dg && dg >= 0; df = degree_of(f)) {
        unsigned lead = f[static_cast<size_t>(df)];
        int shift = df - dg;
        for (int i = 0; i <= dg; ++i) {
            unsigned sub = (lead * g[static_cast<size_t>(i)]) % p;
            unsigned& c = f[static_cast<size_t>(i + shift)];
            c = (c + p - sub) % p;
        }
    }
    return f;
}

Poly poly_mul(const Poly& a, const Poly& b, unsigned p) {
    Poly out(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (size_t j = 0; j < b.size(); ++j)
            out[i + j] = (out[i + j] + a[i] * b[j]) % p;
    }
    return out;
}

Poly digits_of(Fe x, unsigned p, unsigned m) {
    Poly d(m, 0);
    for (unsigned i = 0; i < m; ++i) {
        d[i] = x % p;
        x /= p;
    }
    return d;
}

Fe index_of(const Poly& d, unsigned p, unsigned m) {
    Fe x = 0;
    for (unsigned i = m; i-- > 0;) x = x * p + (i < d.size() ? d[i] % p : 0);
    return x;
}

}  // namespace

bool is_irreducible(const std::vector<unsigned>& poly, unsigned p) {
    int deg = degree_of(poly);
    if (deg < 1) return false;
    if (deg == 1) return true;
    // every monic candidate divisor of degree d, as constant-first digits
    for (int d = 1; 2 * d <= deg; ++d) {
        unsigned long long count = 1;
        for (int i = 0; i < d; ++i) count *= p;
        for (unsigned long long code = 0; code < count; ++code) {
            Poly g(static_cast<size_t>(d) + 1, 0);
            unsigned long long c = code;
            for (int i = 0; i < d; ++i) {
                g[static_cast<size_t>(i)] = static_cast<unsigned>(c % p);
                c /= p;
            }
            g[static_cast<size_t>(d)] = 1;
            if (degree_of(poly_mod(poly, g, p)) < 0) return false;
        }
    }
    return true;
}

std::vector<unsigned> FieldSpec::default_modulus(unsigned p, unsigned m) {
    if (!is_prime(p)) throw InadmissibleParams("field characteristic must be prime");
    if (m == 0) throw InadmissibleParams("extension degree must be positive");
    if (m == 1) return {0, 1};  // placeholder x; unused for prime fields
    unsigned long long count = 1;
    for (unsigned i = 0; i < m; ++i) count *= p;
    for (unsigned long long code = 0; code < count; ++code) {
        Poly f(m + 1, 0);
        unsigned long long c = code;
        for (unsigned i = 0; i < m; ++i) {
            f[i] = static_cast<unsigned>(c % p);
            c /= p;
        }
        f[m] = 1;
        if (is_irreducible(f, p)) return f;
    }
    throw InadmissibleParams("no irreducible modulus found");  // unreachable
}

FieldSpec::FieldSpec(unsigned p, unsigned m, std::vector<unsigned> modulus)
    : p_(p), m_(m), modulus_(std::move(modulus)) {
    unsigned long long q = 1;
    for (unsigned i = 0; i < m; ++i) q *= p;
    q_ = static_cast<unsigned>(q);

    if (q_ <= kTableLimit) {
        add_tab_.resize(static_cast<size_t>(q_) * q_);
        mul_tab_.resize(static_cast<size_t>(q_) * q_);
        inv_tab_.assign(q_, 0);
        neg_tab_.resize(q_);
        for (Fe a = 0; a < q_; ++a) {
            for (Fe b = 0; b < q_; ++b) {
                add_tab_[static_cast<size_t>(a) * q_ + b] = add_direct(a, b);
                mul_tab_[static_cast<size_t>(a) * q_ + b] = mul_direct(a, b);
            }
        }
        for (Fe a = 0; a < q_; ++a) {
            neg_tab_[a] = 0;
            for (Fe b = 0; b < q_; ++b) {
                if (add_tab_[static_cast<size_t>(a) * q_ + b] == 0) neg_tab_[a] = b;
                if (a != 0 && mul_tab_[static_cast<size_t>(a) * q_ + b] == 1)
                    inv_tab_[a] = b;
            }
        }
    }
}

FieldPtr FieldSpec::make(unsigned p, unsigned m, std::vector<unsigned> modulus,
                         unsigned max_order) {
    if (!is_prime(p)) throw InadmissibleParams("field characteristic must be prime");
    if (m == 0) throw InadmissibleParams("extension degree must be positive");
    unsigned long long q = 1;
    for (unsigned i = 0; i < m; ++i) {
        q *= p;
        if (q > max_order)
            throw OutOfRange("field order " + std::to_string(q) +
                             " exceeds configured cap " + std::to_string(max_order));
    }
    if (modulus.empty()) modulus = default_modulus(p, m);
    if (m >= 2) {
        if (modulus.size() != static_cast<size_t>(m) + 1 || modulus[m] != 1)
            throw InadmissibleParams("modulus must be monic of degree m");
        for (unsigned& c : modulus) c %= p;
        if (!is_irreducible(modulus, p))
            throw InadmissibleParams("modulus is reducible over GF(p)");
    } else {
        modulus = {0, 1};
    }
    return FieldPtr(new FieldSpec(p, m, std::move(modulus)));
}

FieldPtr FieldSpec::from_order(unsigned q, unsigned max_order) {
    if (q < 2) throw InadmissibleParams("field order must be at least 2");
    unsigned p = 2;
    while (q % p != 0) {
        ++p;
        if (p > q) throw InadmissibleParams("field order is not a prime power");
    }
    unsigned m = 0;
    unsigned rest = q;
    while (rest % p == 0) {
        rest /= p;
        ++m;
    }
    if (rest != 1)
        throw InadmissibleParams(std::to_string(q) + " is not a prime power");
    return make(p, m, {}, max_order);
}

void FieldSpec::check_element(Fe a) const {
    if (a >= q_)
        throw OutOfRange("element index " + std::to_string(a) +
                         " out of range for " + describe());
}

Fe FieldSpec::add_direct(Fe a, Fe b) const {
    if (m_ == 1) return (a + b) % p_;
    Poly da = digits_of(a, p_, m_), db = digits_of(b, p_, m_);
    for (unsigned i = 0; i < m_; ++i) da[i] = (da[i] + db[i]) % p_;
    return index_of(da, p_, m_);
}

Fe FieldSpec::mul_direct(Fe a, Fe b) const {
    if (m_ == 1) return static_cast<Fe>((static_cast<unsigned long long>(a) * b) % p_);
    Poly prod = poly_mul(digits_of(a, p_, m_), digits_of(b, p_, m_), p_);
    prod = poly_mod(std::move(prod), modulus_, p_);
    return index_of(prod, p_, m_);
}

Fe FieldSpec::add(Fe a, Fe b) const {
    if (!add_tab_.empty()) return add_tab_[static_cast<size_t>(a) * q_ + b];
    return add_direct(a, b);
}

Fe FieldSpec::neg(Fe a) const {
    if (!neg_tab_.empty()) return neg_tab_[a];
    if (m_ == 1) return (p_ - a % p_) % p_;
    Poly d = digits_of(a, p_, m_);
    for (unsigned i = 0; i < m_; ++i) d[i] = (p_ - d[i]) % p_;
    return index_of(d, p_, m_);
}

Fe FieldSpec::sub(Fe a, Fe b) const { return add(a, neg(b)); }

Fe FieldSpec::mul(Fe a, Fe b) const {
    if (!mul_tab_.empty()) return mul_tab_[static_cast<size_t>(a) * q_ + b];
    return mul_direct(a, b);
}

Fe FieldSpec::pow(Fe a, unsigned long long e) const {
    Fe out = 1;
    Fe base = a;
    while (e > 0) {
        if (e & 1) out = mul(out, base);
        base = mul(base, base);
        e >>= 1;
    }
    return out;
}

Fe FieldSpec::inv(Fe a) const {
    if (a == 0) throw ZeroInversion("inverse of zero in " + describe());
    if (!inv_tab_.empty()) return inv_tab_[a];
    return pow(a, static_cast<unsigned long long>(q_) - 2);
}

std::string FieldSpec::describe() const {
    std::ostringstream os;
    os << "GF(" << q_ << ")";
    if (m_ >= 2) {
        os << ", modulus ";
        bool first = true;
        for (unsigned i = m_ + 1; i-- > 0;) {
            unsigned c = modulus_[i];
            if (c == 0) continue;
            if (!first) os << "+";
            first = false;
            if (i == 0 || c != 1) os << c;
            if (i >= 1) {
                os << "x";
                if (i >= 2) os << "^" << i;
            }
        }
    }
    return os.str();
}

bool is_prime_power(unsigned n) {
    if (n < 2) return false;
    unsigned p = n;
    for (unsigned d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            p = d;
            break;
        }
    }
    while (n % p == 0) n /= p;
    return n == 1;
}

}  // namespace qtrade
