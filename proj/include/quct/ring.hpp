#pragma once

/**
 * @file ring.hpp
 * @brief Finite commutative rings as normalized products of explicit local rings.
 *
 * Three kinds of local rings are supported:
 *   - Z_{p^a}         (integers modulo a prime power),
 *   - GF(p^s)         (finite fields, built as F_p[X]/(f) for a deterministic
 *                      irreducible f),
 *   - F_p[X]/(X^k)    (truncated polynomial rings over a prime field).
 *
 * A ProductRing enumerates its elements with mixed-radix indices over the
 * factor list (factor 0 most significant), and each local ring enumerates its
 * elements with mixed-radix indices over its coefficient vector. Index 0 is
 * always the additive zero and index 1 the unity.
 */

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <string>
#include <tuple>
#include <vector>

#include "quct/errors.hpp"
#include "quct/numtheory.hpp"

namespace quct {

inline constexpr std::uint64_t kDefaultCap = 100000;

enum class LocalKind { ZmodPK = 0, GaloisField = 1, TruncatedPoly = 2 };

/// Parameters of one local factor: Z_{p^e}, GF(p^e) or F_p[X]/(X^e).
struct LocalRingSpec {
    LocalKind kind;
    std::uint64_t p;  // prime
    unsigned e;       // exponent (alpha, s or k depending on kind)

    std::uint64_t order() const { return checked_pow(p, e); }

    std::uint64_t ideal_order() const {
        return kind == LocalKind::GaloisField ? 1 : checked_pow(p, e - 1);
    }

    /// q = |R|/m, the residue field order.
    std::uint64_t residue_order() const {
        return kind == LocalKind::GaloisField ? checked_pow(p, e) : p;
    }

    /// Canonical token per the ring-spec grammar.
    std::string str() const {
        switch (kind) {
            case LocalKind::ZmodPK:
                return "Z" + std::to_string(order());
            case LocalKind::GaloisField:
                return "F" + std::to_string(order());
            case LocalKind::TruncatedPoly:
                return "F" + std::to_string(p) + "[x]/(x^" + std::to_string(e) + ")";
        }
        return {};
    }

    /// Sort key realizing the normalization order (q, |R|, kind).
    std::tuple<std::uint64_t, std::uint64_t, int> sort_key() const {
        return {residue_order(), order(), static_cast<int>(kind)};
    }

    bool operator==(const LocalRingSpec& rhs) const = default;
};

namespace detail {

/// Remainder of a by monic b over F_p. Coefficients little-endian (c[i] at X^i).
inline std::vector<std::uint64_t> poly_rem(std::vector<std::uint64_t> a,
                                           const std::vector<std::uint64_t>& b,
                                           std::uint64_t p) {
    const std::size_t db = b.size() - 1;  // b monic, degree db
    while (a.size() > db) {
        std::uint64_t lead = a.back();
        const std::size_t shift = a.size() - 1 - db;
        if (lead != 0) {
            for (std::size_t i = 0; i < db; ++i) {
                std::uint64_t s = (static_cast<unsigned __int128>(lead) * b[i]) % p;
                a[shift + i] = (a[shift + i] + p - s) % p;
            }
        }
        a.pop_back();
    }
    while (!a.empty() && a.back() == 0) a.pop_back();
    return a;
}

/// Irreducibility over F_p by trial division; f monic, little-endian, degree >= 1.
inline bool poly_irreducible(const std::vector<std::uint64_t>& f, std::uint64_t p) {
    const std::size_t deg = f.size() - 1;
    if (deg == 1) return true;
    std::vector<std::uint64_t> g;
    for (std::size_t d = 1; 2 * d <= deg; ++d) {
        const std::uint64_t count = checked_pow(p, static_cast<unsigned>(d));
        for (std::uint64_t j = 0; j < count; ++j) {
            g.assign(d + 1, 0);
            g[d] = 1;
            std::uint64_t t = j;
            for (std::size_t i = 0; i < d; ++i) {
                g[i] = t % p;
                t /= p;
            }
            if (poly_rem(f, g, p).empty()) return false;
        }
    }
    return true;
}

/**
 * The smallest monic irreducible of degree s over F_p, where candidates are
 * ordered lexicographically by coefficient tuple (constant term first).
 * Returned little-endian including the leading 1.
 */
inline std::vector<std::uint64_t> minimal_irreducible(std::uint64_t p, unsigned s) {
    const std::uint64_t count = checked_pow(p, s);
    std::vector<std::uint64_t> f(s + 1, 0);
    f[s] = 1;
    for (std::uint64_t j = 0; j < count; ++j) {
        std::uint64_t t = j;
        for (unsigned i = 0; i < s; ++i) {  // c_0 is the most significant digit of j
            f[s - 1 - i] = t % p;
            t /= p;
        }
        if (poly_irreducible(f, p)) return f;
    }
    // Unreachable: irreducibles of every degree exist over every F_p.
    throw Error("no irreducible polynomial found (unreachable)");
}

}  // namespace detail

/**
 * One finite local ring with explicit element arithmetic. Elements are
 * indices in [0, |R|): the residue itself for Z_{p^a}, otherwise the
 * mixed-radix encoding of the coefficient vector (constant term first).
 */
class LocalRing {
public:
    explicit LocalRing(const LocalRingSpec& spec) : spec_(spec), order_(spec.order()) {
        if (!is_prime(spec.p)) throw Error("local ring base " + std::to_string(spec.p) + " is not prime");
        if (spec.e < 1) throw Error("local ring exponent must be >= 1");
        if (order_ == 0) throw SizeCapExceeded("local ring order overflows");
        if (spec_.kind == LocalKind::GaloisField) {
            modulus_ = detail::minimal_irreducible(spec_.p, spec_.e);
        }
    }

    const LocalRingSpec& spec() const { return spec_; }
    std::uint64_t order() const { return order_; }
    std::uint64_t ideal_order() const { return spec_.ideal_order(); }
    std::uint64_t residue_order() const { return spec_.residue_order(); }

    std::uint64_t zero() const { return 0; }
    std::uint64_t one() const { return 1; }

    std::uint64_t add(std::uint64_t a, std::uint64_t b) const {
        check(a), check(b);
        if (spec_.kind == LocalKind::ZmodPK) return (a + b) % order_;
        std::uint64_t r = 0, stride = 1;
        for (unsigned i = 0; i < spec_.e; ++i) {
            r += ((a % spec_.p + b % spec_.p) % spec_.p) * stride;
            a /= spec_.p;
            b /= spec_.p;
            stride *= spec_.p;
        }
        return r;
    }

    std::uint64_t neg(std::uint64_t a) const {
        check(a);
        if (spec_.kind == LocalKind::ZmodPK) return a == 0 ? 0 : order_ - a;
        std::uint64_t r = 0, stride = 1;
        for (unsigned i = 0; i < spec_.e; ++i) {
            std::uint64_t d = a % spec_.p;
            r += (d == 0 ? 0 : spec_.p - d) * stride;
            a /= spec_.p;
            stride *= spec_.p;
        }
        return r;
    }

    std::uint64_t mul(std::uint64_t a, std::uint64_t b) const {
        check(a), check(b);
        if (spec_.kind == LocalKind::ZmodPK) {
            return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % order_);
        }
        std::vector<std::uint64_t> prod(2 * spec_.e - 1, 0);
        std::vector<std::uint64_t> da = digits(a), db = digits(b);
        for (unsigned i = 0; i < spec_.e; ++i) {
            if (da[i] == 0) continue;
            for (unsigned j = 0; j < spec_.e; ++j) {
                prod[i + j] = (prod[i + j] + da[i] * db[j]) % spec_.p;
            }
        }
        if (spec_.kind == LocalKind::GaloisField) {
            prod = detail::poly_rem(std::move(prod), modulus_, spec_.p);
        }
        std::uint64_t r = 0, stride = 1;
        for (unsigned i = 0; i < spec_.e; ++i) {
            if (i < prod.size()) r += prod[i] * stride;
            stride *= spec_.p;
        }
        return r;
    }

    /// Membership in the maximal ideal; units are exactly the complement.
    bool in_ideal(std::uint64_t a) const {
        check(a);
        switch (spec_.kind) {
            case LocalKind::ZmodPK:
            case LocalKind::TruncatedPoly:
                return a % spec_.p == 0;
            case LocalKind::GaloisField:
                return a == 0;
        }
        return false;
    }
    bool is_unit(std::uint64_t a) const { return !in_ideal(a); }

    /// Coefficient vector of an element, constant term first.
    std::vector<std::uint64_t> digits(std::uint64_t a) const {
        std::vector<std::uint64_t> d(spec_.e);
        for (unsigned i = 0; i < spec_.e; ++i) {
            d[i] = a % spec_.p;
            a /= spec_.p;
        }
        return d;
    }

    /// Cyclic orders of the additive-group coordinates of this factor.
    std::vector<std::uint64_t> coordinate_orders() const {
        if (spec_.kind == LocalKind::ZmodPK) return {order_};
        return std::vector<std::uint64_t>(spec_.e, spec_.p);
    }

    /// GaloisField only: the modulus f, little-endian including the leading 1.
    const std::vector<std::uint64_t>& modulus() const { return modulus_; }

    std::string modulus_str() const {
        if (spec_.kind == LocalKind::ZmodPK) return {};
        if (spec_.kind == LocalKind::TruncatedPoly) return "x^" + std::to_string(spec_.e);
        std::string out;
        for (unsigned i = spec_.e + 1; i-- > 0;) {
            std::uint64_t c = modulus_[i];
            if (c == 0) continue;
            if (!out.empty()) out += " + ";
            if (i == 0) {
                out += std::to_string(c);
            } else {
                if (c != 1) out += std::to_string(c) + "*";
                out += i == 1 ? "x" : "x^" + std::to_string(i);
            }
        }
        return out.empty() ? "0" : out;
    }

private:
    void check(std::uint64_t a) const {
        if (a >= order_) throw IndexOutOfRange("element index " + std::to_string(a) +
                                               " out of range in " + spec_.str());
    }

    LocalRingSpec spec_;
    std::uint64_t order_;
    std::vector<std::uint64_t> modulus_;  // GaloisField only
};

/// Normalized list of local factors plus its canonical rendering.
struct RingSpec {
    std::vector<LocalRingSpec> factors;

    std::string canonical() const {
        std::string out;
        for (std::size_t i = 0; i < factors.size(); ++i) {
            if (i) out += "*";
            out += factors[i].str();
        }
        return out;
    }

    std::uint64_t order() const {
        std::uint64_t n = 1;
        for (const auto& f : factors) {
            std::uint64_t o = f.order();
            if (o == 0 || n > UINT64_MAX / o) return 0;
            n *= o;
        }
        return n;
    }

    void normalize() {
        std::sort(factors.begin(), factors.end(),
                  [](const LocalRingSpec& a, const LocalRingSpec& b) { return a.sort_key() < b.sort_key(); });
    }

    bool operator==(const RingSpec& rhs) const = default;
};

namespace detail {

inline std::uint64_t parse_uint(const std::string& tok, std::size_t& pos) {
    if (pos >= tok.size() || !std::isdigit(static_cast<unsigned char>(tok[pos]))) {
        throw ParseError("expected a number in ring token '" + tok + "'");
    }
    std::uint64_t v = 0;
    while (pos < tok.size() && std::isdigit(static_cast<unsigned char>(tok[pos]))) {
        if (v > UINT64_MAX / 10) throw SizeCapExceeded("ring order too large in '" + tok + "'");
        v = v * 10 + static_cast<std::uint64_t>(tok[pos] - '0');
        ++pos;
    }
    return v;
}

}  // namespace detail

/**
 * Parses a ring-spec string into a normalized RingSpec.
 *
 * Grammar (whitespace ignored):
 *   ring  := local ("*" local)*
 *   local := "Z" uint | "F" uint | "F" uint "[x]/(x^" uint ")"
 *
 * Z-tokens are CRT-factored into Z_{p^a} local factors; factors are then
 * sorted by (residue order, order, kind), so parse -> canonical -> parse is
 * idempotent.
 */
inline RingSpec parse_ring_spec(const std::string& text, std::uint64_t cap = kDefaultCap) {
    std::string s;
    for (char c : text) {
        if (!std::isspace(static_cast<unsigned char>(c))) s += c;
    }
    if (s.empty()) throw ParseError("empty ring spec");

    RingSpec spec;
    std::size_t start = 0;
    while (start <= s.size()) {
        std::size_t star = s.find('*', start);
        std::string tok = s.substr(start, star == std::string::npos ? std::string::npos : star - start);
        if (tok.empty()) throw ParseError("empty factor in ring spec '" + text + "'");

        std::size_t pos = 1;
        if (tok[0] == 'Z') {
            std::uint64_t n = detail::parse_uint(tok, pos);
            if (pos != tok.size()) throw ParseError("trailing characters in '" + tok + "'");
            if (n < 2) throw ParseError("Z" + std::to_string(n) + " is not a ring with 1 != 0");
            if (n > cap) throw SizeCapExceeded(tok + " exceeds the size cap " + std::to_string(cap));
            for (const auto& [p, e] : factorize(n)) {
                spec.factors.push_back({LocalKind::ZmodPK, p, e});
            }
        } else if (tok[0] == 'F') {
            std::uint64_t q = detail::parse_uint(tok, pos);
            if (pos == tok.size()) {
                if (q > cap) throw SizeCapExceeded(tok + " exceeds the size cap " + std::to_string(cap));
                auto pe = prime_power(q);
                if (!pe) throw NotPrimePower("F" + std::to_string(q) + ": " + std::to_string(q) +
                                             " is not a prime power");
                spec.factors.push_back({LocalKind::GaloisField, pe->first, pe->second});
            } else {
                const std::string infix = "[x]/(x^";
                if (tok.compare(pos, infix.size(), infix) != 0) {
                    throw ParseError("bad token '" + tok + "'");
                }
                pos += infix.size();
                std::uint64_t k = detail::parse_uint(tok, pos);
                if (pos + 1 != tok.size() || tok[pos] != ')') throw ParseError("bad token '" + tok + "'");
                if (k < 1) throw ParseError("truncation exponent must be >= 1 in '" + tok + "'");
                if (!is_prime(q)) {
                    if (prime_power(q)) {
                        throw ParseError("base of a truncated polynomial ring must be prime, got " +
                                         std::to_string(q));
                    }
                    throw NotPrimePower("base " + std::to_string(q) + " is not prime");
                }
                std::uint64_t order = checked_pow(q, static_cast<unsigned>(k));
                if (order == 0 || order > cap) {
                    throw SizeCapExceeded(tok + " exceeds the size cap " + std::to_string(cap));
                }
                spec.factors.push_back({LocalKind::TruncatedPoly, q, static_cast<unsigned>(k)});
            }
        } else {
            throw ParseError("bad token '" + tok + "': expected Z<n> or F<q>");
        }

        if (star == std::string::npos) break;
        start = star + 1;
        if (start == s.size()) throw ParseError("trailing '*' in ring spec '" + text + "'");
    }

    std::uint64_t n = spec.order();
    if (n == 0 || n > cap) {
        throw SizeCapExceeded("ring order exceeds the size cap " + std::to_string(cap));
    }
    spec.normalize();
    return spec;
}

enum class RingClass { All1Mod4, One3Mod4, Unsupported };

inline std::string to_string(RingClass c) {
    switch (c) {
        case RingClass::All1Mod4: return "ALL_1MOD4";
        case RingClass::One3Mod4: return "ONE_3MOD4";
        case RingClass::Unsupported: return "UNSUPPORTED";
    }
    return {};
}

struct FactorProfile {
    std::uint64_t order;
    std::uint64_t ideal_order;
    std::uint64_t residue_order;
    unsigned residue_mod4;
};

struct ResidueProfile {
    std::vector<FactorProfile> factors;
    RingClass tag;
    int r0_index;  // index of the unique q = 3 (mod 4) factor, else -1
};

/// Additive-group coordinates: element index <-> tuple over cyclic components.
class AdditiveCoordinates {
public:
    const std::vector<std::uint64_t>& orders() const { return orders_; }

    std::vector<std::uint64_t> encode(std::uint64_t x) const {
        std::vector<std::uint64_t> out(orders_.size());
        for (std::size_t f = radices_.size(); f-- > 0;) {
            std::uint64_t local = x % radices_[f].local_order;
            x /= radices_[f].local_order;
            for (std::size_t i = 0; i < radices_[f].count; ++i) {
                out[radices_[f].offset + i] = local % orders_[radices_[f].offset + i];
                local /= orders_[radices_[f].offset + i];
            }
        }
        return out;
    }

    std::uint64_t decode(const std::vector<std::uint64_t>& coords) const {
        if (coords.size() != orders_.size()) {
            throw IndexOutOfRange("coordinate vector has wrong length");
        }
        std::uint64_t x = 0;
        for (const auto& r : radices_) {
            std::uint64_t local = 0, stride = 1;
            for (std::size_t i = 0; i < r.count; ++i) {
                local += coords[r.offset + i] * stride;
                stride *= orders_[r.offset + i];
            }
            x = x * r.local_order + local;
        }
        return x;
    }

private:
    friend class ProductRing;
    struct FactorRadix {
        std::uint64_t local_order;
        std::size_t offset;
        std::size_t count;
    };
    std::vector<std::uint64_t> orders_;
    std::vector<FactorRadix> radices_;
};

/**
 * A normalized direct product of local rings. Element indices are
 * mixed-radix over the factor list with factor 0 most significant, matching
 * the row-major vertex order of iterated tensor products.
 */
class ProductRing {
public:
    static ProductRing build(const RingSpec& spec, std::uint64_t cap = kDefaultCap) {
        std::uint64_t n = spec.order();
        if (n == 0 || n > cap) {
            throw SizeCapExceeded("ring order exceeds the size cap " + std::to_string(cap));
        }
        return ProductRing(spec);
    }

    static ProductRing build(const std::string& text, std::uint64_t cap = kDefaultCap) {
        return build(parse_ring_spec(text, cap), cap);
    }

    const RingSpec& spec() const { return spec_; }
    std::string canonical() const { return spec_.canonical(); }
    const std::vector<LocalRing>& factors() const { return factors_; }
    std::uint64_t order() const { return order_; }

    std::uint64_t zero() const { return 0; }
    std::uint64_t one() const { return one_; }

    std::vector<std::uint64_t> decompose(std::uint64_t x) const {
        check(x);
        std::vector<std::uint64_t> out(factors_.size());
        for (std::size_t i = factors_.size(); i-- > 0;) {
            out[i] = x % factors_[i].order();
            x /= factors_[i].order();
        }
        return out;
    }

    std::uint64_t compose(const std::vector<std::uint64_t>& parts) const {
        std::uint64_t x = 0;
        for (std::size_t i = 0; i < factors_.size(); ++i) x = x * factors_[i].order() + parts[i];
        return x;
    }

    std::uint64_t add(std::uint64_t x, std::uint64_t y) const { return zip(x, y, &LocalRing::add); }
    std::uint64_t mul(std::uint64_t x, std::uint64_t y) const { return zip(x, y, &LocalRing::mul); }
    std::uint64_t sub(std::uint64_t x, std::uint64_t y) const { return add(x, neg(y)); }

    std::uint64_t neg(std::uint64_t x) const {
        check(x);
        std::uint64_t out = 0;
        for (std::size_t i = 0; i < factors_.size(); ++i) {
            std::uint64_t stride = strides_[i];
            std::uint64_t part = (x / stride) % factors_[i].order();
            out += factors_[i].neg(part) * stride;
        }
        return out;
    }

    bool is_unit(std::uint64_t x) const {
        check(x);
        for (std::size_t i = 0; i < factors_.size(); ++i) {
            std::uint64_t part = (x / strides_[i]) % factors_[i].order();
            if (factors_[i].in_ideal(part)) return false;
        }
        return true;
    }

    /// All unit indices, ascending. Size equals prod(|R_i| - m_i).
    std::vector<std::uint64_t> units() const {
        std::vector<std::uint64_t> out;
        out.reserve(static_cast<std::size_t>(unit_count()));
        for (std::uint64_t x = 0; x < order_; ++x) {
            if (is_unit(x)) out.push_back(x);
        }
        return out;
    }

    std::uint64_t unit_count() const {
        std::uint64_t n = 1;
        for (const auto& f : factors_) n *= f.order() - f.ideal_order();
        return n;
    }

    ResidueProfile residue_profile() const {
        ResidueProfile out;
        out.r0_index = -1;
        int bad = 0;
        bool even = false;
        for (std::size_t i = 0; i < factors_.size(); ++i) {
            const auto& f = factors_[i];
            unsigned m4 = static_cast<unsigned>(f.residue_order() % 4);
            out.factors.push_back({f.order(), f.ideal_order(), f.residue_order(), m4});
            if (f.residue_order() % 2 == 0) even = true;
            if (m4 == 3) {
                ++bad;
                out.r0_index = static_cast<int>(i);
            }
        }
        if (even || bad >= 2) {
            out.tag = RingClass::Unsupported;
            out.r0_index = -1;
        } else {
            out.tag = bad == 1 ? RingClass::One3Mod4 : RingClass::All1Mod4;
        }
        return out;
    }

    AdditiveCoordinates additive_coordinates() const {
        AdditiveCoordinates ac;
        for (const auto& f : factors_) {
            AdditiveCoordinates::FactorRadix r;
            r.local_order = f.order();
            r.offset = ac.orders_.size();
            auto co = f.coordinate_orders();
            r.count = co.size();
            ac.orders_.insert(ac.orders_.end(), co.begin(), co.end());
            ac.radices_.push_back(r);
        }
        return ac;
    }

private:
    explicit ProductRing(RingSpec spec) : spec_(std::move(spec)) {
        for (const auto& fs : spec_.factors) factors_.emplace_back(fs);
        order_ = 1;
        for (const auto& f : factors_) order_ *= f.order();
        strides_.resize(factors_.size());
        std::uint64_t stride = 1;
        for (std::size_t i = factors_.size(); i-- > 0;) {
            strides_[i] = stride;
            stride *= factors_[i].order();
        }
        std::vector<std::uint64_t> ones(factors_.size(), 1);
        one_ = compose(ones);
    }

    void check(std::uint64_t x) const {
        if (x >= order_) {
            throw IndexOutOfRange("element index " + std::to_string(x) + " out of range in " + canonical());
        }
    }

    std::uint64_t zip(std::uint64_t x, std::uint64_t y,
                      std::uint64_t (LocalRing::*op)(std::uint64_t, std::uint64_t) const) const {
        check(x), check(y);
        std::uint64_t out = 0;
        for (std::size_t i = 0; i < factors_.size(); ++i) {
            std::uint64_t stride = strides_[i];
            std::uint64_t xa = (x / stride) % factors_[i].order();
            std::uint64_t ya = (y / stride) % factors_[i].order();
            out += (factors_[i].*op)(xa, ya) * stride;
        }
        return out;
    }

    RingSpec spec_;
    std::vector<LocalRing> factors_;
    std::vector<std::uint64_t> strides_;
    std::uint64_t order_ = 1;
    std::uint64_t one_ = 0;
};

}  // namespace quct
