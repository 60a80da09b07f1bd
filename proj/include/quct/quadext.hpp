#pragma once

/**
 * @file quadext.hpp
 * @brief Exact arithmetic in multiquadratic extensions of the rationals.
 *
 * A QuadExt value is a finite sum  sum_d c_d * sqrt(d)  over squarefree
 * positive integers d with nonzero rational coefficients c_d; the radicand
 * d = 1 carries the rational part. Since sqrt(a)*sqrt(b) = g*sqrt(ab/g^2)
 * for g = gcd(a,b), these sums are closed under ring operations and no
 * general radical simplification is ever needed.
 */

#include <gmpxx.h>

#include <cmath>
#include <cstdint>
#include <map>
#include <string>
#include <utility>

#include "quct/errors.hpp"
#include "quct/numtheory.hpp"

namespace quct {

using Int = mpz_class;
using Rat = mpq_class;

class QuadExt {
public:
    /// value and a rigorous absolute error bound of a float evaluation
    struct Approx {
        double value = 0.0;
        double bound = 0.0;
    };

    QuadExt() = default;
    QuadExt(const Rat& rational) { set_term(1, rational); }  // NOLINT: implicit by design
    QuadExt(const Int& integer) { set_term(1, Rat(integer)); }
    QuadExt(long integer) { set_term(1, Rat(integer)); }

    /// c * sqrt(d) for squarefree d >= 1. The caller guarantees squarefreeness.
    static QuadExt radical(const Int& d, const Rat& coeff) {
        QuadExt x;
        x.set_term(d, coeff);
        return x;
    }

    /// sqrt(p^s) for p prime: p^{s/2} when s is even, p^{(s-1)/2} * sqrt(p) otherwise.
    static QuadExt sqrt_prime_power(std::uint64_t p, unsigned s) {
        Int whole = 1;
        for (unsigned i = 0; i + 1 < s; i += 2) whole *= Int(static_cast<unsigned long>(p));
        if (s % 2 == 0) return QuadExt(whole);
        return radical(Int(static_cast<unsigned long>(p)), Rat(whole));
    }

    bool is_zero() const { return terms_.empty(); }
    bool is_rational() const {
        return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first == 1);
    }
    Rat rational_part() const {
        auto it = terms_.find(Int(1));
        return it == terms_.end() ? Rat(0) : it->second;
    }
    /// Exact integer value; throws NonIntegerResult otherwise.
    Int as_integer() const {
        if (!is_rational()) throw NonIntegerResult("value has irrational part: " + str());
        Rat r = rational_part();
        if (r.get_den() != 1) throw NonIntegerResult("value is not an integer: " + str());
        return r.get_num();
    }

    QuadExt operator-() const {
        QuadExt out;
        for (const auto& [d, c] : terms_) out.terms_.emplace(d, -c);
        return out;
    }

    QuadExt& operator+=(const QuadExt& rhs) {
        for (const auto& [d, c] : rhs.terms_) add_term(d, c);
        return *this;
    }
    QuadExt& operator-=(const QuadExt& rhs) {
        for (const auto& [d, c] : rhs.terms_) add_term(d, -c);
        return *this;
    }

    QuadExt& operator*=(const QuadExt& rhs) { return *this = *this * rhs; }

    friend QuadExt operator+(QuadExt a, const QuadExt& b) { return a += b; }
    friend QuadExt operator-(QuadExt a, const QuadExt& b) { return a -= b; }

    friend QuadExt operator*(const QuadExt& a, const QuadExt& b) {
        QuadExt out;
        for (const auto& [d1, c1] : a.terms_) {
            for (const auto& [d2, c2] : b.terms_) {
                Int g = gcd(d1, d2);
                Int d = (d1 / g) * (d2 / g);
                out.add_term(d, c1 * c2 * Rat(g));
            }
        }
        return out;
    }

    QuadExt& scale(const Rat& r) {
        if (r == 0) {
            terms_.clear();
            return *this;
        }
        for (auto& [d, c] : terms_) c *= r;
        return *this;
    }
    friend QuadExt operator*(QuadExt a, const Rat& r) { return a.scale(r); }

    QuadExt pow(unsigned k) const {
        QuadExt out(Rat(1));
        for (unsigned i = 0; i < k; ++i) out *= *this;
        return out;
    }

    bool operator==(const QuadExt& rhs) const { return terms_ == rhs.terms_; }
    bool operator!=(const QuadExt& rhs) const { return terms_ != rhs.terms_; }

    /// Structural (lexicographic) order; deterministic, used for map keys.
    bool operator<(const QuadExt& rhs) const {
        auto a = terms_.begin();
        auto b = rhs.terms_.begin();
        for (; a != terms_.end() && b != rhs.terms_.end(); ++a, ++b) {
            if (a->first != b->first) return a->first < b->first;
            if (a->second != b->second) return a->second < b->second;
        }
        return a == terms_.end() && b != rhs.terms_.end();
    }

    /// Double evaluation with a propagated absolute error bound.
    Approx approx() const {
        Approx out;
        double abs_sum = 0.0;
        for (const auto& [d, c] : terms_) {
            double term = c.get_d() * std::sqrt(d.get_d());
            out.value += term;
            abs_sum += std::fabs(term);
        }
        // get_d, sqrt, product and the final summation each contribute O(eps)
        // relative error per term.
        out.bound = abs_sum * static_cast<double>(terms_.size() + 4) * 2.3e-16;
        return out;
    }

    double approx_value() const { return approx().value; }

    /**
     * Certified sign in {-1, 0, +1}. Exact zero is structural (empty map);
     * single-term values are decided from the coefficient alone; otherwise
     * the float evaluation must clear its error bound.
     */
    int sign() const {
        if (terms_.empty()) return 0;
        if (terms_.size() == 1) return sgn(terms_.begin()->second);
        Approx a = approx();
        if (std::fabs(a.value) > a.bound) return a.value > 0 ? 1 : -1;
        throw PrecisionLoss("cannot certify sign of " + str());
    }

    QuadExt abs() const { return sign() < 0 ? -*this : *this; }

    /// sign(*this - rhs), exact.
    int compare(const QuadExt& rhs) const { return (*this - rhs).sign(); }

    /// "a/b + c/d*sqrt(5) + ...", radicands ascending; "0" for zero.
    std::string str() const {
        if (terms_.empty()) return "0";
        std::string out;
        bool first = true;
        for (const auto& [d, c] : terms_) {
            Rat coeff = c;
            if (first) {
                first = false;
            } else {
                out += sgn(coeff) < 0 ? " - " : " + ";
                coeff = ::abs(coeff);
            }
            if (d == 1) {
                out += coeff.get_str();
            } else {
                out += coeff.get_str() + "*sqrt(" + d.get_str() + ")";
            }
        }
        return out;
    }

    /// Radicand -> coefficient view, both rendered as decimal strings.
    const std::map<Int, Rat>& terms() const { return terms_; }

private:
    void set_term(const Int& d, const Rat& c) {
        if (c != 0) terms_[d] = c;
    }
    void add_term(const Int& d, const Rat& c) {
        auto [it, inserted] = terms_.emplace(d, c);
        if (!inserted) {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        } else if (c == 0) {
            terms_.erase(it);
        }
    }

    std::map<Int, Rat> terms_;
};

}  // namespace quct
