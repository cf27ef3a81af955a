#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstddef>
#include <ostream>
#include <string>
#include <string_view>
#include <type_traits>

#include "frobstab/errors.hpp"

namespace frobstab {

using BigInt = boost::multiprecision::cpp_int;

// Exact rational number. Always reduced, denominator always positive;
// the backing multiprecision rational restores canonical form after
// every operation. No floating point anywhere.
class Rational {
public:
    Rational() : v_(0) {}
    template <typename T, std::enable_if_t<std::is_integral_v<T> && !std::is_same_v<T, bool>, int> = 0>
    Rational(T n) : v_(static_cast<long long>(n)) {}
    Rational(const BigInt& n) : v_(n) {}
    Rational(const BigInt& num, const BigInt& den) {
        if (den == 0) throw InputError("rational: zero denominator");
        v_ = Backing(num) / Backing(den); // division restores canonical form
    }

    BigInt numerator() const { return boost::multiprecision::numerator(v_); }
    BigInt denominator() const { return boost::multiprecision::denominator(v_); }

    bool is_zero() const { return v_.is_zero(); }
    bool is_integer() const { return denominator() == 1; }
    int sign() const { return v_.sign(); }

    Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
    Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
    Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
    Rational& operator/=(const Rational& o) {
        if (o.is_zero()) throw InputError("rational: division by zero");
        v_ /= o.v_;
        return *this;
    }

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
    friend Rational operator-(const Rational& a) { Rational r; r.v_ = -a.v_; return r; }

    friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
    friend bool operator!=(const Rational& a, const Rational& b) { return a.v_ != b.v_; }
    friend bool operator<(const Rational& a, const Rational& b) { return a.v_ < b.v_; }
    friend bool operator<=(const Rational& a, const Rational& b) { return a.v_ <= b.v_; }
    friend bool operator>(const Rational& a, const Rational& b) { return a.v_ > b.v_; }
    friend bool operator>=(const Rational& a, const Rational& b) { return a.v_ >= b.v_; }

    // Serialized form: "num/den" in lowest terms, optional leading minus,
    // "0/1" for zero.
    std::string str() const { return numerator().str() + "/" + denominator().str(); }

    // Accepts "num/den" (den > 0 after sign normalization is not required
    // of the input: any nonzero den, reduced on construction) and plain
    // integers "n" meaning n/1.
    static Rational parse(std::string_view text) {
        const auto fail = [&]() -> Rational {
            throw InputError("rational: cannot parse '" + std::string(text) +
                             "', expected \"num/den\" or an integer string");
        };
        if (text.empty()) return fail();
        std::size_t pos = 0;
        if (text[pos] == '-') ++pos;
        std::size_t num_begin = pos;
        while (pos < text.size() && text[pos] >= '0' && text[pos] <= '9') ++pos;
        if (pos == num_begin) return fail();
        BigInt num(std::string(text.substr(0, pos)));
        if (pos == text.size()) return Rational(num, 1);
        if (text[pos] != '/') return fail();
        ++pos;
        std::size_t den_begin = pos;
        while (pos < text.size() && text[pos] >= '0' && text[pos] <= '9') ++pos;
        if (pos == den_begin || pos != text.size()) return fail();
        BigInt den(std::string(text.substr(den_begin)));
        if (den == 0) throw InputError("rational: zero denominator in '" + std::string(text) + "'");
        return Rational(num, den);
    }

    friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

private:
    using Backing = boost::multiprecision::cpp_rational;
    Backing v_;
};

inline Rational max0(const Rational& x) { return x.sign() > 0 ? x : Rational(0); }

} // namespace frobstab
