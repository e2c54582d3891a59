#include "qnspace/qscalar.hpp"

#include <cctype>
#include <cmath>

namespace qns {

Rational parse_rational(std::string_view text) {
    auto fail = [&] { throw Error(Errc::bad_q_value, "not a number: '" + std::string(text) + "'"); };
    std::size_t pos = 0;
    bool negative = false;
    if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) {
        negative = text[pos] == '-';
        ++pos;
    }
    auto digits = [&](std::string& out) {
        std::size_t start = pos;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
            out += text[pos++];
        }
        return pos > start;
    };
    std::string whole;
    if (!digits(whole)) fail();
    Rational value{boost::multiprecision::cpp_int(whole)};
    if (pos < text.size() && text[pos] == '.') {
        ++pos;
        std::string frac;
        if (!digits(frac)) fail();
        boost::multiprecision::cpp_int den(1);
        for (std::size_t i = 0; i < frac.size(); ++i) den *= 10;
        value += Rational(boost::multiprecision::cpp_int(frac), den);
    } else if (pos < text.size() && text[pos] == '/') {
        ++pos;
        std::string den;
        if (!digits(den)) fail();
        boost::multiprecision::cpp_int d(den);
        if (d == 0) fail();
        value /= Rational(d);
    }
    if (pos != text.size()) fail();
    return negative ? -value : value;
}

bool QScalar::is_one() const {
    return terms_.size() == 1 && terms_.begin()->first == 0 && terms_.begin()->second == 1;
}

Rational QScalar::coeff(int exponent) const {
    auto it = terms_.find(exponent);
    return it == terms_.end() ? Rational(0) : it->second;
}

int QScalar::min_exponent() const {
    if (terms_.empty()) throw Error(Errc::not_invertible, "zero element has no exponents");
    return terms_.begin()->first;
}

int QScalar::max_exponent() const {
    if (terms_.empty()) throw Error(Errc::not_invertible, "zero element has no exponents");
    return terms_.rbegin()->first;
}

std::pair<int, Rational> QScalar::monomial() const {
    if (!is_monomial()) throw Error(Errc::not_invertible, "not a single-term element");
    return *terms_.begin();
}

void QScalar::add_term(int exponent, const Rational& c) {
    auto it = terms_.find(exponent);
    if (it == terms_.end()) {
        if (c != 0) terms_.emplace(exponent, c);
        return;
    }
    it->second += c;
    if (it->second == 0) terms_.erase(it);
}

QScalar QScalar::operator-() const {
    QScalar out;
    for (const auto& [k, c] : terms_) out.terms_.emplace(k, -c);
    return out;
}

QScalar& QScalar::operator+=(const QScalar& rhs) {
    for (const auto& [k, c] : rhs.terms_) add_term(k, c);
    return *this;
}

QScalar& QScalar::operator-=(const QScalar& rhs) {
    for (const auto& [k, c] : rhs.terms_) add_term(k, -c);
    return *this;
}

QScalar operator*(const QScalar& lhs, const QScalar& rhs) {
    QScalar out;
    for (const auto& [ka, ca] : lhs.terms_) {
        for (const auto& [kb, cb] : rhs.terms_) {
            out.add_term(ka + kb, ca * cb);
        }
    }
    return out;
}

QScalar& QScalar::operator*=(const QScalar& rhs) {
    *this = *this * rhs;
    return *this;
}

double QScalar::eval(double q0) const {
    if (q0 == 0.0 && !terms_.empty() && min_exponent() < 0) {
        throw Error(Errc::pole_at_zero, "coefficient has a pole at q=0");
    }
    double sum = 0.0;
    for (const auto& [k, c] : terms_) {
        if (q0 == 0.0) {
            if (k == 0) sum += to_double(c);
            continue;  // positive powers vanish
        }
        sum += to_double(c) * std::pow(q0, static_cast<double>(k));
    }
    return sum;
}

Rational QScalar::eval_exact(const Rational& q0) const {
    if (q0 == 0 && !terms_.empty() && min_exponent() < 0) {
        throw Error(Errc::pole_at_zero, "coefficient has a pole at q=0");
    }
    Rational sum(0);
    for (const auto& [k, c] : terms_) {
        if (q0 == 0) {
            if (k == 0) sum += c;
            continue;
        }
        sum += c * rational_pow(q0, k);
    }
    return sum;
}

QScalar QScalar::inverted() const {
    if (terms_.size() != 1) {
        throw Error(Errc::not_invertible,
                    terms_.empty() ? "zero is not invertible"
                                   : "multi-term Laurent polynomials are not invertible");
    }
    const auto& [k, c] = *terms_.begin();
    return QScalar::term(-k, Rational(1) / c);
}

QScalar scalar_ring_op(const QScalar& a, const QScalar& b, RingOp op) {
    switch (op) {
        case RingOp::add: return a + b;
        case RingOp::sub: return a - b;
        case RingOp::mul: return a * b;
    }
    throw std::invalid_argument("bad RingOp");
}

}  // namespace qns
