#include "detkit/rational.hpp"

namespace detkit {

Rational::Rational(long n, long d) : v_(n, d) {
    if (d == 0) throw Error("rational with zero denominator");
    v_.canonicalize();
}

Rational& Rational::operator/=(const Rational& o) {
    if (o.is_zero()) throw Error("rational division by zero");
    v_ /= o.v_;
    return *this;
}

Rational Rational::inverse() const {
    if (is_zero()) throw Error("inverse of zero");
    return Rational(mpq_class(1 / v_));
}

Rational Rational::parse(const std::string& text) {
    mpq_class q;
    if (q.set_str(text, 10) != 0) throw ParseError("bad rational literal '" + text + "'");
    if (q.get_den() == 0) throw ParseError("rational with zero denominator '" + text + "'");
    q.canonicalize();
    return Rational(q);
}

std::string Rational::str() const {
    return v_.get_str();
}

} // namespace detkit
