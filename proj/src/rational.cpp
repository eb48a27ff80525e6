#include "dyadic/rational.hpp"

#include <cctype>
#include <stdexcept>

#include "dyadic/errors.hpp"

namespace dyadic {

Rational make_rational(Integer num, Integer den) {
    if (sgn(den) == 0) throw std::domain_error("make_rational: zero denominator");
    Rational q(std::move(num), std::move(den));
    q.canonicalize();
    return q;
}

Rational pow2(long e) {
    Integer one = 1;
    if (e >= 0) {
        Integer n;
        mpz_mul_2exp(n.get_mpz_t(), one.get_mpz_t(), static_cast<mp_bitcnt_t>(e));
        return Rational(n);
    }
    Integer d;
    mpz_mul_2exp(d.get_mpz_t(), one.get_mpz_t(), static_cast<mp_bitcnt_t>(-e));
    Rational q(1, d);
    q.canonicalize();
    return q;
}

long floor_log2(const Rational& x) {
    if (sgn(x) <= 0) throw std::domain_error("floor_log2: argument must be positive");
    const Integer& num = x.get_num();
    const Integer& den = x.get_den();
    const long bn = static_cast<long>(mpz_sizeinbase(num.get_mpz_t(), 2));
    const long bd = static_cast<long>(mpz_sizeinbase(den.get_mpz_t(), 2));
    // x lies in (2^{bn-bd-1}, 2^{bn-bd+1}), so the answer is bn-bd or bn-bd-1.
    long L = bn - bd;
    auto at_least = [&](long e) {
        // 2^e <= num/den ?
        Integer lhs;
        if (e >= 0) {
            mpz_mul_2exp(lhs.get_mpz_t(), den.get_mpz_t(), static_cast<mp_bitcnt_t>(e));
            return lhs <= num;
        }
        mpz_mul_2exp(lhs.get_mpz_t(), num.get_mpz_t(), static_cast<mp_bitcnt_t>(-e));
        return den <= lhs;
    };
    if (!at_least(L)) --L;
    return L;
}

Integer rational_floor(const Rational& x) {
    Integer q;
    mpz_fdiv_q(q.get_mpz_t(), x.get_num().get_mpz_t(), x.get_den().get_mpz_t());
    return q;
}

bool is_integer(const Rational& x) { return x.get_den() == 1; }

Rational rational_abs(const Rational& x) { return sgn(x) < 0 ? Rational(-x) : x; }

Integer ceil_sqrt(const Integer& x) {
    if (sgn(x) < 0) throw std::domain_error("ceil_sqrt: negative argument");
    Integer r;
    mpz_sqrt(r.get_mpz_t(), x.get_mpz_t());
    if (r * r < x) ++r;
    return r;
}

namespace {

// Directed den-th root of a nonnegative rational at 2^-prec resolution.
Rational root_directed(const Rational& t, unsigned long den, RoundDir dir, unsigned prec) {
    if (den == 1) return t;
    Integer scaled;  // floor or ceil of t * 2^(den*prec)
    {
        Integer num_shift;
        mpz_mul_2exp(num_shift.get_mpz_t(), t.get_num().get_mpz_t(),
                     static_cast<mp_bitcnt_t>(den) * prec);
        if (dir == RoundDir::down) {
            mpz_fdiv_q(scaled.get_mpz_t(), num_shift.get_mpz_t(), t.get_den().get_mpz_t());
        } else {
            mpz_cdiv_q(scaled.get_mpz_t(), num_shift.get_mpz_t(), t.get_den().get_mpz_t());
        }
    }
    Integer root;
    mpz_root(root.get_mpz_t(), scaled.get_mpz_t(), den);  // floor root
    if (dir == RoundDir::up) {
        Integer check;
        mpz_pow_ui(check.get_mpz_t(), root.get_mpz_t(), den);
        if (check < scaled) ++root;
    }
    Integer denom = 1;
    mpz_mul_2exp(denom.get_mpz_t(), denom.get_mpz_t(), prec);
    return make_rational(root, denom);
}

}  // namespace

Rational pow_directed(const Rational& base, long num, unsigned long den,
                      RoundDir dir, unsigned prec_bits) {
    if (den == 0) throw std::domain_error("pow_directed: zero root index");
    if (sgn(base) < 0) throw std::domain_error("pow_directed: negative base");
    if (num == 0) return Rational(1);
    if (sgn(base) == 0) {
        if (num < 0) throw std::domain_error("pow_directed: 0 to a negative power");
        return Rational(0);
    }
    const bool invert = num < 0;
    const unsigned long u = invert ? static_cast<unsigned long>(-num)
                                   : static_cast<unsigned long>(num);
    Integer pn, pd;
    mpz_pow_ui(pn.get_mpz_t(), base.get_num().get_mpz_t(), u);
    mpz_pow_ui(pd.get_mpz_t(), base.get_den().get_mpz_t(), u);
    Rational t = make_rational(pn, pd);
    // For an inverted result the inner root must err the opposite way.
    const RoundDir inner = invert ? (dir == RoundDir::down ? RoundDir::up : RoundDir::down)
                                  : dir;
    Rational r = root_directed(t, den, inner, prec_bits);
    if (invert) {
        if (sgn(r) == 0) throw std::domain_error("pow_directed: underflow to zero in inversion");
        return Rational(1) / r;
    }
    return r;
}

std::string to_string(const Rational& x) { return x.get_str(); }

Rational parse_rational(const std::string& text) {
    auto bad = [&]() -> parse_error {
        return parse_error("not a rational: \"" + text + "\"");
    };
    std::size_t i = 0, n = text.size();
    while (i < n && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    std::size_t end = n;
    while (end > i && std::isspace(static_cast<unsigned char>(text[end - 1]))) --end;
    if (i >= end) throw bad();

    std::string body = text.substr(i, end - i);
    bool negative = false;
    std::size_t p = 0;
    if (body[p] == '+' || body[p] == '-') {
        negative = body[p] == '-';
        ++p;
    }
    auto digits = [&](std::size_t from, std::size_t to) {
        if (from >= to) return false;
        for (std::size_t k = from; k < to; ++k)
            if (!std::isdigit(static_cast<unsigned char>(body[k]))) return false;
        return true;
    };

    const std::size_t slash = body.find('/', p);
    const std::size_t dot = body.find('.', p);
    Rational result;
    if (slash != std::string::npos) {
        if (dot != std::string::npos) throw bad();
        if (!digits(p, slash) || !digits(slash + 1, body.size())) throw bad();
        Integer num(body.substr(p, slash - p), 10);
        Integer den(body.substr(slash + 1), 10);
        if (sgn(den) == 0) throw bad();
        result = make_rational(num, den);
    } else if (dot != std::string::npos) {
        if (!digits(p, dot) || !digits(dot + 1, body.size())) throw bad();
        const std::string frac = body.substr(dot + 1);
        Integer whole(body.substr(p, dot - p) + frac, 10);
        Integer den;
        mpz_ui_pow_ui(den.get_mpz_t(), 10, frac.size());
        result = make_rational(whole, den);
    } else {
        if (!digits(p, body.size())) throw bad();
        result = Rational(Integer(body.substr(p), 10));
    }
    if (negative) result = -result;
    return result;
}

}  // namespace dyadic
