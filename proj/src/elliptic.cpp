#include "ellmul/elliptic.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <numeric>

#include "ellmul/errors.hpp"

namespace ellmul {

namespace {

constexpr long long kEnumBound = 1000000;  // largest field we exhaust

int moebius(int n) {
    int res = 1;
    for (int p = 2; p * p <= n; ++p) {
        if (n % p) continue;
        n /= p;
        if (n % p == 0) return 0;
        res = -res;
    }
    if (n > 1) res = -res;
    return res;
}

}  // namespace

Curve::Curve(FieldPtr F, Elt a1, Elt a2, Elt a3, Elt a4, Elt a6)
    : F_(std::move(F)),
      a1_(std::move(a1)),
      a2_(std::move(a2)),
      a3_(std::move(a3)),
      a4_(std::move(a4)),
      a6_(std::move(a6)) {
    const Field& K = *F_;
    for (const Elt* c : {&a1_, &a2_, &a3_, &a4_, &a6_})
        if ((int)c->size() != K.dim()) throw validation_error("curve coefficient outside the field");
    Elt b2 = K.add(K.mul(a1_, a1_), K.smul(a2_, 4));
    Elt b4 = K.add(K.smul(a4_, 2), K.mul(a1_, a3_));
    Elt b6 = K.add(K.mul(a3_, a3_), K.smul(a6_, 4));
    Elt b8 = K.mul(K.mul(a1_, a1_), a6_);
    b8 = K.add(b8, K.smul(K.mul(a2_, a6_), 4));
    b8 = K.sub(b8, K.mul(K.mul(a1_, a3_), a4_));
    b8 = K.add(b8, K.mul(a2_, K.mul(a3_, a3_)));
    b8 = K.sub(b8, K.mul(a4_, a4_));
    Elt d = K.neg(K.mul(K.mul(b2, b2), b8));
    d = K.sub(d, K.smul(K.mul(K.mul(b4, b4), b4), 8));
    d = K.sub(d, K.smul(K.mul(b6, b6), 27));
    d = K.add(d, K.smul(K.mul(b2, K.mul(b4, b6)), 9));
    if (K.is_zero(d)) throw validation_error("singular curve (discriminant zero)");
    disc_ = d;
}

Elt Curve::rhs(const Elt& x) const {
    const Field& K = *F_;
    Elt v = K.add(x, a2_);        // x + a2
    v = K.add(K.mul(v, x), a4_);  // x^2 + a2 x + a4
    return K.add(K.mul(v, x), a6_);
}

bool Curve::on_curve(const Point& P) const {
    if (P.inf) return true;
    const Field& K = *F_;
    if ((int)P.x.size() != K.dim() || (int)P.y.size() != K.dim()) return false;
    Elt lhs = K.mul(P.y, K.add(K.add(P.y, K.mul(a1_, P.x)), a3_));
    return lhs == rhs(P.x);
}

Point Curve::neg(const Point& P) const {
    if (P.inf) return P;
    const Field& K = *F_;
    return Point(P.x, K.sub(K.neg(P.y), K.add(K.mul(a1_, P.x), a3_)));
}

Point Curve::add(const Point& P, const Point& Q) const {
    const Field& K = *F_;
    if (!on_curve(P) || !on_curve(Q)) throw validation_error("point not on curve");
    if (P.inf) return Q;
    if (Q.inf) return P;
    if (Q == neg(P)) return Point();
    Elt lambda;
    if (P.x == Q.x) {
        // Tangent: denominator 2y + a1 x + a3 is nonzero here since the
        // opposite-point case was handled above.
        Elt num = K.smul(K.mul(P.x, P.x), 3);
        num = K.add(num, K.smul(K.mul(a2_, P.x), 2));
        num = K.add(num, a4_);
        num = K.sub(num, K.mul(a1_, P.y));
        Elt den = K.add(K.smul(P.y, 2), K.add(K.mul(a1_, P.x), a3_));
        lambda = K.div(num, den);
    } else {
        lambda = K.div(K.sub(Q.y, P.y), K.sub(Q.x, P.x));
    }
    Elt nu = K.sub(P.y, K.mul(lambda, P.x));
    Elt x3 = K.add(K.mul(lambda, lambda), K.mul(a1_, lambda));
    x3 = K.sub(x3, K.add(a2_, K.add(P.x, Q.x)));
    Elt y3 = K.neg(K.mul(K.add(lambda, a1_), x3));
    y3 = K.sub(y3, K.add(nu, a3_));
    return Point(x3, y3);
}

Point Curve::mul(const Point& P, long long k) const {
    Point base = P;
    if (k < 0) {
        base = neg(base);
        k = -k;
    }
    Point acc;
    while (k > 0) {
        if (k & 1) acc = add(acc, base);
        base = add(base, base);
        k >>= 1;
    }
    return acc;
}

std::vector<Elt> Curve::ys_at(const Elt& x) const {
    const Field& K = *F_;
    Elt b = K.add(K.mul(a1_, x), a3_);  // y^2 + b y = c
    Elt c = rhs(x);
    std::vector<Elt> out;
    if (K.p() == 2) {
        if (K.is_zero(b)) {
            auto r = sqrt_elt(K, c);  // Frobenius is bijective: always one root
            if (r) out.push_back(*r);
        } else {
            // y = b z turns the equation into z^2 + z = c / b^2.
            Elt b2 = K.mul(b, b);
            auto z = solve_artin_schreier(K, K.div(c, b2));
            if (z) {
                out.push_back(K.mul(b, *z));
                out.push_back(K.mul(b, K.add(*z, K.one())));
            }
        }
    } else {
        // y = (-b + s)/2 with s^2 = b^2 + 4c.
        Elt disc = K.add(K.mul(b, b), K.smul(c, 4));
        auto s = sqrt_elt(K, disc);
        if (s) {
            Elt half = K.inv(K.from_int(2));
            out.push_back(K.mul(K.sub(*s, b), half));
            if (!K.is_zero(*s)) out.push_back(K.mul(K.sub(K.neg(*s), b), half));
        }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::vector<Point> Curve::points() const {
    const Field& K = *F_;
    if (K.size() > (u128)kEnumBound)
        throw validation_error("field too large to enumerate points; sample places instead");
    std::vector<Point> pts;
    pts.emplace_back();  // P_inf first
    for (u128 i = 0; i < K.size(); ++i) {
        Elt x = K.element_at(i);
        for (Elt& y : ys_at(x)) pts.emplace_back(x, std::move(y));
    }
    return pts;
}

Curve base_change(const Curve& C, const Embedding& emb) {
    if (!emb.small().same(C.field())) throw validation_error("embedding domain mismatch");
    return Curve(emb.big_ptr(), emb.apply(C.a1()), emb.apply(C.a2()), emb.apply(C.a3()),
                 emb.apply(C.a4()), emb.apply(C.a6()));
}

ZetaData zeta_counts(const Curve& C, int dmax) {
    if (dmax < 1) throw validation_error("zeta range must be positive");
    long long q = (long long)C.field().size();
    long long pw = 1;
    for (int d = 0; d < dmax; ++d) {
        if (pw > (long long)4e17 / q) throw validation_error("zeta degree range too large");
        pw *= q;
    }
    ZetaData z;
    long long N1 = (long long)C.points().size();
    z.m = q + 1 - N1;
    if (z.m * z.m > 4 * q) throw internal_error("Hasse bound violated");
    // s_d = alpha^d + beta^d with alpha+beta = m, alpha*beta = q.
    std::vector<long long> s(dmax + 1);
    s[0] = 2;
    if (dmax >= 1) s[1] = z.m;
    for (int d = 2; d <= dmax; ++d) s[d] = z.m * s[d - 1] - q * s[d - 2];
    z.N.resize(dmax);
    z.B.resize(dmax);
    long long qd = 1;
    for (int d = 1; d <= dmax; ++d) {
        qd *= q;
        z.N[d - 1] = qd + 1 - s[d];
    }
    for (int d = 1; d <= dmax; ++d) {
        long long acc = 0;
        for (int e = 1; e <= d; ++e)
            if (d % e == 0) acc += moebius(d / e) * z.N[e - 1];
        if (acc % d != 0 || acc < 0) throw internal_error("place count recursion failed");
        z.B[d - 1] = acc / d;
    }
    return z;
}

std::pair<long long, long long> group_structure(const Curve& C) {
    std::vector<Point> pts = C.points();
    long long N = (long long)pts.size();
    long long expo = 1;
    for (const Point& P : pts) {
        Point acc = P;
        long long ord = 1;
        while (!acc.inf) {
            acc = C.add(acc, P);
            ++ord;
        }
        expo = std::lcm(expo, ord);
    }
    long long n1 = N / expo;
    if (n1 * expo != N || expo % n1 != 0) throw internal_error("group is not of elliptic shape");
    return {n1, expo};
}

CurveClass classify(const Curve& C) {
    CurveClass cls;
    cls.N1 = (long long)C.points().size();
    if (cls.N1 == 1) {
        cls.label = 'a';
        cls.slack = 3;
    } else if (cls.N1 == 2) {
        cls.label = 'b';
        cls.slack = 1;
        cls.sigma_caveat = true;
    } else if (C.field().p() != 2 && group_structure(C) == std::pair<long long, long long>{2, 2}) {
        cls.label = 'c';
        cls.slack = 1;
    } else {
        cls.label = 'd';
        cls.slack = 0;
    }
    return cls;
}

// ---------------------------------------------------------------------------
// Equation parsing: bivariate polynomials in x, y with tiny exponents.

namespace {

using BiPoly = std::map<std::pair<int, int>, Elt>;  // (xdeg, ydeg) -> coeff

void bp_addto(const Field& F, BiPoly& p, std::pair<int, int> key, const Elt& c) {
    auto it = p.find(key);
    if (it == p.end()) {
        if (!F.is_zero(c)) p.emplace(key, c);
        return;
    }
    it->second = F.add(it->second, c);
    if (F.is_zero(it->second)) p.erase(it);
}

BiPoly bp_mul(const Field& F, const BiPoly& a, const BiPoly& b) {
    BiPoly out;
    for (auto& [ka, ca] : a)
        for (auto& [kb, cb] : b) {
            std::pair<int, int> k{ka.first + kb.first, ka.second + kb.second};
            if (k.first > 12 || k.second > 12) throw validation_error("equation degree too large");
            bp_addto(F, out, k, F.mul(ca, cb));
        }
    return out;
}

struct EqParser {
    const Field& F;
    std::string s;
    size_t i = 0;

    explicit EqParser(const Field& f, const std::string& src) : F(f) {
        for (char c : src)
            if (!isspace((unsigned char)c)) s.push_back(c);
    }

    char peek() const { return i < s.size() ? s[i] : '\0'; }
    char take() { return s[i++]; }

    long long parse_int() {
        long long v = 0;
        if (!isdigit((unsigned char)peek())) throw validation_error("number expected in equation");
        while (isdigit((unsigned char)peek())) {
            v = v * 10 + (take() - '0');
            if (v > 1000000) throw validation_error("number too large in equation");
        }
        return v;
    }

    BiPoly parse_base() {
        char c = peek();
        BiPoly p;
        if (isdigit((unsigned char)c)) {
            Elt v = F.from_int(parse_int());
            if (!F.is_zero(v)) p[{0, 0}] = v;
            return p;
        }
        if (c == 'a') {
            take();
            if (F.prime()) throw validation_error("generator symbol needs a non-prime field");
            p[{0, 0}] = F.gen(1);
            return p;
        }
        if (c == 'x') {
            take();
            p[{1, 0}] = F.one();
            return p;
        }
        if (c == 'y') {
            take();
            p[{0, 1}] = F.one();
            return p;
        }
        if (c == '(') {
            take();
            p = parse_expr();
            if (peek() != ')') throw validation_error("unbalanced parenthesis in equation");
            take();
            return p;
        }
        throw validation_error("unexpected character in equation");
    }

    BiPoly parse_factor() {
        BiPoly b = parse_base();
        if (peek() == '^') {
            take();
            long long e = parse_int();
            if (e > 12) throw validation_error("exponent too large in equation");
            BiPoly acc;
            acc[{0, 0}] = F.one();
            for (long long k = 0; k < e; ++k) acc = bp_mul(F, acc, b);
            return acc;
        }
        return b;
    }

    static bool starts_factor(char c) {
        return isdigit((unsigned char)c) || c == 'a' || c == 'x' || c == 'y' || c == '(';
    }

    BiPoly parse_term() {
        BiPoly p = parse_factor();
        for (;;) {
            if (peek() == '*') {
                take();
                p = bp_mul(F, p, parse_factor());
            } else if (starts_factor(peek())) {
                p = bp_mul(F, p, parse_factor());
            } else {
                return p;
            }
        }
    }

    BiPoly parse_expr() {
        BiPoly p;
        int sign = 1;
        if (peek() == '+' || peek() == '-') sign = (take() == '-') ? -1 : 1;
        BiPoly t = parse_term();
        for (auto& [k, c] : t) bp_addto(F, p, k, sign < 0 ? F.neg(c) : c);
        while (peek() == '+' || peek() == '-') {
            sign = (take() == '-') ? -1 : 1;
            t = parse_term();
            for (auto& [k, c] : t) bp_addto(F, p, k, sign < 0 ? F.neg(c) : c);
        }
        return p;
    }
};

Elt bp_coeff(const Field& F, const BiPoly& p, int xd, int yd) {
    auto it = p.find({xd, yd});
    return it == p.end() ? F.zero() : it->second;
}

}  // namespace

Curve curve_from_equation(FieldPtr F, const std::string& eq) {
    const Field& K = *F;
    EqParser parser(K, eq);
    BiPoly lhs = parser.parse_expr();
    if (parser.peek() == '=') {
        parser.take();
        BiPoly rhs = parser.parse_expr();
        for (auto& [k, c] : rhs) bp_addto(K, lhs, k, K.neg(c));
    }
    if (parser.i != parser.s.size()) throw validation_error("trailing characters in equation");
    Elt lead = bp_coeff(K, lhs, 0, 2);
    if (K.is_zero(lead)) throw validation_error("equation has no y^2 term");
    Elt scale = K.inv(lead);
    BiPoly p;
    for (auto& [k, c] : lhs) p[k] = K.mul(c, scale);
    if (bp_coeff(K, p, 3, 0) != K.neg(K.one()))
        throw validation_error("equation is not in Weierstrass shape (x^3 coefficient)");
    Elt a1 = bp_coeff(K, p, 1, 1);
    Elt a3 = bp_coeff(K, p, 0, 1);
    Elt a2 = K.neg(bp_coeff(K, p, 2, 0));
    Elt a4 = K.neg(bp_coeff(K, p, 1, 0));
    Elt a6 = K.neg(bp_coeff(K, p, 0, 0));
    for (auto& [k, c] : p) {
        bool known = (k == std::pair<int, int>{0, 2}) || (k == std::pair<int, int>{1, 1}) ||
                     (k == std::pair<int, int>{0, 1}) || (k == std::pair<int, int>{3, 0}) ||
                     (k == std::pair<int, int>{2, 0}) || (k == std::pair<int, int>{1, 0}) ||
                     (k == std::pair<int, int>{0, 0});
        if (!known && !K.is_zero(c)) throw validation_error("equation has a non-Weierstrass monomial");
    }
    return Curve(std::move(F), a1, a2, a3, a4, a6);
}

namespace {

std::string elt_str(const Field& F, const Elt& c) {
    if (F.prime()) return std::to_string(c.empty() ? 0 : c[0]);
    std::string out;
    for (int j = F.dim() - 1; j >= 0; --j) {
        if (c[j] == 0) continue;
        if (!out.empty()) out += "+";
        if (j == 0 || c[j] != 1) out += std::to_string(c[j]);
        if (j >= 1) out += "a";
        if (j >= 2) out += "^" + std::to_string(j);
    }
    if (out.empty()) out = "0";
    if (out.find('+') != std::string::npos) out = "(" + out + ")";
    return out;
}

// Append c * x^d style terms, dropping unit coefficients before variables.
void push_term(const Field& F, std::string& out, const Elt& c, const std::string& var) {
    if (F.is_zero(c)) return;
    if (!out.empty()) out += "+";
    if (var.empty() || c != F.one()) out += elt_str(F, c);
    out += var;
}

}  // namespace

std::string equation_of(const Curve& C) {
    const Field& F = C.field();
    std::string lhs;
    push_term(F, lhs, F.one(), "y^2");
    push_term(F, lhs, C.a1(), "xy");
    push_term(F, lhs, C.a3(), "y");
    std::string rhs;
    push_term(F, rhs, F.one(), "x^3");
    push_term(F, rhs, C.a2(), "x^2");
    push_term(F, rhs, C.a4(), "x");
    push_term(F, rhs, C.a6(), "");
    if (rhs.empty()) rhs = "0";
    return lhs + "=" + rhs;
}

FieldPtr catalog_field(std::uint32_t q) {
    switch (q) {
        case 2:
        case 3:
        case 5:
        case 7:
            return std::make_shared<Field>(q);
        case 4:
            return std::make_shared<Field>(2, std::vector<std::uint8_t>{1, 1, 1});  // z^2+z+1
        case 9:
            // The named q = 9 curve has the advertised 4-point group only
            // with this presentation of F_9 (a^2 = a + 1); the other two
            // degree-2 moduli put 10 rational points on it.
            return std::make_shared<Field>(3, std::vector<std::uint8_t>{2, 2, 1});  // z^2+2z+2
        default:
            throw validation_error("no catalog for this field size");
    }
}

std::vector<CatalogEntry> catalog(std::uint32_t q) {
    FieldPtr F = catalog_field(q);
    std::vector<std::string> eqs;
    switch (q) {
        case 2:
            eqs = {"y^2+y+(x^3+x+1)=0", "y^2+xy+x^3+x^2+1=0", "y^2+y+x^3=0", "y^2+y+x^3+x=0",
                   "y^2+xy+x^3+1=0"};
            break;
        case 3:
            eqs = {"y^2-(x^3+2x+2)=0", "y^2-(x^3+2x^2+2)=0", "y^2+y+2x^3+x+1=0", "y^2+2x^3+2x=0",
                   "y^2+2x^3+x+2=0", "y^2+2x^3+2x^2+2=0", "y^2+2x^3+2x^2+1=0", "y^2+2x^3+x^2+2=0"};
            break;
        case 4:
            eqs = {"y^2+y+(x^3+a)=0", "y^2+xy+(x^3+ax^2+1)=0"};
            break;
        case 5:
            eqs = {"y^2-(x^3+2x)=0", "y^2+4x^3+4x=0"};
            break;
        case 7:
            eqs = {"y^2+6x^3+1=0"};
            break;
        case 9:
            eqs = {"y^2+(x+1)y+2x^3+x^2+ax+1=0"};
            break;
        default:
            throw validation_error("no catalog for this field size");
    }
    std::vector<CatalogEntry> out;
    for (const std::string& eq : eqs) {
        Curve C = curve_from_equation(F, eq);
        out.push_back({eq, C, classify(C)});
    }
    return out;
}

}  // namespace ellmul
