#include "ellmul/function_field.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <numeric>
#include <sstream>

#include "ellmul/errors.hpp"

namespace ellmul {

namespace {

Pol pol_div_exact(const Field& F, const Pol& a, const Pol& b) {
    Pol r;
    Pol q = pol_divmod(F, a, b, r);
    if (!pol_is_zero(r)) throw internal_error("polynomial division expected to be exact");
    return q;
}

// Multiplicity of the (non-constant) divisor p in a nonzero f.
int pol_mult_of(const Field& F, Pol f, const Pol& p) {
    int m = 0;
    for (;;) {
        if (deg(f) < deg(p)) return m;
        Pol r;
        Pol q = pol_divmod(F, f, p, r);
        if (!pol_is_zero(r)) return m;
        f = std::move(q);
        ++m;
    }
}

std::vector<int> pol_key(const Pol& f) {
    std::vector<int> k{deg(f)};
    for (const Elt& c : f)
        for (auto b : c) k.push_back(b);
    return k;
}

std::vector<int> place_key(const Place& P) {
    if (P.infinity) return {0};
    std::vector<int> k{1, P.d, P.dx};
    auto app = [&k](const std::vector<int>& v) { k.insert(k.end(), v.begin(), v.end()); };
    app(pol_key(P.xmin));
    app(pol_key(P.ymap));
    return k;
}

// ---- truncated power series over a field; window is [0, size()) ----

using Ser = std::vector<Elt>;

Ser ser_make(const Field& R, int L) { return Ser(L, R.zero()); }

Ser ser_trunc(const Field& R, const Ser& a, int L) {
    Ser out(L, R.zero());
    for (int i = 0; i < L && i < (int)a.size(); ++i) out[i] = a[i];
    return out;
}

void ser_add_in(const Field& R, Ser& a, const Ser& b) {
    for (size_t i = 0; i < a.size() && i < b.size(); ++i) a[i] = R.add(a[i], b[i]);
}

Ser ser_scal(const Field& R, const Ser& a, std::uint32_t k) {
    Ser out = a;
    for (Elt& c : out) c = R.smul(c, k);
    return out;
}

Ser ser_mul(const Field& R, const Ser& a, const Ser& b, int L) {
    Ser out(L, R.zero());
    for (int i = 0; i < (int)a.size() && i < L; ++i) {
        if (R.is_zero(a[i])) continue;
        int jm = std::min<int>((int)b.size(), L - i);
        for (int j = 0; j < jm; ++j) R.addmul(out[i + j], a[i], b[j]);
    }
    return out;
}

Ser ser_inv(const Field& R, const Ser& a, int L) {
    if (a.empty() || R.is_zero(a[0])) throw internal_error("series inverse of a non-unit");
    Elt i0 = R.inv(a[0]);
    Ser out(L, R.zero());
    out[0] = i0;
    for (int k = 1; k < L; ++k) {
        Elt s = R.zero();
        int jm = std::min<int>((int)a.size() - 1, k);
        for (int j = 1; j <= jm; ++j) R.addmul(s, a[j], out[k - j]);
        out[k] = R.neg(R.mul(i0, s));
    }
    return out;
}

// Root d = O(t) of c0 + c1 d + c2 d^2 + c3 d^3 = 0 where c0 = O(t) and c1(0)
// is a unit; Newton steps double the t-adic precision.
Ser cubic_root(const Field& R, const std::array<Ser, 4>& c, int L) {
    Ser d = ser_make(R, 1);
    int prec = 1;
    while (prec < L) {
        prec = std::min(2 * prec, L);
        Ser dd = ser_trunc(R, d, prec);
        Ser d2 = ser_mul(R, dd, dd, prec);
        Ser d3 = ser_mul(R, d2, dd, prec);
        Ser val = ser_trunc(R, c[0], prec);
        ser_add_in(R, val, ser_mul(R, c[1], dd, prec));
        ser_add_in(R, val, ser_mul(R, c[2], d2, prec));
        ser_add_in(R, val, ser_mul(R, c[3], d3, prec));
        Ser der = ser_trunc(R, c[1], prec);
        ser_add_in(R, der, ser_mul(R, ser_scal(R, c[2], 2), dd, prec));
        ser_add_in(R, der, ser_mul(R, ser_scal(R, c[3], 3), d2, prec));
        Ser corr = ser_mul(R, val, ser_inv(R, der, prec), prec);
        d = dd;
        for (int i = 0; i < prec; ++i) d[i] = R.sub(d[i], corr[i]);
    }
    return d;
}

// Expansions of x and y in the local parameter: x - x0 at an unramified finite
// place, y - y0 at a ramified one, -x/y at infinity (where x = t^-2 X0 and
// y = -t^-3 X0 for a unit X0).
struct LocalXY {
    bool infinity = false;
    Ser xs, ys;
    Ser X0;
};

LocalXY local_xy(const Curve& CR, const Place& P, int L) {
    const Field& R = CR.field();
    L = std::max(L, 1);
    LocalXY out;
    out.infinity = P.infinity;
    const Elt A1 = CR.a1(), A2 = CR.a2(), A3 = CR.a3(), A4 = CR.a4(), A6 = CR.a6();
    if (P.infinity) {
        std::array<Ser, 4> c;
        c[0] = {R.zero(), R.zero(), R.zero(), R.neg(R.one())};
        c[1] = {R.one(), R.neg(A1), R.neg(A2)};
        c[2] = {R.neg(A3), R.neg(A4)};
        c[3] = {R.neg(A6)};
        Ser w = cubic_root(R, c, L + 3);
        if (!R.is_zero(w[0]) || !R.is_zero(w[1]) || !R.is_zero(w[2]) || !R.is_zero(R.sub(w[3], R.one())))
            throw internal_error("unexpected local expansion at infinity");
        out.X0 = ser_inv(R, Ser(w.begin() + 3, w.end()), L);
        return out;
    }
    const Elt& x0 = P.x0;
    const Elt& y0 = P.y0;
    Elt hx0 = R.add(R.mul(A1, x0), A3);
    Elt c1v = R.add(R.add(R.smul(R.mul(x0, x0), 3), R.smul(R.mul(A2, x0), 2)), A4);
    Elt c2v = R.add(R.smul(x0, 3), A2);
    Elt lin = R.add(R.smul(y0, 2), hx0);  // dF/dy at the point
    Elt dfdx = R.sub(R.mul(A1, y0), c1v);  // dF/dx at the point
    std::array<Ser, 4> c;
    Ser d;
    if (!P.ramified) {
        c[0] = {R.zero(), dfdx, R.neg(c2v), R.neg(R.one())};
        c[1] = {lin, A1};
        c[2] = {R.one()};
        c[3] = {R.zero()};
        d = cubic_root(R, c, L);
        out.xs = ser_make(R, L);
        out.xs[0] = x0;
        if (L > 1) out.xs[1] = R.one();
        out.ys = std::move(d);
        out.ys[0] = R.add(out.ys[0], y0);
    } else {
        c[0] = {R.zero(), lin, R.one()};
        c[1] = {dfdx, A1};
        c[2] = {R.neg(c2v)};
        c[3] = {R.neg(R.one())};
        d = cubic_root(R, c, L);
        out.xs = std::move(d);
        out.xs[0] = R.add(out.xs[0], x0);
        out.ys = ser_make(R, L);
        out.ys[0] = y0;
        if (L > 1) out.ys[1] = R.one();
    }
    return out;
}

// Horner evaluation of a base-field polynomial on a series over R.
Ser eval_pol(const Field& R, const Embedding& emb, const Pol& A, const Ser& xs, int L) {
    Ser acc = ser_make(R, L);
    for (int i = deg(A); i >= 0; --i) {
        acc = ser_mul(R, acc, xs, L);
        acc[0] = R.add(acc[0], emb.apply(A[i]));
    }
    return acc;
}

// Laurent coefficients at infinity over the exponent window [W0, W1):
// x^j contributes X0^j starting at t^-2j, x^j y contributes -X0^{j+1}
// starting at t^-2j-3.
void acc_inf(const Field& R, const Pol& A, bool ypart, const std::vector<Ser>& xp, int W0, int W1,
             std::vector<Elt>& out) {
    for (int j = 0; j <= deg(A); ++j) {
        if (R.is_zero(A[j])) continue;
        int start = ypart ? -2 * j - 3 : -2 * j;
        const Ser& p = xp[ypart ? j + 1 : j];
        Elt cf = ypart ? R.neg(A[j]) : A[j];
        for (int e = std::max(W0, start); e < W1; ++e) {
            int idx = e - start;
            if (idx >= (int)p.size()) break;
            R.addmul(out[e - W0], cf, p[idx]);
        }
    }
}

std::vector<Ser> x0_powers(const Field& R, const Ser& X0, int maxj, int len) {
    std::vector<Ser> xp(maxj + 1);
    xp[0] = ser_make(R, len);
    xp[0][0] = R.one();
    for (int j = 1; j <= maxj; ++j) xp[j] = ser_mul(R, xp[j - 1], X0, len);
    return xp;
}

int first_nonzero(const Field& R, const std::vector<Elt>& v) {
    for (int i = 0; i < (int)v.size(); ++i)
        if (!R.is_zero(v[i])) return i;
    return -1;
}

struct GaussAcc {
    const Field& F;
    int n;
    std::vector<std::vector<Elt>> rows;  // kept in reduced echelon form
    std::vector<int> piv;

    GaussAcc(const Field& f, int cols) : F(f), n(cols) {}

    bool try_add(std::vector<Elt> v) {
        for (size_t r = 0; r < rows.size(); ++r) {
            Elt c = v[piv[r]];
            if (F.is_zero(c)) continue;
            for (int j = 0; j < n; ++j) v[j] = F.sub(v[j], F.mul(c, rows[r][j]));
        }
        int pv = -1;
        for (int j = 0; j < n; ++j)
            if (!F.is_zero(v[j])) { pv = j; break; }
        if (pv < 0) return false;
        Elt iv = F.inv(v[pv]);
        for (int j = 0; j < n; ++j) v[j] = F.mul(iv, v[j]);
        for (size_t r = 0; r < rows.size(); ++r) {
            Elt c = rows[r][pv];
            if (F.is_zero(c)) continue;
            for (int j = 0; j < n; ++j) rows[r][j] = F.sub(rows[r][j], F.mul(c, v[j]));
        }
        rows.push_back(std::move(v));
        piv.push_back(pv);
        return true;
    }
};

std::string elt_str(const Field& F, const Elt& c) {
    if (F.dim() == 1) return std::to_string((int)c[0]);
    std::ostringstream os;
    os << "(";
    bool first = true;
    for (int i = 0; i < F.dim(); ++i) {
        if (!c[i]) continue;
        if (!first) os << "+";
        first = false;
        if (c[i] != 1 || i == 0) os << (int)c[i];
        if (i >= 1) os << "a";
        if (i >= 2) os << "^" << i;
    }
    if (first) os << "0";
    os << ")";
    return os.str();
}

std::string pol_str(const Field& F, const Pol& f) {
    if (deg(f) < 0) return "0";
    std::ostringstream os;
    bool first = true;
    for (int i = deg(f); i >= 0; --i) {
        if (F.is_zero(f[i])) continue;
        if (!first) os << "+";
        first = false;
        bool unit = f[i] == F.one();
        if (!unit || i == 0) os << elt_str(F, f[i]);
        if (i >= 1) {
            if (!unit) os << "*";
            os << "x";
            if (i >= 2) os << "^" << i;
        }
    }
    return os.str();
}

}  // namespace

// ---------------------------------------------------------------------------
// places and divisors

bool place_eq(const Place& P, const Place& Q) { return place_key(P) == place_key(Q); }

bool place_less(const Place& P, const Place& Q) { return place_key(P) < place_key(Q); }

std::string place_str(const Place& P) {
    if (P.infinity) return "P_inf";
    const Field& F = P.emb->small();
    std::ostringstream os;
    os << "deg " << P.d << " place [" << pol_str(F, P.xmin);
    if (P.dx == P.d)
        os << ", y=" << pol_str(F, P.ymap);
    else
        os << ", inert";
    os << "]";
    return os.str();
}

void Divisor::add(const Place& P, int mult) {
    if (mult == 0) return;
    auto it = std::lower_bound(ent_.begin(), ent_.end(), P,
                               [](const std::pair<Place, int>& a, const Place& b) { return place_less(a.first, b); });
    if (it != ent_.end() && place_eq(it->first, P)) {
        it->second += mult;
        if (it->second == 0) ent_.erase(it);
    } else {
        ent_.insert(it, {P, mult});
    }
}

int Divisor::mult(const Place& P) const {
    auto it = std::lower_bound(ent_.begin(), ent_.end(), P,
                               [](const std::pair<Place, int>& a, const Place& b) { return place_less(a.first, b); });
    if (it != ent_.end() && place_eq(it->first, P)) return it->second;
    return 0;
}

long long Divisor::degree() const {
    long long s = 0;
    for (const auto& [P, m] : ent_) s += (long long)m * P.d;
    return s;
}

bool Divisor::effective() const {
    for (const auto& [P, m] : ent_)
        if (m < 0) return false;
    return true;
}

// ---------------------------------------------------------------------------
// FuncField

FuncField::FuncField(Curve C) : C_(std::move(C)) {
    const Field& F = base();
    h_ = pol_trim({C_.a3(), C_.a1()});
    c3_ = {C_.a6(), C_.a4(), C_.a2(), F.one()};
}

FElem FuncField::normalized(Pol a, Pol b, Pol u) const {
    const Field& F = base();
    a = pol_trim(std::move(a));
    b = pol_trim(std::move(b));
    u = pol_trim(std::move(u));
    if (pol_is_zero(u)) throw validation_error("zero denominator");
    if (pol_is_zero(a) && pol_is_zero(b)) return FElem{{}, {}, {F.one()}};
    Pol g = pol_gcd(F, pol_gcd(F, a, b), u);
    if (deg(g) > 0) {
        a = pol_is_zero(a) ? a : pol_div_exact(F, a, g);
        b = pol_is_zero(b) ? b : pol_div_exact(F, b, g);
        u = pol_div_exact(F, u, g);
    }
    Elt lc = u.back();
    if (!(lc == F.one())) {
        Elt il = F.inv(lc);
        a = pol_smul(F, il, a);
        b = pol_smul(F, il, b);
        u = pol_smul(F, il, u);
    }
    return FElem{std::move(a), std::move(b), std::move(u)};
}

FElem FuncField::zero() const { return FElem{{}, {}, {base().one()}}; }
FElem FuncField::one() const { return FElem{{base().one()}, {}, {base().one()}}; }
FElem FuncField::x() const { return FElem{{base().zero(), base().one()}, {}, {base().one()}}; }
FElem FuncField::y() const { return FElem{{}, {base().one()}, {base().one()}}; }
FElem FuncField::constant(const Elt& c) const { return normalized({c}, {}, {base().one()}); }
FElem FuncField::from_pols(const Pol& a, const Pol& b) const { return normalized(a, b, {base().one()}); }
FElem FuncField::make(const Pol& a, const Pol& b, const Pol& u) const { return normalized(a, b, u); }

bool FuncField::is_zero(const FElem& f) const { return pol_is_zero(f.a) && pol_is_zero(f.b); }

bool FuncField::eq(const FElem& f, const FElem& g) const {
    return pol_eq(f.a, g.a) && pol_eq(f.b, g.b) && pol_eq(f.u, g.u);
}

FElem FuncField::add(const FElem& f, const FElem& g) const {
    const Field& F = base();
    Pol a = pol_add(F, pol_mul(F, f.a, g.u), pol_mul(F, g.a, f.u));
    Pol b = pol_add(F, pol_mul(F, f.b, g.u), pol_mul(F, g.b, f.u));
    return normalized(std::move(a), std::move(b), pol_mul(F, f.u, g.u));
}

FElem FuncField::sub(const FElem& f, const FElem& g) const { return add(f, neg(g)); }

FElem FuncField::neg(const FElem& f) const {
    const Field& F = base();
    return FElem{pol_neg(F, f.a), pol_neg(F, f.b), f.u};
}

FElem FuncField::mul(const FElem& f, const FElem& g) const {
    const Field& F = base();
    Pol bb = pol_mul(F, f.b, g.b);
    Pol a = pol_add(F, pol_mul(F, f.a, g.a), pol_mul(F, bb, c3_));
    Pol b = pol_sub(F, pol_add(F, pol_mul(F, f.a, g.b), pol_mul(F, g.a, f.b)), pol_mul(F, bb, h_));
    return normalized(std::move(a), std::move(b), pol_mul(F, f.u, g.u));
}

Pol FuncField::norm_num(const FElem& f) const {
    const Field& F = base();
    Pol n = pol_mul(F, f.a, f.a);
    n = pol_sub(F, n, pol_mul(F, pol_mul(F, f.a, f.b), h_));
    n = pol_sub(F, n, pol_mul(F, pol_mul(F, f.b, f.b), c3_));
    return pol_trim(n);
}

FElem FuncField::inv(const FElem& f) const {
    const Field& F = base();
    if (is_zero(f)) throw validation_error("division by zero");
    Pol n = norm_num(f);
    if (pol_is_zero(n)) throw internal_error("vanishing norm of a nonzero function");
    Pol a = pol_mul(F, f.u, pol_sub(F, f.a, pol_mul(F, f.b, h_)));
    Pol b = pol_neg(F, pol_mul(F, f.u, f.b));
    return normalized(std::move(a), std::move(b), std::move(n));
}

FElem FuncField::div(const FElem& f, const FElem& g) const { return mul(f, inv(g)); }

Place FuncField::infinity_place() const {
    const Field& F = base();
    Place P;
    P.infinity = true;
    P.d = 1;
    P.ramified = false;
    P.R = base_ptr();
    P.emb = Embedding(base_ptr(), base_ptr());
    P.rb = RelBasis(*P.emb, F.one(), 1);
    P.x0 = F.zero();
    P.y0 = F.zero();
    return P;
}

Place FuncField::finite_place(FieldPtr R, const Embedding& emb, const Elt& x0, const Elt& y0) const {
    const Field& F = base();
    if (!emb.small().same(F)) throw validation_error("embedding domain is not the base field");
    if (!emb.big().same(*R)) throw validation_error("embedding range is not the residue field");
    Curve CR = base_change(C_, emb);
    if (!CR.on_curve(Point(x0, y0))) throw validation_error("place representative is not on the curve");
    u128 q = F.size();
    int dx = 1;
    Elt c = R->pow(x0, q);
    while (!(c == x0)) {
        c = R->pow(c, q);
        if (++dx > R->dim()) throw internal_error("runaway Frobenius orbit");
    }
    // The place degree is the size of the point orbit: y0^(q^dx) is either y0
    // again or the other root above x0, in which case the orbit doubles.
    Elt yf = y0;
    for (int i = 0; i < dx; ++i) yf = R->pow(yf, q);
    int d = (yf == y0) ? dx : 2 * dx;
    int e = F.dim();
    if (R->dim() != e * d)
        throw validation_error("representative point does not generate the residue field");
    Place P;
    P.infinity = false;
    P.d = d;
    P.dx = dx;
    P.R = std::move(R);
    P.emb = emb;
    if (dx == d) {
        P.rb = RelBasis(emb, x0, d);
    } else {
        std::vector<Elt> bas;
        Elt xp = P.R->one();
        for (int j = 0; j < dx; ++j) {
            bas.push_back(xp);
            xp = P.R->mul(xp, x0);
        }
        for (int j = 0; j < dx; ++j) bas.push_back(P.R->mul(y0, bas[j]));
        P.rb = RelBasis(emb, std::move(bas));
    }
    P.x0 = x0;
    P.y0 = y0;
    const Field& Rf = *P.R;
    Pol mp = {Rf.one()};
    Elt o = x0;
    for (int i = 0; i < dx; ++i) {
        mp = pol_mul(Rf, mp, {Rf.neg(o), Rf.one()});
        o = Rf.pow(o, q);
    }
    P.xmin.clear();
    for (const Elt& cf : mp) P.xmin.push_back(P.rb->down(cf));
    if (dx == d) {
        std::vector<Elt> yc = P.rb->to_coords(y0);
        P.ymap = pol_trim(Pol(yc.begin(), yc.end()));
    } else {
        P.ymap.clear();
    }
    Elt ybar = CR.neg(Point(x0, y0)).y;
    P.ramified = (ybar == y0);
    return P;
}

Place FuncField::conjugate(const Place& P) const {
    if (P.infinity) return P;
    Curve CR = base_change(C_, *P.emb);
    Elt ybar = CR.neg(Point(P.x0, P.y0)).y;
    return finite_place(P.R, *P.emb, P.x0, ybar);
}

std::vector<Place> FuncField::places_of_degree(int d, Rng& rng) const {
    const Field& F = base();
    if (d < 1) throw validation_error("place degree must be positive");
    int e = F.dim();
    double sz = 1;
    for (int i = 0; i < e * d; ++i) {
        sz *= F.p();
        if (sz > 1e6) throw validation_error("too many places of this degree to enumerate");
    }
    FieldPtr R;
    Embedding emb = [&]() {
        if (d == 1) {
            R = base_ptr();
            return Embedding(base_ptr(), base_ptr());
        }
        R = extension_field(F.p(), e * d, rng.derive(0x1A5ED00ULL + (unsigned)d));
        return Embedding(base_ptr(), R);
    }();
    Curve CR = base_change(C_, emb);
    u128 q = F.size();
    std::vector<Place> out;
    if (d == 1) out.push_back(infinity_place());
    for (u128 i = 0; i < R->size(); ++i) {
        Elt x0 = R->element_at(i);
        std::vector<Elt> orbit{x0};
        Elt c = R->pow(x0, q);
        bool least = true;
        while (!(c == x0)) {
            if (c < x0) { least = false; break; }
            orbit.push_back(c);
            c = R->pow(c, q);
            if ((int)orbit.size() > d) break;
        }
        int k = (int)orbit.size();
        if (!least || !(k == d || (d % 2 == 0 && k == d / 2))) continue;
        for (const Elt& y : CR.ys_at(x0)) {
            if (k == d) {
                out.push_back(finite_place(R, emb, x0, y));
                continue;
            }
            // x0 lives in the midfield; the place has degree d only if y does
            // not, i.e. Frobenius^k swaps the two roots above x0.  Keep the
            // lexicographically smaller root as the representative.
            Elt yf = y;
            for (int j = 0; j < k; ++j) yf = R->pow(yf, q);
            if (yf == y || !(y < yf)) continue;
            out.push_back(finite_place(R, emb, x0, y));
        }
    }
    std::sort(out.begin(), out.end(), place_less);
    return out;
}

Place FuncField::random_place(int d, Rng& rng) const {
    const Field& F = base();
    if (d < 1) throw validation_error("place degree must be positive");
    int e = F.dim();
    FieldPtr R;
    Embedding emb = [&]() {
        if (d == 1) {
            R = base_ptr();
            return Embedding(base_ptr(), base_ptr());
        }
        R = extension_field(F.p(), e * d, rng.derive(0x9A3D0ULL + (unsigned)d));
        return Embedding(base_ptr(), R);
    }();
    Curve CR = base_change(C_, emb);
    u128 q = F.size();
    for (int tries = 0; tries < 4096; ++tries) {
        Elt x0 = R->random(rng);
        int k = 1;
        Elt c = R->pow(x0, q);
        while (!(c == x0)) {
            c = R->pow(c, q);
            if (++k > d) break;
        }
        if (k != d) continue;
        std::vector<Elt> ys = CR.ys_at(x0);
        if (ys.empty()) continue;
        Elt y = ys.size() == 1 ? ys[0] : ys[rng.below(ys.size())];
        return finite_place(R, emb, x0, y);
    }
    throw construction_error("no place of the requested degree found");
}

// ---------------------------------------------------------------------------
// evaluation

std::vector<std::vector<Elt>> FuncField::jet_block(const std::vector<FElem>& fs, const Place& P,
                                                   int order) const {
    if (order < 1) throw validation_error("jet order must be positive");
    const Field& F = base();
    std::vector<std::vector<Elt>> out(fs.size());
    if (P.infinity) {
        const Field& R = F;
        int maxj = 0, lo = 0;
        for (const FElem& f : fs) {
            maxj = std::max({maxj, deg(f.a), deg(f.b) + 1, deg(f.u)});
            lo = std::min({lo, -2 * deg(f.a), deg(f.b) >= 0 ? -2 * deg(f.b) - 3 : 0, -2 * deg(f.u)});
        }
        int W0 = lo, W1 = order;
        int len = W1 - W0 + 2 * maxj + 4;
        LocalXY lx = local_xy(C_, P, len);
        std::vector<Ser> xp = x0_powers(R, lx.X0, maxj + 1, len);
        for (size_t fi = 0; fi < fs.size(); ++fi) {
            const FElem& f = fs[fi];
            std::vector<Elt> num(W1 - W0, R.zero()), den(W1 - W0, R.zero());
            acc_inf(R, f.a, false, xp, W0, W1, num);
            acc_inf(R, f.b, true, xp, W0, W1, num);
            acc_inf(R, f.u, false, xp, W0, W1, den);
            int vden = -2 * deg(f.u);
            for (int eexp = W0; eexp < vden; ++eexp)
                if (!R.is_zero(num[eexp - W0]))
                    throw validation_error("function has a pole at the place");
            Ser nu(num.begin() + (vden - W0), num.end());
            Ser de(den.begin() + (vden - W0), den.end());
            out[fi] = ser_mul(R, nu, ser_inv(R, de, order), order);
        }
        return out;
    }
    const Field& R = *P.R;
    const Embedding& emb = *P.emb;
    Curve CR = base_change(C_, emb);
    int e = P.ramified ? 2 : 1;
    int maxv = 0;
    std::vector<int> vdens(fs.size(), 0);
    for (size_t fi = 0; fi < fs.size(); ++fi) {
        int s = deg(fs[fi].u) < deg(P.xmin) ? 0 : pol_mult_of(F, fs[fi].u, P.xmin);
        vdens[fi] = e * s;
        maxv = std::max(maxv, vdens[fi]);
    }
    int LS = maxv + order;
    int K = (LS + e - 1) / e;
    Pol xminK = {F.one()};
    for (int i = 0; i < K; ++i) xminK = pol_mul(F, xminK, P.xmin);
    LocalXY lx = local_xy(CR, P, LS);
    for (size_t fi = 0; fi < fs.size(); ++fi) {
        const FElem& f = fs[fi];
        Pol Ar = pol_mod(F, f.a, xminK), Br = pol_mod(F, f.b, xminK), Ur = pol_mod(F, f.u, xminK);
        Ser num = eval_pol(R, emb, Ar, lx.xs, LS);
        ser_add_in(R, num, ser_mul(R, eval_pol(R, emb, Br, lx.xs, LS), lx.ys, LS));
        Ser den = eval_pol(R, emb, Ur, lx.xs, LS);
        int vden = vdens[fi];
        if (R.is_zero(den[vden])) throw internal_error("denominator valuation mismatch");
        int vnum = first_nonzero(R, num);
        if (vnum < 0) {  // valuation at least LS >= vden + order: the jet vanishes
            out[fi] = ser_make(R, order);
            continue;
        }
        if (vnum < vden) throw validation_error("function has a pole at the place");
        Ser nu(num.begin() + vden, num.end());
        Ser de(den.begin() + vden, den.end());
        out[fi] = ser_mul(R, nu, ser_inv(R, de, order), order);
    }
    return out;
}

std::vector<Elt> FuncField::jet(const FElem& f, const Place& P, int order) const {
    return jet_block({f}, P, order)[0];
}

Elt FuncField::evaluate(const FElem& f, const Place& P) const { return jet(f, P, 1)[0]; }

int FuncField::valuation(const FElem& f, const Place& P) const {
    const Field& F = base();
    if (is_zero(f)) throw validation_error("valuation of the zero function");
    if (P.infinity) {
        const Field& R = F;
        int da = deg(f.a), db = deg(f.b), du = deg(f.u);
        int lo = std::min({da >= 0 ? -2 * da : 0, db >= 0 ? -2 * db - 3 : 0, 0});
        int V = 2 * std::max(da, db + 2) + 6;
        int maxj = std::max({da, db + 1, 0});
        int len = V - lo + 2 * maxj + 4;
        LocalXY lx = local_xy(C_, P, len);
        std::vector<Ser> xp = x0_powers(R, lx.X0, maxj + 1, len);
        std::vector<Elt> num(V - lo, R.zero());
        acc_inf(R, f.a, false, xp, lo, V, num);
        acc_inf(R, f.b, true, xp, lo, V, num);
        int idx = first_nonzero(R, num);
        if (idx < 0) throw internal_error("could not locate the leading coefficient at infinity");
        return lo + idx + 2 * du;
    }
    const Field& R = *P.R;
    const Embedding& emb = *P.emb;
    Curve CR = base_change(C_, emb);
    int e = P.ramified ? 2 : 1;
    int sU = deg(f.u) < deg(P.xmin) ? 0 : pol_mult_of(F, f.u, P.xmin);
    Pol nm = norm_num(f);
    int sN = deg(nm) < deg(P.xmin) ? 0 : pol_mult_of(F, nm, P.xmin);
    int LS = e * sN + 1;
    int K = sN + 1;
    Pol xminK = {F.one()};
    for (int i = 0; i < K; ++i) xminK = pol_mul(F, xminK, P.xmin);
    LocalXY lx = local_xy(CR, P, LS);
    Pol Ar = pol_mod(F, f.a, xminK), Br = pol_mod(F, f.b, xminK);
    Ser num = eval_pol(R, emb, Ar, lx.xs, LS);
    ser_add_in(R, num, ser_mul(R, eval_pol(R, emb, Br, lx.xs, LS), lx.ys, LS));
    int vnum = first_nonzero(R, num);
    if (vnum < 0) throw internal_error("could not locate the leading coefficient");
    return vnum - e * sU;
}

// ---------------------------------------------------------------------------
// Riemann-Roch spaces

std::vector<FElem> FuncField::rr_basis(const Divisor& D, const std::vector<FElem>* extend) const {
    const Field& F = base();
    if (!D.effective() || D.degree() < 1)
        throw validation_error("divisor must be effective of degree at least 1");
    int degD = (int)D.degree();
    int ninf = 0;
    struct Group {
        Pol xmin;
        int exp = 0;
        std::vector<std::pair<Place, int>> places;
    };
    std::map<std::vector<int>, Group> groups;
    for (const auto& [P, m] : D.entries()) {
        if (P.infinity) {
            ninf = m;
            continue;
        }
        if (P.dx != P.d)
            throw validation_error("divisor contains a place whose x-coordinate does not generate its residue field");
        Group& g = groups[pol_key(P.xmin)];
        if (g.places.empty()) g.xmin = P.xmin;
        int e = P.ramified ? 2 : 1;
        g.exp = std::max(g.exp, (m + e - 1) / e);
        g.places.emplace_back(P, m);
    }
    Pol U = {F.one()};
    for (auto& [key, g] : groups)
        for (int i = 0; i < g.exp; ++i) U = pol_mul(F, U, g.xmin);
    int M = 2 * deg(U) + ninf;
    int capA = M / 2;
    int capB = M >= 3 ? (M - 3) / 2 : -1;
    int nA = capA + 1, nB = capB + 1;
    int nvars = nA + nB;

    std::vector<std::vector<Elt>> rows;
    for (auto& [key, g] : groups) {
        std::vector<std::pair<Place, int>> above = g.places;
        size_t real = above.size();
        for (size_t i = 0; i < real; ++i) {
            Place Pc = conjugate(above[i].first);
            bool seen = false;
            for (const auto& [Q, mm] : above)
                if (place_eq(Pc, Q)) { seen = true; break; }
            if (!seen) above.emplace_back(std::move(Pc), 0);
        }
        std::sort(above.begin(), above.end(),
                  [](const auto& a, const auto& b) { return place_less(a.first, b.first); });
        for (const auto& [P, m] : above) {
            int e = P.ramified ? 2 : 1;
            int req = e * g.exp - m;
            if (req <= 0) continue;
            const Field& R = *P.R;
            Curve CR = base_change(C_, *P.emb);
            LocalXY lx = local_xy(CR, P, req);
            std::vector<std::vector<Elt>> mono(nvars);
            Ser xp = ser_make(R, req);
            xp[0] = R.one();
            for (int j = 0; j <= capA; ++j) {
                mono[j] = xp;
                if (j <= capB) mono[nA + j] = ser_mul(R, xp, lx.ys, req);
                if (j < capA) xp = ser_mul(R, xp, lx.xs, req);
            }
            for (int k = 0; k < req; ++k) {
                std::vector<std::vector<Elt>> coord(nvars);
                for (int c = 0; c < nvars; ++c) coord[c] = P.rb->to_coords(mono[c][k]);
                for (int s = 0; s < P.d; ++s) {
                    std::vector<Elt> row(nvars);
                    for (int c = 0; c < nvars; ++c) row[c] = coord[c][s];
                    rows.push_back(std::move(row));
                }
            }
        }
    }
    Mat C(F, (int)rows.size(), nvars);
    for (int i = 0; i < (int)rows.size(); ++i)
        for (int j = 0; j < nvars; ++j) C.at(i, j) = rows[i][j];
    std::vector<std::vector<Elt>> ns = mat_nullspace(F, C);
    if ((int)ns.size() != degD) throw internal_error("Riemann-Roch dimension mismatch");

    // canonical form: echelonize with the coordinates ordered by decreasing
    // pole order at infinity (x^j has order 2j, x^j y has order 2j + 3), then
    // list by increasing leading pole order
    std::vector<int> ord(nvars);
    std::iota(ord.begin(), ord.end(), 0);
    auto pole = [&](int c) { return c < nA ? 2 * c : 2 * (c - nA) + 3; };
    std::sort(ord.begin(), ord.end(), [&](int a, int b) { return pole(a) > pole(b); });
    Mat V(F, degD, nvars);
    for (int i = 0; i < degD; ++i)
        for (int k = 0; k < nvars; ++k) V.at(i, k) = ns[i][ord[k]];
    mat_rref(F, V);
    std::vector<std::vector<Elt>> canon;
    for (int i = degD - 1; i >= 0; --i) {
        std::vector<Elt> v(nvars, F.zero());
        for (int k = 0; k < nvars; ++k) v[ord[k]] = V.at(i, k);
        canon.push_back(std::move(v));
    }
    auto to_elem = [&](const std::vector<Elt>& v) {
        Pol a(v.begin(), v.begin() + nA);
        Pol b(v.begin() + nA, v.end());
        return normalized(std::move(a), std::move(b), U);
    };
    std::vector<FElem> out;
    if (!extend) {
        for (const auto& v : canon) out.push_back(to_elem(v));
        return out;
    }
    if ((int)extend->size() > degD) throw validation_error("extension basis is too large");
    GaussAcc acc(F, nvars);
    for (const FElem& f : *extend) {
        Pol r;
        Pol w = pol_divmod(F, U, f.u, r);
        if (!pol_is_zero(r)) throw validation_error("extension basis has an incompatible denominator");
        Pol Aw = pol_mul(F, f.a, w), Bw = pol_mul(F, f.b, w);
        if (deg(Aw) > capA || deg(Bw) > capB)
            throw validation_error("extension basis does not lie in the space");
        std::vector<Elt> v(nvars, F.zero());
        for (int i = 0; i <= deg(Aw); ++i) v[i] = Aw[i];
        for (int i = 0; i <= deg(Bw); ++i) v[nA + i] = Bw[i];
        for (const auto& row : rows) {
            Elt dot = F.zero();
            for (int j = 0; j < nvars; ++j) F.addmul(dot, row[j], v[j]);
            if (!F.is_zero(dot)) throw validation_error("extension basis does not lie in the space");
        }
        if (!acc.try_add(v)) throw validation_error("extension basis is linearly dependent");
        out.push_back(f);
    }
    for (const auto& v : canon) {
        if ((int)out.size() == degD) break;
        if (acc.try_add(v)) out.push_back(to_elem(v));
    }
    if ((int)out.size() != degD) throw internal_error("could not complete the basis");
    return out;
}

Point FuncField::sigma(const Place& P) const {
    if (P.infinity) return Point();
    const Field& R = *P.R;
    Curve CR = base_change(C_, *P.emb);
    u128 q = base().size();
    Point acc;
    Elt cx = P.x0, cy = P.y0;
    for (int i = 0; i < P.d; ++i) {
        acc = CR.add(acc, Point(cx, cy));
        cx = R.pow(cx, q);
        cy = R.pow(cy, q);
    }
    if (acc.inf) return Point();
    if (!(R.pow(acc.x, q) == acc.x) || !(R.pow(acc.y, q) == acc.y))
        throw internal_error("orbit sum is not rational over the base field");
    return Point(P.rb->down(acc.x), P.rb->down(acc.y));
}

Point FuncField::sigma(const Divisor& D) const {
    Point acc;
    for (const auto& [P, m] : D.entries()) acc = C_.add(acc, C_.mul(sigma(P), m));
    return acc;
}

int FuncField::speciality(const Divisor& D) const {
    long long dg = D.degree();
    if (dg > 0) return 0;
    if (dg < 0) return (int)(-dg);
    return sigma(D).inf ? 1 : 0;
}

}  // namespace ellmul
