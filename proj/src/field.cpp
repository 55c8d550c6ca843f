#include "ellmul/field.hpp"

#include <algorithm>

#include "ellmul/errors.hpp"
#include "ellmul/poly.hpp"

namespace ellmul {

namespace {

bool small_prime(std::uint32_t p) {
    if (p < 2) return false;
    for (std::uint32_t d = 2; d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

// F_p[z] helpers on raw coefficient vectors (used below the Elt layer).
using BPol = std::vector<std::uint8_t>;

BPol btrim(BPol f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
    return f;
}

BPol bmul(std::uint32_t p, const BPol& a, const BPol& b) {
    if (a.empty() || b.empty()) return {};
    BPol r(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i) {
        if (!a[i]) continue;
        for (size_t j = 0; j < b.size(); ++j)
            r[i + j] = static_cast<std::uint8_t>((r[i + j] + a[i] * b[j]) % p);
    }
    return btrim(std::move(r));
}

std::uint32_t binv_scalar(std::uint32_t p, std::uint32_t a) {
    // p is tiny, so a linear scan is plenty.
    for (std::uint32_t x = 1; x < p; ++x)
        if (a * x % p == 1) return x;
    throw internal_error("scalar inverse of zero");
}

// a mod b, b nonzero.
BPol bmod(std::uint32_t p, BPol a, const BPol& b) {
    a = btrim(std::move(a));
    std::uint32_t lead_inv = binv_scalar(p, b.back());
    while (a.size() >= b.size() && !a.empty()) {
        std::uint32_t c = a.back() * lead_inv % p;
        size_t shift = a.size() - b.size();
        for (size_t i = 0; i < b.size(); ++i) {
            std::uint32_t v = a[shift + i] + p * p - c * b[i] % p;
            a[shift + i] = static_cast<std::uint8_t>(v % p);
        }
        a = btrim(std::move(a));
    }
    return a;
}

// Extended gcd: returns g (monic) and s with s*a = g mod b0.
void bextgcd_mod(std::uint32_t p, BPol a, BPol b, BPol& g, BPol& s) {
    BPol r0 = btrim(std::move(b)), r1 = btrim(std::move(a));
    BPol s0 = {}, s1 = {1};
    while (!r1.empty()) {
        // r0 = q*r1 + r
        BPol r = r0, q;
        std::uint32_t lead_inv = binv_scalar(p, r1.back());
        q.assign(r.size() >= r1.size() ? r.size() - r1.size() + 1 : 0, 0);
        while (r.size() >= r1.size() && !r.empty()) {
            std::uint32_t c = r.back() * lead_inv % p;
            size_t shift = r.size() - r1.size();
            q[shift] = static_cast<std::uint8_t>(c);
            for (size_t i = 0; i < r1.size(); ++i) {
                std::uint32_t v = r[shift + i] + p * p - c * r1[i] % p;
                r[shift + i] = static_cast<std::uint8_t>(v % p);
            }
            r = btrim(std::move(r));
        }
        q = btrim(std::move(q));
        // (r0, r1) <- (r1, r);  (s0, s1) <- (s1, s0 - q*s1)
        BPol qs = bmul(p, q, s1);
        size_t n = std::max(s0.size(), qs.size());
        BPol s2(n, 0);
        for (size_t i = 0; i < n; ++i) {
            std::uint32_t v = (i < s0.size() ? s0[i] : 0) + p - (i < qs.size() ? qs[i] : 0);
            s2[i] = static_cast<std::uint8_t>(v % p);
        }
        s2 = btrim(std::move(s2));
        r0 = std::move(r1); r1 = std::move(r);
        s0 = std::move(s1); s1 = std::move(s2);
    }
    std::uint32_t c = binv_scalar(p, r0.back());
    for (auto& v : r0) v = static_cast<std::uint8_t>(v * c % p);
    for (auto& v : s0) v = static_cast<std::uint8_t>(v * c % p);
    g = std::move(r0);
    s = std::move(s0);
}

}  // namespace

Field::Field(std::uint32_t p) : Field(p, std::vector<std::uint8_t>{0, 1}) {}

Field::Field(std::uint32_t p, std::vector<std::uint8_t> modulus) : p_(p), mod_(std::move(modulus)) {
    if (!small_prime(p_)) throw validation_error("field characteristic must be prime");
    mod_ = btrim(std::move(mod_));
    k_ = static_cast<int>(mod_.size()) - 1;
    if (k_ < 1) throw validation_error("field modulus must have degree >= 1");
    for (auto& c : mod_)
        c = static_cast<std::uint8_t>(c % p_);
    if (mod_.back() % p_ != 1) {
        std::uint32_t ci = binv_scalar(p_, mod_.back() % p_);
        for (auto& c : mod_) c = static_cast<std::uint8_t>(c * ci % p_);
    }
    size_ = 1;
    for (int i = 0; i < k_; ++i) {
        if (size_ > (u128(1) << 120) / p_) throw validation_error("field size beyond desk scale");
        size_ *= p_;
    }
    if (k_ > 1) {
        // The modulus must be irreducible over the prime field.
        Field base(p_);
        Pol m;
        for (auto c : mod_) m.push_back(base.from_int(c));
        m = pol_trim(std::move(m));
        if (!pol_is_irreducible(base, m)) throw validation_error("field modulus is reducible");
    }
}

Elt Field::one() const {
    Elt e(k_, 0);
    e[0] = 1;
    return e;
}

Elt Field::from_int(long long v) const {
    long long m = v % static_cast<long long>(p_);
    if (m < 0) m += p_;
    Elt e(k_, 0);
    e[0] = static_cast<std::uint8_t>(m);
    return e;
}

Elt Field::gen(int j) const {
    if (j < 0 || j >= k_) throw internal_error("generator power out of range");
    Elt e(k_, 0);
    e[j] = 1;
    return e;
}

bool Field::is_zero(const Elt& a) const {
    for (auto c : a)
        if (c) return false;
    return true;
}

Elt Field::add(const Elt& a, const Elt& b) const {
    Elt r(k_);
    for (int i = 0; i < k_; ++i) r[i] = static_cast<std::uint8_t>((a[i] + b[i]) % p_);
    return r;
}

Elt Field::sub(const Elt& a, const Elt& b) const {
    Elt r(k_);
    for (int i = 0; i < k_; ++i) r[i] = static_cast<std::uint8_t>((a[i] + p_ - b[i]) % p_);
    return r;
}

Elt Field::neg(const Elt& a) const {
    Elt r(k_);
    for (int i = 0; i < k_; ++i) r[i] = static_cast<std::uint8_t>((p_ - a[i]) % p_);
    return r;
}

Elt Field::mul(const Elt& a, const Elt& b) const {
    if (k_ == 1) {
        Elt r(1);
        r[0] = static_cast<std::uint8_t>(a[0] * b[0] % p_);
        return r;
    }
    std::vector<std::uint32_t> t(2 * k_ - 1, 0);
    for (int i = 0; i < k_; ++i) {
        if (!a[i]) continue;
        for (int j = 0; j < k_; ++j) t[i + j] += a[i] * b[j];
    }
    // Reduce by the monic modulus.
    for (int i = 2 * k_ - 2; i >= k_; --i) {
        std::uint32_t c = t[i] % p_;
        if (!c) continue;
        for (int j = 0; j < k_; ++j)
            t[i - k_ + j] += (p_ - mod_[j] % p_) * c;
        t[i] = 0;
    }
    Elt r(k_);
    for (int i = 0; i < k_; ++i) r[i] = static_cast<std::uint8_t>(t[i] % p_);
    return r;
}

void Field::addmul(Elt& acc, const Elt& a, const Elt& b) const {
    if (k_ == 1) {
        acc[0] = static_cast<std::uint8_t>((acc[0] + a[0] * b[0]) % p_);
        return;
    }
    Elt t = mul(a, b);
    for (int i = 0; i < k_; ++i) acc[i] = static_cast<std::uint8_t>((acc[i] + t[i]) % p_);
}

Elt Field::smul(const Elt& a, std::uint32_t c) const {
    c %= p_;
    Elt r(k_);
    for (int i = 0; i < k_; ++i) r[i] = static_cast<std::uint8_t>(a[i] * c % p_);
    return r;
}

Elt Field::inv(const Elt& a) const {
    if (is_zero(a)) throw internal_error("inverse of zero field element");
    if (k_ == 1) {
        Elt r(1);
        r[0] = static_cast<std::uint8_t>(binv_scalar(p_, a[0]));
        return r;
    }
    BPol g, s;
    bextgcd_mod(p_, btrim(a), mod_, g, s);
    if (g.size() != 1) throw internal_error("field element not invertible: modulus reducible?");
    s = bmod(p_, std::move(s), mod_);
    Elt r(k_, 0);
    for (size_t i = 0; i < s.size(); ++i) r[i] = s[i];
    return r;
}

Elt Field::pow(const Elt& a, u128 e) const {
    Elt base = a, r = one();
    while (e) {
        if (e & 1) r = mul(r, base);
        base = mul(base, base);
        e >>= 1;
    }
    return r;
}

Elt Field::random(Rng& rng) const {
    Elt r(k_);
    for (int i = 0; i < k_; ++i) r[i] = static_cast<std::uint8_t>(rng.below(p_));
    return r;
}

Elt Field::element_at(u128 idx) const {
    Elt r(k_);
    for (int i = 0; i < k_; ++i) {
        r[i] = static_cast<std::uint8_t>(static_cast<std::uint64_t>(idx % p_));
        idx /= p_;
    }
    return r;
}

std::uint32_t Field::trace(const Elt& a) const {
    Elt t = zero(), cur = a;
    for (int i = 0; i < k_; ++i) {
        t = add(t, cur);
        cur = pow(cur, p_);
    }
    for (int i = 1; i < k_; ++i)
        if (t[i]) throw internal_error("trace left the prime subfield");
    return t[0];
}

std::optional<Elt> sqrt_elt(const Field& F, const Elt& a) {
    if (F.is_zero(a)) return F.zero();
    if (F.p() == 2) return F.pow(a, F.size() / 2);  // Frobenius inverse
    u128 h = (F.size() - 1) / 2;
    Elt ls = F.pow(a, h);
    if (!(ls == F.one())) return std::nullopt;
    if (F.size() % 4 == 3) return F.pow(a, (F.size() + 1) / 4);
    // Tonelli-Shanks.  |F| - 1 = 2^s * t with t odd.
    u128 t = F.size() - 1;
    int s = 0;
    while ((t & 1) == 0) { t >>= 1; ++s; }
    Elt nr;
    bool found = false;
    for (u128 i = 1; i < F.size(); ++i) {
        Elt g = F.element_at(i);
        if (F.is_zero(g)) continue;
        if (!(F.pow(g, h) == F.one())) { nr = g; found = true; break; }
    }
    if (!found) throw internal_error("no quadratic non-residue found");
    Elt c = F.pow(nr, t);
    Elt x = F.pow(a, (t + 1) / 2);
    Elt b = F.pow(a, t);
    int m = s;
    while (!(b == F.one())) {
        int i = 0;
        Elt bb = b;
        while (!(bb == F.one())) { bb = F.mul(bb, bb); ++i; }
        Elt g2 = c;
        for (int j = 0; j < m - i - 1; ++j) g2 = F.mul(g2, g2);
        x = F.mul(x, g2);
        c = F.mul(g2, g2);
        b = F.mul(b, c);
        m = i;
    }
    return x;
}

std::optional<Elt> solve_artin_schreier(const Field& F, const Elt& c) {
    if (F.p() != 2) throw validation_error("Artin-Schreier solve needs characteristic 2");
    if (F.trace(c) != 0) return std::nullopt;
    int K = F.dim();
    // Columns of y |-> y^2 + y on the F_2 coordinate basis, then Gaussian
    // elimination on the augmented system.
    std::vector<std::vector<std::uint8_t>> M(K, std::vector<std::uint8_t>(K + 1, 0));
    for (int j = 0; j < K; ++j) {
        Elt e = F.gen(j);
        Elt im = F.add(F.mul(e, e), e);
        for (int i = 0; i < K; ++i) M[i][j] = im[i];
    }
    for (int i = 0; i < K; ++i) M[i][K] = c[i];
    std::vector<int> pivot_col;
    int r = 0;
    for (int col = 0; col < K && r < K; ++col) {
        int pr = -1;
        for (int i = r; i < K; ++i)
            if (M[i][col]) { pr = i; break; }
        if (pr < 0) continue;
        std::swap(M[r], M[pr]);
        for (int i = 0; i < K; ++i)
            if (i != r && M[i][col])
                for (int j = col; j <= K; ++j) M[i][j] ^= M[r][j];
        pivot_col.push_back(col);
        ++r;
    }
    for (int i = r; i < K; ++i)
        if (M[i][K]) throw internal_error("trace-zero Artin-Schreier system inconsistent");
    Elt y = F.zero();
    for (int i = 0; i < r; ++i) y[pivot_col[i]] = M[i][K];
    return y;
}

namespace {

Elt find_root(const Field& big, const std::vector<Elt>& f) {
    // f has coefficients in `big`, degree 1 or 2; returns the lex-least root.
    if (f.size() == 2) {
        return big.neg(big.div(f[0], f[1]));
    }
    if (f.size() != 3) throw internal_error("find_root expects degree <= 2");
    Elt a = f[2], b = f[1], c = f[0];
    std::vector<Elt> roots;
    if (big.p() != 2) {
        // (-b +- sqrt(b^2 - 4ac)) / 2a
        Elt disc = big.sub(big.mul(b, b), big.smul(big.mul(a, c), 4));
        auto s = sqrt_elt(big, disc);
        if (!s) throw internal_error("small-field modulus has no root in extension");
        Elt inv2a = big.inv(big.smul(a, 2));
        roots.push_back(big.mul(big.add(big.neg(b), *s), inv2a));
        roots.push_back(big.mul(big.sub(big.neg(b), *s), inv2a));
    } else {
        Elt ai = big.inv(a);
        b = big.mul(b, ai);
        c = big.mul(c, ai);
        if (big.is_zero(b)) {
            roots.push_back(*sqrt_elt(big, big.neg(c)));
        } else {
            // y = b*z with z^2 + z = c / b^2.
            auto z = solve_artin_schreier(big, big.div(c, big.mul(b, b)));
            if (!z) throw internal_error("small-field modulus has no root in extension");
            roots.push_back(big.mul(b, *z));
            roots.push_back(big.mul(b, big.add(*z, big.one())));
        }
    }
    return *std::min_element(roots.begin(), roots.end());
}

}  // namespace

Embedding::Embedding(FieldPtr small, FieldPtr big) : small_(std::move(small)), big_(std::move(big)) {
    if (small_->p() != big_->p()) throw validation_error("embedding needs equal characteristic");
    if (big_->dim() % small_->dim() != 0) throw validation_error("no embedding: degree does not divide");
    if (small_->dim() == 1) {
        gen_image_ = big_->zero();
        return;
    }
    if (small_->same(*big_)) {
        gen_image_ = big_->gen();
        return;
    }
    if (small_->dim() > 2) throw validation_error("embeddings only implemented for base degree <= 2");
    std::vector<Elt> m;
    for (auto c : small_->modulus()) m.push_back(big_->from_int(c));
    gen_image_ = find_root(*big_, m);
    // Sanity: the image really satisfies the small modulus.
    Elt acc = big_->zero();
    for (int i = static_cast<int>(small_->modulus().size()) - 1; i >= 0; --i)
        acc = big_->add(big_->mul(acc, gen_image_), big_->from_int(small_->modulus()[i]));
    if (!big_->is_zero(acc)) throw internal_error("embedding image fails its minimal polynomial");
}

Elt Embedding::apply(const Elt& a) const {
    if (small_->dim() == 1) return big_->from_int(a[0]);
    Elt acc = big_->zero();
    for (int i = small_->dim() - 1; i >= 0; --i)
        acc = big_->add(big_->mul(acc, gen_image_), big_->from_int(a[i]));
    return acc;
}

RelBasis::RelBasis(const Embedding& emb, const Elt& xi, int d) : emb_(emb), d_(d) {
    basis_.reserve(d);
    Elt xp = emb.big().one();
    for (int j = 0; j < d; ++j) {
        basis_.push_back(xp);
        xp = emb.big().mul(xp, xi);
    }
    init();
}

RelBasis::RelBasis(const Embedding& emb, std::vector<Elt> basis)
    : emb_(emb), basis_(std::move(basis)), d_(static_cast<int>(basis_.size())) {
    init();
}

void RelBasis::init() {
    const Field& big = emb_.big();
    const Field& small = emb_.small();
    K_ = big.dim();
    int e = small.dim();
    if (d_ * e != K_) throw internal_error("relative basis dimensions do not match");
    // Column (j*e + s): coordinates of emb(z^s) * basis_j over F_p.
    std::vector<std::uint8_t> M(static_cast<size_t>(K_) * K_, 0);
    for (int j = 0; j < d_; ++j) {
        for (int s = 0; s < e; ++s) {
            Elt v = big.mul(emb_.apply(small.gen(s)), basis_[j]);
            for (int i = 0; i < K_; ++i) M[static_cast<size_t>(i) * K_ + j * e + s] = v[i];
        }
    }
    // Invert over F_p via Gauss-Jordan.
    std::uint32_t p = big.p();
    std::vector<std::uint8_t> A = M, I(static_cast<size_t>(K_) * K_, 0);
    for (int i = 0; i < K_; ++i) I[static_cast<size_t>(i) * K_ + i] = 1;
    for (int col = 0, row = 0; col < K_; ++col, ++row) {
        int pr = -1;
        for (int i = row; i < K_; ++i)
            if (A[static_cast<size_t>(i) * K_ + col]) { pr = i; break; }
        if (pr < 0) throw internal_error("relative basis is singular");
        for (int j = 0; j < K_; ++j) {
            std::swap(A[static_cast<size_t>(row) * K_ + j], A[static_cast<size_t>(pr) * K_ + j]);
            std::swap(I[static_cast<size_t>(row) * K_ + j], I[static_cast<size_t>(pr) * K_ + j]);
        }
        std::uint32_t piv = A[static_cast<size_t>(row) * K_ + col];
        std::uint32_t pi = binv_scalar(p, piv);
        for (int j = 0; j < K_; ++j) {
            A[static_cast<size_t>(row) * K_ + j] = static_cast<std::uint8_t>(A[static_cast<size_t>(row) * K_ + j] * pi % p);
            I[static_cast<size_t>(row) * K_ + j] = static_cast<std::uint8_t>(I[static_cast<size_t>(row) * K_ + j] * pi % p);
        }
        for (int i = 0; i < K_; ++i) {
            if (i == row) continue;
            std::uint32_t c = A[static_cast<size_t>(i) * K_ + col];
            if (!c) continue;
            for (int j = 0; j < K_; ++j) {
                A[static_cast<size_t>(i) * K_ + j] = static_cast<std::uint8_t>(
                    (A[static_cast<size_t>(i) * K_ + j] + (p - 1) * c * A[static_cast<size_t>(row) * K_ + j]) % p);
                I[static_cast<size_t>(i) * K_ + j] = static_cast<std::uint8_t>(
                    (I[static_cast<size_t>(i) * K_ + j] + (p - 1) * c * I[static_cast<size_t>(row) * K_ + j]) % p);
            }
        }
    }
    inv_ = std::move(I);
}

std::vector<Elt> RelBasis::to_coords(const Elt& a) const {
    const Field& small = emb_.small();
    std::uint32_t p = emb_.big().p();
    int e = small.dim();
    std::vector<std::uint32_t> y(K_, 0);
    for (int i = 0; i < K_; ++i)
        for (int j = 0; j < K_; ++j)
            y[i] += inv_[static_cast<size_t>(i) * K_ + j] * a[j];
    std::vector<Elt> out(d_, small.zero());
    for (int j = 0; j < d_; ++j)
        for (int s = 0; s < e; ++s)
            out[j][s] = static_cast<std::uint8_t>(y[static_cast<size_t>(j) * e + s] % p);
    return out;
}

Elt RelBasis::from_coords(const std::vector<Elt>& c) const {
    const Field& big = emb_.big();
    Elt acc = big.zero();
    for (int j = 0; j < d_; ++j)
        acc = big.add(acc, big.mul(emb_.apply(c[j]), basis_[j]));
    return acc;
}

Elt RelBasis::down(const Elt& a) const {
    auto c = to_coords(a);
    for (int j = 1; j < d_; ++j)
        if (!emb_.small().is_zero(c[j])) throw internal_error("element is not in the subfield");
    return c[0];
}

}  // namespace ellmul
