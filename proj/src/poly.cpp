#include "ellmul/poly.hpp"

#include "ellmul/errors.hpp"

namespace ellmul {

Pol pol_trim(Pol f) {
    while (!f.empty()) {
        bool z = true;
        for (auto c : f.back())
            if (c) { z = false; break; }
        if (!z) break;
        f.pop_back();
    }
    return f;
}

Pol pol_zero() { return {}; }

Pol pol_const(const Field& F, const Elt& c) {
    if (F.is_zero(c)) return {};
    return {c};
}

Pol pol_x(const Field& F) { return {F.zero(), F.one()}; }

Pol pol_from_ints(const Field& F, const std::vector<long long>& c) {
    Pol f;
    for (auto v : c) f.push_back(F.from_int(v));
    return pol_trim(std::move(f));
}

bool pol_eq(const Pol& a, const Pol& b) { return a == b; }

bool pol_is_zero(const Pol& f) { return f.empty(); }

Pol pol_add(const Field& F, const Pol& a, const Pol& b) {
    Pol r(std::max(a.size(), b.size()), F.zero());
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[i];
    for (size_t i = 0; i < b.size(); ++i) r[i] = F.add(r[i], b[i]);
    return pol_trim(std::move(r));
}

Pol pol_sub(const Field& F, const Pol& a, const Pol& b) {
    Pol r(std::max(a.size(), b.size()), F.zero());
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[i];
    for (size_t i = 0; i < b.size(); ++i) r[i] = F.sub(r[i], b[i]);
    return pol_trim(std::move(r));
}

Pol pol_neg(const Field& F, const Pol& a) {
    Pol r = a;
    for (auto& c : r) c = F.neg(c);
    return r;
}

Pol pol_mul(const Field& F, const Pol& a, const Pol& b) {
    if (a.empty() || b.empty()) return {};
    Pol r(a.size() + b.size() - 1, F.zero());
    for (size_t i = 0; i < a.size(); ++i) {
        if (F.is_zero(a[i])) continue;
        for (size_t j = 0; j < b.size(); ++j) F.addmul(r[i + j], a[i], b[j]);
    }
    return pol_trim(std::move(r));
}

Pol pol_smul(const Field& F, const Elt& c, const Pol& a) {
    if (F.is_zero(c)) return {};
    Pol r = a;
    for (auto& x : r) x = F.mul(x, c);
    return pol_trim(std::move(r));
}

Pol pol_shift(const Pol& a, int k) {
    if (a.empty()) return {};
    Pol r(a.size() + k);
    for (int i = 0; i < k; ++i) r[i] = Elt(a[0].size(), 0);
    for (size_t i = 0; i < a.size(); ++i) r[i + k] = a[i];
    return r;
}

Pol pol_divmod(const Field& F, const Pol& a, const Pol& b, Pol& r) {
    if (b.empty()) throw internal_error("polynomial division by zero");
    r = a;
    if (deg(a) < deg(b)) return {};
    Elt li = F.inv(b.back());
    Pol q(deg(a) - deg(b) + 1, F.zero());
    while (deg(r) >= deg(b)) {
        Elt c = F.mul(r.back(), li);
        int shift = deg(r) - deg(b);
        q[shift] = c;
        for (size_t i = 0; i < b.size(); ++i)
            r[shift + i] = F.sub(r[shift + i], F.mul(c, b[i]));
        r = pol_trim(std::move(r));
    }
    return pol_trim(std::move(q));
}

Pol pol_mod(const Field& F, const Pol& a, const Pol& b) {
    Pol r;
    pol_divmod(F, a, b, r);
    return r;
}

Pol pol_monic(const Field& F, const Pol& a) {
    if (a.empty()) return a;
    return pol_smul(F, F.inv(a.back()), a);
}

Pol pol_gcd(const Field& F, Pol a, Pol b) {
    while (!b.empty()) {
        Pol r = pol_mod(F, a, b);
        a = std::move(b);
        b = std::move(r);
    }
    return pol_monic(F, a);
}

Pol pol_pow_mod(const Field& F, Pol base, u128 e, const Pol& mod) {
    Pol r = {F.one()};
    base = pol_mod(F, base, mod);
    while (e) {
        if (e & 1) r = pol_mod(F, pol_mul(F, r, base), mod);
        base = pol_mod(F, pol_mul(F, base, base), mod);
        e >>= 1;
    }
    return r;
}

Elt pol_eval(const Field& F, const Pol& f, const Elt& x) {
    Elt acc = F.zero();
    for (int i = deg(f); i >= 0; --i) acc = F.add(F.mul(acc, x), f[i]);
    return acc;
}

Pol pol_lift(const Embedding& emb, const Pol& f) {
    Pol r;
    for (const auto& c : f) r.push_back(emb.apply(c));
    return r;
}

bool pol_is_irreducible(const Field& F, const Pol& f) {
    int d = deg(f);
    if (d < 1) return false;
    if (d == 1) return true;
    Pol x = pol_x(F);
    Pol r = x;
    for (int i = 1; i <= d / 2; ++i) {
        r = pol_pow_mod(F, r, F.size(), f);
        Pol g = pol_gcd(F, f, pol_sub(F, r, x));
        if (deg(g) > 0) return false;
    }
    return true;
}

Pol random_irreducible(const Field& F, int d, Rng& rng) {
    if (d < 1) throw validation_error("irreducible degree must be >= 1");
    for (int tries = 0; tries < 10000; ++tries) {
        Pol f(d + 1, F.zero());
        f[d] = F.one();
        for (int i = 0; i < d; ++i) f[i] = F.random(rng);
        if (pol_is_irreducible(F, f)) return f;
    }
    throw construction_error("no irreducible polynomial found (degree too large?)");
}

FieldPtr extension_field(std::uint32_t p, int d, Rng rng) {
    Field base(p);
    if (d == 1) return std::make_shared<Field>(p);
    Pol m = random_irreducible(base, d, rng);
    std::vector<std::uint8_t> mod;
    for (const auto& c : m) mod.push_back(c[0]);
    return std::make_shared<Field>(p, std::move(mod));
}

}  // namespace ellmul
