#include "ellmul/tensor.hpp"

#include <sstream>
#include <utility>

#include "ellmul/cost.hpp"
#include "ellmul/errors.hpp"

namespace ellmul {

namespace {

Elt dot(const Field& F, const std::vector<Elt>& v, const std::vector<Elt>& w) {
    Elt s = F.zero();
    for (std::size_t i = 0; i < v.size(); ++i) F.addmul(s, v[i], w[i]);
    return s;
}

long long int_of(const Field& F, const Elt& a) {
    long long v = 0;
    for (int i = F.dim() - 1; i >= 0; --i) v = v * F.p() + a[i];
    return v;
}

}  // namespace

std::vector<Elt> tensor_apply(const TensorDecomposition& T, const std::vector<Elt>& a,
                              const std::vector<Elt>& b) {
    const Field& F = *T.F;
    if (static_cast<int>(a.size()) != T.n || static_cast<int>(b.size()) != T.n)
        throw validation_error("operand length does not match n");
    auto x = mat_vec(F, T.basis_change, a);
    auto y = mat_vec(F, T.basis_change, b);
    std::vector<Elt> res(T.n, F.zero());
    for (const TensorProduct& tp : T.products) {
        Elt m = F.mul(dot(F, tp.phi, x), dot(F, tp.phi, y));
        if (F.is_zero(m)) continue;
        for (int i = 0; i < T.n; ++i) F.addmul(res[i], m, tp.w[i]);
    }
    return res;
}

std::string VerifyReport::describe() const {
    auto yn = [](bool b) { return b ? "yes" : "no"; };
    std::ostringstream os;
    os << "multiplies: " << yn(multiplies) << " (" << pairs_checked << " basis pairs)";
    if (witness) os << ", first failure at pair (" << witness->first << ", " << witness->second << ")";
    os << "; symmetric: " << yn(symmetric) << "; rank consistent: " << yn(rank_consistent)
       << "; Winograd bound met: " << yn(winograd)
       << "; basis change invertible: " << yn(basis_invertible);
    return os.str();
}

VerifyReport tensor_verify(const TensorDecomposition& T) {
    const Field& F = *T.F;
    VerifyReport rep;
    int n = T.n, r = T.rank();

    rep.symmetric = T.symmetric;
    for (const TensorProduct& tp : T.products)
        if (static_cast<int>(tp.phi.size()) != n || static_cast<int>(tp.w.size()) != n)
            rep.symmetric = false;
    rep.rank_consistent = T.declared_rank == r;
    if (!T.provenance.N.empty() && T.provenance.N.size() == T.provenance.U.size()) {
        auto q = static_cast<std::uint32_t>(F.size());
        long long c = 0;
        bool in_range = true;
        for (std::size_t i = 0; i < T.provenance.N.size(); ++i) {
            int d = static_cast<int>(i) + 1;
            if (d > cost_dmax(q) || T.provenance.U[i] > cost_umax()) {
                in_range = false;
                break;
            }
            c += T.provenance.N[i] * cost(q, d, T.provenance.U[i]);
        }
        if (in_range && c != T.declared_rank) rep.rank_consistent = false;
    }
    rep.winograd = r >= 2 * n - 1;
    rep.basis_invertible = T.basis_change.rows == n && T.basis_change.cols == n &&
                           mat_rank(F, T.basis_change) == n;
    if (!rep.symmetric || !rep.basis_invertible || deg(T.h) != n) return rep;

    // phi composed with the basis change: forms acting on power coordinates.
    std::vector<std::vector<Elt>> pb(r, std::vector<Elt>(n, F.zero()));
    for (int t = 0; t < r; ++t)
        for (int k = 0; k < n; ++k) {
            const Elt& c = T.products[t].phi[k];
            if (F.is_zero(c)) continue;
            for (int i = 0; i < n; ++i) F.addmul(pb[t][i], c, T.basis_change.at(k, i));
        }
    // reference products X^i X^j mod h, tabulated by i + j
    std::vector<std::vector<Elt>> pw(2 * n - 1, std::vector<Elt>(n, F.zero()));
    Pol cur = pol_from_ints(F, {1});
    for (int s = 0; s < 2 * n - 1; ++s) {
        for (int i = 0; i <= deg(cur); ++i) pw[s][i] = cur[i];
        cur = pol_mod(F, pol_shift(cur, 1), T.h);
    }

    rep.multiplies = true;
    std::vector<Elt> res(n);
    for (int i = 0; i < n && rep.multiplies; ++i)
        for (int j = 0; j < n && rep.multiplies; ++j) {
            for (int k = 0; k < n; ++k) res[k] = F.zero();
            for (int t = 0; t < r; ++t) {
                Elt m = F.mul(pb[t][i], pb[t][j]);
                if (F.is_zero(m)) continue;
                for (int k = 0; k < n; ++k) F.addmul(res[k], m, T.products[t].w[k]);
            }
            ++rep.pairs_checked;
            if (res != pw[i + j]) {
                rep.multiplies = false;
                rep.witness = {i, j};
            }
        }
    return rep;
}

SlpProgram emit_slp(const TensorDecomposition& T) {
    const Field& F = *T.F;
    int n = T.n, r = T.rank();
    SlpProgram P;
    P.n = n;
    std::vector<std::string> name(static_cast<std::size_t>(2) * n);
    for (int i = 0; i < n; ++i) {
        name[i] = "x" + std::to_string(i);
        name[n + i] = "y" + std::to_string(i);
    }
    int tcount = 0;
    auto fresh = [&](const std::string& nm) {
        name.push_back(nm);
        return static_cast<int>(name.size()) - 1;
    };
    auto temp = [&] { return fresh("t" + std::to_string(tcount++)); };

    Elt one = F.one(), mone = F.neg(F.one());
    // Sum of c[i] * reg(i), appended to P.ops; -1 when every coefficient is 0.
    auto lincomb = [&](const std::vector<Elt>& c, auto reg) -> int {
        int cur = -1;
        for (std::size_t i = 0; i < c.size(); ++i) {
            if (F.is_zero(c[i])) continue;
            int src = reg(static_cast<int>(i));
            if (cur == -1) {
                if (c[i] == one) {
                    cur = src;
                } else {
                    int t = temp();
                    P.ops.push_back({SlpOp::kSmul, t, src, 0, c[i]});
                    ++P.smuls;
                    cur = t;
                }
                continue;
            }
            int rhs = src;
            bool sub = false;
            if (c[i] == mone && !(mone == one)) {
                sub = true;
            } else if (!(c[i] == one)) {
                rhs = temp();
                P.ops.push_back({SlpOp::kSmul, rhs, src, 0, c[i]});
                ++P.smuls;
            }
            int t = temp();
            P.ops.push_back({sub ? SlpOp::kSub : SlpOp::kAdd, t, cur, rhs, {}});
            ++P.adds;
            cur = t;
        }
        return cur;
    };
    // A register holding zero, materialized on first use.
    int zreg = -1;
    auto zero_reg = [&] {
        if (zreg == -1) {
            zreg = temp();
            P.ops.push_back({SlpOp::kSub, zreg, 0, 0, {}});
            ++P.adds;
        }
        return zreg;
    };

    // forms composed with the basis change, so they act on the power-basis
    // input registers directly
    std::vector<std::vector<Elt>> pb(r, std::vector<Elt>(n, F.zero()));
    for (int t = 0; t < r; ++t)
        for (int k = 0; k < n; ++k) {
            const Elt& c = T.products[t].phi[k];
            if (F.is_zero(c)) continue;
            for (int i = 0; i < n; ++i) F.addmul(pb[t][i], c, T.basis_change.at(k, i));
        }

    std::vector<int> mreg(r);
    for (int j = 0; j < r; ++j) {
        auto xi = [&](int i) { return i; };
        auto yi = [&](int i) { return n + i; };
        int a = lincomb(pb[j], xi);
        int b = lincomb(pb[j], yi);
        if (a == -1) a = b = zero_reg();
        mreg[j] = fresh("m" + std::to_string(j + 1));
        P.ops.push_back({SlpOp::kMul, mreg[j], a, b, {}});
        ++P.products;
    }

    for (int i = 0; i < n; ++i) {
        std::vector<Elt> row(r);
        for (int j = 0; j < r; ++j) row[j] = T.products[j].w[i];
        int cur = lincomb(row, [&](int j) { return mreg[j]; });
        if (cur == -1) cur = zero_reg();
        std::string zi = "z" + std::to_string(i);
        if (name[cur][0] == 't' && cur != zreg) {
            name[cur] = zi;  // the accumulation's final temp becomes the output
        } else {
            int t = fresh(zi);
            P.ops.push_back({SlpOp::kSmul, t, cur, 0, one});
            ++P.smuls;
            cur = t;
        }
        P.out.push_back(cur);
    }
    P.nregs = static_cast<int>(name.size());

    std::ostringstream os;
    os << "# q = " << static_cast<long long>(F.size()) << ", n = " << n << "\n";
    os << "# modulus h (ascending coefficients):";
    for (int i = 0; i <= deg(T.h); ++i) os << " " << int_of(F, T.h[i]);
    os << "\n# inputs: x0..x" << n - 1 << ", y0..y" << n - 1 << " (power-basis coordinates)\n";
    os << "# outputs: z0..z" << n - 1 << "\n";
    os << "# bilinear products: m1..m" << r << "\n";
    for (const SlpOp& op : P.ops) {
        switch (op.kind) {
            case SlpOp::kAdd: os << name[op.dst] << " = " << name[op.a] << " + " << name[op.b]; break;
            case SlpOp::kSub: os << name[op.dst] << " = " << name[op.a] << " - " << name[op.b]; break;
            case SlpOp::kSmul:
                os << name[op.dst] << " = " << int_of(F, op.c) << " * " << name[op.a];
                break;
            case SlpOp::kMul: os << name[op.dst] << " = " << name[op.a] << " * " << name[op.b]; break;
        }
        os << "\n";
    }
    P.text = os.str();
    return P;
}

std::vector<Elt> slp_run(const Field& F, const SlpProgram& P, const std::vector<Elt>& a,
                         const std::vector<Elt>& b) {
    if (static_cast<int>(a.size()) != P.n || static_cast<int>(b.size()) != P.n)
        throw validation_error("operand length does not match n");
    std::vector<Elt> reg(P.nregs, F.zero());
    for (int i = 0; i < P.n; ++i) {
        reg[i] = a[i];
        reg[P.n + i] = b[i];
    }
    for (const SlpOp& op : P.ops) switch (op.kind) {
            case SlpOp::kAdd: reg[op.dst] = F.add(reg[op.a], reg[op.b]); break;
            case SlpOp::kSub: reg[op.dst] = F.sub(reg[op.a], reg[op.b]); break;
            case SlpOp::kSmul: reg[op.dst] = F.mul(op.c, reg[op.a]); break;
            case SlpOp::kMul: reg[op.dst] = F.mul(reg[op.a], reg[op.b]); break;
        }
    std::vector<Elt> out;
    for (int i : P.out) out.push_back(reg[i]);
    return out;
}

}  // namespace ellmul
