#pragma once

#include <string>
#include <utility>
#include <vector>

#include "ellmul/field.hpp"
#include "ellmul/poly.hpp"

namespace ellmul {

// A curve point over the curve's coefficient field, or the identity P_inf.
struct Point {
    bool inf = true;
    Elt x, y;

    Point() = default;
    Point(Elt x0, Elt y0) : inf(false), x(std::move(x0)), y(std::move(y0)) {}
    bool operator==(const Point& o) const = default;
};

// Elliptic curve y^2 + a1*xy + a3*y = x^3 + a2*x^2 + a4*x + a6 over any
// Field; base curves live over F_q and base_change lifts them along an
// embedding.  The generalized form keeps one group law valid in every
// characteristic.
class Curve {
public:
    Curve(FieldPtr F, Elt a1, Elt a2, Elt a3, Elt a4, Elt a6);

    const Field& field() const { return *F_; }
    const FieldPtr& field_ptr() const { return F_; }
    const Elt& a1() const { return a1_; }
    const Elt& a2() const { return a2_; }
    const Elt& a3() const { return a3_; }
    const Elt& a4() const { return a4_; }
    const Elt& a6() const { return a6_; }
    const Elt& disc() const { return disc_; }

    bool operator==(const Curve& o) const {
        return F_->same(*o.F_) && a1_ == o.a1_ && a2_ == o.a2_ && a3_ == o.a3_ &&
               a4_ == o.a4_ && a6_ == o.a6_;
    }

    // x^3 + a2 x^2 + a4 x + a6.
    Elt rhs(const Elt& x) const;
    bool on_curve(const Point& P) const;

    Point neg(const Point& P) const;
    Point add(const Point& P, const Point& Q) const;
    Point mul(const Point& P, long long k) const;

    // The y with y^2 + (a1 x + a3) y = rhs(x), lexicographically sorted;
    // 0, 1 or 2 values.
    std::vector<Elt> ys_at(const Elt& x) const;

    // All points over the coefficient field, P_inf first, then x in field
    // enumeration order with y lexicographic.  Guarded by a desk-scale
    // bound on the field size.
    std::vector<Point> points() const;

private:
    FieldPtr F_;
    Elt a1_, a2_, a3_, a4_, a6_, disc_;
};

// Same equation with coefficients pushed through emb (emb.small() must be
// the curve's field).
Curve base_change(const Curve& C, const Embedding& emb);

// Point counts N_d over F_{q^d} and place counts B_d of degree d, driven
// by N_1 (enumeration) and the zeta-function recursion.
struct ZetaData {
    long long m = 0;  // Frobenius trace q + 1 - N_1
    std::vector<long long> N, B;  // index d-1 holds degree d
};
ZetaData zeta_counts(const Curve& C, int dmax);

// Invariant factors (n1, n2) with n1 | n2 and |E(F_q)| = n1*n2; cyclic
// groups report n1 = 1.
std::pair<long long, long long> group_structure(const Curve& C);

// Shape class of the curve for the degree-target rule: the slack is the
// amount added to 2n when choosing deg G.
struct CurveClass {
    char label = 'd';   // 'a': N1 = 1, 'b': N1 = 2, 'c': full 2-torsion
                        // with N1 = 4 in odd characteristic, 'd': rest
    long long N1 = 0;
    int slack = 0;      // a: 3, b: 1, c: 1, d: 0
    bool sigma_caveat = false;  // case b may use slack 0 when sigma(G) != P_inf
};
CurveClass classify(const Curve& C);

struct CatalogEntry {
    std::string equation;  // printable source form
    Curve curve;
    CurveClass cls;
};

// The named curves for q in {2,3,4,5,7,9}, with their classes.
std::vector<CatalogEntry> catalog(std::uint32_t q);
// The coefficient field the catalog uses (fixed modulus when q is 4 or 9).
FieldPtr catalog_field(std::uint32_t q);

// Parse an equation such as "y^2+2x^3+2x^2+1=0" or "y^2=x^3+x^2+2" (the
// letter a denotes the generator of a non-prime coefficient field) and
// normalize it to the Weierstrass form above.
Curve curve_from_equation(FieldPtr F, const std::string& eq);
// Canonical printable equation of a curve.
std::string equation_of(const Curve& C);

}  // namespace ellmul
