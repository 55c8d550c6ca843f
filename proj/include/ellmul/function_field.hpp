#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "ellmul/elliptic.hpp"
#include "ellmul/linalg.hpp"
#include "ellmul/poly.hpp"
#include "ellmul/rng.hpp"

namespace ellmul {

// Element (a(x) + b(x) y) / u(x) of the function field of an elliptic curve,
// kept normalized: gcd(a, b, u) = 1 and u monic.
struct FElem {
    Pol a, b;
    Pol u;
};

// A closed point of the curve: the place at infinity, or the Frobenius orbit
// of an affine representative (x0, y0) with coordinates in the residue field
// R = F_{q^d}.  Usually x0 alone generates R (dx == d) and the pair of
// base-field polynomials (xmin, ymap) — the minimal polynomial of x0 and the
// interpolation v with y0 = v(x0) — identifies the place independently of the
// representative and of the presentation of R.  When y0 lies outside F_q(x0)
// the place is inert over its x-line: dx == d/2, ymap is empty, and (d, xmin)
// still identifies the place (the two y-roots above x0 are conjugate).
struct Place {
    bool infinity = true;
    int d = 1;
    int dx = 1;                      // degree of xmin; d or d/2
    bool ramified = false;
    FieldPtr R;
    std::optional<Embedding> emb;    // base -> R
    std::optional<RelBasis> rb;      // {1, ..., x0^{dx-1}} (+ y0 * those if dx < d)
    Elt x0, y0;
    Pol xmin, ymap;
};

bool place_eq(const Place& P, const Place& Q);
bool place_less(const Place& P, const Place& Q);  // infinity first, then (d, xmin, ymap)
std::string place_str(const Place& P);

// Formal Z-combination of places, kept sorted canonically.
class Divisor {
public:
    Divisor() = default;
    void add(const Place& P, int mult);
    int mult(const Place& P) const;
    long long degree() const;
    bool effective() const;
    bool empty() const { return ent_.empty(); }
    const std::vector<std::pair<Place, int>>& entries() const { return ent_; }

private:
    std::vector<std::pair<Place, int>> ent_;
};

class FuncField {
public:
    explicit FuncField(Curve C);

    const Curve& curve() const { return C_; }
    const Field& base() const { return *C_.field_ptr(); }
    const FieldPtr& base_ptr() const { return C_.field_ptr(); }

    // --- elements ------------------------------------------------------
    FElem zero() const;
    FElem one() const;
    FElem x() const;
    FElem y() const;
    FElem constant(const Elt& c) const;
    FElem from_pols(const Pol& a, const Pol& b) const;
    FElem make(const Pol& a, const Pol& b, const Pol& u) const;

    bool is_zero(const FElem& f) const;
    bool eq(const FElem& f, const FElem& g) const;
    FElem add(const FElem& f, const FElem& g) const;
    FElem sub(const FElem& f, const FElem& g) const;
    FElem neg(const FElem& f) const;
    FElem mul(const FElem& f, const FElem& g) const;
    FElem inv(const FElem& f) const;
    FElem div(const FElem& f, const FElem& g) const;
    // a^2 - a b (a1 x + a3) - b^2 (x^3 + a2 x^2 + a4 x + a6), times u^{-2}
    Pol norm_num(const FElem& f) const;

    // --- places --------------------------------------------------------
    Place infinity_place() const;
    Place finite_place(FieldPtr R, const Embedding& emb, const Elt& x0, const Elt& y0) const;
    Place conjugate(const Place& P) const;
    // All places of exact degree d, sorted by place_less; P_inf included for
    // d = 1.  The rng only seeds the residue-field presentation.
    std::vector<Place> places_of_degree(int d, Rng& rng) const;
    Place random_place(int d, Rng& rng) const;

    // --- evaluation ----------------------------------------------------
    // First `order` coefficients of the expansion in the local parameter at P
    // (x - x0 unramified, y - y0 ramified, -x/y at infinity), as residue-field
    // elements; throws validation_error if some f has a pole at P.
    std::vector<Elt> jet(const FElem& f, const Place& P, int order) const;
    std::vector<std::vector<Elt>> jet_block(const std::vector<FElem>& fs, const Place& P,
                                            int order) const;
    Elt evaluate(const FElem& f, const Place& P) const;
    int valuation(const FElem& f, const Place& P) const;

    // --- divisors ------------------------------------------------------
    // Basis of L(D) = { f : div(f) + D >= 0 } for effective D of degree >= 1,
    // graded by the pole order at infinity.  When `extend` is given (a basis
    // of L(D') for some D' <= D, with matching denominator support) the result
    // starts with exactly those functions and completes them canonically.
    std::vector<FElem> rr_basis(const Divisor& D, const std::vector<FElem>* extend = nullptr) const;
    int speciality(const Divisor& D) const;
    Point sigma(const Place& P) const;
    Point sigma(const Divisor& D) const;

private:
    Curve C_;
    Pol h_;   // a1 x + a3
    Pol c3_;  // x^3 + a2 x^2 + a4 x + a6

    FElem normalized(Pol a, Pol b, Pol u) const;
};

}  // namespace ellmul
