#ifndef SUPERKAC_POLY_HPP
#define SUPERKAC_POLY_HPP

#include "superkac/sparse.hpp"

#include <optional>
#include <vector>

namespace superkac {

/// Dense univariate polynomial over Q, coefficients low-degree-first.
/// Normalized: no trailing zero coefficients (zero polynomial = empty vector).
struct Poly {
    std::vector<Rational> c;

    static Poly zero() { return Poly{}; }
    static Poly constant(Rational a);
    static Poly linear(Rational a0, Rational a1); // a0 + a1 x

    int degree() const { return static_cast<int>(c.size()) - 1; } // -1 for zero
    bool is_zero() const { return c.empty(); }
    Rational lead() const { return c.back(); }

    void normalize();
    Poly monic() const;

    Rational eval(const Rational& x) const;

    friend Poly operator+(const Poly& a, const Poly& b);
    friend Poly operator-(const Poly& a, const Poly& b);
    friend Poly operator*(const Poly& a, const Poly& b);
    friend bool operator==(const Poly& a, const Poly& b) { return a.c == b.c; }
};

/// Quotient and remainder of a by b (b nonzero).
std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b);

/// Monic gcd.
Poly poly_gcd(Poly a, Poly b);

Poly derivative(const Poly& p);

/// Squarefree part p / gcd(p, p').
Poly squarefree_part(const Poly& p);

/// Extended gcd: returns (g, s, t) monic with s*a + t*b = g.
std::tuple<Poly, Poly, Poly> poly_xgcd(const Poly& a, const Poly& b);

/// All rational roots that the bounded search can certify, with multiplicity
/// in `p`. `complete` is false when a factor of degree >= 3 resisted the
/// bounded divisor enumeration (larger roots may then have been missed).
struct RationalRoots {
    std::vector<std::pair<Rational, int>> roots;
    bool complete = true;
};
RationalRoots rational_roots(const Poly& p);

/// p evaluated on a square matrix (Horner).
SparseRationalMatrix eval_on_matrix(const Poly& p, const SparseRationalMatrix& m);

/// Exact minimal polynomial of a square matrix (monic), via Krylov chains.
Poly minimal_polynomial(const SparseRationalMatrix& m);

} // namespace superkac

#endif
