#include "superkac/poly.hpp"

#include "superkac/linalg.hpp"

#include <algorithm>
#include <stdexcept>

namespace superkac {

Poly Poly::constant(Rational a) {
    Poly p;
    if (!a.is_zero()) p.c.push_back(std::move(a));
    return p;
}

Poly Poly::linear(Rational a0, Rational a1) {
    Poly p;
    p.c = {std::move(a0), std::move(a1)};
    p.normalize();
    return p;
}

void Poly::normalize() {
    while (!c.empty() && c.back().is_zero()) c.pop_back();
}

Poly Poly::monic() const {
    if (is_zero()) return *this;
    Poly p = *this;
    Rational inv = p.c.back().inverse();
    for (auto& x : p.c) x *= inv;
    return p;
}

Rational Poly::eval(const Rational& x) const {
    Rational acc(0);
    for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + *it;
    return acc;
}

Poly operator+(const Poly& a, const Poly& b) {
    Poly r;
    r.c.resize(std::max(a.c.size(), b.c.size()), Rational(0));
    for (std::size_t i = 0; i < a.c.size(); ++i) r.c[i] += a.c[i];
    for (std::size_t i = 0; i < b.c.size(); ++i) r.c[i] += b.c[i];
    r.normalize();
    return r;
}

Poly operator-(const Poly& a, const Poly& b) {
    Poly r;
    r.c.resize(std::max(a.c.size(), b.c.size()), Rational(0));
    for (std::size_t i = 0; i < a.c.size(); ++i) r.c[i] += a.c[i];
    for (std::size_t i = 0; i < b.c.size(); ++i) r.c[i] -= b.c[i];
    r.normalize();
    return r;
}

Poly operator*(const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) return Poly::zero();
    Poly r;
    r.c.assign(a.c.size() + b.c.size() - 1, Rational(0));
    for (std::size_t i = 0; i < a.c.size(); ++i)
        for (std::size_t j = 0; j < b.c.size(); ++j) r.c[i + j] += a.c[i] * b.c[j];
    r.normalize();
    return r;
}

std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b) {
    if (b.is_zero()) throw std::invalid_argument("poly divmod: zero divisor");
    Poly q, r = a;
    if (r.degree() < b.degree()) return {q, r};
    q.c.assign(static_cast<std::size_t>(r.degree() - b.degree() + 1), Rational(0));
    Rational lead_inv = b.lead().inverse();
    while (!r.is_zero() && r.degree() >= b.degree()) {
        int shift = r.degree() - b.degree();
        Rational coeff = r.lead() * lead_inv;
        q.c[static_cast<std::size_t>(shift)] = coeff;
        for (std::size_t i = 0; i < b.c.size(); ++i)
            r.c[static_cast<std::size_t>(shift) + i] -= coeff * b.c[i];
        r.normalize();
    }
    q.normalize();
    return {q, r};
}

Poly poly_gcd(Poly a, Poly b) {
    while (!b.is_zero()) {
        Poly r = divmod(a, b).second;
        a = std::move(b);
        b = std::move(r);
    }
    return a.monic();
}

Poly derivative(const Poly& p) {
    Poly d;
    for (std::size_t i = 1; i < p.c.size(); ++i) d.c.push_back(Rational(static_cast<long>(i)) * p.c[i]);
    d.normalize();
    return d;
}

Poly squarefree_part(const Poly& p) {
    if (p.degree() <= 1) return p.monic();
    Poly g = poly_gcd(p, derivative(p));
    return divmod(p, g).first.monic();
}

std::tuple<Poly, Poly, Poly> poly_xgcd(const Poly& a, const Poly& b) {
    Poly r0 = a, r1 = b;
    Poly s0 = Poly::constant(Rational(1)), s1 = Poly::zero();
    Poly t0 = Poly::zero(), t1 = Poly::constant(Rational(1));
    while (!r1.is_zero()) {
        auto [q, r] = divmod(r0, r1);
        r0 = std::move(r1);
        r1 = std::move(r);
        Poly s = s0 - q * s1;
        s0 = std::move(s1);
        s1 = std::move(s);
        Poly t = t0 - q * t1;
        t0 = std::move(t1);
        t1 = std::move(t);
    }
    if (r0.is_zero()) return {r0, s0, t0};
    Rational inv = r0.lead().inverse();
    Poly g = r0.monic();
    for (auto& x : s0.c) x *= inv;
    for (auto& x : t0.c) x *= inv;
    return {g, s0, t0};
}

namespace {

// Divisors of |n|, found by bounded trial division. Sets `complete` to false
// when the enumeration gave up before d*d exceeded |n|.
std::vector<mpz_class> small_divisors(const mpz_class& n, unsigned long limit, bool& complete) {
    mpz_class a = ::abs(n);
    std::vector<mpz_class> ds;
    complete = true;
    if (a == 0) return ds;
    mpz_class d = 1;
    while (d * d <= a) {
        if (a % d == 0) {
            ds.push_back(d);
            if (d * d != a) ds.push_back(a / d);
        }
        ++d;
        if (d > static_cast<long>(limit)) {
            complete = d * d > a;
            break;
        }
    }
    std::sort(ds.begin(), ds.end());
    return ds;
}

// Strips a known root to its full multiplicity.
int strip_root(Poly& p, const Rational& r) {
    int mult = 0;
    Poly lin = Poly::linear(-r, Rational(1));
    while (!p.is_zero() && p.eval(r).is_zero()) {
        p = divmod(p, lin).first;
        ++mult;
    }
    return mult;
}

} // namespace

RationalRoots rational_roots(const Poly& p) {
    RationalRoots out;
    if (p.degree() <= 0) return out;
    Poly work = p.monic();

    // x = 0 first.
    if (work.c[0].is_zero()) {
        int mult = 0;
        while (!work.c.empty() && work.c[0].is_zero()) {
            work.c.erase(work.c.begin());
            ++mult;
        }
        out.roots.emplace_back(Rational(0), mult);
    }

    while (work.degree() >= 1) {
        if (work.degree() == 1) {
            Rational r = -work.c[0] / work.c[1];
            out.roots.emplace_back(r, strip_root(work, r));
            continue;
        }
        if (work.degree() == 2) {
            // monic quadratic: rational roots iff the discriminant is a square
            Rational b = work.c[1] / work.c[2];
            Rational cc = work.c[0] / work.c[2];
            Rational disc = b * b - Rational(4) * cc;
            if (disc.sign() < 0) return out;
            mpz_class num = disc.numerator(), den = disc.denominator();
            mpz_class sn, sd;
            bool num_sq = mpz_root(sn.get_mpz_t(), num.get_mpz_t(), 2) != 0 || num == 0;
            bool den_sq = mpz_root(sd.get_mpz_t(), den.get_mpz_t(), 2) != 0;
            if (!num_sq || !den_sq) return out;
            Rational sq(mpq_class(sn, sd));
            if (!(sq * sq == disc)) return out;
            Rational r1 = (-b + sq) / Rational(2);
            Rational r2 = (-b - sq) / Rational(2);
            out.roots.emplace_back(r1, strip_root(work, r1));
            if (!(r1 == r2)) out.roots.emplace_back(r2, strip_root(work, r2));
            continue;
        }
        // degree >= 3: clear denominators, enumerate candidate p/q divisor pairs
        mpz_class scale = 1;
        for (const auto& coeff : work.c) scale = lcm(scale, coeff.denominator());
        std::vector<mpz_class> zc;
        for (const auto& coeff : work.c) zc.push_back(coeff.numerator() * (scale / coeff.denominator()));
        const unsigned long kDivisorCap = 2'000'000;
        bool ps_complete = true, qs_complete = true;
        auto ps = small_divisors(zc.front(), kDivisorCap, ps_complete);
        auto qs = small_divisors(zc.back(), kDivisorCap, qs_complete);
        bool exhaustive = ps_complete && qs_complete;
        bool found = false;
        for (const auto& pn : ps) {
            for (const auto& qn : qs) {
                for (int s : {1, -1}) {
                    Rational cand(mpq_class(s < 0 ? mpz_class(-pn) : pn, qn));
                    if (work.eval(cand).is_zero()) {
                        out.roots.emplace_back(cand, strip_root(work, cand));
                        found = true;
                        break;
                    }
                }
                if (found) break;
            }
            if (found) break;
        }
        if (!found) {
            if (!exhaustive) out.complete = false;
            return out;
        }
    }
    return out;
}

SparseRationalMatrix eval_on_matrix(const Poly& p, const SparseRationalMatrix& m) {
    if (m.n_rows() != m.n_cols()) throw std::invalid_argument("eval_on_matrix: square matrix required");
    int n = m.n_rows();
    SparseRationalMatrix acc(n, n);
    for (auto it = p.c.rbegin(); it != p.c.rend(); ++it) {
        acc = m * acc;
        if (!it->is_zero()) acc = acc + SparseRationalMatrix::identity(n).scaled(*it);
    }
    return acc;
}

Poly minimal_polynomial(const SparseRationalMatrix& m) {
    if (m.n_rows() != m.n_cols()) throw std::invalid_argument("minimal_polynomial: square matrix required");
    const int n = m.n_rows();
    Poly minpoly = Poly::constant(Rational(1));
    for (int seed = 0; seed < n; ++seed) {
        if (minpoly.degree() == n) break;
        // Annihilator of the seed's Krylov chain.
        EliminationBasis elim(true);
        std::vector<SparseVector> powers;
        powers.push_back(SparseVector::unit(seed));
        Poly local;
        for (int k = 0;; ++k) {
            SparseVector combo;
            if (!elim.add_tracked(powers.back(), combo)) {
                local.c.assign(static_cast<std::size_t>(k) + 1, Rational(0));
                local.c[static_cast<std::size_t>(k)] = Rational(1);
                for (const auto& [idx, val] : combo.entries())
                    local.c[static_cast<std::size_t>(idx)] = -val;
                break;
            }
            powers.push_back(m.apply(powers.back()));
        }
        // minpoly = lcm(minpoly, local)
        Poly g = poly_gcd(minpoly, local);
        minpoly = divmod(minpoly * local, g).first.monic();
    }
    return minpoly;
}

} // namespace superkac
