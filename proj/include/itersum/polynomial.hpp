#ifndef ITERSUM_POLYNOMIAL_HPP
#define ITERSUM_POLYNOMIAL_HPP

#include <vector>

#include "itersum/scalar.hpp"

namespace itersum {

// Dense polynomial with exact rational coefficients, stored low-to-high.
class Polynomial {
  public:
    Polynomial() = default;
    explicit Polynomial(std::vector<Scalar> coeffs);
    static Polynomial constant(const Scalar& c);

    // -1 for the zero polynomial.
    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    bool is_zero() const { return coeffs_.empty(); }
    const std::vector<Scalar>& coefficients() const { return coeffs_; }
    const Scalar& leading() const { return coeffs_.back(); }

    Scalar eval(const Scalar& x) const;
    Polynomial derivative() const;
    // p(x + h) via repeated synthetic division (exact Taylor shift).
    Polynomial shifted(const Scalar& h) const;
    // p(x + h) - p(x); drops the degree by exactly one for h != 0.
    Polynomial delta(const Scalar& h) const;

    Polynomial operator-() const;
    friend Polynomial operator+(const Polynomial& a, const Polynomial& b);
    friend Polynomial operator-(const Polynomial& a, const Polynomial& b);
    friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
    friend Polynomial operator*(const Scalar& c, const Polynomial& p);
    friend bool operator==(const Polynomial& a, const Polynomial& b) {
        return a.coeffs_ == b.coeffs_;
    }

  private:
    std::vector<Scalar> coeffs_;
    void normalize();
};

int sign_at(const Polynomial& p, const Scalar& x);
// Sign of p at +inf (+1/-1) or -inf.
int sign_at_pos_inf(const Polynomial& p);
int sign_at_neg_inf(const Polynomial& p);

// Euclidean remainder of a by b (b non-zero).
Polynomial poly_rem(const Polynomial& a, const Polynomial& b);
Polynomial poly_gcd(Polynomial a, Polynomial b);
Polynomial squarefree_part(const Polynomial& p);

std::vector<Polynomial> sturm_sequence(const Polynomial& p);
// Number of distinct real roots in (lo, hi].
int count_roots(const Polynomial& p, const Scalar& lo, const Scalar& hi);
int count_real_roots(const Polynomial& p);

// Cauchy bound: every real root lies in [-B, B].
Scalar root_bound(const Polynomial& p);

// Half-open isolating interval (lo, hi] containing exactly one distinct root.
struct RootInterval {
    Scalar lo, hi;
};
std::vector<RootInterval> isolate_roots(const Polynomial& p);
// Shrinks an isolating interval by bisection until hi - lo <= width.
RootInterval refine_root(const Polynomial& p, RootInterval iv, const Scalar& width);

// True iff p has no root in the closed interval [lo, hi].
bool nonvanishing_on(const Polynomial& p, const Scalar& lo, const Scalar& hi);

}  // namespace itersum

#endif
