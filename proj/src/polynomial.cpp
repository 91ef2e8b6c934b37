#include "itersum/polynomial.hpp"

#include <algorithm>

#include "itersum/errors.hpp"

namespace itersum {

Polynomial::Polynomial(std::vector<Scalar> coeffs) : coeffs_(std::move(coeffs)) { normalize(); }

Polynomial Polynomial::constant(const Scalar& c) { return Polynomial({c}); }

void Polynomial::normalize() {
    while (!coeffs_.empty() && sgn(coeffs_.back()) == 0) coeffs_.pop_back();
}

Scalar Polynomial::eval(const Scalar& x) const {
    Scalar acc(0);
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
    return acc;
}

Polynomial Polynomial::derivative() const {
    if (coeffs_.size() <= 1) return Polynomial();
    std::vector<Scalar> out(coeffs_.size() - 1);
    for (std::size_t i = 1; i < coeffs_.size(); ++i) out[i - 1] = Scalar(long(i)) * coeffs_[i];
    return Polynomial(std::move(out));
}

Polynomial Polynomial::shifted(const Scalar& h) const {
    if (coeffs_.empty() || sgn(h) == 0) return *this;
    std::vector<Scalar> c = coeffs_;
    // Repeated synthetic division by (x - (-h)) accumulates the Taylor
    // coefficients of p at -(-h) = h... i.e. p(x+h).
    for (std::size_t k = 0; k + 1 < c.size(); ++k)
        for (std::size_t i = c.size() - 1; i > k; --i) c[i - 1] += h * c[i];
    return Polynomial(std::move(c));
}

Polynomial Polynomial::delta(const Scalar& h) const { return shifted(h) - *this; }

Polynomial Polynomial::operator-() const {
    std::vector<Scalar> out(coeffs_.size());
    for (std::size_t i = 0; i < coeffs_.size(); ++i) out[i] = -coeffs_[i];
    return Polynomial(std::move(out));
}

Polynomial operator+(const Polynomial& a, const Polynomial& b) {
    std::vector<Scalar> out(std::max(a.coeffs_.size(), b.coeffs_.size()), Scalar(0));
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) out[i] += a.coeffs_[i];
    for (std::size_t i = 0; i < b.coeffs_.size(); ++i) out[i] += b.coeffs_[i];
    return Polynomial(std::move(out));
}

Polynomial operator-(const Polynomial& a, const Polynomial& b) { return a + (-b); }

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    if (a.is_zero() || b.is_zero()) return Polynomial();
    std::vector<Scalar> out(a.coeffs_.size() + b.coeffs_.size() - 1, Scalar(0));
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
        for (std::size_t j = 0; j < b.coeffs_.size(); ++j) out[i + j] += a.coeffs_[i] * b.coeffs_[j];
    return Polynomial(std::move(out));
}

Polynomial operator*(const Scalar& c, const Polynomial& p) {
    std::vector<Scalar> out(p.coeffs_.size());
    for (std::size_t i = 0; i < p.coeffs_.size(); ++i) out[i] = c * p.coeffs_[i];
    return Polynomial(std::move(out));
}

int sign_at(const Polynomial& p, const Scalar& x) { return sgn(p.eval(x)); }

int sign_at_pos_inf(const Polynomial& p) { return p.is_zero() ? 0 : sgn(p.leading()); }

int sign_at_neg_inf(const Polynomial& p) {
    if (p.is_zero()) return 0;
    return p.degree() % 2 == 0 ? sgn(p.leading()) : -sgn(p.leading());
}

Polynomial poly_rem(const Polynomial& a, const Polynomial& b) {
    if (b.is_zero()) throw DomainViolation("polynomial division by zero");
    std::vector<Scalar> r = a.coefficients();
    const std::vector<Scalar>& d = b.coefficients();
    while (r.size() >= d.size() && !r.empty()) {
        Scalar q = r.back() / d.back();
        std::size_t off = r.size() - d.size();
        for (std::size_t i = 0; i < d.size(); ++i) r[off + i] -= q * d[i];
        while (!r.empty() && sgn(r.back()) == 0) r.pop_back();
    }
    return Polynomial(std::move(r));
}

Polynomial poly_gcd(Polynomial a, Polynomial b) {
    while (!b.is_zero()) {
        Polynomial r = poly_rem(a, b);
        a = std::move(b);
        b = std::move(r);
    }
    if (a.is_zero()) return a;
    return (Scalar(1) / a.leading()) * a;  // monic
}

Polynomial squarefree_part(const Polynomial& p) {
    if (p.degree() <= 0) return p;
    Polynomial g = poly_gcd(p, p.derivative());
    if (g.degree() <= 0) return p;
    // Exact division p / g via repeated remainder-free synthetic steps.
    std::vector<Scalar> num = p.coefficients();
    const std::vector<Scalar>& den = g.coefficients();
    std::vector<Scalar> quot(num.size() - den.size() + 1, Scalar(0));
    for (std::size_t k = quot.size(); k-- > 0;) {
        Scalar q = num[k + den.size() - 1] / den.back();
        quot[k] = q;
        for (std::size_t i = 0; i < den.size(); ++i) num[k + i] -= q * den[i];
    }
    return Polynomial(std::move(quot));
}

std::vector<Polynomial> sturm_sequence(const Polynomial& p) {
    std::vector<Polynomial> seq;
    if (p.is_zero()) return seq;
    seq.push_back(p);
    if (p.degree() == 0) return seq;
    seq.push_back(p.derivative());
    while (!seq.back().is_zero()) {
        Polynomial r = -poly_rem(seq[seq.size() - 2], seq.back());
        if (r.is_zero()) break;
        seq.push_back(std::move(r));
    }
    return seq;
}

namespace {

int variations(const std::vector<int>& signs) {
    int v = 0, prev = 0;
    for (int s : signs) {
        if (s == 0) continue;
        if (prev != 0 && s != prev) ++v;
        prev = s;
    }
    return v;
}

int variations_at(const std::vector<Polynomial>& seq, const Scalar& x) {
    std::vector<int> signs;
    signs.reserve(seq.size());
    for (const Polynomial& q : seq) signs.push_back(sign_at(q, x));
    return variations(signs);
}

}  // namespace

int count_roots(const Polynomial& p, const Scalar& lo, const Scalar& hi) {
    if (p.is_zero()) throw DomainViolation("root count of zero polynomial");
    if (lo >= hi) return 0;
    std::vector<Polynomial> seq = sturm_sequence(p);
    return variations_at(seq, lo) - variations_at(seq, hi);
}

int count_real_roots(const Polynomial& p) {
    Scalar b = root_bound(p) + 1;
    return count_roots(p, -b, b);
}

Scalar root_bound(const Polynomial& p) {
    if (p.degree() < 1) return Scalar(0);
    Scalar m(0);
    for (int i = 0; i < p.degree(); ++i) {
        Scalar a = abs(p.coefficients()[i] / p.leading());
        if (a > m) m = a;
    }
    return m + 1;
}

std::vector<RootInterval> isolate_roots(const Polynomial& p) {
    std::vector<RootInterval> out;
    if (p.degree() < 1) return out;
    Polynomial q = squarefree_part(p);
    std::vector<Polynomial> seq = sturm_sequence(q);
    Scalar b = root_bound(q) + 1;
    struct Span {
        Scalar lo, hi;
        int nroots;
    };
    std::vector<Span> stack;
    int total = variations_at(seq, -b) - variations_at(seq, b);
    if (total > 0) stack.push_back({-b, b, total});
    while (!stack.empty()) {
        Span s = stack.back();
        stack.pop_back();
        if (s.nroots == 1) {
            out.push_back({s.lo, s.hi});
            continue;
        }
        Scalar mid = (s.lo + s.hi) / 2;
        int left = variations_at(seq, s.lo) - variations_at(seq, mid);
        int right = s.nroots - left;
        if (left > 0) stack.push_back({s.lo, mid, left});
        if (right > 0) stack.push_back({mid, s.hi, right});
    }
    std::sort(out.begin(), out.end(),
              [](const RootInterval& a, const RootInterval& b) { return a.lo < b.lo; });
    return out;
}

RootInterval refine_root(const Polynomial& p, RootInterval iv, const Scalar& width) {
    Polynomial q = squarefree_part(p);
    std::vector<Polynomial> seq = sturm_sequence(q);
    while (iv.hi - iv.lo > width) {
        Scalar mid = (iv.lo + iv.hi) / 2;
        int left = variations_at(seq, iv.lo) - variations_at(seq, mid);
        if (left > 0)
            iv.hi = mid;
        else
            iv.lo = mid;
    }
    return iv;
}

bool nonvanishing_on(const Polynomial& p, const Scalar& lo, const Scalar& hi) {
    if (p.is_zero()) return false;
    if (sign_at(p, lo) == 0 || sign_at(p, hi) == 0) return false;
    return count_roots(p, lo, hi) == 0;
}

}  // namespace itersum
