#ifndef ITERSUM_INTERVAL_HPP
#define ITERSUM_INTERVAL_HPP

#include <mpfr.h>

#include <utility>

#include "itersum/scalar.hpp"

namespace itersum {

// Certified enclosure [lo, hi] with outward-rounded mpfr endpoints.
// Endpoints are dyadic, so they convert back to exact Scalars.
class CertInterval {
  public:
    explicit CertInterval(mpfr_prec_t prec);
    CertInterval(const CertInterval& o);
    CertInterval(CertInterval&& o) noexcept;
    CertInterval& operator=(CertInterval o);
    ~CertInterval();

    static CertInterval from_scalar(const Scalar& q, mpfr_prec_t prec);

    mpfr_prec_t precision() const { return prec_; }
    Scalar lo() const;
    Scalar hi() const;
    Scalar width() const { return hi() - lo(); }
    // +1 if certainly positive, -1 if certainly negative, 0 if undecided.
    int certified_sign() const;
    bool contains(const Scalar& q) const { return lo() <= q && q <= hi(); }

    CertInterval operator-() const;
    friend CertInterval operator+(const CertInterval& a, const CertInterval& b);
    friend CertInterval operator-(const CertInterval& a, const CertInterval& b);
    friend CertInterval operator*(const CertInterval& a, const CertInterval& b);

    // Natural log; requires a certainly-positive interval.
    friend CertInterval interval_log(const CertInterval& a);
    friend CertInterval interval_exp(const CertInterval& a);
    // x^alpha for certainly-positive x, via exp(alpha * log x).
    friend CertInterval interval_pow(const CertInterval& x, const Scalar& alpha);

  private:
    mpfr_prec_t prec_;
    mpfr_t lo_, hi_;
};

}  // namespace itersum

#endif
