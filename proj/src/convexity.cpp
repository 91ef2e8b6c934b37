#include "itersum/convexity.hpp"

#include <algorithm>
#include <sstream>

#include "itersum/errors.hpp"
#include "itersum/interval.hpp"

namespace itersum {

namespace {
constexpr unsigned kStartPrecision = 128;
constexpr unsigned kMaxPrecision = 4096;

std::string trim(std::string s) {
    std::size_t b = s.find_first_not_of(" \t");
    std::size_t e = s.find_last_not_of(" \t");
    if (b == std::string::npos) return "";
    return s.substr(b, e - b + 1);
}
}  // namespace

Polynomial ConvexMap::as_polynomial() const {
    if (kind == Kind::polynomial) return poly;
    if (kind == Kind::integer_power) {
        std::vector<Scalar> c(static_cast<std::size_t>(power) + 1, Scalar(0));
        c.back() = 1;
        return Polynomial(std::move(c));
    }
    throw DomainViolation("map has no exact polynomial form");
}

bool ConvexMap::in_domain(const Scalar& x) const {
    if (domain_lo && x < *domain_lo) return false;
    if (domain_hi && x > *domain_hi) return false;
    if (kind == Kind::log || kind == Kind::real_power) return sgn(x) > 0;
    return true;
}

ConvexMap ConvexMap::integer_power_map(int k) {
    ConvexMap m;
    m.kind = Kind::integer_power;
    m.power = k;
    return m;
}

ConvexMap ConvexMap::polynomial_map(Polynomial p) {
    if (p.degree() < 1) throw DomainViolation("polynomial map needs degree >= 1");
    ConvexMap m;
    m.kind = Kind::polynomial;
    m.poly = std::move(p);
    return m;
}

ConvexMap ConvexMap::log_map() {
    ConvexMap m;
    m.kind = Kind::log;
    return m;
}

ConvexMap ConvexMap::shifted_log_exp_map() {
    ConvexMap m;
    m.kind = Kind::shifted_log_exp;
    return m;
}

ConvexMap ConvexMap::real_power_map(Scalar alpha, unsigned bits) {
    ConvexMap m;
    m.kind = Kind::real_power;
    m.alpha = std::move(alpha);
    m.alpha_bits = bits;
    return m;
}

ConvexMap ConvexMap::parse(const std::string& descriptor) {
    std::string body = descriptor, domain;
    if (std::size_t semi = descriptor.find(';'); semi != std::string::npos) {
        body = trim(descriptor.substr(0, semi));
        domain = trim(descriptor.substr(semi + 1));
    } else {
        body = trim(body);
    }
    ConvexMap m;
    if (body == "log") {
        m = log_map();
    } else if (body == "shifted-log-exp") {
        m = shifted_log_exp_map();
    } else if (body.rfind("power:", 0) == 0) {
        m = integer_power_map(std::stoi(trim(body.substr(6))));
        if (m.power < 2) throw ParseError("integer power must be >= 2");
    } else if (body.rfind("poly:", 0) == 0) {
        std::vector<Scalar> coeffs;
        std::stringstream ss(body.substr(5));
        std::string tok;
        while (std::getline(ss, tok, ',')) coeffs.push_back(parse_scalar(tok));
        m = polynomial_map(Polynomial(std::move(coeffs)));
    } else if (body.rfind("real-power:", 0) == 0) {
        std::string rest = trim(body.substr(11));
        unsigned bits = 128;
        if (std::size_t at = rest.find('@'); at != std::string::npos) {
            std::string b = rest.substr(at + 1);
            if (b.size() > 4 && b.substr(b.size() - 4) == "bits") b = b.substr(0, b.size() - 4);
            bits = static_cast<unsigned>(std::stoul(b));
            rest = trim(rest.substr(0, at));
        }
        // Decimal exponents like 2.5 are read as exact rationals.
        if (std::size_t dot = rest.find('.'); dot != std::string::npos) {
            std::string digits = rest.substr(0, dot) + rest.substr(dot + 1);
            Scalar num = parse_scalar(digits);
            Scalar den = 1;
            for (std::size_t i = dot + 1; i < rest.size(); ++i) den *= 10;
            m = real_power_map(num / den, bits);
        } else {
            m = real_power_map(parse_scalar(rest), bits);
        }
    } else {
        throw ParseError("unknown map descriptor: '" + body + "'");
    }
    if (!domain.empty()) {
        if (domain.rfind("domain:", 0) != 0) throw ParseError("expected 'domain:' clause");
        std::string range = trim(domain.substr(7));
        std::size_t dots = range.find("..");
        if (dots == std::string::npos) throw ParseError("domain needs 'lo..hi'");
        std::string lo = trim(range.substr(0, dots)), hi = trim(range.substr(dots + 2));
        if (lo != "-inf" && !lo.empty()) m.domain_lo = parse_scalar(lo);
        if (hi != "inf" && !hi.empty()) m.domain_hi = parse_scalar(hi);
    }
    return m;
}

std::string ConvexMap::descriptor() const {
    std::string body;
    switch (kind) {
        case Kind::log: body = "log"; break;
        case Kind::shifted_log_exp: body = "shifted-log-exp"; break;
        case Kind::integer_power: body = "power: " + std::to_string(power); break;
        case Kind::real_power:
            body = "real-power: " + render_scalar(alpha) + "@" + std::to_string(alpha_bits) + "bits";
            break;
        case Kind::polynomial: {
            body = "poly: ";
            const auto& c = poly.coefficients();
            for (std::size_t i = 0; i < c.size(); ++i)
                body += (i ? "," : "") + render_scalar(c[i]);
            break;
        }
    }
    if (domain_lo || domain_hi) {
        body += "; domain: ";
        body += domain_lo ? render_scalar(*domain_lo) : "-inf";
        body += "..";
        body += domain_hi ? render_scalar(*domain_hi) : "inf";
    }
    return body;
}

std::vector<Scalar> forward_differences(const GroupedSet& a) {
    if (a.size() < 2) throw TooSmall("forward differences need at least 2 elements");
    std::vector<Scalar> d;
    d.reserve(a.size() - 1);
    for (std::size_t i = 0; i + 1 < a.size(); ++i) d.push_back(a[i + 1] - a[i]);
    return d;
}

ConvexityReport convexity_order(const GroupedSet& a) {
    ConvexityReport report;
    std::vector<Scalar> level(a.elements());
    while (level.size() >= 3) {
        std::vector<Scalar> next;
        next.reserve(level.size() - 1);
        for (std::size_t i = 0; i + 1 < level.size(); ++i) next.push_back(level[i + 1] - level[i]);
        int dir = 0;
        for (std::size_t i = 0; i + 1 < next.size(); ++i) {
            int c = cmp(next[i], next[i + 1]);
            if (c == 0) { dir = 0; break; }
            int s = c < 0 ? 1 : -1;
            if (dir == 0)
                dir = s;
            else if (dir != s) { dir = 0; break; }
        }
        if (dir == 0) break;
        report.direction_profile.push_back(dir);
        level = std::move(next);
    }
    for (int d : report.direction_profile) {
        if (d != 1) break;
        ++report.order;
    }
    return report;
}

namespace {

CertInterval interval_eval(const ConvexMap& f, const Scalar& x, mpfr_prec_t prec) {
    switch (f.kind) {
        case ConvexMap::Kind::log:
            return interval_log(CertInterval::from_scalar(x, prec));
        case ConvexMap::Kind::real_power:
            return interval_pow(CertInterval::from_scalar(x, prec), f.alpha);
        case ConvexMap::Kind::shifted_log_exp: {
            CertInterval one = CertInterval::from_scalar(1, prec);
            return interval_log(one + interval_exp(CertInterval::from_scalar(x, prec)));
        }
        default: {
            return CertInterval::from_scalar(f.as_polynomial().eval(x), prec);
        }
    }
}

CertInterval interval_signed_sum(const ConvexMap& f, const std::map<Scalar, long>& terms,
                                 mpfr_prec_t prec) {
    CertInterval acc(prec);
    for (const auto& [pt, c] : terms) {
        if (c == 0) continue;
        CertInterval v = interval_eval(f, pt, prec);
        acc = acc + CertInterval::from_scalar(Scalar(c), prec) * v;
    }
    return acc;
}

}  // namespace

Evaluation evaluate(const ConvexMap& f, const Scalar& x, unsigned precision_bits) {
    if (!f.in_domain(x)) throw DomainViolation("point outside map domain");
    if (f.exact()) {
        Scalar v = f.as_polynomial().eval(x);
        return Evaluation{true, v, v, v};
    }
    Scalar target = Scalar(1) / Scalar(mpz_class(1) << precision_bits);
    for (unsigned prec = std::max(kStartPrecision, precision_bits + 16); prec <= kMaxPrecision;
         prec *= 2) {
        CertInterval v = interval_eval(f, x, static_cast<mpfr_prec_t>(prec));
        if (v.width() < target) return Evaluation{false, Scalar(0), v.lo(), v.hi()};
    }
    throw PrecisionExhausted("cannot certify evaluation to requested width");
}

GroupedSet map_set(const ConvexMap& f, const GroupedSet& a) {
    if (a.empty()) throw DomainViolation("map of empty set");
    for (const Scalar& v : a.elements())
        if (!f.in_domain(v)) throw DomainViolation("set leaves map domain");
    switch (f.kind) {
        case ConvexMap::Kind::log:
            // Log-domain carrier: the multiplicative set itself, whose
            // combine realizes addition of logs exactly.
            return a.retagged(Monoid::multiplicative);
        case ConvexMap::Kind::shifted_log_exp: {
            if (a.monoid() != Monoid::multiplicative)
                throw DomainViolation("shifted-log-exp expects a log-domain carrier");
            std::vector<Scalar> out;
            out.reserve(a.size());
            for (const Scalar& v : a.elements()) out.push_back(v + 1);
            return GroupedSet::from_sorted(std::move(out), Monoid::multiplicative);
        }
        case ConvexMap::Kind::real_power:
            throw DomainViolation("real-power image is not exactly representable");
        default: {
            Polynomial p = f.as_polynomial();
            if (!nonvanishing_on(p.derivative(), a.min(), a.max()))
                throw NotMonotone("f' changes sign on the hull of A");
            std::vector<Scalar> out;
            out.reserve(a.size());
            for (const Scalar& v : a.elements()) out.push_back(p.eval(v));
            return GroupedSet::from_values(std::move(out), Monoid::additive);
        }
    }
}

std::map<Scalar, long> DifferenceMap::expansion(const Scalar& x) const {
    std::map<Scalar, long> terms;
    std::size_t n = steps.size();
    // Subset expansion: Δ_{h1..hk} f(x) = Σ_S (-1)^{k-|S|} f(x + Σ_{i∈S} h_i).
    for (std::size_t mask = 0; mask < (std::size_t(1) << n); ++mask) {
        Scalar pt = x;
        int bits = 0;
        for (std::size_t i = 0; i < n; ++i)
            if (mask & (std::size_t(1) << i)) {
                pt += steps[i];
                ++bits;
            }
        long sign = ((n - bits) % 2 == 0) ? 1 : -1;
        terms[pt] += sign;
        if (terms[pt] == 0) terms.erase(pt);
    }
    return terms;
}

Polynomial DifferenceMap::as_polynomial() const {
    Polynomial p = base.as_polynomial();
    for (const Scalar& h : steps) p = p.delta(h);
    return p;
}

namespace {
DifferenceMap make_delta(ConvexMap base, std::vector<Scalar> steps, const Scalar& h) {
    if (sgn(h) <= 0) throw DomainViolation("difference step must be positive");
    steps.push_back(h);
    if (base.domain_lo && base.domain_hi) {
        Scalar total(0);
        for (const Scalar& s : steps) total += s;
        if (*base.domain_hi - total <= *base.domain_lo)
            throw EmptyDomain("difference map domain is empty");
    }
    return DifferenceMap{std::move(base), std::move(steps)};
}
}  // namespace

DifferenceMap delta_h(const ConvexMap& f, const Scalar& h) { return make_delta(f, {}, h); }

DifferenceMap delta_h(const DifferenceMap& f, const Scalar& h) {
    return make_delta(f.base, f.steps, h);
}

Evaluation evaluate(const DifferenceMap& m, const Scalar& x, unsigned precision_bits) {
    if (m.base.exact()) {
        Scalar v = m.as_polynomial().eval(x);
        return Evaluation{true, v, v, v};
    }
    auto terms = m.expansion(x);
    Scalar target = Scalar(1) / Scalar(mpz_class(1) << precision_bits);
    for (unsigned prec = std::max(kStartPrecision, precision_bits + 16); prec <= kMaxPrecision;
         prec *= 2) {
        CertInterval v = interval_signed_sum(m.base, terms, static_cast<mpfr_prec_t>(prec));
        if (v.width() < target) return Evaluation{false, Scalar(0), v.lo(), v.hi()};
    }
    throw PrecisionExhausted("cannot certify difference evaluation");
}

int signed_sum_sign(const ConvexMap& f, const std::map<Scalar, long>& terms) {
    if (f.exact()) {
        Polynomial p = f.as_polynomial();
        Scalar acc(0);
        for (const auto& [pt, c] : terms) acc += Scalar(c) * p.eval(pt);
        return sgn(acc);
    }
    if (f.kind == ConvexMap::Kind::log) {
        // Σ c_i log p_i compares exactly as Π p_i^{c_i} against 1.
        Scalar prod(1);
        for (const auto& [pt, c] : terms) {
            if (sgn(pt) <= 0) throw DomainViolation("log of non-positive point");
            Scalar power(1);
            Scalar b = c > 0 ? pt : Scalar(1 / pt);
            for (long i = 0; i < std::abs(c); ++i) power *= b;
            prod *= power;
        }
        return cmp(prod, Scalar(1));
    }
    for (unsigned prec = kStartPrecision; prec <= kMaxPrecision; prec *= 2) {
        CertInterval v = interval_signed_sum(f, terms, static_cast<mpfr_prec_t>(prec));
        if (int s = v.certified_sign(); s != 0) return s;
        // Could be an exact zero; no way to certify that numerically.
    }
    throw PrecisionExhausted("cannot separate signed sum from zero");
}

GridCheckReport function_convexity_check(const ConvexMap& f, int k, const GroupedSet& grid,
                                         const std::vector<Scalar>& steps) {
    if (static_cast<int>(steps.size()) > k)
        throw DomainViolation("more steps than the convexity level k");
    if (grid.size() < 2) throw TooSmall("grid needs at least 2 points");
    for (const Scalar& h : steps)
        if (sgn(h) <= 0) throw DomainViolation("steps must be positive");

    GridCheckReport report;
    for (std::size_t j = 0; j <= steps.size(); ++j) {
        DifferenceMap m{f, std::vector<Scalar>(steps.begin(), steps.begin() + j)};
        Scalar total(0);
        for (const Scalar& h : m.steps) total += h;
        for (const Scalar& x : grid.elements())
            if (!f.in_domain(x) || !f.in_domain(x + total))
                throw DomainViolation("shifted grid leaves map domain");

        int dir = 0;
        for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
            // sign of m(x_{i+1}) - m(x_i) as one exact/certified signed sum
            std::map<Scalar, long> terms = m.expansion(grid[i + 1]);
            for (const auto& [pt, c] : m.expansion(grid[i])) {
                terms[pt] -= c;
                if (terms[pt] == 0) terms.erase(pt);
            }
            int s = signed_sum_sign(f, terms);
            if (s == 0 || (dir != 0 && s != dir)) {
                report.pass = false;
                report.violation = GridCheckViolation{j, grid[i], grid[i + 1]};
                return report;
            }
            dir = s;
        }
        report.directions.push_back(dir);
    }
    return report;
}

}  // namespace itersum
