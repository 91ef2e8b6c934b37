#include "itersum/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <set>
#include <sstream>

#include <json.hpp>

#include "itersum/errors.hpp"
#include "itersum/scalar.hpp"

namespace itersum {

namespace {

std::string fmt_decimal(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6f", v);
    return buf;
}

std::string fmt_count(std::size_t n) { return std::to_string(n); }

double to_double(const Scalar& s) { return mpq_get_d(s.get_mpq_t()); }

std::string ratio_string(const Scalar& measured, const Scalar& bound) {
    if (sgn(bound) <= 0) return "";
    return fmt_decimal(to_double(measured / bound));
}

std::uint64_t fnv1a(const std::string& s) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

std::string batch_digest(const WitnessBatch& b) {
    std::string all;
    for (const WitnessCertificate& c : b.certificates) {
        all += render_scalar(c.value);
        all += '\n';
    }
    char buf[24];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a(all)));
    return buf;
}

mpz_class mpz_pow(const mpz_class& b, unsigned long e) {
    mpz_class r;
    mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), e);
    return r;
}

// exact floor(log2 n) for n >= 1
unsigned floor_log2(std::size_t n) {
    unsigned t = 0;
    while ((std::size_t(1) << (t + 1)) <= n) ++t;
    return t;
}

bool verify_batch(const WitnessBatch& b) {
    for (const WitnessCertificate& c : b.certificates)
        if (!verify_certificate(c, b.ground, b.k).pass) return false;
    return true;
}

bool values_subset(const WitnessBatch& b, const GroupedSet& oracle) {
    for (const WitnessCertificate& c : b.certificates)
        if (!oracle.contains(c.value)) return false;
    return true;
}

void finish(ExperimentReport& r) {
    for (const ReportRow& row : r.rows)
        if (row.verdict == "fail") r.pass = false;
}

}  // namespace

std::string ExperimentReport::to_csv() const {
    std::ostringstream out;
    out << "family,N,k,map,|A+A|,|A+A-A|,|AA/A|,measured,bound,ratio,verdict\n";
    for (const ReportRow& r : rows)
        out << r.family << ',' << r.N << ',' << r.k << ',' << r.map << ',' << r.plus2 << ','
            << r.plus2minus1 << ',' << r.quotient << ',' << r.measured << ',' << r.bound << ','
            << r.ratio << ',' << r.verdict << '\n';
    return out.str();
}

std::string ExperimentReport::to_json() const {
    nlohmann::ordered_json doc;
    doc["pass"] = pass;
    doc["rows"] = nlohmann::ordered_json::array();
    for (const ReportRow& r : rows) {
        nlohmann::ordered_json row;
        row["family"] = r.family;
        row["N"] = r.N;
        row["k"] = r.k;
        row["map"] = r.map;
        row["|A+A|"] = r.plus2;
        row["|A+A-A|"] = r.plus2minus1;
        row["|AA/A|"] = r.quotient;
        row["measured"] = r.measured;
        row["bound"] = r.bound;
        row["ratio"] = r.ratio;
        row["verdict"] = r.verdict;
        if (!r.digest.empty()) row["digest"] = r.digest;
        doc["rows"].push_back(std::move(row));
    }
    return doc.dump(2) + "\n";
}

GroupedSet oracle_iterated(const GroupedSet& a, unsigned m, unsigned n,
                           const SetLimits& limits) {
    if (m < 1) throw DomainViolation("oracle needs m >= 1");
    auto multiset_folds = [&](unsigned count) {
        std::vector<Scalar> out;
        std::function<void(unsigned, std::size_t, const Scalar&)> rec =
            [&](unsigned left, std::size_t start, const Scalar& acc) {
                if (left == 0) {
                    out.push_back(acc);
                    return;
                }
                for (std::size_t i = start; i < a.size(); ++i)
                    rec(left - 1, i, monoid_op(a.monoid(), acc, a[i]));
            };
        rec(count, 0, monoid_identity(a.monoid()));
        return out;
    };
    std::vector<Scalar> plus = multiset_folds(m);
    std::vector<Scalar> minus = multiset_folds(n);
    if (plus.size() * minus.size() > limits.cap) throw CapExceeded(limits.cap);
    std::set<Scalar> values;
    for (const Scalar& p : plus)
        for (const Scalar& q : minus) {
            values.insert(monoid_op(a.monoid(), p, monoid_inverse(a.monoid(), q)));
            if (values.size() > limits.cap) throw CapExceeded(limits.cap);
        }
    return GroupedSet::from_sorted(std::vector<Scalar>(values.begin(), values.end()),
                                   a.monoid());
}

GroupedSet make_family(const std::string& descriptor, std::size_t N, std::uint64_t seed) {
    if (N < 1) throw BadFamily("N must be >= 1");
    auto colon = descriptor.find(':');
    std::string name = descriptor.substr(0, colon);
    std::string param = colon == std::string::npos ? "" : descriptor.substr(colon + 1);
    std::vector<Scalar> vals;
    vals.reserve(N);
    if (name == "powers") {
        long k = param.empty() ? 2 : std::stol(param);
        if (k < 1) throw BadFamily("powers needs exponent >= 1");
        for (std::size_t i = 1; i <= N; ++i) {
            mpz_class v = mpz_pow(mpz_class(static_cast<unsigned long>(i)),
                                  static_cast<unsigned long>(k));
            vals.emplace_back(v);
        }
        return GroupedSet::from_sorted(std::move(vals), Monoid::additive);
    }
    if (name == "geometric") {
        Scalar r = param.empty() ? Scalar(2) : parse_scalar(param);
        if (!(r > 1)) throw BadFamily("geometric needs ratio > 1");
        Scalar v = r;
        for (std::size_t i = 1; i <= N; ++i, v *= r) vals.push_back(v);
        return GroupedSet::from_sorted(std::move(vals), Monoid::multiplicative);
    }
    if (name == "ap") {
        Scalar d = param.empty() ? Scalar(1) : parse_scalar(param);
        if (sgn(d) <= 0) throw BadFamily("ap needs step > 0");
        Scalar v = 1;
        for (std::size_t i = 1; i <= N; ++i, v += d) vals.push_back(v);
        return GroupedSet::from_sorted(std::move(vals), Monoid::additive);
    }
    if (name == "random") {
        std::mt19937_64 rng(seed);
        std::uniform_int_distribution<int> inc(1, 8);
        Scalar v = 1;
        for (std::size_t i = 1; i <= N; ++i) {
            vals.push_back(v);
            v += inc(rng);
        }
        return GroupedSet::from_sorted(std::move(vals), Monoid::additive);
    }
    if (name == "random-convex") {
        long k = param.empty() ? 1 : std::stol(param);
        if (k < 1 || std::size_t(k) + 2 > N)
            throw BadFamily("random-convex needs 1 <= order <= N-2");
        std::mt19937_64 rng(seed);
        std::uniform_int_distribution<int> inc(1, 8);
        // Draw the level-k differences strictly increasing, then integrate.
        std::vector<Scalar> level;
        Scalar v = inc(rng);
        for (std::size_t i = 0; i + std::size_t(k) < N; ++i) {
            level.push_back(v);
            v += inc(rng);
        }
        for (long t = 0; t < k; ++t) {
            std::vector<Scalar> next;
            next.reserve(level.size() + 1);
            Scalar acc = 1;
            next.push_back(acc);
            for (const Scalar& d : level) next.push_back(acc += d);
            level = std::move(next);
        }
        return GroupedSet::from_sorted(std::move(level), Monoid::additive);
    }
    throw BadFamily("unknown family: " + name);
}

ExperimentReport check_theorem3(const std::string& family, const std::vector<std::size_t>& sizes,
                                int k, const SetLimits& limits) {
    ExperimentReport rep;
    for (std::size_t N : sizes) {
        GroupedSet a = make_family(family, N);
        ReportRow row;
        row.family = family;
        row.N = N;
        row.k = k;
        row.map = "identity";
        try {
            WitnessBatch batch = theorem3_witnesses(a, k, limits);
            row.digest = batch_digest(batch);
            bool ok = verify_batch(batch);
            std::size_t count = batch.certificates.size();
            row.measured = fmt_count(count);
            row.bound = render_scalar(batch.claimed_count_bound);
            row.ratio = ratio_string(Scalar(long(count)), batch.claimed_count_bound);
            // membership oracle, when feasible without swamping the run
            bool member_ok = true;
            if (k <= 2 && a.size() <= 31) {
                GroupedSet oracle = iterated_combine(a, 1u << k, (1u << k) - 1, limits);
                member_ok = values_subset(batch, oracle);
                row.plus2minus1 = fmt_count(oracle.size());
            }
            bool bound_ok = Scalar(long(count)) >= batch.claimed_count_bound;
            row.verdict = (ok && member_ok && bound_ok) ? "pass" : "fail";
        } catch (const NotKConvex&) {
            row.verdict = "expected-failure";
        } catch (const CapExceeded&) {
            row.verdict = "cap-exceeded";
        }
        rep.rows.push_back(std::move(row));
    }
    finish(rep);
    return rep;
}

ExperimentReport check_theorem4(const GroupedSet& a, const ConvexMap& f, int k,
                                const SetLimits& limits) {
    ExperimentReport rep;
    ReportRow row;
    row.family = "input";
    row.N = a.size();
    row.k = k;
    row.map = f.descriptor();
    try {
        GroupedSet expansion = iterated_combine(a, 2, 1, limits);
        if (a.monoid() == Monoid::additive)
            row.plus2minus1 = fmt_count(expansion.size());
        else
            row.quotient = fmt_count(expansion.size());
        WitnessBatch batch = theorem4_witnesses(a, f, k, limits);
        row.digest = batch_digest(batch);
        bool ok = verify_batch(batch);
        std::size_t count = batch.certificates.size();
        row.measured = fmt_count(count);
        row.bound = render_scalar(batch.claimed_count_bound);
        row.ratio = ratio_string(Scalar(long(count)), batch.claimed_count_bound);
        bool member_ok = true;
        if (k == 1 && batch.ground.size() <= 512) {
            GroupedSet oracle = iterated_combine(batch.ground, 2, 1, limits);
            member_ok = values_subset(batch, oracle);
        }
        if (k == 1) {
            row.verdict =
                (ok && member_ok && Scalar(long(count)) >= batch.claimed_count_bound)
                    ? "pass"
                    : "fail";
        } else {
            row.verdict = (ok && member_ok) ? "report-only" : "fail";
        }
    } catch (const TooSmall&) {
        row.verdict = "expected-failure";
    } catch (const CapExceeded&) {
        row.verdict = "cap-exceeded";
    }
    rep.rows.push_back(std::move(row));
    finish(rep);
    return rep;
}

namespace {

// Largest run of A avoiding every isolating interval of the roots of
// f', ..., f^(k+1); certifies derivative-sign-constancy exactly.
GroupedSet root_free_run(const GroupedSet& a, const Polynomial& f, int k) {
    std::vector<RootInterval> holes;
    Polynomial d = f;
    for (int l = 1; l <= k + 1; ++l) {
        d = d.derivative();
        if (d.degree() < 1) break;
        for (const RootInterval& iv : isolate_roots(d)) holes.push_back(iv);
    }
    auto blocked = [&](const Scalar& x) {
        for (const RootInterval& iv : holes)
            if (x > iv.lo && x <= iv.hi) return true;
        return false;
    };
    std::vector<Scalar> best, cur;
    auto cut_between = [&](const Scalar& x, const Scalar& y) {
        for (const RootInterval& iv : holes)
            if (iv.lo >= x && iv.hi < y) return true;  // a root strictly between
        return false;
    };
    for (const Scalar& x : a.elements()) {
        if (blocked(x) || (!cur.empty() && cut_between(cur.back(), x))) {
            if (cur.size() > best.size()) best = cur;
            cur.clear();
            if (!blocked(x)) cur.push_back(x);
            continue;
        }
        cur.push_back(x);
    }
    if (cur.size() > best.size()) best = cur;
    if (best.size() < 2) throw TooSmall("no usable root-free run");
    return GroupedSet::from_sorted(std::move(best), a.monoid());
}

}  // namespace

ExperimentReport check_corollary(int part, const GroupedSet& a, int k, const Scalar& delta,
                                 const Polynomial* f, const SetLimits& limits) {
    if (part < 1 || part > 3) throw DomainViolation("corollary part must be 1, 2 or 3");
    if (k < 1) throw DomainViolation("k must be >= 1");
    if (sgn(delta) < 0) throw DomainViolation("delta must be >= 0");
    ExperimentReport rep;
    ReportRow row;
    row.family = "input";
    row.N = a.size();
    row.k = k;
    mpz_class N(static_cast<unsigned long>(a.size()));
    unsigned fold = 1u << (k - 1);

    // exact hypothesis check |X| <= N^{1+delta}: |X|^q <= N^{q+p}
    auto hypothesis_holds = [&](std::size_t card) {
        mpz_class p = delta.get_num(), q = delta.get_den();
        mpz_class lhs = mpz_pow(mpz_class(static_cast<unsigned long>(card)),
                                mpz_get_ui(q.get_mpz_t()));
        mpz_class rhs;
        mpz_class e = q + p;
        mpz_pow_ui(rhs.get_mpz_t(), N.get_mpz_t(), mpz_get_ui(e.get_mpz_t()));
        return lhs <= rhs;
    };

    if (part == 1) {
        row.map = "identity";
        if (a.monoid() != Monoid::additive) throw MonoidMismatch();
        GroupedSet sums = combine(a, a, limits);
        row.plus2 = fmt_count(sums.size());
        if (!hypothesis_holds(sums.size()))
            throw HypothesisViolated("|A+A| exceeds |A|^(1+delta)");
        for (const Scalar& x : a.elements())
            if (sgn(x) <= 0) throw DomainViolation("part 1 needs a positive set");
        GroupedSet mult = a.retagged(Monoid::multiplicative);
        GroupedSet out = iterated_combine(mult, fold, fold - 1, limits);
        if (k == 2) row.quotient = fmt_count(out.size());
        row.measured = fmt_count(out.size());
        mpz_class target = mpz_pow(N, static_cast<unsigned long>(k));
        row.bound = target.get_str();
        row.ratio = ratio_string(Scalar(mpz_class(static_cast<unsigned long>(out.size()))),
                                 Scalar(target));
        row.verdict = "report-only";
    } else if (part == 2) {
        row.map = "shifted-log-exp";
        if (a.monoid() != Monoid::multiplicative) throw MonoidMismatch();
        GroupedSet prods = combine(a, a, limits);
        if (!hypothesis_holds(prods.size()))
            throw HypothesisViolated("|AA| exceeds |A|^(1+delta)");
        GroupedSet shifted = map_set(ConvexMap::shifted_log_exp_map(), a);
        GroupedSet out = iterated_combine(shifted, fold, fold - 1, limits);
        row.measured = fmt_count(out.size());
        mpz_class target = mpz_pow(N, static_cast<unsigned long>(k));
        row.bound = target.get_str();
        row.ratio = ratio_string(Scalar(mpz_class(static_cast<unsigned long>(out.size()))),
                                 Scalar(target));
        row.verdict = "report-only";
    } else {
        if (a.monoid() != Monoid::additive) throw MonoidMismatch();
        GroupedSet base = a;
        ConvexMap map;
        if (f != nullptr) {
            if (f->degree() != k) throw DomainViolation("part 3 polynomial must have degree k");
            base = root_free_run(a, *f, k);
            map = ConvexMap::polynomial_map(*f);
        } else {
            map = ConvexMap::integer_power_map(k);
            for (const Scalar& x : a.elements())
                if (sgn(x) <= 0) throw DomainViolation("x^k needs a positive set here");
        }
        row.map = map.descriptor();
        row.N = base.size();
        GroupedSet image = map_set(map, base);
        GroupedSet out = iterated_combine(image, fold, fold - 1, limits);
        row.measured = fmt_count(out.size());
        mpz_class target =
            mpz_pow(mpz_class(static_cast<unsigned long>(base.size())),
                    static_cast<unsigned long>(k));
        row.bound = target.get_str();
        row.ratio = ratio_string(Scalar(mpz_class(static_cast<unsigned long>(out.size()))),
                                 Scalar(target));
        row.verdict = "report-only";
    }
    rep.rows.push_back(std::move(row));
    finish(rep);
    return rep;
}

ExperimentReport check_threefold(const GroupedSet& a, const SetLimits& limits) {
    ExperimentReport rep;
    ReportRow row;
    row.family = "input";
    row.N = a.size();
    row.k = 1;
    row.map = "-";
    for (const Scalar& x : a.elements())
        if (sgn(x) <= 0) throw DomainViolation("threefold check needs a positive set");
    GroupedSet add = a.retagged(Monoid::additive);
    GroupedSet mul = a.retagged(Monoid::multiplicative);
    std::size_t s = iterated_combine(add, 2, 1, limits).size();
    std::size_t q = iterated_combine(mul, 2, 1, limits).size();
    row.plus2minus1 = fmt_count(s);
    row.quotient = fmt_count(q);
    std::size_t best = std::max(s, q);
    row.measured = fmt_count(best);
    std::size_t N = a.size();
    if (N <= 1) {
        row.bound = "0";
        row.ratio = "";
        row.verdict = "pass";
    } else {
        unsigned t = floor_log2(N);
        double lg = std::log2(double(N));
        double bound = std::pow(double(N), 1.5) / std::pow(lg, 1.5);
        row.bound = fmt_decimal(bound);
        row.ratio = fmt_decimal(double(best) / bound);
        if ((std::size_t(1) << t) == N) {
            // exact: best^2 * t^3 >= N^3
            mpz_class lhs = mpz_pow(mpz_class(static_cast<unsigned long>(best)), 2) *
                            mpz_pow(mpz_class(static_cast<unsigned long>(t)), 3);
            mpz_class rhs = mpz_pow(mpz_class(static_cast<unsigned long>(N)), 3);
            row.verdict = lhs >= rhs ? "pass" : "fail";
        } else {
            row.verdict = double(best) >= bound ? "pass" : "report-only";
        }
    }
    rep.rows.push_back(std::move(row));
    finish(rep);
    return rep;
}

ExperimentReport growth_report(const std::string& family, const std::vector<int>& ks,
                               const std::vector<std::size_t>& sizes, const SetLimits& limits) {
    ExperimentReport rep;
    for (int k : ks) {
        std::vector<std::pair<double, double>> points;  // (log2 N, log2 measured)
        for (std::size_t N : sizes) {
            GroupedSet a = make_family(family, N);
            ReportRow row;
            row.family = family;
            row.N = N;
            row.k = k;
            row.map = "identity";
            try {
                GroupedSet out = iterated_combine(a, 1u << k, (1u << k) - 1, limits);
                row.measured = fmt_count(out.size());
                mpz_class target = mpz_pow(mpz_class(static_cast<unsigned long>(N)),
                                           static_cast<unsigned long>(k + 1));
                row.bound = target.get_str();
                row.ratio = ratio_string(Scalar(mpz_class(static_cast<unsigned long>(out.size()))),
                                         Scalar(target));
                row.verdict = "report-only";
                points.emplace_back(std::log2(double(N)), std::log2(double(out.size())));
            } catch (const CapExceeded&) {
                row.verdict = "cap-exceeded";
            }
            rep.rows.push_back(std::move(row));
        }
        if (points.size() >= 2) {
            double sx = 0, sy = 0, sxx = 0, sxy = 0;
            for (auto [x, y] : points) {
                sx += x;
                sy += y;
                sxx += x * x;
                sxy += x * y;
            }
            double n = double(points.size());
            double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
            ReportRow row;
            row.family = family;
            row.N = 0;
            row.k = k;
            row.map = "slope";
            row.measured = fmt_decimal(slope);
            row.bound = fmt_decimal(double(k + 1));
            row.verdict = "report-only";
            rep.rows.push_back(std::move(row));
        }
    }
    finish(rep);
    return rep;
}

}  // namespace itersum
