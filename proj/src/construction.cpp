#include "itersum/construction.hpp"

#include <algorithm>
#include <cassert>
#include <functional>
#include <map>
#include <utility>

#include "itersum/errors.hpp"

namespace itersum {

bool ScalarInterval::contains(const Scalar& x) const {
    int cl = cmp(lo, x);
    if (cl > 0 || (cl == 0 && lo_open)) return false;
    int ch = cmp(x, hi);
    if (ch > 0 || (ch == 0 && hi_open)) return false;
    return true;
}

bool ScalarInterval::disjoint(const ScalarInterval& o) const {
    const ScalarInterval& a = lo <= o.lo ? *this : o;
    const ScalarInterval& b = lo <= o.lo ? o : *this;
    int c = cmp(a.hi, b.lo);
    if (c < 0) return true;
    if (c > 0) return false;
    return a.hi_open || b.lo_open;
}

DifferenceIndex difference_index(const GroupedSet& a) {
    if (a.size() < 2) throw TooSmall("difference index needs at least 2 elements");
    DifferenceIndex idx;
    std::vector<Scalar> gaps;
    gaps.reserve(a.size() - 1);
    for (std::size_t j = 0; j + 1 < a.size(); ++j)
        gaps.push_back(monoid_difference(a.monoid(), a[j], a[j + 1]));
    idx.H = gaps;
    std::sort(idx.H.begin(), idx.H.end());
    idx.H.erase(std::unique(idx.H.begin(), idx.H.end()), idx.H.end());

    idx.fiber_count.assign(idx.H.size(), 0);
    idx.rank_of_gap.reserve(gaps.size());
    for (const Scalar& g : gaps) {
        std::size_t l =
            std::lower_bound(idx.H.begin(), idx.H.end(), g) - idx.H.begin() + 1;  // 1-based
        idx.rank_of_gap.push_back(l);
        ++idx.fiber_count[l - 1];
        idx.index_sum += static_cast<unsigned long>(l);
    }
    for (std::size_t l = 1; l <= idx.H.size(); ++l) {
        std::size_t c = idx.fiber_count[l - 1];
        unsigned t = 0;
        while ((std::size_t(1) << (t + 1)) <= c) ++t;
        idx.dyadic_classes[t].push_back(l);
    }
    return idx;
}

DyadicDecomposition dyadic_pigeonhole(const GroupedSet& a, std::size_t min_size) {
    if (a.size() < std::max<std::size_t>(2, min_size))
        throw TooSmall("dyadic pigeonhole needs a larger set");
    DifferenceIndex idx = difference_index(a);

    // Pick t maximizing 2^t |I_t|; smallest t on ties maximizes m.
    bool found = false;
    unsigned best_t = 0;
    std::size_t best_score = 0;
    for (const auto& [t, ranks] : idx.dyadic_classes) {
        std::size_t score = (std::size_t(1) << t) * ranks.size();
        if (!found || score > best_score) {
            found = true;
            best_t = t;
            best_score = score;
        }
    }
    assert(found);

    DyadicDecomposition dec;
    dec.t = best_t;
    dec.L = std::size_t(1) << best_t;
    for (std::size_t l : idx.dyadic_classes.at(best_t)) dec.h_prime.push_back(idx.H[l - 1]);
    std::sort(dec.h_prime.begin(), dec.h_prime.end());
    dec.m = dec.h_prime.size();
    for (const Scalar& h : dec.h_prime) {
        std::vector<Scalar> fiber;
        for (std::size_t j = 0; j + 1 < a.size(); ++j)
            if (monoid_difference(a.monoid(), a[j], a[j + 1]) == h) fiber.push_back(a[j]);
        dec.fibers[h] = std::move(fiber);
    }
    dec.count_bound = Scalar(long(dec.L)) * Scalar(long(dec.m)) * Scalar(long(dec.m)) / 2;
    return dec;
}

Refinement refine(const GroupedSet& a, const std::vector<Scalar>& steps) {
    if (steps.empty()) throw DomainViolation("refine needs at least one step");
    Refinement r;
    r.steps = steps;
    r.members = a.elements();
    for (const Scalar& h : steps) {
        std::vector<Scalar> next;
        for (std::size_t j = 0; j + 1 < r.members.size(); ++j)
            if (monoid_difference(a.monoid(), r.members[j], r.members[j + 1]) == h)
                next.push_back(r.members[j]);
        r.members = std::move(next);
        if (r.members.empty()) break;
    }
    return r;
}

SqueezeResult squeeze_check_identity(const Scalar& a_i, const Scalar& a_next,
                                     const Scalar& delta_j) {
    Scalar middle = a_i + delta_j;
    if (!(a_i < middle && middle < a_next))
        throw SqueezeViolated("identity squeeze violated");
    return SqueezeResult{middle, ScalarInterval{a_i, a_next, true, true}};
}

SqueezeResult squeeze_check(const ConvexMap& f, const Scalar& a_i, const Scalar& a_j,
                            const Scalar& h, int dir_f, int dir_dhf) {
    if (sgn(h) <= 0) throw DomainViolation("squeeze step must be positive");
    if (dir_f == 0 || dir_dhf == 0) throw DomainViolation("directions must be +1 or -1");
    Scalar fi, fih, fj, fjh;
    if (f.exact()) {
        Polynomial p = f.as_polynomial();
        fi = p.eval(a_i);
        fih = p.eval(a_i + h);
        fj = p.eval(a_j);
        fjh = p.eval(a_j + h);
    } else if (f.kind == ConvexMap::Kind::log) {
        // Log routes through the multiplicative carrier: values below are
        // carriers, and the comparisons transport exactly.
        if (sgn(a_i) <= 0 || sgn(a_j) <= 0) throw DomainViolation("log squeeze needs positives");
        fi = a_i;
        fih = a_i + h;
        fj = a_j;
        fjh = a_j + h;
        // middle carrier: a_i (a_j + h) / a_j
        Scalar middle = fi * fjh / fj;
        if (dir_dhf != -1) throw DomainViolation("Δ_h log is decreasing");
        if (!(fi < middle && middle <= fih)) throw SqueezeViolated("log squeeze violated");
        return SqueezeResult{middle, ScalarInterval{fi, fih, true, false}};
    } else {
        throw DomainViolation("squeeze_check supports exact maps and log");
    }
    // For decreasing f the same middle lands in the mirrored half-open
    // interval.
    Scalar middle = fi + fjh - fj;
    if (dir_f > 0) {
        if (!(fi < middle && middle <= fih)) throw SqueezeViolated("increasing squeeze violated");
        return SqueezeResult{middle, ScalarInterval{fi, fih, true, false}};
    }
    if (!(fih <= middle && middle < fi)) throw SqueezeViolated("decreasing squeeze violated");
    return SqueezeResult{middle, ScalarInterval{fih, fi, false, true}};
}

namespace {

// Signed multiset over exact carrier values; realizes the eager rewriting of
// nested representations into ground-set representations.
using SignedParts = std::map<Scalar, long>;

void add_part(SignedParts& ms, const Scalar& v, long c) {
    ms[v] += c;
    if (ms[v] == 0) ms.erase(v);
}

// Splits into (plus, minus) padded with `pad` to exactly (2^k, 2^k - 1).
std::pair<std::vector<Scalar>, std::vector<Scalar>> split_parts(const SignedParts& ms, int k,
                                                                const Scalar& pad) {
    std::vector<Scalar> plus, minus;
    for (const auto& [v, c] : ms) {
        for (long i = 0; i < c; ++i) plus.push_back(v);
        for (long i = 0; i < -c; ++i) minus.push_back(v);
    }
    std::size_t want_plus = std::size_t(1) << k;
    std::size_t want_minus = want_plus - 1;
    if (plus.size() > want_plus || minus.size() > want_minus ||
        plus.size() - minus.size() != 1)
        throw Error("internal: representation arity out of range");
    while (plus.size() < want_plus) {
        plus.push_back(pad);
        minus.push_back(pad);
    }
    std::sort(plus.begin(), plus.end());
    std::sort(minus.begin(), minus.end());
    return {std::move(plus), std::move(minus)};
}

mpz_class pow2(unsigned e) { return mpz_class(1) << e; }

}  // namespace

WitnessBatch theorem3_witnesses(const GroupedSet& a, int k, const SetLimits& limits) {
    if (k < 1) throw DomainViolation("k must be >= 1");
    if (a.monoid() != Monoid::additive) throw MonoidMismatch();
    if (a.size() < 3) throw TooSmall("theorem-3 engine needs |A| >= 3");
    ConvexityReport conv = convexity_order(a);
    if (conv.order < k) throw NotKConvex("set is not " + std::to_string(k) + "-convex");

    // Truncate to the largest prefix of size 2^l - 1.
    std::size_t n = 1;
    while ((n << 1) - 1 <= a.size()) n <<= 1;
    std::size_t trunc = n - 1;  // 2^l - 1
    const std::vector<Scalar> pts(a.elements().begin(), a.elements().begin() + trunc);
    const std::size_t N = pts.size();

    // Full positive difference set with one representation (p, q) per value.
    struct Diff {
        Scalar value;
        std::size_t p, q;  // value = a_q - a_p
    };
    std::vector<Diff> diffs;
    diffs.reserve(N * (N - 1) / 2);
    for (std::size_t p = 0; p < N; ++p)
        for (std::size_t q = p + 1; q < N; ++q) diffs.push_back({pts[q] - pts[p], p, q});
    std::sort(diffs.begin(), diffs.end(),
              [](const Diff& x, const Diff& y) { return x.value < y.value; });
    diffs.erase(std::unique(diffs.begin(), diffs.end(),
                            [](const Diff& x, const Diff& y) { return x.value == y.value; }),
                diffs.end());

    // Consecutive differences and their index map for rewriting child parts.
    std::vector<Scalar> delta;
    delta.reserve(N - 1);
    for (std::size_t j = 0; j + 1 < N; ++j) delta.push_back(pts[j + 1] - pts[j]);
    std::map<Scalar, std::size_t> delta_index;
    for (std::size_t j = 0; j < delta.size(); ++j) delta_index[delta[j]] = j;

    // Level k-1 witnesses on the difference set; its own truncation yields
    // exactly the first-half prefix (ΔA)'.
    WitnessBatch child;
    if (k >= 2)
        child = theorem3_witnesses(GroupedSet::from_sorted(delta, Monoid::additive), k - 1,
                                   limits);

    WitnessBatch batch;
    batch.ground = a;
    batch.map_descriptor = "identity";
    batch.k = k;
    {
        mpz_class nk;
        mpz_pow_ui(nk.get_mpz_t(), mpz_class(long(N)).get_mpz_t(), unsigned(k + 1));
        batch.claimed_count_bound = Scalar(nk) / Scalar(pow2(unsigned(k * k)));
    }

    const Scalar& pad = pts.front();
    for (std::size_t i = 0; i + 1 < N; ++i) {
        const Scalar& gap = delta[i];
        ScalarInterval interval{pts[i], pts[i + 1], true, false};
        // value -> signed representation, deduplicated within the gap
        std::map<Scalar, SignedParts> harvest;

        // a_i + (a_q - a_p) for every difference below the gap width
        for (const Diff& d : diffs) {
            if (d.value >= gap) break;
            Scalar v = pts[i] + d.value;
            if (harvest.count(v)) continue;
            SignedParts ms;
            add_part(ms, pts[i], 1);
            add_part(ms, pts[d.q], 1);
            add_part(ms, pts[d.p], -1);
            harvest.emplace(std::move(v), std::move(ms));
        }
        // a_i + w for recursively constructed w over ΔA, rewritten via
        // Δa_j = a_{j+1} - a_j
        if (k >= 2) {
            for (const WitnessCertificate& c : child.certificates) {
                if (c.value >= gap) continue;
                Scalar v = pts[i] + c.value;
                if (harvest.count(v)) continue;
                SignedParts ms;
                add_part(ms, pts[i], 1);
                for (const Scalar& part : c.plus_part) {
                    std::size_t j = delta_index.at(part);
                    add_part(ms, pts[j + 1], 1);
                    add_part(ms, pts[j], -1);
                }
                for (const Scalar& part : c.minus_part) {
                    std::size_t j = delta_index.at(part);
                    add_part(ms, pts[j], 1);
                    add_part(ms, pts[j + 1], -1);
                }
                harvest.emplace(std::move(v), std::move(ms));
            }
        }
        // the interior right endpoint itself (an element of the iterated set)
        if (i + 2 < N) {
            SignedParts ms;
            add_part(ms, pts[i + 1], 1);
            harvest.emplace(pts[i + 1], std::move(ms));
        }

        for (auto& [v, ms] : harvest) {
            auto [plus, minus] = split_parts(ms, k, pad);
            batch.certificates.push_back(
                WitnessCertificate{v, std::move(plus), std::move(minus), interval});
            if (batch.certificates.size() > limits.cap) throw CapExceeded(limits.cap);
        }
    }
    return batch;
}

namespace {

// Ground/output semantics for the theorem-4 engine: all arithmetic is exact
// on rational carriers; transcendental maps ride their multiplicative
// carriers (log x ↦ x, log(1+e^x) ↦ 1+a with a = e^x).
struct CarrierMap {
    Monoid ground;
    Monoid out;
    std::function<Scalar(const Scalar&)> apply;
};

CarrierMap carrier_map_for(const ConvexMap& f, const GroupedSet& a) {
    switch (f.kind) {
        case ConvexMap::Kind::polynomial:
        case ConvexMap::Kind::integer_power: {
            Polynomial p = f.as_polynomial();
            return CarrierMap{Monoid::additive, Monoid::additive,
                              [p](const Scalar& x) { return p.eval(x); }};
        }
        case ConvexMap::Kind::log:
            for (const Scalar& v : a.elements())
                if (sgn(v) <= 0) throw DomainViolation("log needs a positive set");
            return CarrierMap{Monoid::additive, Monoid::multiplicative,
                              [](const Scalar& x) { return x; }};
        case ConvexMap::Kind::shifted_log_exp:
            if (a.monoid() != Monoid::multiplicative)
                throw DomainViolation("shifted-log-exp expects a log-domain carrier");
            return CarrierMap{Monoid::multiplicative, Monoid::multiplicative,
                              [](const Scalar& x) { return Scalar(x + 1); }};
        case ConvexMap::Kind::real_power:
            throw PrecisionExhausted(
                "real-power witnesses are not exactly representable; use the multiplicative "
                "carrier families instead");
    }
    throw DomainViolation("unhandled map kind");
}

struct Frame {
    Scalar shift;  // a_i of this branch
    Scalar step;   // h of this branch
};

class Theorem4Engine {
  public:
    Theorem4Engine(const CarrierMap& cm, int k, const Scalar& pad)
        : cm_(cm), k_(k), pad_(pad) {}

    std::vector<WitnessCertificate> certificates;

    void run(const std::vector<Scalar>& pts, std::vector<Frame>& chain, int level) {
        if (pts.size() < 2) return;
        // The grid verification the construction needs: the current map must
        // be strictly monotone on the points it is about to use.
        int dir_f = monotone_direction(pts, chain);

        DyadicDecomposition dec;
        try {
            dec = dyadic_pigeonhole(GroupedSet::from_sorted(pts, cm_.ground), 2);
        } catch (const TooSmall&) {
            return;
        }

        for (const Scalar& h : dec.h_prime) {
            const std::vector<Scalar>& fiber = dec.fibers.at(h);
            if (level == 1) {
                emit_base(fiber, h, chain, dir_f);
            } else {
                std::size_t mid = (fiber.size() + 1) / 2;  // 1-based ceil(N_h/2)
                std::vector<Scalar> lower(fiber.begin(), fiber.begin() + mid);
                for (std::size_t i = mid - 1; i < fiber.size(); ++i) {
                    chain.push_back(Frame{fiber[i], h});
                    run(lower, chain, level - 1);
                    chain.pop_back();
                }
            }
        }
        // k = 1 produces m L^2 / 2 distinct sums (not the pigeonhole's L m^2 / 2).
        if (level == 1)
            base_bounds_.push_back(Scalar(long(dec.m)) * Scalar(long(dec.L)) *
                                   Scalar(long(dec.L)) / 2);
    }

    // Certified constant-free bound: m L^2 / 2 summed over the base layers.
    Scalar base_bound_total() const {
        Scalar s = 0;
        for (const Scalar& b : base_bounds_) s += b;
        return s;
    }

  private:
    const CarrierMap& cm_;
    int k_;
    Scalar pad_;
    std::vector<Scalar> base_bounds_;

    Scalar ground_op(const Scalar& x, const Scalar& h) const {
        return monoid_op(cm_.ground, x, h);
    }

    // Current map value at x under the frame chain (exact carrier).
    Scalar eval(const std::vector<Frame>& chain, std::size_t depth, const Scalar& x) const {
        if (depth == 0) return cm_.apply(x);
        const Frame& fr = chain[depth - 1];
        Scalar a = eval(chain, depth - 1, fr.shift);
        Scalar b = eval(chain, depth - 1, ground_op(x, fr.step));
        Scalar c = eval(chain, depth - 1, x);
        return monoid_op(cm_.out, monoid_op(cm_.out, a, b), monoid_inverse(cm_.out, c));
    }

    void expand(const std::vector<Frame>& chain, std::size_t depth, const Scalar& x, long sign,
                SignedParts& ms) const {
        if (depth == 0) {
            add_part(ms, cm_.apply(x), sign);
            return;
        }
        const Frame& fr = chain[depth - 1];
        expand(chain, depth - 1, fr.shift, sign, ms);
        expand(chain, depth - 1, ground_op(x, fr.step), sign, ms);
        expand(chain, depth - 1, x, -sign, ms);
    }

    int monotone_direction(const std::vector<Scalar>& pts,
                           const std::vector<Frame>& chain) const {
        int dir = 0;
        for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
            int c = cmp(eval(chain, chain.size(), pts[i]), eval(chain, chain.size(), pts[i + 1]));
            int s = c < 0 ? 1 : (c > 0 ? -1 : 0);
            if (s == 0 || (dir != 0 && s != dir))
                throw NotKConvexFunction("map not strictly monotone on required grid");
            dir = s;
        }
        return dir;
    }

    void emit_base(const std::vector<Scalar>& fiber, const Scalar& h, std::vector<Frame>& chain,
                   int dir_f) {
        // values g(a_i) ∘ Δ_h g(a_j), kept when the squeeze lands in the
        // half-open interval between g(a_i) and g(a_i ∘ h).
        std::size_t n = fiber.size();
        std::vector<Scalar> g(n), gh(n);
        for (std::size_t i = 0; i < n; ++i) {
            g[i] = eval(chain, chain.size(), fiber[i]);
            gh[i] = eval(chain, chain.size(), ground_op(fiber[i], h));
        }
        // Δ_h g must be strictly monotone on the fiber.
        {
            int dir = 0;
            for (std::size_t j = 0; j + 1 < n; ++j) {
                Scalar dj = monoid_op(cm_.out, gh[j], monoid_inverse(cm_.out, g[j]));
                Scalar dj1 = monoid_op(cm_.out, gh[j + 1], monoid_inverse(cm_.out, g[j + 1]));
                int c = cmp(dj, dj1);
                int s = c < 0 ? 1 : (c > 0 ? -1 : 0);
                if (s == 0 || (dir != 0 && s != dir))
                    throw NotKConvexFunction("Δ_h map not strictly monotone on fiber");
                dir = s;
            }
        }
        for (std::size_t i = 0; i < n; ++i) {
            ScalarInterval iv = dir_f > 0 ? ScalarInterval{g[i], gh[i], true, false}
                                          : ScalarInterval{gh[i], g[i], false, true};
            for (std::size_t j = 0; j < n; ++j) {
                Scalar v = monoid_op(cm_.out, g[i],
                                     monoid_op(cm_.out, gh[j], monoid_inverse(cm_.out, g[j])));
                if (!iv.contains(v)) continue;
                SignedParts ms;
                expand(chain, chain.size(), fiber[i], 1, ms);
                expand(chain, chain.size(), ground_op(fiber[j], h), 1, ms);
                expand(chain, chain.size(), fiber[j], -1, ms);
                auto [plus, minus] = split_parts(ms, k_, pad_);
                certificates.push_back(WitnessCertificate{v, std::move(plus), std::move(minus), iv});
            }
        }
    }
};

}  // namespace

WitnessBatch theorem4_witnesses(const GroupedSet& a, const ConvexMap& f, int k,
                                const SetLimits& limits) {
    if (k < 1) throw DomainViolation("k must be >= 1");
    if (a.size() <= std::size_t(10) * unsigned(k))
        throw TooSmall("theorem-4 engine needs |A| > 10k");
    for (const Scalar& v : a.elements())
        if (!f.in_domain(v)) throw DomainViolation("set leaves map domain");
    CarrierMap cm = carrier_map_for(f, a);

    WitnessBatch batch;
    batch.ground = map_set(f, a);
    batch.map_descriptor = f.descriptor();
    batch.k = k;

    Scalar pad = cm.apply(a.min());
    Theorem4Engine engine(cm, k, pad);
    std::vector<Frame> chain;
    engine.run(a.elements(), chain, k);

    // Deduplicate by value (disjoint branch intervals make collisions rare).
    std::sort(engine.certificates.begin(), engine.certificates.end(),
              [](const WitnessCertificate& x, const WitnessCertificate& y) {
                  return x.value < y.value;
              });
    engine.certificates.erase(
        std::unique(engine.certificates.begin(), engine.certificates.end(),
                    [](const WitnessCertificate& x, const WitnessCertificate& y) {
                        return x.value == y.value;
                    }),
        engine.certificates.end());
    if (engine.certificates.size() > limits.cap) throw CapExceeded(limits.cap);
    batch.certificates = std::move(engine.certificates);
    batch.claimed_count_bound = engine.base_bound_total();
    return batch;
}

VerifyResult verify_certificate(const WitnessCertificate& c, const GroupedSet& ground, int k) {
    std::size_t want_plus = std::size_t(1) << k;
    if (c.plus_part.size() != want_plus || c.minus_part.size() != want_plus - 1)
        return {false, "arity"};
    for (const Scalar& v : c.plus_part)
        if (!ground.contains(v)) return {false, "membership"};
    for (const Scalar& v : c.minus_part)
        if (!ground.contains(v)) return {false, "membership"};
    Scalar acc = monoid_identity(ground.monoid());
    for (const Scalar& v : c.plus_part) acc = monoid_op(ground.monoid(), acc, v);
    for (const Scalar& v : c.minus_part)
        acc = monoid_op(ground.monoid(), acc, monoid_inverse(ground.monoid(), v));
    if (acc != c.value) return {false, "value-mismatch"};
    if (!c.interval.contains(c.value)) return {false, "interval"};
    return {true, ""};
}

}  // namespace itersum
