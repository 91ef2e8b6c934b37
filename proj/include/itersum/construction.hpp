#ifndef ITERSUM_CONSTRUCTION_HPP
#define ITERSUM_CONSTRUCTION_HPP

#include <map>
#include <string>
#include <vector>

#include "itersum/convexity.hpp"
#include "itersum/grouped_set.hpp"

namespace itersum {

// Rank index over the distinct consecutive differences H(A).
struct DifferenceIndex {
    std::vector<Scalar> H;                       // sorted distinct differences
    std::vector<std::size_t> rank_of_gap;        // i(j) per gap j, 1-based ranks
    std::vector<std::size_t> fiber_count;        // rank l -> |i^{-1}(l)|, index l-1
    std::map<unsigned, std::vector<std::size_t>> dyadic_classes;  // t -> ranks in I_t
    mpz_class index_sum;                         // Σ_j i(j), lower-bounds |A+A-A|
};

struct DyadicDecomposition {
    std::vector<Scalar> h_prime;  // H'
    std::size_t m = 0;            // |H'|
    std::size_t L = 0;            // 2^t
    unsigned t = 0;
    std::map<Scalar, std::vector<Scalar>> fibers;  // h -> A_h
    Scalar count_bound;                            // L*m^2/2, certified for |A+A-A|
};

struct Refinement {
    std::vector<Scalar> steps;
    std::vector<Scalar> members;
};

struct ScalarInterval {
    Scalar lo, hi;
    bool lo_open = true, hi_open = true;
    bool contains(const Scalar& x) const;
    bool disjoint(const ScalarInterval& o) const;
};

// One constructed element of m·X - n·X with its signed representation over
// the ground set and the interval certifying disjointness from siblings.
struct WitnessCertificate {
    Scalar value;
    std::vector<Scalar> plus_part;   // 2^k elements
    std::vector<Scalar> minus_part;  // 2^k - 1 elements
    ScalarInterval interval;
};

struct WitnessBatch {
    std::vector<WitnessCertificate> certificates;
    Scalar claimed_count_bound;
    GroupedSet ground;  // the set certificates draw their parts from
    std::string map_descriptor;
    int k = 0;
};

DifferenceIndex difference_index(const GroupedSet& a);

// Dyadic pigeonhole: picks the level t maximizing 2^t·|I_t|
// (smallest t on ties). min_size guards the "sufficiently large" hypothesis;
// tests may relax it down to 2.
DyadicDecomposition dyadic_pigeonhole(const GroupedSet& a, std::size_t min_size = 8);

// Iterated consecutive-difference fiber A_{h1,...,hk}.
Refinement refine(const GroupedSet& a, const std::vector<Scalar>& steps);

struct SqueezeResult {
    Scalar middle;
    ScalarInterval interval;
};

// Certifies the squeeze placing f(a_i) + f(a_j+h) - f(a_j) strictly between
// consecutive images; directions = (sign of f, sign of Δ_h f). Throws
// SqueezeViolated when the index roles disagree with the directions.
SqueezeResult squeeze_check(const ConvexMap& f, const Scalar& a_i, const Scalar& a_j,
                            const Scalar& h, int dir_f, int dir_dhf);
// Identity-map variant of inequality a_i < a_i + Δa_j < a_{i+1}.
SqueezeResult squeeze_check_identity(const Scalar& a_i, const Scalar& a_next,
                                     const Scalar& delta_j);

// Constructive witnesses for 2^k·A - (2^k-1)·A on a k-convex additive set.
WitnessBatch theorem3_witnesses(const GroupedSet& a, int k,
                                const SetLimits& limits = default_limits());

// Constructive witnesses for 2^k·f(A) - (2^k-1)·f(A). Exact maps, Log and
// ShiftedLogExp carriers only (certificate values are exact scalars).
WitnessBatch theorem4_witnesses(const GroupedSet& a, const ConvexMap& f, int k,
                                const SetLimits& limits = default_limits());

struct VerifyResult {
    bool pass = true;
    std::string violated;  // empty when pass
};

// Independent re-check: arity, ground membership, value recomputation,
// interval membership. Pure; shares no code path with the generators.
VerifyResult verify_certificate(const WitnessCertificate& c, const GroupedSet& ground, int k);

}  // namespace itersum

#endif
