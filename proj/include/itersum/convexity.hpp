#ifndef ITERSUM_CONVEXITY_HPP
#define ITERSUM_CONVEXITY_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "itersum/grouped_set.hpp"
#include "itersum/polynomial.hpp"

namespace itersum {

// Symbolic descriptor of a map f with exact (polynomial / integer power)
// or precision-managed (real power, log, shifted log-exp) evaluation.
struct ConvexMap {
    enum class Kind { polynomial, integer_power, real_power, log, shifted_log_exp };

    Kind kind = Kind::integer_power;
    Polynomial poly;          // Kind::polynomial
    int power = 2;            // Kind::integer_power
    Scalar alpha = 0;         // Kind::real_power exponent
    unsigned alpha_bits = 128;
    std::optional<Scalar> domain_lo, domain_hi;

    bool exact() const { return kind == Kind::polynomial || kind == Kind::integer_power; }
    // Exact kinds only.
    Polynomial as_polynomial() const;
    bool in_domain(const Scalar& x) const;

    // Text records like `poly: 0,0,1`, `power: 5`, `log`, `shifted-log-exp`,
    // `real-power: 5/2@256bits`, optionally followed by `; domain: lo..hi`.
    static ConvexMap parse(const std::string& descriptor);
    std::string descriptor() const;

    static ConvexMap integer_power_map(int k);
    static ConvexMap polynomial_map(Polynomial p);
    static ConvexMap log_map();
    static ConvexMap shifted_log_exp_map();
    static ConvexMap real_power_map(Scalar alpha, unsigned bits = 128);
};

struct ConvexityReport {
    // Largest k with difference levels 1..k all strictly increasing.
    int order = 0;
    // Signs (+1/-1) of every strictly monotone difference level, which may
    // extend past `order` when deeper levels are monotone but decreasing.
    std::vector<int> direction_profile;
};

// Indexed consecutive differences a_{i+1} - a_i (not resorted).
std::vector<Scalar> forward_differences(const GroupedSet& a);

ConvexityReport convexity_order(const GroupedSet& a);

struct Evaluation {
    bool exact;
    Scalar value;     // exact kinds
    Scalar lo, hi;    // certified enclosure (equals value when exact)
};

// Exact value or a certified interval of width < 2^-precision_bits.
Evaluation evaluate(const ConvexMap& f, const Scalar& x, unsigned precision_bits);

// f(A) as a GroupedSet; Log and ShiftedLogExp return multiplicative carriers.
GroupedSet map_set(const ConvexMap& f, const GroupedSet& a);

// Composable handle for the iterated difference map Δ_{h1,...,hk} f.
struct DifferenceMap {
    ConvexMap base;
    std::vector<Scalar> steps;

    // Signed expansion of Δ_steps f(x) as point -> coefficient over f.
    std::map<Scalar, long> expansion(const Scalar& x) const;
    // Exact base kinds only: the expanded difference polynomial.
    Polynomial as_polynomial() const;
};

DifferenceMap delta_h(const ConvexMap& f, const Scalar& h);
DifferenceMap delta_h(const DifferenceMap& f, const Scalar& h);

Evaluation evaluate(const DifferenceMap& m, const Scalar& x, unsigned precision_bits);

// Sign of sum_i c_i * f(p_i): exact for exact kinds and for Log (via the
// multiplicative carrier), certified with escalating precision otherwise.
int signed_sum_sign(const ConvexMap& f, const std::map<Scalar, long>& terms);

struct GridCheckViolation {
    std::size_t level;
    Scalar x_prev, x_next;
};

struct GridCheckReport {
    bool pass = true;
    // direction of Δ_{h1..hj} f on the grid for j = 0..|steps| (+1/-1).
    std::vector<int> directions;
    std::optional<GridCheckViolation> violation;
};

// Verifies strict monotonicity of every prefix difference map of f on the
// grid (j = 0 is f itself); stops at the first violation.
GridCheckReport function_convexity_check(const ConvexMap& f, int k, const GroupedSet& grid,
                                         const std::vector<Scalar>& steps);

}  // namespace itersum

#endif
