#ifndef ITERSUM_EXPERIMENTS_HPP
#define ITERSUM_EXPERIMENTS_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "itersum/construction.hpp"
#include "itersum/convexity.hpp"
#include "itersum/grouped_set.hpp"

namespace itersum {

// One row of the harness CSV/JSON schema:
//   family,N,k,map,|A+A|,|A+A-A|,|AA/A|,measured,bound,ratio,verdict
// Numeric columns are pre-rendered strings (exact integers/rationals where
// exact, fixed-precision decimals for ratios and slopes); empty when n/a.
struct ReportRow {
    std::string family;
    std::size_t N = 0;
    int k = 0;
    std::string map = "-";
    std::string plus2;        // |A+A|
    std::string plus2minus1;  // |A+A-A|
    std::string quotient;     // |AA/A|
    std::string measured;
    std::string bound;
    std::string ratio;
    std::string verdict;  // pass | fail | report-only | cap-exceeded | expected-failure
    std::string digest;   // certificate-batch digest, when one was produced
};

struct ExperimentReport {
    std::vector<ReportRow> rows;
    bool pass = true;

    std::string to_csv() const;
    std::string to_json() const;
};

// Independent correctness oracle: direct (m+n)-multiset enumeration,
// sharing no code with the staged fold in iterated_combine.
GroupedSet oracle_iterated(const GroupedSet& a, unsigned m, unsigned n,
                           const SetLimits& limits = default_limits());

// Built-in families. Descriptors: `powers:k`, `geometric:r`, `ap:d`,
// `random:_`, `random-convex:k`. Geometric sets come out multiplicative,
// everything else additive. The seed fully determines the random families.
GroupedSet make_family(const std::string& descriptor, std::size_t N, std::uint64_t seed = 0);

ExperimentReport check_theorem3(const std::string& family, const std::vector<std::size_t>& sizes,
                                int k, const SetLimits& limits = default_limits());

ExperimentReport check_theorem4(const GroupedSet& a, const ConvexMap& f, int k,
                                const SetLimits& limits = default_limits());

// part 1: few sums -> many iterated quotients; part 2: few products ->
// growth of the shifted set; part 3: image of A under a degree-k map
// (supply f to use a polynomial; root isolation trims A to a
// derivative-sign-constant run first).
ExperimentReport check_corollary(int part, const GroupedSet& a, int k, const Scalar& delta,
                                 const Polynomial* f = nullptr,
                                 const SetLimits& limits = default_limits());

ExperimentReport check_threefold(const GroupedSet& a, const SetLimits& limits = default_limits());

ExperimentReport growth_report(const std::string& family, const std::vector<int>& ks,
                               const std::vector<std::size_t>& sizes,
                               const SetLimits& limits = default_limits());

}  // namespace itersum

#endif
