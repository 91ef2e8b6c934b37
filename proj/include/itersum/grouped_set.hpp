#ifndef ITERSUM_GROUPED_SET_HPP
#define ITERSUM_GROUPED_SET_HPP

#include <cstddef>
#include <vector>

#include "itersum/scalar.hpp"

namespace itersum {

enum class Monoid { additive, multiplicative };

const char* monoid_name(Monoid m);

// Runtime limits for set arithmetic. The cap bounds every intermediate and
// final cardinality; jobs bounds worker threads inside combine.
struct SetLimits {
    std::size_t cap = 50'000'000;
    unsigned jobs = 1;
};

// Default limits; the cap may be overridden by the ITERSUM_CAP env var.
SetLimits default_limits();

Scalar monoid_identity(Monoid m);
Scalar monoid_op(Monoid m, const Scalar& a, const Scalar& b);
Scalar monoid_inverse(Monoid m, const Scalar& a);
// b "minus" a: the unique h with a ∘ h = b.
Scalar monoid_difference(Monoid m, const Scalar& a, const Scalar& b);

// Strictly increasing finite sequence of exact scalars tagged with the
// monoid its combine operation lives in. Immutable after construction.
class GroupedSet {
  public:
    GroupedSet() : monoid_(Monoid::additive) {}

    // Sorts and deduplicates; multiplicative sets must be positive.
    static GroupedSet from_values(std::vector<Scalar> values, Monoid monoid);
    // Requires values already strictly increasing.
    static GroupedSet from_sorted(std::vector<Scalar> values, Monoid monoid);

    const std::vector<Scalar>& elements() const { return elems_; }
    Monoid monoid() const { return monoid_; }
    std::size_t size() const { return elems_.size(); }
    bool empty() const { return elems_.empty(); }
    const Scalar& operator[](std::size_t i) const { return elems_[i]; }
    const Scalar& min() const { return elems_.front(); }
    const Scalar& max() const { return elems_.back(); }
    bool contains(const Scalar& x) const;

    GroupedSet retagged(Monoid monoid) const { return from_sorted(elems_, monoid); }

    friend bool operator==(const GroupedSet& a, const GroupedSet& b) {
        return a.monoid_ == b.monoid_ && a.elems_ == b.elems_;
    }

  private:
    GroupedSet(std::vector<Scalar> elems, Monoid monoid)
        : elems_(std::move(elems)), monoid_(monoid) {}
    std::vector<Scalar> elems_;
    Monoid monoid_;
};

// {x ∘ y : x ∈ X, y ∈ Y}, deduplicated via k-way merge of sorted runs.
GroupedSet combine(const GroupedSet& x, const GroupedSet& y, const SetLimits& limits = default_limits());

// Elementwise monoid inverse ({-x} or {1/x}), sorted ascending.
GroupedSet invert(const GroupedSet& x);

// m-fold combine of A combined with the inverse of the n-fold combine,
// i.e. mA - nA (additive) or A^(m)/A^(n) (multiplicative).
GroupedSet iterated_combine(const GroupedSet& a, unsigned m, unsigned n,
                            const SetLimits& limits = default_limits());

// Elementwise c + x; additive sets only.
GroupedSet translate(const GroupedSet& a, const Scalar& c);
// Elementwise c * x, c != 0; resorted when the order flips.
GroupedSet dilate(const GroupedSet& a, const Scalar& c);

}  // namespace itersum

#endif
