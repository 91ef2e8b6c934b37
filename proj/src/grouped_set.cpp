#include "itersum/grouped_set.hpp"

#include <algorithm>
#include <cstdlib>
#include <queue>
#include <thread>
#include <utility>

#include "itersum/errors.hpp"

namespace itersum {

const char* monoid_name(Monoid m) {
    return m == Monoid::additive ? "additive" : "multiplicative";
}

SetLimits default_limits() {
    SetLimits lim;
    if (const char* env = std::getenv("ITERSUM_CAP")) {
        char* end = nullptr;
        unsigned long long v = std::strtoull(env, &end, 10);
        if (end && *end == '\0' && v > 0) lim.cap = static_cast<std::size_t>(v);
    }
    return lim;
}

Scalar monoid_identity(Monoid m) { return m == Monoid::additive ? Scalar(0) : Scalar(1); }

Scalar monoid_op(Monoid m, const Scalar& a, const Scalar& b) {
    return m == Monoid::additive ? Scalar(a + b) : Scalar(a * b);
}

Scalar monoid_inverse(Monoid m, const Scalar& a) {
    return m == Monoid::additive ? Scalar(-a) : Scalar(1 / a);
}

Scalar monoid_difference(Monoid m, const Scalar& a, const Scalar& b) {
    return m == Monoid::additive ? Scalar(b - a) : Scalar(b / a);
}

GroupedSet GroupedSet::from_values(std::vector<Scalar> values, Monoid monoid) {
    std::sort(values.begin(), values.end());
    values.erase(std::unique(values.begin(), values.end()), values.end());
    return from_sorted(std::move(values), monoid);
}

GroupedSet GroupedSet::from_sorted(std::vector<Scalar> values, Monoid monoid) {
    for (std::size_t i = 0; i + 1 < values.size(); ++i)
        if (values[i] >= values[i + 1])
            throw DomainViolation("elements not strictly increasing");
    if (monoid == Monoid::multiplicative)
        for (const Scalar& v : values)
            if (sgn(v) <= 0) throw DomainViolation("multiplicative set must be positive");
    return GroupedSet(std::move(values), monoid);
}

bool GroupedSet::contains(const Scalar& x) const {
    return std::binary_search(elems_.begin(), elems_.end(), x);
}

namespace {

// Merges the runs {x ∘ y : x ∈ xs} for y in ys into one sorted deduplicated
// vector. Runs are ascending because y is fixed per run (and positive in the
// multiplicative case), so a min-heap over run heads suffices.
std::vector<Scalar> merge_runs(const std::vector<Scalar>& xs, const std::vector<Scalar>& ys,
                               Monoid monoid, std::size_t cap) {
    struct Node {
        Scalar val;
        std::size_t run;
        std::size_t idx;
    };
    auto cmp = [](const Node& a, const Node& b) { return a.val > b.val; };
    std::priority_queue<Node, std::vector<Node>, decltype(cmp)> heap(cmp);
    for (std::size_t r = 0; r < ys.size(); ++r)
        heap.push(Node{monoid_op(monoid, xs[0], ys[r]), r, 0});

    std::vector<Scalar> out;
    while (!heap.empty()) {
        Node top = heap.top();
        heap.pop();
        if (out.empty() || out.back() != top.val) {
            if (out.size() >= cap) throw CapExceeded(cap);
            out.push_back(top.val);
        }
        if (top.idx + 1 < xs.size())
            heap.push(Node{monoid_op(monoid, xs[top.idx + 1], ys[top.run]), top.run, top.idx + 1});
    }
    return out;
}

std::vector<Scalar> merge_sorted_dedup(const std::vector<Scalar>& a, const std::vector<Scalar>& b,
                                       std::size_t cap) {
    std::vector<Scalar> out;
    out.reserve(std::min(a.size() + b.size(), cap));
    std::size_t i = 0, j = 0;
    while (i < a.size() || j < b.size()) {
        const Scalar* next;
        if (j == b.size() || (i < a.size() && a[i] <= b[j])) {
            if (j < b.size() && a[i] == b[j]) ++j;
            next = &a[i++];
        } else {
            next = &b[j++];
        }
        if (out.empty() || out.back() != *next) {
            if (out.size() >= cap) throw CapExceeded(cap);
            out.push_back(*next);
        }
    }
    return out;
}

}  // namespace

GroupedSet combine(const GroupedSet& x, const GroupedSet& y, const SetLimits& limits) {
    if (x.monoid() != y.monoid()) throw MonoidMismatch();
    if (x.empty() || y.empty()) throw DomainViolation("combine of empty set");
    // Fewer runs means a shallower heap; take the smaller operand as offsets.
    const std::vector<Scalar>& xs = x.size() >= y.size() ? x.elements() : y.elements();
    const std::vector<Scalar>& ys = x.size() >= y.size() ? y.elements() : x.elements();

    unsigned jobs = std::max(1u, limits.jobs);
    if (jobs <= 1 || ys.size() < 2 * jobs) {
        return GroupedSet::from_sorted(merge_runs(xs, ys, x.monoid(), limits.cap), x.monoid());
    }

    // Partition the offset runs across workers, then fold the partials.
    std::vector<std::vector<Scalar>> parts(jobs);
    std::vector<std::thread> workers;
    std::size_t chunk = (ys.size() + jobs - 1) / jobs;
    std::exception_ptr err;
    for (unsigned w = 0; w < jobs; ++w) {
        std::size_t lo = w * chunk, hi = std::min(ys.size(), lo + chunk);
        if (lo >= hi) continue;
        workers.emplace_back([&, w, lo, hi]() {
            try {
                std::vector<Scalar> slice(ys.begin() + lo, ys.begin() + hi);
                parts[w] = merge_runs(xs, slice, x.monoid(), limits.cap);
            } catch (...) {
                err = std::current_exception();
            }
        });
    }
    for (auto& t : workers) t.join();
    if (err) std::rethrow_exception(err);
    std::vector<Scalar> acc;
    for (auto& p : parts) {
        if (p.empty()) continue;
        acc = acc.empty() ? std::move(p) : merge_sorted_dedup(acc, p, limits.cap);
    }
    return GroupedSet::from_sorted(std::move(acc), x.monoid());
}

GroupedSet invert(const GroupedSet& x) {
    std::vector<Scalar> out;
    out.reserve(x.size());
    for (auto it = x.elements().rbegin(); it != x.elements().rend(); ++it)
        out.push_back(monoid_inverse(x.monoid(), *it));
    return GroupedSet::from_sorted(std::move(out), x.monoid());
}

GroupedSet iterated_combine(const GroupedSet& a, unsigned m, unsigned n, const SetLimits& limits) {
    if (m < 1) throw DomainViolation("iterated_combine requires m >= 1");
    if (a.empty()) throw DomainViolation("iterated_combine of empty set");
    GroupedSet acc = a;
    for (unsigned i = 1; i < m; ++i) acc = combine(acc, a, limits);
    // Subtracting one copy of A per stage keeps every intermediate merge at
    // |acc|·|A| pairs instead of |mA|·|nA|.
    GroupedSet neg = invert(a);
    for (unsigned i = 0; i < n; ++i) acc = combine(acc, neg, limits);
    return acc;
}

GroupedSet translate(const GroupedSet& a, const Scalar& c) {
    if (a.monoid() != Monoid::additive)
        throw MonoidMismatch();
    std::vector<Scalar> out;
    out.reserve(a.size());
    for (const Scalar& v : a.elements()) out.push_back(v + c);
    return GroupedSet::from_sorted(std::move(out), a.monoid());
}

GroupedSet dilate(const GroupedSet& a, const Scalar& c) {
    if (sgn(c) == 0) throw ZeroDilation();
    std::vector<Scalar> out;
    out.reserve(a.size());
    if (sgn(c) > 0)
        for (const Scalar& v : a.elements()) out.push_back(v * c);
    else
        for (auto it = a.elements().rbegin(); it != a.elements().rend(); ++it)
            out.push_back(*it * c);
    return GroupedSet::from_sorted(std::move(out), a.monoid());
}

}  // namespace itersum
