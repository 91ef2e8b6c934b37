// Acceptance suite: one line per criterion, non-zero exit on any failure.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include "itersum/construction.hpp"
#include "itersum/convexity.hpp"
#include "itersum/errors.hpp"
#include "itersum/experiments.hpp"
#include "itersum/grouped_set.hpp"
#include "itersum/set_io.hpp"

using namespace itersum;

namespace {

int failures = 0;

void report(int criterion, bool ok, const std::string& detail) {
    std::printf("criterion %d: %s  (%s)\n", criterion, ok ? "pass" : "FAIL", detail.c_str());
    if (!ok) ++failures;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

bool batch_ok(const WitnessBatch& b) {
    for (const WitnessCertificate& c : b.certificates)
        if (!verify_certificate(c, b.ground, b.k).pass) return false;
    for (std::size_t i = 0; i + 1 < b.certificates.size(); ++i)
        if (!(b.certificates[i].value < b.certificates[i + 1].value)) return false;
    return true;
}

bool subset_of(const WitnessBatch& b, const GroupedSet& oracle) {
    for (const WitnessCertificate& c : b.certificates)
        if (!oracle.contains(c.value)) return false;
    return true;
}

mpz_class mpz_pow(const mpz_class& b, unsigned long e) {
    mpz_class r;
    mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), e);
    return r;
}

void criterion1() {
    auto t0 = std::chrono::steady_clock::now();
    GroupedSet cubes = make_family("powers:3", 15);
    WitnessBatch b2 = theorem3_witnesses(cubes, 2);
    GroupedSet oracle2 = iterated_combine(cubes, 4, 3);
    bool ok = b2.certificates.size() >= 211 && batch_ok(b2) && subset_of(b2, oracle2);

    GroupedSet geo = make_family("geometric:2", 15).retagged(Monoid::additive);
    WitnessBatch b3 = theorem3_witnesses(geo, 3);
    GroupedSet oracle3 = iterated_combine(geo, 8, 7);
    ok = ok && b3.certificates.size() >= 99 && batch_ok(b3) && subset_of(b3, oracle3);

    char detail[160];
    std::snprintf(detail, sizeof detail,
                  "cubes15 k=2: %zu >= 211; 2^n15 k=3: %zu >= 99; %.1fs",
                  b2.certificates.size(), b3.certificates.size(), seconds_since(t0));
    report(1, ok, detail);
}

void criterion2() {
    auto t0 = std::chrono::steady_clock::now();
    GroupedSet cubes = make_family("powers:3", 31);
    std::size_t card = iterated_combine(cubes, 4, 3).size();
    char detail[96];
    std::snprintf(detail, sizeof detail, "|4A-3A| = %zu >= 1862; %.1fs", card,
                  seconds_since(t0));
    report(2, card >= 1862, detail);
}

void criterion3() {
    std::mt19937_64 master(2026);
    std::uniform_int_distribution<std::size_t> size_dist(8, 256);
    bool ok = true;
    std::size_t checked = 0;
    for (int trial = 0; trial < 200 && ok; ++trial) {
        std::size_t n = size_dist(master);
        GroupedSet a = make_family("random:_", n, master());
        DyadicDecomposition d = dyadic_pigeonhole(a);
        // (i) L m >= N / (3 log2 N), exactly: N^(3Lm) >= 2^N
        mpz_class lhs = mpz_pow(mpz_class(static_cast<unsigned long>(n)),
                                static_cast<unsigned long>(3 * d.L * d.m));
        mpz_class rhs = mpz_class(1) << static_cast<unsigned long>(n);
        ok = ok && lhs >= rhs;
        // (iii) L <= |A_h| <= 2L for every h in H'
        for (const auto& [h, fiber] : d.fibers)
            ok = ok && d.L <= fiber.size() && fiber.size() <= 2 * d.L;
        // (ii) exact |A+A-A| >= L m^2 / 2
        std::size_t card = iterated_combine(a, 2, 1).size();
        ok = ok && 2 * card >= d.L * d.m * d.m;
        ++checked;
    }
    char detail[96];
    std::snprintf(detail, sizeof detail, "%zu/200 random sets satisfied (i),(ii),(iii)",
                  checked);
    report(3, ok && checked == 200, detail);
}

void criterion4() {
    GroupedSet a16 = make_family("ap:1", 16);
    WitnessBatch sq = theorem4_witnesses(a16, ConvexMap::integer_power_map(2), 1);
    GroupedSet sq_oracle = iterated_combine(sq.ground, 2, 1);
    bool ok_sq = sq.claimed_count_bound == 32 && sq.certificates.size() >= 32 &&
                 batch_ok(sq) && subset_of(sq, sq_oracle);

    std::vector<Scalar> v;
    for (int i = 2; i <= 17; ++i) v.emplace_back(i);
    GroupedSet a = GroupedSet::from_sorted(std::move(v), Monoid::multiplicative);
    WitnessBatch lg = theorem4_witnesses(a, ConvexMap::log_map(), 1);
    GroupedSet lg_oracle = iterated_combine(a, 2, 1);  // AA/A
    bool ok_lg = lg.certificates.size() >= 32 && batch_ok(lg) && subset_of(lg, lg_oracle);

    char detail[128];
    std::snprintf(detail, sizeof detail, "x^2 on [16]: %zu >= 32; log on {2..17}: %zu >= 32",
                  sq.certificates.size(), lg.certificates.size());
    report(4, ok_sq && ok_lg, detail);
}

void criterion5() {
    auto t0 = std::chrono::steady_clock::now();
    std::mt19937_64 rng(5);
    std::uniform_int_distribution<long> coeff(-9, 9), lead(1, 9), step(1, 4);
    bool ok = true;
    for (int p = 0; p < 100 && ok; ++p) {
        std::vector<Scalar> c(7);
        for (int i = 0; i < 6; ++i) c[i] = coeff(rng);
        c[6] = lead(rng);
        Polynomial f{std::move(c)};
        // past the largest root of f', ..., f'''' all derivative signs are
        // constant; root isolation pins that region exactly
        Scalar start = 1;
        Polynomial d = f;
        for (int l = 1; l <= 4; ++l) {
            d = d.derivative();
            for (const RootInterval& iv : isolate_roots(d))
                if (iv.hi >= start) start = iv.hi + 1;
        }
        std::vector<Scalar> grid_vals;
        for (int i = 0; i < 50; ++i) grid_vals.push_back(start + i);
        GroupedSet grid = GroupedSet::from_sorted(std::move(grid_vals), Monoid::additive);
        ConvexMap map = ConvexMap::polynomial_map(f);
        for (int trial = 0; trial < 20 && ok; ++trial) {
            std::vector<Scalar> steps{Scalar(step(rng)), Scalar(step(rng)), Scalar(step(rng))};
            GridCheckReport r = function_convexity_check(map, 3, grid, steps);
            ok = ok && r.pass;
        }
    }
    char detail[96];
    std::snprintf(detail, sizeof detail, "100 polynomials x 20 step triples, %.1fs",
                  seconds_since(t0));
    report(5, ok, detail);
}

void criterion6() {
    std::mt19937_64 rng(6);
    std::uniform_int_distribution<long> val(1, 99);
    std::uniform_int_distribution<int> size_dist(2, 12), m_dist(1, 4), n_dist(0, 3);
    bool ok = true;
    int done = 0;
    for (int trial = 0; trial < 500 && ok; ++trial) {
        std::vector<Scalar> v;
        int n = size_dist(rng);
        for (int i = 0; i < n; ++i) v.emplace_back(val(rng));
        Monoid mon = trial % 2 ? Monoid::multiplicative : Monoid::additive;
        GroupedSet a = GroupedSet::from_values(std::move(v), mon);
        unsigned m = m_dist(rng), k = n_dist(rng);
        if (m + k > 7) k = 7 - m;
        ok = ok && oracle_iterated(a, m, k) == iterated_combine(a, m, k);
        ++done;
    }
    char detail[64];
    std::snprintf(detail, sizeof detail, "%d/500 instances agreed", done);
    report(6, ok && done == 500, detail);
}

void criterion7() {
    auto t0 = std::chrono::steady_clock::now();
    bool ok = true;
    for (std::size_t n : {16, 32, 64, 128, 256}) {
        ExperimentReport ap = check_threefold(make_family("ap:1", n));
        ExperimentReport gp = check_threefold(make_family("geometric:2", n));
        ok = ok && ap.rows[0].verdict == "pass" && gp.rows[0].verdict == "pass";
    }
    char detail[64];
    std::snprintf(detail, sizeof detail, "AP and GP, N in {16..256}; %.1fs",
                  seconds_since(t0));
    report(7, ok, detail);
}

void criterion8() {
    std::vector<double> xs, ys;
    for (std::size_t n : {8, 16, 32}) {
        GroupedSet a = make_family("ap:1", n).retagged(Monoid::multiplicative);
        std::size_t card = iterated_combine(a, 2, 1).size();  // |AA/A|
        xs.push_back(std::log2(double(n)));
        ys.push_back(std::log2(double(card)));
    }
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sx += xs[i];
        sy += ys[i];
        sxx += xs[i] * xs[i];
        sxy += xs[i] * ys[i];
    }
    double n = double(xs.size());
    double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    char detail[64];
    std::snprintf(detail, sizeof detail, "|AA/A| log-log slope = %.3f >= 1.5", slope);
    report(8, slope >= 1.5, detail);
}

void criterion9() {
    // byte-identical reports for identical inputs
    ExperimentReport r1 = growth_report("powers:2", {1}, {8, 16, 32});
    ExperimentReport r2 = growth_report("powers:2", {1}, {8, 16, 32});
    bool ok = r1.to_csv() == r2.to_csv() && r1.to_json() == r2.to_json();

    ExperimentReport t1 = check_theorem3("powers:3", {15}, 2);
    ExperimentReport t2 = check_theorem3("powers:3", {15}, 2);
    ok = ok && t1.to_json() == t2.to_json();

    // seeded generation is reproducible
    ok = ok && make_family("random-convex:2", 20, 77) == make_family("random-convex:2", 20, 77);

    // set files re-ingest losslessly, including rationals and monoid tags
    GroupedSet s = GroupedSet::from_values(
        {parse_scalar("1/3"), parse_scalar("22/7"), Scalar(5)}, Monoid::multiplicative);
    auto path = std::filesystem::temp_directory_path() / "itersum-roundtrip.txt";
    write_set_file(path.string(), s);
    GroupedSet back = read_set_file(path.string());
    std::filesystem::remove(path);
    ok = ok && back == s;

    report(9, ok, "byte-identical reports, seeded reproducibility, lossless round-trip");
}

}  // namespace

int main() {
    criterion1();
    criterion2();
    criterion3();
    criterion4();
    criterion5();
    criterion6();
    criterion7();
    criterion8();
    criterion9();
    if (failures == 0) std::printf("all acceptance criteria passed\n");
    return failures;
}
