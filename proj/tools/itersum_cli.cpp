#include <cstdint>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "itersum/construction.hpp"
#include "itersum/convexity.hpp"
#include "itersum/errors.hpp"
#include "itersum/experiments.hpp"
#include "itersum/grouped_set.hpp"
#include "itersum/set_io.hpp"

using namespace itersum;

namespace {

void emit(const std::string& out_path, const std::string& content) {
    if (out_path.empty())
        std::cout << content;
    else
        write_text_file(out_path, content);
}

nlohmann::ordered_json batch_to_json(const WitnessBatch& b) {
    nlohmann::ordered_json doc;
    doc["k"] = b.k;
    doc["map"] = b.map_descriptor;
    doc["claimed_count_bound"] = render_scalar(b.claimed_count_bound);
    doc["ground"]["monoid"] = monoid_name(b.ground.monoid());
    doc["ground"]["elements"] = nlohmann::ordered_json::array();
    for (const Scalar& v : b.ground.elements())
        doc["ground"]["elements"].push_back(render_scalar(v));
    doc["certificates"] = nlohmann::ordered_json::array();
    for (const WitnessCertificate& c : b.certificates) {
        nlohmann::ordered_json jc;
        jc["value"] = render_scalar(c.value);
        jc["plus"] = nlohmann::ordered_json::array();
        for (const Scalar& v : c.plus_part) jc["plus"].push_back(render_scalar(v));
        jc["minus"] = nlohmann::ordered_json::array();
        for (const Scalar& v : c.minus_part) jc["minus"].push_back(render_scalar(v));
        jc["interval"]["lo"] = render_scalar(c.interval.lo);
        jc["interval"]["hi"] = render_scalar(c.interval.hi);
        jc["interval"]["lo_open"] = c.interval.lo_open;
        jc["interval"]["hi_open"] = c.interval.hi_open;
        doc["certificates"].push_back(std::move(jc));
    }
    return doc;
}

// exit 0: success; 2: a checked bound/verification failed; 1: usage/parse.
int verdict_exit(const ExperimentReport& rep) { return rep.pass ? 0 : 2; }

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"itersum: exact iterated sumset arithmetic, convexity analysis and "
                 "constructive witness engines"};
    app.require_subcommand(1);
    app.fallthrough();  // global flags may follow the subcommand

    std::size_t cap = default_limits().cap;
    unsigned jobs = 1;
    std::uint64_t seed = 0;
    std::string format = "csv";
    std::string out_path;
    app.add_option("--cap", cap, "element-count cap for set arithmetic")
        ->capture_default_str();
    app.add_option("--jobs", jobs, "worker threads for combine")->capture_default_str();
    app.add_option("--seed", seed, "seed for randomized families")->capture_default_str();
    app.add_option("--format", format, "report format: csv|json")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();
    app.add_option("--out", out_path, "write the artifact to this file (atomic)");

    // gen
    auto* gen = app.add_subcommand("gen", "generate a built-in family as a set file");
    std::string family = "powers:2";
    std::size_t gen_n = 16;
    gen->add_option("family", family,
                    "family descriptor: powers:k | geometric:r | ap:d | random:_ | "
                    "random-convex:k")
        ->required();
    gen->add_option("N", gen_n, "number of elements")->required();

    // sumset
    auto* sum_cmd = app.add_subcommand("sumset", "compute mA - nA (or A^(m)/A^(n))");
    std::string in_path;
    unsigned op_m = 2, op_n = 1;
    sum_cmd->add_option("--in", in_path, "input set file")->required();
    sum_cmd->add_option("--m", op_m, "positive fold count")->capture_default_str();
    sum_cmd->add_option("--n", op_n, "negative fold count")->capture_default_str();

    // convexity
    auto* conv = app.add_subcommand("convexity", "convexity order and direction profile");
    conv->add_option("--in", in_path, "input set file")->required();

    // pigeonhole
    auto* pig = app.add_subcommand("pigeonhole", "dyadic pigeonhole decomposition");
    std::size_t min_size = 8;
    pig->add_option("--in", in_path, "input set file")->required();
    pig->add_option("--min-size", min_size, "relax the |A| >= 8 guard")
        ->capture_default_str();

    // witness3 / witness4
    auto* w3 = app.add_subcommand("witness3", "constructive witnesses for 2^k A - (2^k-1) A");
    int k = 1;
    bool verify_oracle = false;
    w3->add_option("--in", in_path, "input set file")->required();
    w3->add_option("--k", k, "convexity level")->capture_default_str();
    w3->add_flag("--verify-oracle", verify_oracle,
                 "cross-check every witness against the enumerated iterated set");

    auto* w4 = app.add_subcommand("witness4", "witnesses for 2^k f(A) - (2^k-1) f(A)");
    std::string map_text = "power: 2";
    w4->add_option("--in", in_path, "input set file")->required();
    w4->add_option("--k", k, "convexity level")->capture_default_str();
    w4->add_option("--map", map_text, "map descriptor, e.g. 'power: 2', 'log'")
        ->capture_default_str();

    // corollary
    auto* cor = app.add_subcommand("corollary", "few-sums/few-products growth checks");
    int part = 1;
    std::string delta_text = "1/4";
    std::string poly_text;
    cor->add_option("--in", in_path, "input set file")->required();
    cor->add_option("--part", part, "part 1, 2 or 3")->capture_default_str();
    cor->add_option("--k", k, "iteration level")->capture_default_str();
    cor->add_option("--delta", delta_text, "smallness exponent delta")->capture_default_str();
    cor->add_option("--poly", poly_text,
                    "part 3 only: polynomial coefficients low-to-high, e.g. 0,0,1");

    // threefold
    auto* three = app.add_subcommand("threefold", "max{|A+A-A|, |AA/A|} vs N^1.5/(lg N)^1.5");
    three->add_option("--in", in_path, "input set file")->required();

    // report
    auto* rpt = app.add_subcommand("report", "growth-trend report over a family");
    std::vector<int> ks{1, 2};
    std::vector<std::size_t> sizes{8, 16, 32};
    rpt->add_option("--family", family, "family descriptor")->capture_default_str();
    rpt->add_option("--k", ks, "levels to sweep")->capture_default_str();
    rpt->add_option("--sizes", sizes, "set sizes to sweep")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 1;
    }

    try {
        SetLimits limits{cap, jobs};

        if (gen->parsed()) {
            emit(out_path, format_set(make_family(family, gen_n, seed)));
            return 0;
        }
        if (sum_cmd->parsed()) {
            GroupedSet a = read_set_file(in_path);
            emit(out_path, format_set(iterated_combine(a, op_m, op_n, limits)));
            return 0;
        }
        if (conv->parsed()) {
            ConvexityReport r = convexity_order(read_set_file(in_path));
            std::string text = "order: " + std::to_string(r.order) + "\nprofile:";
            for (int s : r.direction_profile) text += s > 0 ? " +1" : " -1";
            emit(out_path, text + "\n");
            return 0;
        }
        if (pig->parsed()) {
            DyadicDecomposition d = dyadic_pigeonhole(read_set_file(in_path), min_size);
            std::string text = "t=" + std::to_string(d.t) + ", L=" + std::to_string(d.L) +
                               ", m=" + std::to_string(d.m) +
                               ", bound=" + render_scalar(d.count_bound) + "\nH':";
            for (const Scalar& h : d.h_prime) text += " " + render_scalar(h);
            emit(out_path, text + "\n");
            return 0;
        }
        if (w3->parsed() || w4->parsed()) {
            GroupedSet a = read_set_file(in_path);
            WitnessBatch batch = w3->parsed()
                                     ? theorem3_witnesses(a, k, limits)
                                     : theorem4_witnesses(a, ConvexMap::parse(map_text), k,
                                                          limits);
            bool ok = true;
            for (const WitnessCertificate& c : batch.certificates)
                ok = ok && verify_certificate(c, batch.ground, batch.k).pass;
            if (verify_oracle) {
                GroupedSet oracle =
                    iterated_combine(batch.ground, 1u << k, (1u << k) - 1, limits);
                for (const WitnessCertificate& c : batch.certificates)
                    ok = ok && oracle.contains(c.value);
            }
            bool bound_ok =
                Scalar(long(batch.certificates.size())) >= batch.claimed_count_bound ||
                !w3->parsed();
            nlohmann::ordered_json doc = batch_to_json(batch);
            doc["verified"] = ok;
            emit(out_path, doc.dump(2) + "\n");
            std::cerr << "witnesses: " << batch.certificates.size()
                      << "  claimed bound: " << render_scalar(batch.claimed_count_bound)
                      << "  verified: " << (ok ? "yes" : "NO") << "\n";
            return ok && bound_ok ? 0 : 2;
        }
        if (cor->parsed()) {
            GroupedSet a = read_set_file(in_path);
            Polynomial poly;
            bool has_poly = !poly_text.empty();
            if (has_poly) {
                std::vector<Scalar> coeffs;
                std::string cur;
                for (char c : poly_text + ",") {
                    if (c == ',') {
                        if (!cur.empty()) coeffs.push_back(parse_scalar(cur));
                        cur.clear();
                    } else {
                        cur += c;
                    }
                }
                poly = Polynomial(std::move(coeffs));
            }
            ExperimentReport rep = check_corollary(part, a, k, parse_scalar(delta_text),
                                                   has_poly ? &poly : nullptr, limits);
            emit(out_path, format == "json" ? rep.to_json() : rep.to_csv());
            return verdict_exit(rep);
        }
        if (three->parsed()) {
            ExperimentReport rep = check_threefold(read_set_file(in_path), limits);
            emit(out_path, format == "json" ? rep.to_json() : rep.to_csv());
            return verdict_exit(rep);
        }
        if (rpt->parsed()) {
            ExperimentReport rep = growth_report(family, ks, sizes, limits);
            emit(out_path, format == "json" ? rep.to_json() : rep.to_csv());
            return verdict_exit(rep);
        }
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const HypothesisViolated& e) {
        std::cerr << "hypothesis violated: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
