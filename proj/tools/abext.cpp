// abext: enumeration and statistics for abelian extensions of Q, ordered by
// conductor-like counting functions.
#include <cstdio>
#include <cstdlib>
#include <iostream>

#include <CLI11.hpp>

#include "abext/serialize.hpp"

using namespace abext;

namespace {

FiniteAbelianGroup parse_group(const std::string& s) {
    std::vector<i64> factors;
    std::size_t pos = 0;
    while (pos < s.size()) {
        std::size_t next = s.find(',', pos);
        if (next == std::string::npos) next = s.size();
        factors.push_back(std::stoll(s.substr(pos, next - pos)));
        pos = next + 1;
    }
    if (factors.empty()) throw CLI::ValidationError("--group", "empty factor list");
    return FiniteAbelianGroup(factors);
}

CountingFunction parse_counting(const std::string& sel, const FiniteAbelianGroup& G) {
    if (sel == "conductor") return conductor_counting(G);
    if (sel == "radical") return radical_counting(G);
    if (sel == "discriminant") return discriminant_counting(G);
    if (sel.rfind("artin:", 0) == 0)
        return artin_counting(G, parse_artin_file(sel.substr(6), G));
    throw CLI::ValidationError("--counting",
                               "expected conductor|radical|discriminant|artin:<file>");
}

std::vector<u128> parse_bounds(const std::string& s) {
    std::vector<u128> out;
    std::size_t pos = 0;
    while (pos < s.size()) {
        std::size_t next = s.find(',', pos);
        if (next == std::string::npos) next = s.size();
        out.push_back(parse_u128(s.substr(pos, next - pos)));
        pos = next + 1;
    }
    if (out.empty()) throw CLI::ValidationError("--bounds", "empty bound list");
    return out;
}

int default_threads() {
    if (const char* env = std::getenv("ABEXT_THREADS")) {
        int t = std::atoi(env);
        if (t >= 1) return t;
    }
    return 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"abelian extensions of Q: enumeration, local statistics, constants"};
    app.require_subcommand(1);

    std::string group_s, counting_s = "conductor", bound_s = "1000",
                bounds_s, format = "tsv", spec_path, spec1_path, spec2_path;
    u64 prime = 0, truncation = 1000000, search_bound = 100000, bucket_width = 1;
    u64 dp_p = 3, dp_q = 7;
    std::string empirical_bound_s;
    int threads = default_threads();
    bool direct = false, at2 = false, exact_only = false;

    auto add_common = [&](CLI::App* cmd, bool need_group = true) {
        if (need_group)
            cmd->add_option("--group", group_s, "cyclic factor orders, e.g. 2,4 for Z/2 x Z/4")
                ->required();
        cmd->add_option("--counting", counting_s,
                        "conductor|radical|discriminant|artin:<file>");
        cmd->add_option("--threads", threads, "worker threads (env ABEXT_THREADS)");
    };

    auto* c_enum = app.add_subcommand("enumerate", "stream all characters with C < bound");
    add_common(c_enum);
    c_enum->add_option("--bound", bound_s, "strict upper bound on the counting value")->required();
    c_enum->add_option("--format", format, "tsv|json");

    auto* c_count = app.add_subcommand("count", "fast counts via subgroup Moebius inversion");
    add_common(c_count);
    c_count->add_option("--bound", bound_s)->required();
    c_count->add_option("--bucket-width", bucket_width, "tally bucket width");

    auto* c_probs = app.add_subcommand("probs", "empirical probability of a local specification");
    add_common(c_probs);
    c_probs->add_option("--bound", bound_s)->required();
    c_probs->add_option("--spec", spec_path, "spec/event file")->required();

    auto* c_cheb = app.add_subcommand("cheb", "splitting distribution vs element-order census");
    add_common(c_cheb);
    c_cheb->add_option("--prime", prime, "the fixed prime")->required();
    c_cheb->add_option("--bounds", bounds_s, "comma-separated bound schedule")->required();

    auto* c_ratio = app.add_subcommand("ratio", "probability ratio vs closed-form target");
    add_common(c_ratio);
    c_ratio->add_option("--spec1", spec1_path)->required();
    c_ratio->add_option("--spec2", spec2_path)->required();
    c_ratio->add_option("--bounds", bounds_s)->required();

    auto* c_indep = app.add_subcommand("indep", "independence defect across a bound schedule");
    add_common(c_indep);
    c_indep->add_option("--spec1", spec1_path)->required();
    c_indep->add_option("--spec2", spec2_path)->required();
    c_indep->add_option("--bounds", bounds_s)->required();

    auto* c_const = app.add_subcommand("constant", "leading asymptotic constant (enclosure)");
    add_common(c_const);
    c_const->add_option("--truncation", bound_s, "Euler product truncation")->required();
    c_const->add_flag("--direct", direct, "raw increasing-prime product, no L-value acceleration");

    auto* c_disc = app.add_subcommand("discprob", "discriminant-probability verdict for Z/p^2");
    c_disc->add_option("--p", dp_p)->required();
    c_disc->add_option("--q", dp_q)->required();
    c_disc->add_option("--truncation", bound_s)->required();
    c_disc->add_option("--empirical-bound", empirical_bound_s,
                       "also measure the probability by enumeration below this bound");

    auto* c_via = app.add_subcommand("viability", "Grunwald-Wang viability verdicts");
    add_common(c_via);
    c_via->add_option("--spec", spec_path, "spec file (exact local data)");
    c_via->add_flag("--at2", at2, "tabulate every local spec at 2");
    c_via->add_option("--search-bound", search_bound, "conductor bound for witness search");
    c_via->add_flag("--exact", exact_only, "exact criterion only, skip the search");

    auto* c_fair = app.add_subcommand("fairness", "fairness verdict for a counting function");
    add_common(c_fair);

    CLI11_PARSE(app, argc, argv);

    try {
        if (c_enum->parsed()) {
            FiniteAbelianGroup G = parse_group(group_s);
            CountingFunction C = parse_counting(counting_s, G);
            EnumerationQuery q;
            q.group = G;
            q.counting = &C;
            q.bound = parse_u128(bound_s);
            q.threads = threads;
            auto rows = enumerate_sorted(q);
            if (format == "tsv") {
                std::cout << tsv_header() << "\n";
                for (const auto& [v, chi] : rows) std::cout << tsv_row(C, chi, v) << "\n";
            } else if (format == "json") {
                std::cout << "[";
                for (std::size_t i = 0; i < rows.size(); ++i) {
                    if (i) std::cout << ",";
                    std::cout << "\n  " << to_json(rows[i].second);
                }
                std::cout << "\n]\n";
            } else {
                throw std::invalid_argument("--format must be tsv or json");
            }
        } else if (c_count->parsed()) {
            FiniteAbelianGroup G = parse_group(group_s);
            CountingFunction C = parse_counting(counting_s, G);
            EnumerationQuery q;
            q.group = G;
            q.counting = &C;
            q.bound = parse_u128(bound_s);
            std::cout << render_count(fast_count(q, bucket_width), G.str(), C.name) << "\n";
        } else if (c_probs->parsed()) {
            FiniteAbelianGroup G = parse_group(group_s);
            CountingFunction C = parse_counting(counting_s, G);
            SpecFile sf = parse_spec_file(spec_path);
            if (!(sf.group == G)) throw std::invalid_argument("spec file group mismatch");
            auto est = empirical_probability(G, C, parse_u128(bound_s), sf.event());
            std::cout << render_probability(est, G.str(), C.name, bound_s) << "\n";
        } else if (c_cheb->parsed()) {
            FiniteAbelianGroup G = parse_group(group_s);
            CountingFunction C = parse_counting(counting_s, G);
            std::cout << render_chebotarev(
                             chebotarev_report(G, C, parse_bounds(bounds_s), prime))
                      << "\n";
        } else if (c_ratio->parsed()) {
            FiniteAbelianGroup G = parse_group(group_s);
            CountingFunction C = parse_counting(counting_s, G);
            SpecFile a = parse_spec_file(spec1_path), b = parse_spec_file(spec2_path);
            if (!(a.group == G) || !(b.group == G))
                throw std::invalid_argument("spec file group mismatch");
            std::cout << render_ratio(
                             ratio_report(G, C, parse_bounds(bounds_s), a.event(), b.event()))
                      << "\n";
        } else if (c_indep->parsed()) {
            FiniteAbelianGroup G = parse_group(group_s);
            CountingFunction C = parse_counting(counting_s, G);
            SpecFile a = parse_spec_file(spec1_path), b = parse_spec_file(spec2_path);
            if (!(a.group == G) || !(b.group == G))
                throw std::invalid_argument("spec file group mismatch");
            std::cout << render_independence(independence_report(G, C, parse_bounds(bounds_s),
                                                                 a.event(), b.event()))
                      << "\n";
        } else if (c_const->parsed()) {
            FiniteAbelianGroup G = parse_group(group_s);
            CountingFunction C = parse_counting(counting_s, G);
            u128 n = parse_u128(bound_s);
            if (n > 100000000) throw std::invalid_argument("truncation capped at 1e8");
            auto rep = leading_constant(C, static_cast<u64>(n), !direct);
            std::cout << render_constant(rep, G.str(), C.name) << "\n";
        } else if (c_disc->parsed()) {
            u128 n = parse_u128(bound_s);
            if (n > 1000000000) throw std::invalid_argument("truncation capped at 1e9");
            auto v = disc_prob_s1(dp_p, dp_q, static_cast<u64>(n));
            std::optional<ProbabilityEstimate> emp;
            if (!empirical_bound_s.empty())
                emp = empirical_disc_prob(dp_p, dp_q, parse_u128(empirical_bound_s));
            std::cout << render_discprob(v, dp_p, dp_q, static_cast<u64>(n), emp,
                                         empirical_bound_s)
                      << "\n";
            if (v.status == DiscProbVerdict::Inconclusive) return 2;
        } else if (c_via->parsed()) {
            FiniteAbelianGroup G = parse_group(group_s);
            if (at2) {
                std::cout << render_viability(viable_specs_at_2(G, search_bound), G) << "\n";
            } else if (!spec_path.empty()) {
                SpecFile sf = parse_spec_file(spec_path);
                if (!(sf.group == G)) throw std::invalid_argument("spec file group mismatch");
                auto specs = sf.exact_specs();
                if (exact_only) {
                    CountingFunction C = parse_counting(counting_s, G);
                    bool ok = viability_partial(G, C, specs);
                    ViabilityVerdict v{ok ? ViabilityVerdict::Viable : ViabilityVerdict::Inviable,
                                       std::nullopt};
                    std::cout << render_viability_single(v, G) << "\n";
                } else {
                    auto v = viability_search(G, specs, search_bound);
                    if (v.status == ViabilityVerdict::NoWitnessBelowBound) {
                        CountingFunction C = parse_counting(counting_s, G);
                        if (!viability_partial(G, C, specs)) v.status = ViabilityVerdict::Inviable;
                    }
                    std::cout << render_viability_single(v, G) << "\n";
                }
            } else {
                throw std::invalid_argument("viability needs --spec or --at2");
            }
        } else if (c_fair->parsed()) {
            FiniteAbelianGroup G = parse_group(group_s);
            CountingFunction C = parse_counting(counting_s, G);
            std::cout << render_fairness(fairness(C), G, C.name) << "\n";
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
