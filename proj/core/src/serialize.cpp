#include "abext/serialize.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace abext {

using nlohmann::json;

namespace {

json coords_json(const GroupElement& g) { return json(g.coords); }

GroupElement coords_from(const FiniteAbelianGroup& G, const json& j, const std::string& where) {
    if (!j.is_array() || j.size() != G.rank())
        throw std::invalid_argument(where + ": expected " + std::to_string(G.rank()) +
                                    " coordinates");
    std::vector<i64> c;
    for (const auto& v : j) {
        if (!v.is_number_integer()) throw std::invalid_argument(where + ": non-integer coordinate");
        c.push_back(v.get<i64>());
    }
    return G.make(std::move(c));
}

json character_json(const GlobalCharacter& chi) {
    json places = json::array();
    for (const auto& c : chi.components) {
        json imgs = json::array();
        for (const auto& img : c.images) imgs.push_back(coords_json(img));
        places.push_back({{"p", c.p}, {"level", c.level}, {"images", imgs}});
    }
    return {{"group", chi.group.factors()}, {"places", places}};
}

FiniteAbelianGroup group_from(const json& j, const std::string& where) {
    if (!j.is_array() || j.empty())
        throw std::invalid_argument(where + ": 'group' must be a non-empty array");
    std::vector<i64> f;
    for (const auto& v : j) {
        if (!v.is_number_integer() || v.get<i64>() < 2)
            throw std::invalid_argument(where + ": factor orders must be integers >= 2");
        f.push_back(v.get<i64>());
    }
    return FiniteAbelianGroup(f);
}

LocalCharacter local_from(const FiniteAbelianGroup& G, const json& j, const std::string& where) {
    LocalCharacter c;
    c.p = j.at("p").get<u64>();
    c.level = j.at("level").get<int>();
    if (c.level < 0) throw std::invalid_argument(where + ": negative level");
    const auto& imgs = j.at("images");
    if (!imgs.is_array()) throw std::invalid_argument(where + ": 'images' must be an array");
    for (std::size_t i = 0; i < imgs.size(); ++i)
        c.images.push_back(coords_from(G, imgs[i], where + ".images[" + std::to_string(i) + "]"));
    if (c.level > 0) {
        std::size_t expect = unit_group(c.modulus()).factors().size();
        if (c.images.size() != expect)
            throw std::invalid_argument(where + ": expected " + std::to_string(expect) +
                                        " generator images at level " + std::to_string(c.level));
    }
    return c;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string interval_str(const Interval& iv) {
    char buf[96];
    std::snprintf(buf, sizeof(buf), "[%.17g, %.17g]", iv.lo, iv.hi);
    return buf;
}

json interval_json(const Interval& iv) {
    return {{"lo", iv.lo}, {"hi", iv.hi}, {"str", interval_str(iv)}};
}

json rational_json(const Rational& r) {
    return {{"num", r.num}, {"den", r.den}, {"str", r.str()}, {"value", r.to_double()}};
}

json bounds_json(const std::vector<u128>& bounds) {
    json out = json::array();
    for (u128 b : bounds) out.push_back(to_string(b));
    return out;
}

} // namespace

std::string to_json(const GlobalCharacter& chi) { return character_json(chi).dump(); }

std::string to_json(const FiniteAbelianGroup& G, const LocalSpec& spec) {
    (void)G;
    if (spec.is_real_place()) return json{{"infinity", spec.frob.coords}}.dump();
    json imgs = json::array();
    for (const auto& img : spec.unit_part.images) imgs.push_back(coords_json(img));
    return json{{"p", spec.place},
                {"level", spec.unit_part.level},
                {"images", imgs},
                {"frob", spec.frob.coords}}
        .dump();
}

GlobalCharacter character_from_json(const std::string& text) {
    json j = json::parse(text);
    GlobalCharacter chi;
    chi.group = group_from(j.at("group"), "character");
    for (std::size_t i = 0; i < j.at("places").size(); ++i)
        chi.components.push_back(
            local_from(chi.group, j.at("places")[i], "places[" + std::to_string(i) + "]"));
    std::sort(chi.components.begin(), chi.components.end(),
              [](const LocalCharacter& a, const LocalCharacter& b) { return a.p < b.p; });
    validate_primitive(chi);
    return chi;
}

std::vector<LocalSpec> SpecFile::exact_specs() const {
    std::vector<LocalSpec> out;
    for (const auto& c : conditions) {
        if (c.kind != ConditionKind::Exact)
            throw std::invalid_argument("this operation needs fully specified local data");
        out.push_back(c.spec);
    }
    return out;
}

SpecFile parse_spec_text(const std::string& text) {
    json j = json::parse(text);
    SpecFile out;
    out.group = group_from(j.at("group"), "spec file");
    if (!j.contains("specs") || !j.at("specs").is_array())
        throw std::invalid_argument("spec file: missing 'specs' array");
    std::vector<u64> places;
    for (std::size_t i = 0; i < j.at("specs").size(); ++i) {
        const json& e = j.at("specs")[i];
        std::string where = "specs[" + std::to_string(i) + "]";
        PlaceCondition cond;
        if (e.contains("infinity")) {
            LocalSpec s;
            s.place = PLACE_INFINITY;
            s.unit_part = LocalCharacter{0, 0, {}};
            s.frob = coords_from(out.group, e.at("infinity"), where + ".infinity");
            if (element_order(out.group, s.frob) > 2)
                throw std::invalid_argument(where + ": value at the real place must be 2-torsion");
            cond = PlaceCondition::exact(std::move(s));
        } else if (e.contains("event")) {
            u64 p = e.at("p").get<u64>();
            std::string kind = e.at("event").get<std::string>();
            if (kind == "ramified") {
                cond = PlaceCondition::ramified(p);
            } else if (kind == "unramified" && e.contains("frob")) {
                cond = PlaceCondition::unramified_frob(
                    p, coords_from(out.group, e.at("frob"), where + ".frob"));
            } else if (kind == "unramified") {
                cond = PlaceCondition::unramified(p);
            } else {
                throw std::invalid_argument(where + ": unknown event '" + kind + "'");
            }
        } else {
            LocalSpec s;
            s.place = e.at("p").get<u64>();
            if (s.place < 2) throw std::invalid_argument(where + ": bad prime");
            s.unit_part = local_from(out.group, e, where);
            if (local_conductor_exponent(out.group, s.unit_part) != s.unit_part.level)
                throw std::invalid_argument(where + ": level must equal the conductor exponent");
            s.frob = coords_from(out.group, e.at("frob"), where + ".frob");
            cond = PlaceCondition::exact(std::move(s));
        }
        for (u64 q : places)
            if (q == cond.place)
                throw std::invalid_argument(where + ": duplicate place " +
                                            (cond.place == PLACE_INFINITY
                                                 ? std::string("infinity")
                                                 : std::to_string(cond.place)));
        places.push_back(cond.place);
        out.conditions.push_back(std::move(cond));
    }
    return out;
}

SpecFile parse_spec_file(const std::string& path) { return parse_spec_text(slurp(path)); }

std::vector<DualCharacter> parse_artin_file(const std::string& path,
                                            const FiniteAbelianGroup& G) {
    json j = json::parse(slurp(path));
    FiniteAbelianGroup file_group = group_from(j.at("group"), "artin file");
    if (!(file_group == G))
        throw std::invalid_argument("artin file group does not match --group");
    std::vector<DualCharacter> out;
    for (std::size_t i = 0; i < j.at("characters").size(); ++i) {
        GroupElement g = coords_from(G, j.at("characters")[i],
                                     "characters[" + std::to_string(i) + "]");
        out.push_back(DualCharacter{g.coords});
    }
    if (out.empty()) throw std::invalid_argument("artin file: no characters listed");
    return out;
}

std::string tsv_header() { return "c_value\tconductor\tdiscriminant\tsupport\tcharacter"; }

std::string tsv_row(const CountingFunction& C, const GlobalCharacter& chi, u128 cvalue) {
    (void)C;
    std::string support;
    for (std::size_t i = 0; i < chi.components.size(); ++i) {
        if (i) support += ",";
        support += std::to_string(chi.components[i].p);
    }
    std::string disc;
    try {
        disc = to_string(discriminant(chi));
    } catch (const std::overflow_error&) {
        // factored fallback for the giant ones
        for (auto [p, e] : discriminant_exponents(chi)) {
            if (!disc.empty()) disc += "*";
            disc += std::to_string(p) + "^" + std::to_string(e);
        }
    }
    return to_string(cvalue) + "\t" + std::to_string(chi.conductor()) + "\t" + disc + "\t" +
           support + "\t" + to_json(chi);
}

std::string render_count(const CountTally& tally, const std::string& group,
                         const std::string& counting) {
    json buckets = json::array();
    for (std::size_t i = 0; i < tally.buckets.size(); ++i) {
        if (tally.buckets[i] == 0) continue;
        buckets.push_back({{"value", static_cast<u64>(i) * tally.bucket_width + 1},
                           {"count", tally.buckets[i]}});
    }
    json j{{"command", "count"},
           {"group", group},
           {"counting", counting},
           {"bound", to_string(tally.bound)},
           {"bucket_width", tally.bucket_width},
           {"total", tally.total},
           {"buckets", buckets}};
    return j.dump(2);
}

std::string render_probability(const ProbabilityEstimate& est, const std::string& group,
                               const std::string& counting, const std::string& bound) {
    json j{{"command", "probs"},
           {"group", group},
           {"counting", counting},
           {"bound", bound},
           {"numerator", est.num},
           {"denominator", est.den},
           {"probability", rational_json(est.value())}};
    return j.dump(2);
}

std::string render_ratio(const RatioReport& rep) {
    json per_bound = json::array();
    for (std::size_t i = 0; i < rep.bounds.size(); ++i)
        per_bound.push_back({{"bound", to_string(rep.bounds[i])},
                             {"count_a", rep.count_a[i]},
                             {"count_b", rep.count_b[i]},
                             {"empirical", rep.ratio[i]},
                             {"relative_error", rep.relative_error[i]}});
    json j{{"command", "ratio"},
           {"fair", rep.fair},
           {"target", rep.target},
           {"schedule", per_bound},
           {"trend", rep.improving ? "improving" : "not-improving"}};
    if (rep.target_exact) j["target_exact"] = rational_json(*rep.target_exact);
    return j.dump(2);
}

std::string render_chebotarev(const ChebotarevReport& rep) {
    json rows = json::array();
    for (const auto& row : rep.rows) {
        json counts = json::array();
        for (std::size_t i = 0; i < rep.bounds.size(); ++i)
            counts.push_back({{"bound", to_string(rep.bounds[i])},
                              {"count", row.count[i]},
                              {"empirical", row.empirical[i]}});
        rows.push_back({{"num_primes", row.num_primes},
                        {"target", rational_json(row.target)},
                        {"schedule", counts},
                        {"relative_error", row.relative_error}});
    }
    json j{{"command", "cheb"},
           {"p", rep.p},
           {"exact_target_claim", rep.exact_target_claim},
           {"rows", rows}};
    return j.dump(2);
}

std::string render_independence(const IndependenceReport& rep) {
    json per_bound = json::array();
    for (std::size_t i = 0; i < rep.bounds.size(); ++i)
        per_bound.push_back({{"bound", to_string(rep.bounds[i])},
                             {"total", rep.totals[i]},
                             {"count_a", rep.count_a[i]},
                             {"count_b", rep.count_b[i]},
                             {"count_ab", rep.count_ab[i]},
                             {"defect", rep.defect[i]}});
    json j{{"command", "indep"},
           {"schedule", per_bound},
           {"trend", rep.decreasing ? "decreasing" : "not-decreasing"}};
    return j.dump(2);
}

std::string render_constant(const ConstantReport& rep, const std::string& group,
                            const std::string& counting) {
    json j{{"command", "constant"},
           {"group", group},
           {"counting", counting},
           {"m", rep.m},
           {"pole_order", rational_json(rep.pole)},
           {"sp", rep.sp},
           {"s0_size", rep.s0_size},
           {"unit_index_factor", rep.unit_index_factor},
           {"two_torsion", rep.two_torsion},
           {"prefactor", rational_json(rep.prefactor)},
           {"finite_product", interval_json(rep.finite_product.value)},
           {"truncation", rep.finite_product.truncation},
           {"ordering", rep.finite_product.ordering},
           {"l_value_factor", interval_json(rep.l_value_factor)},
           {"s0_factor", interval_json(rep.s0_factor)},
           {"accelerated", rep.accelerated},
           {"tail_certified", rep.tail_certified},
           {"constant", interval_json(rep.total)}};
    return j.dump(2);
}

std::string render_discprob(const DiscProbVerdict& v, u64 p, u64 q, u64 truncation,
                            const std::optional<ProbabilityEstimate>& empirical,
                            const std::string& empirical_bound) {
    const char* status = v.status == DiscProbVerdict::CertifiedBelow  ? "below"
                         : v.status == DiscProbVerdict::CertifiedAbove ? "above"
                                                                       : "inconclusive";
    json j{{"command", "discprob"},
           {"p", p},
           {"q", q},
           {"truncation", truncation},
           {"s", interval_json(v.s.value)},
           {"r", interval_json(v.r.value)},
           {"criterion_product", interval_json(v.criterion)},
           {"p2_s1", interval_json(v.p2s1)},
           {"s1_defined", v.s1_defined},
           {"threshold", "1/" + std::to_string(p * p)},
           {"verdict", status}};
    if (v.s1_defined) j["s1"] = interval_json(v.s1);
    if (empirical) {
        j["empirical"] = {{"bound", empirical_bound},
                          {"numerator", empirical->num},
                          {"denominator", empirical->den},
                          {"value", empirical->to_double()}};
    }
    return j.dump(2);
}

std::string render_viability(const std::vector<SpecVerdict>& verdicts,
                             const FiniteAbelianGroup& G) {
    json rows = json::array();
    std::size_t viable = 0;
    for (const auto& v : verdicts) {
        json row{{"spec", json::parse(to_json(G, v.spec))}, {"viable", v.viable}};
        if (v.search.witness) row["witness"] = json::parse(to_json(*v.search.witness));
        rows.push_back(std::move(row));
        viable += v.viable ? 1 : 0;
    }
    json j{{"command", "viability"},
           {"group", G.factors()},
           {"total", verdicts.size()},
           {"viable", viable},
           {"specs", rows}};
    return j.dump(2);
}

std::string render_viability_single(const ViabilityVerdict& v, const FiniteAbelianGroup& G) {
    (void)G;
    const char* status = nullptr;
    switch (v.status) {
        case ViabilityVerdict::Viable: status = "viable"; break;
        case ViabilityVerdict::Inviable: status = "inviable"; break;
        case ViabilityVerdict::ViableWithWitness: status = "viable-with-witness"; break;
        case ViabilityVerdict::NoWitnessBelowBound: status = "no-witness-below-bound"; break;
    }
    json j{{"command", "viability"}, {"status", status}};
    if (v.witness) j["witness"] = json::parse(to_json(*v.witness));
    return j.dump(2);
}

std::string render_fairness(const FairnessReport& rep, const FiniteAbelianGroup& G,
                            const std::string& counting) {
    json j{{"command", "fairness"},
           {"group", G.factors()},
           {"counting", counting},
           {"m", rep.m},
           {"min_set_size", rep.min_set.size()},
           {"fair", rep.fair}};
    if (!rep.fair) j["witness_r"] = rep.witness_r;
    return j.dump(2);
}

} // namespace abext
