#pragma once

#include <string>

#include "abext/asymptotics.hpp"
#include "abext/stats.hpp"
#include "abext/viability.hpp"

namespace abext {

// JSON wire formats.  A character is
//   {"group":[n1,...],"places":[{"p":p,"level":k,"images":[[coords],...]},...]}
// with images listed in the canonical unit-generator order; a local spec
// adds "frob":[coords], and the real place is {"infinity":[coords]}.
std::string to_json(const GlobalCharacter& chi);
std::string to_json(const FiniteAbelianGroup& G, const LocalSpec& spec);
GlobalCharacter character_from_json(const std::string& text);

// A spec file is {"group":[...],"specs":[...]} where each entry is a local
// spec as above or an aggregate event {"p":q,"event":"ramified"} /
// {"p":q,"event":"unramified"[,"frob":[coords]]}.
struct SpecFile {
    FiniteAbelianGroup group;
    std::vector<PlaceCondition> conditions;

    // all conditions exact, as pins for the enumeration engine
    std::vector<LocalSpec> exact_specs() const;
    Event event() const { return Event{conditions}; }
};

SpecFile parse_spec_file(const std::string& path);
SpecFile parse_spec_text(const std::string& text);

// Artin representation file: {"group":[...],"characters":[[a1..ak],...]}
std::vector<DualCharacter> parse_artin_file(const std::string& path,
                                            const FiniteAbelianGroup& G);

// one enumeration line: C-value, conductor, discriminant, support, character
std::string tsv_row(const CountingFunction& C, const GlobalCharacter& chi, u128 cvalue);
std::string tsv_header();

// report renderers (pretty JSON, stable field order)
std::string render_count(const CountTally& tally, const std::string& group,
                         const std::string& counting);
std::string render_probability(const ProbabilityEstimate& est, const std::string& group,
                               const std::string& counting, const std::string& bound);
std::string render_ratio(const RatioReport& rep);
std::string render_chebotarev(const ChebotarevReport& rep);
std::string render_independence(const IndependenceReport& rep);
std::string render_constant(const ConstantReport& rep, const std::string& group,
                            const std::string& counting);
std::string render_discprob(const DiscProbVerdict& v, u64 p, u64 q, u64 truncation,
                            const std::optional<ProbabilityEstimate>& empirical,
                            const std::string& empirical_bound);
std::string render_viability(const std::vector<SpecVerdict>& verdicts,
                             const FiniteAbelianGroup& G);
std::string render_viability_single(const ViabilityVerdict& v, const FiniteAbelianGroup& G);
std::string render_fairness(const FairnessReport& rep, const FiniteAbelianGroup& G,
                            const std::string& counting);

} // namespace abext
