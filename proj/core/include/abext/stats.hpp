#pragma once

#include <optional>

#include "abext/enumerate.hpp"

namespace abext {

// One measurable condition at a place.  Exact pins the whole G-structured
// datum; the others are the aggregate events the closed-form targets in the
// reports refer to.
enum class ConditionKind { Exact, Ramified, Unramified, UnramifiedFrob, Splitting };

struct PlaceCondition {
    u64 place = PLACE_INFINITY;
    ConditionKind kind = ConditionKind::Unramified;
    LocalSpec spec;      // Exact
    GroupElement frob;   // UnramifiedFrob
    SplittingType split; // Splitting

    static PlaceCondition exact(LocalSpec s);
    static PlaceCondition ramified(u64 p);
    static PlaceCondition unramified(u64 p);
    static PlaceCondition unramified_frob(u64 p, GroupElement g);
    static PlaceCondition splitting(u64 p, SplittingType st);
};

// conjunction over pairwise distinct places
struct Event {
    std::vector<PlaceCondition> conditions;
    std::vector<u64> places() const;
};

bool matches(const FiniteAbelianGroup& G, const GlobalCharacter& chi, const PlaceCondition& c);
bool matches(const FiniteAbelianGroup& G, const GlobalCharacter& chi, const Event& e);

struct ProbabilityEstimate {
    i64 num = 0;
    i64 den = 0;
    Rational value() const;
    double to_double() const { return static_cast<double>(num) / static_cast<double>(den); }
};

// counts of each event among chi with C(chi) < bound, one enumeration pass
// at the largest bound; counts are cumulative per bound
struct Measurement {
    std::vector<u128> bounds;                // ascending
    std::vector<i64> totals;                 // per bound
    std::vector<std::vector<i64>> counts;    // [bound][event]
};

Measurement measure(const FiniteAbelianGroup& G, const CountingFunction& C,
                    std::vector<u128> bounds, const std::vector<Event>& events,
                    bool surjective_only = true);

// (#chi matching event, C < X) / (#chi, C < X); throws on zero denominator
ProbabilityEstimate empirical_probability(const FiniteAbelianGroup& G, const CountingFunction& C,
                                          u128 X, const Event& event);

// sum over local specs at `place` satisfying the condition of Nv^{-c/m}
// (the model weight); exact rational part when every exponent is integral
double condition_theory_weight(const CountingFunction& C, const PlaceCondition& cond);

struct RatioReport {
    std::vector<u128> bounds;
    std::vector<i64> count_a, count_b;
    std::vector<double> ratio;          // per bound, count_a/count_b
    double target = 0.0;                // prod of model weights
    std::optional<Rational> target_exact;
    std::vector<double> relative_error; // per bound
    bool improving = false;             // |err| at last bound < at first bound
    bool fair = true;                   // unfair C makes the target advisory
};

RatioReport ratio_report(const FiniteAbelianGroup& G, const CountingFunction& C,
                         std::vector<u128> bounds, const Event& a, const Event& b);

struct ChebotarevRow {
    i64 num_primes;
    Rational target;               // element-order census proportion
    std::vector<i64> count;        // per bound
    std::vector<double> empirical; // per bound
    double relative_error;         // at the last bound
};

struct ChebotarevReport {
    u64 p;
    std::vector<u128> bounds;
    std::vector<i64> unramified_total; // per bound
    std::vector<ChebotarevRow> rows;
    bool exact_target_claim;           // false at p=2 for even |G|
};

ChebotarevReport chebotarev_report(const FiniteAbelianGroup& G, const CountingFunction& C,
                                   std::vector<u128> bounds, u64 p);

struct IndependenceReport {
    std::vector<u128> bounds;
    std::vector<i64> count_a, count_b, count_ab, totals;
    std::vector<double> defect; // |P(ab) - P(a)P(b)| per bound
    bool decreasing = false;    // defect at last bound < at first bound
};

IndependenceReport independence_report(const FiniteAbelianGroup& G, const CountingFunction& C,
                                       std::vector<u128> bounds, const Event& a, const Event& b);

} // namespace abext
