#include "abext/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <set>

#include "abext/viability.hpp"

namespace abext {

PlaceCondition PlaceCondition::exact(LocalSpec s) {
    PlaceCondition c;
    c.place = s.place;
    c.kind = ConditionKind::Exact;
    c.spec = std::move(s);
    return c;
}

PlaceCondition PlaceCondition::ramified(u64 p) {
    PlaceCondition c;
    c.place = p;
    c.kind = ConditionKind::Ramified;
    return c;
}

PlaceCondition PlaceCondition::unramified(u64 p) {
    PlaceCondition c;
    c.place = p;
    c.kind = ConditionKind::Unramified;
    return c;
}

PlaceCondition PlaceCondition::unramified_frob(u64 p, GroupElement g) {
    PlaceCondition c;
    c.place = p;
    c.kind = ConditionKind::UnramifiedFrob;
    c.frob = std::move(g);
    return c;
}

PlaceCondition PlaceCondition::splitting(u64 p, SplittingType st) {
    PlaceCondition c;
    c.place = p;
    c.kind = ConditionKind::Splitting;
    c.split = st;
    return c;
}

std::vector<u64> Event::places() const {
    std::vector<u64> out;
    for (const auto& c : conditions) out.push_back(c.place);
    return out;
}

bool matches(const FiniteAbelianGroup& G, const GlobalCharacter& chi, const PlaceCondition& c) {
    LocalSpec got = localize(chi, c.place);
    switch (c.kind) {
        case ConditionKind::Exact:
            return got.unit_part == c.spec.unit_part && got.frob == c.spec.frob;
        case ConditionKind::Ramified:
            return got.ramified();
        case ConditionKind::Unramified:
            return !got.ramified();
        case ConditionKind::UnramifiedFrob:
            return !got.ramified() && got.frob == c.frob;
        case ConditionKind::Splitting:
            return splitting_type(G, got) == c.split;
    }
    return false;
}

bool matches(const FiniteAbelianGroup& G, const GlobalCharacter& chi, const Event& e) {
    for (const auto& c : e.conditions)
        if (!matches(G, chi, c)) return false;
    return true;
}

Rational ProbabilityEstimate::value() const {
    if (den == 0) throw std::domain_error("probability with zero denominator");
    return Rational(num, den);
}

Measurement measure(const FiniteAbelianGroup& G, const CountingFunction& C,
                    std::vector<u128> bounds, const std::vector<Event>& events,
                    bool surjective_only) {
    if (bounds.empty()) throw std::invalid_argument("need at least one bound");
    std::sort(bounds.begin(), bounds.end());
    for (const auto& e : events) {
        std::set<u64> seen;
        for (u64 p : e.places())
            if (!seen.insert(p).second)
                throw std::invalid_argument("event repeats a place");
    }

    Measurement out;
    out.bounds = bounds;
    out.totals.assign(bounds.size(), 0);
    out.counts.assign(bounds.size(), std::vector<i64>(events.size(), 0));

    EnumerationQuery q;
    q.group = G;
    q.counting = &C;
    q.bound = bounds.back();
    q.surjective_only = surjective_only;
    for_each_character(q, [&](const GlobalCharacter& chi, u128 v) {
        // smallest bound with v < bounds[first]; the enumeration guarantees
        // v < bounds.back()
        std::size_t first = std::upper_bound(bounds.begin(), bounds.end(), v) - bounds.begin();
        out.totals[first] += 1;
        for (std::size_t t = 0; t < events.size(); ++t)
            if (matches(G, chi, events[t])) out.counts[first][t] += 1;
    });
    // make counts cumulative over the ascending bounds
    for (std::size_t i = 1; i < bounds.size(); ++i) {
        out.totals[i] += out.totals[i - 1];
        for (std::size_t t = 0; t < events.size(); ++t)
            out.counts[i][t] += out.counts[i - 1][t];
    }
    return out;
}

ProbabilityEstimate empirical_probability(const FiniteAbelianGroup& G, const CountingFunction& C,
                                          u128 X, const Event& event) {
    Measurement m = measure(G, C, {X}, {event});
    if (m.totals[0] == 0) throw std::domain_error("no characters below the bound");
    return {m.counts[0][0], m.totals[0]};
}

namespace {

bool spec_satisfies(const FiniteAbelianGroup& G, const LocalSpec& s, const PlaceCondition& cond) {
    switch (cond.kind) {
        case ConditionKind::Exact:
            return s.unit_part == cond.spec.unit_part && s.frob == cond.spec.frob;
        case ConditionKind::Ramified: return s.ramified();
        case ConditionKind::Unramified: return !s.ramified();
        case ConditionKind::UnramifiedFrob: return !s.ramified() && s.frob == cond.frob;
        case ConditionKind::Splitting: return splitting_type(G, s) == cond.split;
    }
    return false;
}

i64 model_weight(const CountingFunction& C, const LocalSpec& s) {
    if (s.is_real_place()) return 0;
    if (C.is_wild(s.place)) return C.wild_weight(s);
    return s.ramified() ? C.tame_weight_of(s.unit_part.images[0]) : 0;
}

// the condition's weight sum as an exact rational, when every exponent c/m
// is integral and nothing overflows
std::optional<Rational> condition_weight_exact(const CountingFunction& C,
                                               const PlaceCondition& cond) {
    const auto& G = C.group;
    const i64 m = C.min_weight();
    std::vector<i64> exps;
    for (const auto& s : all_local_specs(G, cond.place)) {
        if (!spec_satisfies(G, s, cond)) continue;
        i64 c = model_weight(C, s);
        if (c % m != 0) return std::nullopt;
        exps.push_back(c / m);
    }
    if (exps.empty()) return Rational(0);
    try {
        i64 maxw = *std::max_element(exps.begin(), exps.end());
        i64 base = cond.place == PLACE_INFINITY ? 1 : static_cast<i64>(cond.place);
        i64 den = 1;
        for (i64 i = 0; i < maxw; ++i) den = checked_mul(den, base);
        i64 num = 0;
        for (i64 w : exps) {
            i64 term = 1;
            for (i64 i = 0; i < maxw - w; ++i) term = checked_mul(term, base);
            num = checked_add(num, term);
        }
        return Rational(num, den);
    } catch (const std::overflow_error&) {
        return std::nullopt;
    }
}

std::optional<Rational> exact_weight_ratio(const CountingFunction& C, const Event& a,
                                           const Event& b) {
    try {
        Rational ta(1), tb(1);
        for (const auto& c : a.conditions) {
            auto w = condition_weight_exact(C, c);
            if (!w) return std::nullopt;
            ta = ta * *w;
        }
        for (const auto& c : b.conditions) {
            auto w = condition_weight_exact(C, c);
            if (!w) return std::nullopt;
            tb = tb * *w;
        }
        if (tb.num == 0) return std::nullopt;
        return Rational(checked_mul(ta.num, tb.den), checked_mul(ta.den, tb.num));
    } catch (const std::overflow_error&) {
        return std::nullopt;
    }
}

} // namespace

double condition_theory_weight(const CountingFunction& C, const PlaceCondition& cond) {
    const auto& G = C.group;
    const double m = static_cast<double>(C.min_weight());
    double sum = 0.0;
    for (const auto& s : all_local_specs(G, cond.place)) {
        if (!spec_satisfies(G, s, cond)) continue;
        if (cond.place == PLACE_INFINITY) {
            sum += 1.0; // Nv = 1 at the real place
            continue;
        }
        sum += std::pow(static_cast<double>(cond.place),
                        -static_cast<double>(model_weight(C, s)) / m);
    }
    return sum;
}

RatioReport ratio_report(const FiniteAbelianGroup& G, const CountingFunction& C,
                         std::vector<u128> bounds, const Event& a, const Event& b) {
    RatioReport rep;
    std::sort(bounds.begin(), bounds.end());
    rep.bounds = bounds;
    rep.fair = fairness(C).fair;

    Measurement m = measure(G, C, bounds, {a, b});
    rep.count_a = std::vector<i64>(bounds.size());
    rep.count_b = std::vector<i64>(bounds.size());
    for (std::size_t i = 0; i < bounds.size(); ++i) {
        rep.count_a[i] = m.counts[i][0];
        rep.count_b[i] = m.counts[i][1];
        rep.ratio.push_back(m.counts[i][1] == 0
                                ? std::numeric_limits<double>::quiet_NaN()
                                : static_cast<double>(m.counts[i][0]) / m.counts[i][1]);
    }

    double ta = 1.0, tb = 1.0;
    for (const auto& c : a.conditions) ta *= condition_theory_weight(C, c);
    for (const auto& c : b.conditions) tb *= condition_theory_weight(C, c);
    rep.target = ta / tb;
    rep.target_exact = exact_weight_ratio(C, a, b);

    for (std::size_t i = 0; i < bounds.size(); ++i)
        rep.relative_error.push_back(std::abs(rep.ratio[i] / rep.target - 1.0));
    rep.improving = !rep.relative_error.empty() &&
                    rep.relative_error.back() < rep.relative_error.front();
    return rep;
}

ChebotarevReport chebotarev_report(const FiniteAbelianGroup& G, const CountingFunction& C,
                                   std::vector<u128> bounds, u64 p) {
    ChebotarevReport rep;
    rep.p = p;
    std::sort(bounds.begin(), bounds.end());
    rep.bounds = bounds;
    rep.exact_target_claim = !(p == 2 && G.order() % 2 == 0);

    // element-order census: splitting into |G|/ord(g) primes has probability
    // #{g of that order}/|G| given unramified
    std::map<i64, i64> census;
    for (i64 enc = 0; enc < G.order(); ++enc)
        census[G.order() / element_order(G, G.decode(enc))] += 1;

    std::vector<Event> events;
    std::vector<i64> rvals;
    for (auto [r, cnt] : census) {
        (void)cnt;
        SplittingType st{1, G.order() / r, r};
        events.push_back(Event{{PlaceCondition::splitting(p, st)}});
        rvals.push_back(r);
    }
    events.push_back(Event{{PlaceCondition::unramified(p)}});

    Measurement m = measure(G, C, bounds, events);
    rep.unramified_total = std::vector<i64>(bounds.size());
    for (std::size_t i = 0; i < bounds.size(); ++i)
        rep.unramified_total[i] = m.counts[i][events.size() - 1];

    for (std::size_t t = 0; t < rvals.size(); ++t) {
        ChebotarevRow row;
        row.num_primes = rvals[t];
        row.target = Rational(census[rvals[t]], G.order());
        for (std::size_t i = 0; i < bounds.size(); ++i) {
            row.count.push_back(m.counts[i][t]);
            row.empirical.push_back(rep.unramified_total[i] == 0
                                        ? std::numeric_limits<double>::quiet_NaN()
                                        : static_cast<double>(m.counts[i][t]) /
                                              rep.unramified_total[i]);
        }
        row.relative_error = std::abs(row.empirical.back() / row.target.to_double() - 1.0);
        rep.rows.push_back(std::move(row));
    }
    return rep;
}

IndependenceReport independence_report(const FiniteAbelianGroup& G, const CountingFunction& C,
                                       std::vector<u128> bounds, const Event& a, const Event& b) {
    for (u64 pa : a.places())
        for (u64 pb : b.places())
            if (pa == pb) throw std::invalid_argument("independence events must use disjoint places");

    Event ab;
    ab.conditions = a.conditions;
    ab.conditions.insert(ab.conditions.end(), b.conditions.begin(), b.conditions.end());

    IndependenceReport rep;
    std::sort(bounds.begin(), bounds.end());
    rep.bounds = bounds;
    Measurement m = measure(G, C, bounds, {a, b, ab});
    for (std::size_t i = 0; i < bounds.size(); ++i) {
        rep.count_a.push_back(m.counts[i][0]);
        rep.count_b.push_back(m.counts[i][1]);
        rep.count_ab.push_back(m.counts[i][2]);
        rep.totals.push_back(m.totals[i]);
        double N = static_cast<double>(m.totals[i]);
        rep.defect.push_back(N == 0 ? std::numeric_limits<double>::quiet_NaN()
                                    : std::abs(m.counts[i][2] / N -
                                               (m.counts[i][0] / N) * (m.counts[i][1] / N)));
    }
    rep.decreasing = rep.defect.size() >= 2 && rep.defect.back() < rep.defect.front();
    return rep;
}

} // namespace abext
