#include "abext/enumerate.hpp"
#include <cstdio>
int main() {
    using namespace abext;
    FiniteAbelianGroup G({2});
    auto C = conductor_counting(G);
    EnumerationQuery q{G, &C, 13, {}, {}, true, 1};
    auto chars = enumerate_sorted(q);
    std::printf("Z/2 conductor<13: %zu characters\n", chars.size());
    for (auto& [v, chi] : chars)
        std::printf("  C=%s f=%llu chi(-1)=%lld\n", to_string(v).c_str(),
                    (unsigned long long)chi.conductor(),
                    (long long)localize(chi, PLACE_INFINITY).frob.coords[0]);
    auto t = fast_count(q);
    std::printf("fast_count total: %lld\n", (long long)t.total);
    auto t2 = tally_by_enumeration(q);
    std::printf("enum tally total: %lld, equal=%d\n", (long long)t2.total, t == t2);
    return 0;
}
