#include "abext/asymptotics.hpp"
#include <cstdio>
using namespace abext;
const char* st(int s){ return s==0?"BELOW":s==1?"ABOVE":"INCONCLUSIVE"; }
int main() {
    for (u64 q : {2ULL,3ULL,5ULL,7ULL,11ULL,13ULL}) {
        auto v = disc_prob_s1(3, q, 100000);
        printf("q=%2llu N=1e5: T=%s p2s1=%s  %s\n", (unsigned long long)q,
               v.criterion.str().c_str(), v.p2s1.str().c_str(), st(v.status));
    }
    for (u64 q : {2ULL,5ULL,13ULL}) {
        auto v = disc_prob_s1(3, q, 10000000);
        printf("q=%2llu N=1e7: T=[%.5f,%.5f]  %s\n", (unsigned long long)q,
               v.criterion.lo, v.criterion.hi, st(v.status));
    }
    auto v3 = disc_prob_s1(3, 3, 100000000);
    printf("q= 3 N=1e8: T=[%.6f,%.6f]  %s\n", v3.criterion.lo, v3.criterion.hi, st(v3.status));
    for (u64 q : {7ULL,11ULL}) {
        auto v = disc_prob_s1(3, q, 300000000);
        printf("q=%2llu N=3e8: T=[%.6f,%.6f]  %s\n", (unsigned long long)q,
               v.criterion.lo, v.criterion.hi, st(v.status));
    }
    auto te = tail_enclosure(3, 100000);
    printf("tail_enclosure(3,1e5) = %s (upper expect ~1.456)\n", te.str().c_str());
    return 0;
}
