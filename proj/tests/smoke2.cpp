#include "abext/asymptotics.hpp"
#include "abext/serialize.hpp"
#include <cstdio>
using namespace abext;
int main() {
    // pole orders
    FiniteAbelianGroup Z2({2}), Z9({9}), Z8({8});
    printf("pole Z/2 cond: %s\n", pole_order(conductor_counting(Z2)).str().c_str());
    printf("pole Z/9 cond: %s\n", pole_order(conductor_counting(Z9)).str().c_str());
    printf("pole Z/9 disc: %s\n", pole_order(discriminant_counting(Z9)).str().c_str());
    printf("pole Z/8 cond: %s\n", pole_order(conductor_counting(Z8)).str().c_str());
    // fairness
    auto f9 = fairness(discriminant_counting(Z9));
    printf("disc Z/9 fair=%d witness=%lld m=%lld\n", f9.fair, (long long)f9.witness_r, (long long)f9.m);
    // leading constant Z/2 conductor
    auto rep = leading_constant(conductor_counting(Z2), 100000);
    printf("Z/2 const: %s (6/pi^2=%.6f) certified=%d\n", rep.total.str().c_str(), 6.0/(M_PI*M_PI), rep.tail_certified);
    // Z/3
    FiniteAbelianGroup Z3({3});
    auto rep3 = leading_constant(conductor_counting(Z3), 100000);
    printf("Z/3 const: %s\n", rep3.total.str().c_str());
    auto rep3d = leading_constant(conductor_counting(Z3), 100000, false);
    printf("Z/3 direct: %s certified=%d\n", rep3d.total.str().c_str(), rep3d.tail_certified);
    // disc prob
    auto v = disc_prob_s1(3, 7, 100000);
    printf("discprob p=3 q=7: s=%s r=%s T=%s p2s1=%s status=%d\n",
           v.s.value.str().c_str(), v.r.value.str().c_str(),
           v.criterion.str().c_str(), v.p2s1.str().c_str(), (int)v.status);
    // L-value sanity: via dirichlet_l1_product for r=3: single char, L(1,chi_3)=pi/sqrt(27)
    auto l3 = dirichlet_l1_product(3, {});
    printf("L(1,chi_3): %s expect %.9f\n", l3.str().c_str(), M_PI/std::sqrt(27.0));
    auto l4 = dirichlet_l1_product(4, {});
    printf("L(1,chi_4): %s expect %.9f\n", l4.str().c_str(), M_PI/4);
    return 0;
}
