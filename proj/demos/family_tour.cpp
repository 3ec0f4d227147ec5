// A short tour: closed forms in the three backends, one truncated integral,
// and one identity check.

#include <iostream>

#include "qeuler/qeuler.hpp"

int main() {
    using namespace qeuler;

    FuncFieldCtx fx;
    std::cout << "E_2(x=0) as a rational function of q:\n  "
              << ratfunc_to_string(euler_q(fx, 2, 0)) << "\n";
    std::cout << "its q -> 1 limit: " << rational_to_string(euler_q(fx, 2, 0).eval_at(Rational(1)))
              << " (classical oracle says " << rational_to_string(classical_euler(2, Rational(0)))
              << ")\n\n";

    RationalCtx rx(Rational(1, 2));
    std::cout << "order-2 value at q=1/2, n=3: "
              << rational_to_string(euler_order_r(rx, 3, 2, 0)) << "\n\n";

    PadicCtx px(Int(3), 10, Rational(4));
    auto f = bracket_power_integrand(px.rational_ctx(), 2, 1, 0);
    auto result = multivariate_fermionic_integral(px, f, hr_measure(2, 2), 4);
    std::cout << "(h,r)=(2,2) integral, levels 1..4:\n";
    std::cout << "  value " << padic_to_string(result.value) << "\n";
    std::cout << "  closed form "
              << padic_to_string(px.from_rational(euler_hr(px.rational_ctx(), 1, 2, 2, 0))) << "\n\n";

    GridSpec grid;
    grid.max_n = 3;
    grid.max_r = 2;
    auto check = lab::check_h1_shift_recurrence(grid);
    std::cout << check.id << ": " << check.passed() << " points pass, " << check.failed()
              << " fail\n";
    return 0;
}
