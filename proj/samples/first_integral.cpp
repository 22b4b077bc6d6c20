// Finds the partial integrals of a quadratic system and assembles a first
// integral from their cofactors.
#include "darboux.hpp"

#include <iostream>

using namespace darboux;

int main() {
    auto sys = parse_system(R"(
        vars x y
        system
        x' = -2 + y + x^2 + x*y
        y' = 4 + 2*x + x*y + y^2
    )");

    std::vector<PartialIntegral> pis;
    for (int k = 1; k <= 2; ++k)
        for (auto& hit : search_planar(sys, k)) {
            std::cout << "degree " << k << ": " << to_string(hit.p) << "  cofactor " << to_string(hit.cofactor) << "\n";
            pis.push_back(PolyPI{hit.p});
        }

    for (auto& r : combine(sys, pis, Target::zero()))
        std::cout << "first integral: " << render_integral(r.expr) << "\n";

    // exp((x + y)/(2 + 2x + y)) has N = 1, so a time factor closes it.
    pis = {ExpRationalPI{sys.parse("x + y"), sys.parse("2 + 2*x + y"), 1}};
    for (auto& r : combine(sys, pis, Target::zero(), true))
        std::cout << "with time: " << render_integral(r.expr) << "\n";
}
