// Closed-form integrals of Jacobi systems, one per eigen-structure case.
#include "darboux.hpp"

#include <iostream>

using namespace darboux;

int main() {
    const char* matrices[] = {
        "3,-1,1; -1,5,-1; 1,-1,3",   // three simple real eigenvalues
        "-1,1,1; 1,-1,1; 1,1,-1",    // repeated, two eigenvectors
        "1,1,1; 2,1,2; 3,-3,1",      // complex pair
        "-1,1,-1; 1,-1,1; 0,-1,0",   // double elementary divisor
        "1,1,1; -1,3,1; -1,1,2",     // triple elementary divisor
    };
    for (auto* m : matrices) {
        auto a = parse_matrix(m);
        auto j = jacobi_general_integral(a);
        std::cout << "[" << m << "]  " << case_name(j.kind) << "\n";
        if (j.sys) std::cout << print_system(*j.sys);
        if (j.general) std::cout << "  F   = " << render_integral(*j.general) << "\n";
        for (auto& e : jacobi_nonautonomous_integral(a)) std::cout << "  Psi = " << render_integral(e) << "\n";
        std::cout << "\n";
    }
}
