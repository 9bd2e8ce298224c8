// Prints the L-polynomial and inverse roots of every non-principal character
// modulo the least irreducible quartic over F_2.
#include <cstdio>

#include "ffchar/ffchar.hpp"

int main() {
    using namespace ffchar;
    auto g = standard_unit_group(2, 4);
    std::printf("Q = %s, |G| = %llu\n", format_poly(g->modulus().poly()).c_str(), static_cast<unsigned long long>(g->order()));
    auto chars = all_characters(g);
    chars.erase(chars.begin());
    for (const auto& L : build_lpolynomials(chars)) {
        std::printf("%-8s", L.chi.c_str());
        for (const auto& a : L.inverse_roots) std::printf("  |%+.4f%+.4fi| = %.6f", a.real(), a.imag(), std::abs(a));
        std::printf("\n");
    }
}
