// The Hermitian F9 Type: its Clifford-Weil group, Molien series and the
// collapse onto zero, squares and non-squares.

#include <iostream>

#include "sdc/sdc.hpp"

int main() {
    using namespace sdc;
    const FormRing rho = preset("9_H");
    const auto gens = clifford_weil_generators(rho);
    for (const auto& g : gens) std::cout << g.label << ":" << g.matrix << "\n";

    const MatrixGroup G = clifford_weil_group(rho);
    std::cout << "order " << G.order() << "\n";
    std::cout << "Molien series " << molien_series(G) << "\n";

    try {
        (void)collapse_group(gens, {{0}, {1, 2, 3, 4, 5, 6, 7, 8}});
    } catch (const IllegalSymmetrization& e) {
        std::cout << e.what() << "\n";
    }

    const auto collapsed = collapse_group(gens, {{0}, {1, 3, 5, 7}, {2, 4, 6, 8}});
    std::vector<CycMatrix> mats;
    for (const auto& g : collapsed) {
        std::cout << g.label << ", collapsed:" << g.matrix << "\n";
        mats.push_back(g.matrix);
    }
    const MatrixGroup H = group_closure(mats);
    std::cout << "collapsed order " << H.order() << ", Molien series " << molien_series(H) << "\n";
}
