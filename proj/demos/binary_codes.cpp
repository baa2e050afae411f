// Weight enumerators of the classical binary codes and their Gleason forms.

#include <iostream>

#include "sdc/sdc.hpp"

int main() {
    using namespace sdc;
    const FormRing type1 = preset("2_I");
    const Code i2 = make_code(type1, 2, {{1, 1}});
    const Code h8 = extended_qr_code(7);
    const Code g24 = extended_qr_code(23);

    const GleasonBasis I = gleason_basis("I"), II = gleason_basis("II");
    for (const auto& [name, code] : {std::pair{"i2", i2}, std::pair{"h8", h8}, std::pair{"g24", g24}}) {
        const WeightPolynomial w = hwe(code);
        std::cout << name << ": " << w << "\n";
        std::cout << "  Type I form:  " << gleason_decompose(w, I).to_string() << "\n";
        if (w.degree() % 8 == 0) std::cout << "  Type II form: " << gleason_decompose(w, II).to_string() << "\n";
    }

    // the dual of the repetition code of length 3
    const Code rep3 = make_code(type1, 3, {{1, 1, 1}});
    std::cout << "dual of " << hwe(rep3) << " is " << macwilliams_dual(hwe(rep3), 2, 2) << "\n";
}
