// Enumerate binary self-dual codes, classify them, and compare the span of
// their genus-m enumerators with the Molien dimension.

#include <cstdlib>
#include <iostream>

#include "sdc/sdc.hpp"

int main(int argc, char** argv) {
    using namespace sdc;
    const int N = argc > 1 ? std::atoi(argv[1]) : 8;
    const int m = argc > 2 ? std::atoi(argv[2]) : 1;
    const FormRing rho = preset("2_I");

    const auto codes = enumerate_type(rho, N);
    const auto reps = classify_permutation(codes);
    std::cout << codes.size() << " codes of length " << N << " in " << reps.size() << " classes\n";
    for (const auto& c : reps) std::cout << "  " << decomposition_name(c) << ": " << hwe(c) << "\n";

    const SpanReport r = verify_span(rho, N, m);
    std::cout << "genus " << m << ": rank " << r.rank << ", Molien coefficient " << r.molien << ", "
              << (r.pass() ? "equal" : "different") << "\n";
    return r.pass() ? 0 : 1;
}
