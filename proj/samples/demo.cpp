// Builds the cubic fourfold lattices and prints a few invariants.
#include <iostream>

#include "fermat/cubic/cubic.hpp"

int main() {
    using namespace fermat;
    const auto c = build_cubic_lattices();
    const auto s = signature(c.lambda);
    std::cout << "Lambda: rank " << c.lambda.rank() << ", signature (" << s.positive << "," << s.negative
              << "), unimodular " << std::boolalpha << is_unimodular(c.lambda) << '\n';

    const auto specials = special_vectors(c, 2);
    std::cout << specials.hits.size() << " special vectors with |c_i| <= 2 in the " << specials.basis_label
              << " basis\n";
    for (const auto& v : specials.hits) {
        const IntVector e = special_section(c, v);
        std::cout << "  e.e = " << c.lambda.norm(e) << ", e.eta = " << c.lambda.pair(e, c.eta) << '\n';
    }

    for (int k = 1; k <= 3; ++k) {
        const auto v = eigenlattice(c, k);
        std::cout << "V_" << k << ": rank " << v.basis.size() << ", signature (" << v.signature.positive << ","
                  << v.signature.negative << ")\n";
    }
}
