// One line per acceptance criterion; nonzero exit if any fails.
#include <cstdio>

#include "fermat/verify/suites.hpp"

using namespace fermat;

int main() {
    const long bound = 2;
    std::vector<verify::Section> sections{verify::rank_law(),      verify::parity_law(), verify::cubic_surface(),
                                          verify::resolution(),    verify::hermitian_ranks(), verify::hodge(),
                                          verify::git_stability()};
    const auto c = build_cubic_lattices();
    sections.push_back(verify::cubic_lattice(c, bound));
    sections.push_back(verify::evidence(c, bound));

    int failed = 0;
    long total_ms = 0;
    for (const auto& s : sections) {
        bool evidence = false;
        for (const auto& ch : s.checks) evidence = evidence || ch.status == verify::Status::evidence;
        std::printf("criterion %d: %s  %s%s  [%ld ms]\n", s.criterion, s.ok() ? "PASS" : "FAIL", s.title.c_str(),
                    evidence ? " (bounded evidence, B=2)" : "", s.elapsed_ms);
        for (const auto& ch : s.checks)
            if (ch.status == verify::Status::fail)
                std::printf("    failed: %s: %s\n", ch.name.c_str(), ch.detail.c_str());
        failed += !s.ok();
        total_ms += s.elapsed_ms;
    }
    std::printf("%zu/%zu criteria pass, %ld ms\n", sections.size() - failed, sections.size(), total_ms);
    return failed ? 1 : 0;
}
