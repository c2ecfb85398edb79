#include <cstdlib>
#include <iostream>
#include <string>

#include "friable/verify.hpp"

int main(int argc, char** argv) {
    auto tier = friable::Tier::Medium;
    if (argc > 1) {
        const std::string arg = argv[1];
        if (arg == "small") tier = friable::Tier::Small;
        else if (arg == "medium") tier = friable::Tier::Medium;
        else if (arg == "large") tier = friable::Tier::Large;
        else {
            std::cerr << "usage: acceptance [small|medium|large]\n";
            return 2;
        }
    }
    const auto results = friable::run_acceptance(tier, std::cout);
    return friable::all_hard_passed(results) ? EXIT_SUCCESS : EXIT_FAILURE;
}
