// Quick manual check of Table-1 system sizes for the six benchmark models.
#include <cstdio>
#include <fstream>
#include <sstream>

#include "identforge/prolong.hpp"

using namespace identforge;

int main(int argc, char** argv) {
    const char* files[] = {"models/goodwin.ode",  "models/seir.ode",
                           "models/hiv.ode",      "models/qwwc.ode",
                           "models/covid_ssaair.ode",
                           "models/sir_covid_siraqj.ode"};
    std::string root = argc > 1 ? argv[1] : ".";
    for (const char* f : files) {
        std::ifstream in(root + "/" + f);
        std::stringstream ss;
        ss << in.rdbuf();
        try {
            OdeModel m = parse_model(ss.str());
            SpecializationConfig cfg;
            PolySystem sys = generate_Et(m, cfg);
            std::printf("%-30s polys=%zu vars=%zu table=%zu beta=[", f,
                        sys.num_polys(), sys.num_vars(), sys.ring->size());
            for (std::size_t j = 0; j < sys.beta.size(); ++j)
                std::printf("%s%d", j ? "," : "", sys.beta[j]);
            std::printf("]\n");
        } catch (const std::exception& e) {
            std::printf("%-30s ERROR: %s\n", f, e.what());
        }
    }
    return 0;
}
