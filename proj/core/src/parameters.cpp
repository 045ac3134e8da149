#include "xcsniche/parameters.hpp"

#include <string>

#include "xcsniche/error.hpp"

namespace xcsniche {

namespace {

void require_rate(double v, const char* name) {
    if (!(v >= 0.0 && v <= 1.0)) {
        throw PreconditionError(std::string("parameter ") + name + " must lie in [0,1], got " +
                                std::to_string(v));
    }
}

}  // namespace

void Parameters::validate() const {
    require_rate(beta, "beta");
    require_rate(alpha, "alpha");
    require_rate(gamma, "gamma");
    require_rate(chi, "chi");
    require_rate(mu, "mu");
    require_rate(delta, "delta");
    require_rate(P_hash, "P_hash");
    require_rate(p_explore, "p_explore");
    if (N < 1) throw PreconditionError("parameter N must be at least 1");
    if (!(epsilon0 > 0.0)) throw PreconditionError("parameter epsilon0 must be positive");
    if (beta == 0.0) throw PreconditionError("parameter beta must be positive");
    if (!(F_I > 0.0)) throw PreconditionError("parameter F_I must be positive");
    if (epsilon_I < 0.0) throw PreconditionError("parameter epsilon_I must be non-negative");
    if (L_max() < 1) throw PreconditionError("parameter L_max must be at least 1");
    if (maxStepsPerEpisode < 1) throw PreconditionError("parameter maxStepsPerEpisode must be at least 1");
}

}  // namespace xcsniche
