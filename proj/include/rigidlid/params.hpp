#pragma once

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace rigidlid {

/// Density contrast parameter: rho = sqrt((1-gamma)/(gamma+delta)).
/// This is the singular-perturbation parameter; rho -> 0 as the two
/// layer densities coalesce (gamma -> 1).
inline double derive_rho(double gamma, double delta) {
    if (!(gamma > 0.0 && gamma < 1.0))
        throw std::domain_error("derive_rho: gamma must lie in (0,1)");
    if (!(delta > 0.0))
        throw std::domain_error("derive_rho: delta must be positive");
    return std::sqrt((1.0 - gamma) / (gamma + delta));
}

/// Dimensionless parameter set of the two-layer shallow-water systems.
///   gamma   density ratio (upper/lower), 0 < gamma < 1
///   delta   depth ratio (upper/lower), > 0
///   epsilon interface-amplitude parameter, 0 < epsilon <= 1
///   alpha   surface/interface amplitude ratio, 0 <= alpha <= 1
/// rho and the fast characteristic speed c are derived on read so they can
/// never go stale.
struct Params {
    double gamma = 0.9;
    double delta = 0.5;
    double epsilon = 1.0;
    double alpha = 0.0;

    double rho() const { return derive_rho(gamma, delta); }
    double c_fast() const { return std::sqrt(1.0 + 1.0 / delta); }

    /// Params in the normalized frame (epsilon=1, alpha=rho) used by the
    /// momentum/shear form of the free-surface system.
    Params normalized() const { return Params{gamma, delta, 1.0, rho()}; }
};

/// Admissibility verdict for the parameter set; lists each violated
/// constraint so config errors are actionable.
struct ParamVerdict {
    bool ok = true;
    std::vector<std::string> violations;
};

inline ParamVerdict validate(const Params& p, double delta_min = 0.1,
                             double delta_max = 10.0, double gamma_min = 0.0) {
    ParamVerdict v;
    auto fail = [&](std::string msg) {
        v.ok = false;
        v.violations.push_back(std::move(msg));
    };
    if (!(p.gamma > 0.0)) fail("gamma <= 0");
    if (!(p.gamma < 1.0)) fail("gamma >= 1");
    if (!(p.gamma >= gamma_min)) fail("gamma < gamma_min");
    if (!(p.delta >= delta_min)) fail("delta < delta_min");
    if (!(p.delta <= delta_max)) fail("delta > delta_max");
    if (!(p.epsilon > 0.0)) fail("epsilon <= 0");
    if (!(p.epsilon <= 1.0)) fail("epsilon > 1");
    if (!(p.alpha >= 0.0)) fail("alpha < 0");
    if (!(p.alpha <= 1.0)) fail("alpha > 1");
    return v;
}

}  // namespace rigidlid
