#include "presliding/oracle_reference.hpp"

#include "presliding/errors.hpp"

namespace presliding::oracle {

Trajectory reference_integrate(const SimConfig& cfg, double refinement) {
    if (!(refinement >= 2.0)) {
        throw PreconditionError("reference_integrate: refinement must be >= 2");
    }
    cfg.validate();
    SimConfig fine = cfg;
    fine.dt = cfg.effective_dt() / refinement;
    return simulate(fine);
}

OscState integrate_arc(const OscState& s, double span, int n_steps, const FrictionParams& p) {
    if (n_steps < 1) {
        throw PreconditionError("integrate_arc: n_steps must be >= 1");
    }
    const double h = span / n_steps;
    OscState cur = s;
    for (int i = 0; i < n_steps; ++i) {
        cur = step(cur, h, p);
    }
    return cur;
}

}  // namespace presliding::oracle
