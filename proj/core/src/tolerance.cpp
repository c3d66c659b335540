#include "qsg/tolerance.hpp"

#include "qsg/errors.hpp"

namespace qsg {

void ToleranceContext::validate() const {
    if (!(rank_tol > 0.0)) throw DomainError("ToleranceContext: rank_tol must be > 0");
    if (!(quad_tol > 0.0)) throw DomainError("ToleranceContext: quad_tol must be > 0");
    if (!(eig_tol > 0.0)) throw DomainError("ToleranceContext: eig_tol must be > 0");
    if (!(ode_tol > 0.0)) throw DomainError("ToleranceContext: ode_tol must be > 0");
}

}  // namespace qsg
