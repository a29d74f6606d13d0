#pragma once

#include "qring/types.hpp"

namespace qring {

/// Canonical Hermitian generator, index in {2, 3, 5}.
Matrix3c gell_mann(int index);

/// Closed-form exp(i * angle * lambda_index): diagonal phases for index 3,
/// a planar rotation in rows/cols (1,2) for index 2 and (1,3) for index 5.
Matrix3c exp_i_lambda(int index, double angle);

/// Six-factor mixing matrix
/// exp(i alpha l3) exp(i beta l2) exp(i gamma l3) exp(i delta l5) exp(i a l3) exp(i b l2).
Matrix3c mixing_matrix(const NodeParams& p);

/// diag(e^{i theta_1}, e^{i theta_2}, e^{i theta_3})
Matrix3c eigenphase_matrix(const NodeParams& p);

/// U = V D V^dagger; the unitary characterizing the junction condition.
Matrix3c junction_unitary(const NodeParams& p);

}  // namespace qring
