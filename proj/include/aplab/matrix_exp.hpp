#pragma once

// Matrix exponential.  Hermitian inputs go through an eigendecomposition;
// everything else through Pade-13 scaling and squaring.

#include "aplab/graded_linalg.hpp"

namespace aplab {

/// e^x for a general square matrix.
Matrix expm(const Matrix& x);
GradedMatrix expm(const GradedMatrix& x);

/// e^h for Hermitian h, via U diag(e^lambda) U*.  Throws if h is not Hermitian.
Matrix expm_hermitian(const Matrix& h, double tol = kValidationTol);

/// ||e^x e^-x - I||, the accuracy self-test of the general path.
double expm_inverse_defect(const Matrix& x);

}  // namespace aplab
