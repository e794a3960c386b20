#pragma once

#include <string>
#include <vector>

#include "symtomo/metaplectic.hpp"

namespace symtomo {

/// A pair (A, B) of n x n matrices labelling the plane family A x + B p = X.
struct FramePair {
    Matrix A;
    Matrix B;
};

struct FrameCheck {
    bool lagrangian = false;
    double symmetry_residual = 0.0;   ///< max |A B^T - B A^T|
    double singular_value_ratio = 0.0;  ///< smallest / largest singular value of [A B]
    /// Residual of the transposed reading A^T B = B A^T; reported, never decisive.
    double alternate_symmetry_residual = 0.0;
    std::vector<std::string> diagnostics;

    explicit operator bool() const { return lagrangian; }
};

/**
 * True iff A B^T is symmetric within tol * max(1, max entry^2) and [A B] has
 * rank n (smallest singular value > tol * largest). Throws DomainError on
 * shape mismatch.
 */
FrameCheck is_lagrangian_frame(const FramePair& frame, double tol = 1e-10);

struct SymplecticNdCheck {
    bool symplectic = false;
    SymplecticCheck column_form;
    SymplecticCheck row_form;
    std::vector<std::string> diagnostics;

    explicit operator bool() const { return symplectic; }
};

/// Both block condition sets; true only when both hold. A disagreement between
/// the two sets is reported in diagnostics. Throws DomainError for odd dimension.
SymplecticNdCheck is_symplectic_nd(const Matrix& s, double tol = 1e-10);

/// (A, B) taken from the top block row of a 2n x 2n matrix.
FramePair top_frame(const Matrix& s);

}  // namespace symtomo
