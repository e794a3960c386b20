#include "symtomo/lagrangian.hpp"

#include <Eigen/SVD>

#include <sstream>

#include "symtomo/error.hpp"

namespace symtomo {

FrameCheck is_lagrangian_frame(const FramePair& frame, double tol)
{
    const auto n = frame.A.rows();
    if (n == 0 || frame.A.cols() != n || frame.B.rows() != n || frame.B.cols() != n)
        throw DomainError("lagrangian frame: A and B must be square of equal size");

    FrameCheck out;
    const Matrix abt = frame.A * frame.B.transpose();
    const Matrix atb = frame.A.transpose() * frame.B;
    out.symmetry_residual = (abt - abt.transpose()).cwiseAbs().maxCoeff();
    out.alternate_symmetry_residual = (atb - frame.B * frame.A.transpose()).cwiseAbs().maxCoeff();

    Matrix ab(n, 2 * n);
    ab << frame.A, frame.B;
    const double magnitude = std::max(1.0, ab.cwiseAbs().maxCoeff());
    const Eigen::JacobiSVD<Matrix> svd(ab);
    const auto& sv = svd.singularValues();
    out.singular_value_ratio = sv(0) > 0.0 ? sv(n - 1) / sv(0) : 0.0;

    const bool symmetric = out.symmetry_residual <= tol * magnitude * magnitude;
    const bool full_rank = out.singular_value_ratio > tol;
    if (!symmetric) {
        std::ostringstream msg;
        msg << "A B^T not symmetric (residual " << out.symmetry_residual << ")";
        out.diagnostics.push_back(msg.str());
    }
    if (!full_rank) {
        std::ostringstream msg;
        msg << "rank [A B] < n (singular value ratio " << out.singular_value_ratio << ")";
        out.diagnostics.push_back(msg.str());
    }
    if (symmetric != (out.alternate_symmetry_residual <= tol * magnitude * magnitude))
        out.diagnostics.push_back("note: the transposed reading A^T B = B A^T gives the opposite verdict");
    out.lagrangian = symmetric && full_rank;
    return out;
}

SymplecticNdCheck is_symplectic_nd(const Matrix& s, double tol)
{
    SymplecticNdCheck out;
    out.column_form = check_block_conditions(s, tol, BlockConditions::column_form);
    out.row_form = check_block_conditions(s, tol, BlockConditions::row_form);
    for (const auto& v : out.column_form.violations) out.diagnostics.push_back(v);
    for (const auto& v : out.row_form.violations) out.diagnostics.push_back(v);
    if (out.column_form.symplectic != out.row_form.symplectic)
        out.diagnostics.push_back("column-form and row-form conditions disagree");
    out.symplectic = out.column_form.symplectic && out.row_form.symplectic;
    return out;
}

FramePair top_frame(const Matrix& s)
{
    if (s.rows() != s.cols() || s.rows() % 2 != 0) throw DomainError("top_frame: need a 2n x 2n matrix");
    const auto n = s.rows() / 2;
    return {s.topLeftCorner(n, n), s.topRightCorner(n, n)};
}

}  // namespace symtomo
