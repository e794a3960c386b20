#pragma once

#include <Eigen/Dense>

#include <optional>
#include <string>
#include <vector>

#include "symtomo/grid.hpp"

namespace symtomo {

using Matrix = Eigen::MatrixXd;

/// J = [[0, I], [-I, 0]] of size 2n.
Matrix standard_symplectic(std::size_t n);

/// The two equivalent block characterizations of Sp(n).
enum class BlockConditions {
    column_form,  ///< A^T C, B^T D symmetric and A^T D - C^T B = I
    row_form,     ///< A B^T, C D^T symmetric and A D^T - B C^T = I
};

/// Outcome of a symplecticity test; `violations` names each failed condition.
struct SymplecticCheck {
    bool symplectic = false;
    double residual = 0.0;  ///< largest entry of the failed (or, if none, all) residual matrices
    std::vector<std::string> violations;

    explicit operator bool() const { return symplectic; }
};

/// Checks one block condition set with tolerance tol * max(1, max|S_ij|^2).
/// Throws DomainError for non-square or odd-dimensional input.
SymplecticCheck check_block_conditions(const Matrix& s, double tol, BlockConditions form);

/// Both block condition sets; violations of either are listed.
SymplecticCheck is_symplectic(const Matrix& s, double tol = 1e-12);

/// A validated element of Sp(n), stored as its 2n x 2n matrix.
class SymplecticMatrix {
public:
    /// Throws DomainError if `s` fails is_symplectic(s, tol).
    explicit SymplecticMatrix(Matrix s, double tol = 1e-12);

    std::size_t n() const { return static_cast<std::size_t>(s_.rows() / 2); }
    const Matrix& matrix() const { return s_; }
    Matrix A() const { return s_.topLeftCorner(n(), n()); }
    Matrix B() const { return s_.topRightCorner(n(), n()); }
    Matrix C() const { return s_.bottomLeftCorner(n(), n()); }
    Matrix D() const { return s_.bottomRightCorner(n(), n()); }

    /// S^{-1} = -J S^T J
    SymplecticMatrix inverse() const;
    SymplecticMatrix operator*(const SymplecticMatrix& other) const;

private:
    Matrix s_;
};

/// (mu, nu) != (0, 0) with lambda = sqrt(mu^2 + nu^2).
struct RotationParams {
    double mu;
    double nu;
    double lambda;

    /// Throws DomainError for (0, 0) or non-finite input.
    static RotationParams make(double mu, double nu);
    /// theta with (mu, nu) = lambda (cos theta, sin theta)
    double angle() const;
};

/// U = [[mu, nu], [-nu, mu]] / lambda.
SymplecticMatrix rotation_from_mu_nu(double mu, double nu);

/// Coefficients of A(x, x') = 1/2 P x.x - L x.x' + 1/2 Q x'.x'.
struct GeneratingForm {
    Matrix P;  ///< D B^{-1}
    Matrix L;  ///< B^{-1}
    Matrix Q;  ///< B^{-1} A

    /// Evaluates A(x, x').
    double value(const Eigen::VectorXd& x, const Eigen::VectorXd& xp) const;
    /// p = grad_x A = P x - L^T x'
    Eigen::VectorXd p(const Eigen::VectorXd& x, const Eigen::VectorXd& xp) const;
    /// p' = -grad_x' A = L x - Q x'
    Eigen::VectorXd p_prime(const Eigen::VectorXd& x, const Eigen::VectorXd& xp) const;
};

/// Symplectic matrix with invertible B, its generating form and a Maslov index mod 4.
class FreeSymplectic {
public:
    /// Throws NotFreeError if det B vanishes. Without an explicit index the
    /// smallest m with the right parity (0 if det B^{-1} > 0, else 1) is used;
    /// an explicit index of the wrong parity throws DomainError.
    explicit FreeSymplectic(SymplecticMatrix s, std::optional<int> maslov = std::nullopt);

    const SymplecticMatrix& base() const { return base_; }
    const GeneratingForm& form() const { return form_; }
    int maslov_index() const { return maslov_; }
    double det_b_inverse() const { return form_.L.determinant(); }

private:
    SymplecticMatrix base_;
    GeneratingForm form_;
    int maslov_;
};

GeneratingForm generating_form(const FreeSymplectic& s);

/// Rebuilds the free symplectic matrix generated by (P, L, Q): B = L^{-1},
/// A = L^{-1} Q, D = P L^{-1}, C = P L^{-1} Q - L^T.
Matrix matrix_from_generating_form(const GeneratingForm& form);

/**
 * Quadratic Fourier transform of a one-degree-of-freedom state:
 *
 *   i^{m - 1/2} sqrt|L| (2 pi hbar)^{-1/2} int exp(i A(x, x') / hbar) psi(x') dx'
 *
 * realized as chirp(Q), hbar-Fourier evaluated at L x (the scale step is
 * fused into the Fourier sum), then chirp(P). Throws UnsupportedError for n > 1.
 */
SampledWavefunction quadratic_fourier(const SampledWavefunction& psi, const FreeSymplectic& s);

/**
 * A metaplectic operator covering U_{mu,nu}, correct up to a constant
 * unimodular factor. nu = 0 gives the identity (mu > 0) or parity (mu < 0);
 * |mu| <= |nu| is a single quadratic Fourier transform of U; otherwise the
 * rotation is split as U(theta + pi/2) U(-pi/2) so neither factor carries a
 * chirp steeper than 1.
 */
SampledWavefunction metaplectic_rotation(const SampledWavefunction& psi, const RotationParams& params);

}  // namespace symtomo
