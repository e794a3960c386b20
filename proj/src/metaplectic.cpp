#include "symtomo/metaplectic.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <sstream>

#include "symtomo/error.hpp"

namespace symtomo {

Matrix standard_symplectic(std::size_t n)
{
    const auto m = static_cast<Eigen::Index>(n);
    Matrix j = Matrix::Zero(2 * m, 2 * m);
    j.topRightCorner(m, m) = Matrix::Identity(m, m);
    j.bottomLeftCorner(m, m) = -Matrix::Identity(m, m);
    return j;
}

namespace {

void require_even_square(const Matrix& s)
{
    if (s.rows() != s.cols()) throw DomainError("symplectic check: matrix is not square");
    if (s.rows() == 0 || s.rows() % 2 != 0)
        throw DomainError("symplectic check: dimension must be even and positive");
}

struct Condition {
    const char* name;
    Matrix residual;
};

}  // namespace

SymplecticCheck check_block_conditions(const Matrix& s, double tol, BlockConditions form)
{
    require_even_square(s);
    const Eigen::Index n = s.rows() / 2;
    const Matrix a = s.topLeftCorner(n, n);
    const Matrix b = s.topRightCorner(n, n);
    const Matrix c = s.bottomLeftCorner(n, n);
    const Matrix d = s.bottomRightCorner(n, n);
    const Matrix id = Matrix::Identity(n, n);

    std::vector<Condition> conditions;
    if (form == BlockConditions::column_form) {
        const Matrix atc = a.transpose() * c;
        const Matrix btd = b.transpose() * d;
        conditions.push_back({"A^T C symmetric", atc - atc.transpose()});
        conditions.push_back({"B^T D symmetric", btd - btd.transpose()});
        conditions.push_back({"A^T D - C^T B = I", a.transpose() * d - c.transpose() * b - id});
    } else {
        const Matrix abt = a * b.transpose();
        const Matrix cdt = c * d.transpose();
        conditions.push_back({"A B^T symmetric", abt - abt.transpose()});
        conditions.push_back({"C D^T symmetric", cdt - cdt.transpose()});
        conditions.push_back({"A D^T - B C^T = I", a * d.transpose() - b * c.transpose() - id});
    }

    const double magnitude = std::max(1.0, s.cwiseAbs().maxCoeff());
    const double bound = tol * magnitude * magnitude;

    SymplecticCheck out;
    double worst_all = 0.0;
    double worst_failed = 0.0;
    for (const auto& cond : conditions) {
        const double r = cond.residual.cwiseAbs().maxCoeff();
        worst_all = std::max(worst_all, r);
        if (!(r <= bound)) {
            std::ostringstream msg;
            msg << cond.name << " violated (residual " << r << ")";
            out.violations.push_back(msg.str());
            worst_failed = std::max(worst_failed, r);
        }
    }
    out.symplectic = out.violations.empty();
    out.residual = out.symplectic ? worst_all : worst_failed;
    return out;
}

SymplecticCheck is_symplectic(const Matrix& s, double tol)
{
    SymplecticCheck out = check_block_conditions(s, tol, BlockConditions::column_form);
    const SymplecticCheck rows = check_block_conditions(s, tol, BlockConditions::row_form);
    if (out.symplectic && rows.symplectic) {
        out.residual = std::max(out.residual, rows.residual);
        return out;
    }
    if (out.symplectic) out.residual = 0.0;
    out.symplectic = false;
    if (!rows.symplectic) out.residual = std::max(out.residual, rows.residual);
    out.violations.insert(out.violations.end(), rows.violations.begin(), rows.violations.end());
    return out;
}

SymplecticMatrix::SymplecticMatrix(Matrix s, double tol) : s_(std::move(s))
{
    const auto check = is_symplectic(s_, tol);
    if (!check) throw DomainError("not symplectic: " + check.violations.front());
}

SymplecticMatrix SymplecticMatrix::inverse() const
{
    const Matrix j = standard_symplectic(n());
    return SymplecticMatrix(-j * s_.transpose() * j);
}

SymplecticMatrix SymplecticMatrix::operator*(const SymplecticMatrix& other) const
{
    if (other.n() != n()) throw DomainError("symplectic product: dimension mismatch");
    return SymplecticMatrix(s_ * other.s_, 1e-10);
}

RotationParams RotationParams::make(double mu, double nu)
{
    if (!std::isfinite(mu) || !std::isfinite(nu)) throw DomainError("rotation: non-finite (mu, nu)");
    if (mu == 0.0 && nu == 0.0) throw DomainError("rotation: (mu, nu) = (0, 0)");
    return {mu, nu, std::hypot(mu, nu)};
}

double RotationParams::angle() const { return std::atan2(nu, mu); }

SymplecticMatrix rotation_from_mu_nu(double mu, double nu)
{
    const auto r = RotationParams::make(mu, nu);
    const double c = mu / r.lambda;
    const double s = nu / r.lambda;
    Matrix u(2, 2);
    u << c, s, -s, c;
    return SymplecticMatrix(std::move(u));
}

double GeneratingForm::value(const Eigen::VectorXd& x, const Eigen::VectorXd& xp) const
{
    return 0.5 * x.dot(P * x) - x.dot(L.transpose() * xp) + 0.5 * xp.dot(Q * xp);
}

Eigen::VectorXd GeneratingForm::p(const Eigen::VectorXd& x, const Eigen::VectorXd& xp) const
{
    return P * x - L.transpose() * xp;
}

Eigen::VectorXd GeneratingForm::p_prime(const Eigen::VectorXd& x, const Eigen::VectorXd& xp) const
{
    return L * x - Q * xp;
}

FreeSymplectic::FreeSymplectic(SymplecticMatrix s, std::optional<int> maslov)
    : base_(std::move(s)), maslov_(0)
{
    const Matrix b = base_.B();
    const double scale = std::max(1.0, b.cwiseAbs().maxCoeff());
    const double det_b = b.determinant();
    if (!(std::abs(det_b) > 1e-12 * std::pow(scale, static_cast<double>(b.rows()))))
        throw NotFreeError("symplectic matrix is not free (det B = 0)");

    const Matrix b_inv = b.inverse();
    form_.L = b_inv;
    form_.P = base_.D() * b_inv;
    form_.Q = b_inv * base_.A();

    const int parity = det_b > 0.0 ? 0 : 1;
    if (maslov) {
        const int m = ((*maslov % 4) + 4) % 4;
        if (m % 2 != parity) throw DomainError("Maslov index parity does not match sign of det B^{-1}");
        maslov_ = m;
    } else {
        maslov_ = parity;
    }
}

GeneratingForm generating_form(const FreeSymplectic& s) { return s.form(); }

Matrix matrix_from_generating_form(const GeneratingForm& form)
{
    const Eigen::Index n = form.L.rows();
    const Matrix b = form.L.inverse();
    Matrix s(2 * n, 2 * n);
    s.topLeftCorner(n, n) = b * form.Q;
    s.topRightCorner(n, n) = b;
    s.bottomLeftCorner(n, n) = form.P * b * form.Q - form.L.transpose();
    s.bottomRightCorner(n, n) = form.P * b;
    return s;
}

SampledWavefunction quadratic_fourier(const SampledWavefunction& psi, const FreeSymplectic& s)
{
    if (s.base().n() != 1) throw UnsupportedError("quadratic_fourier: only n = 1 is implemented");
    const double p = s.form().P(0, 0);
    const double l = s.form().L(0, 0);
    const double q = s.form().Q(0, 0);
    const Grid1D& g = psi.grid();

    const auto chirped = chirp_multiply(psi, q);
    auto v = fourier_on_lattice(chirped, {l * g.x_min(), l * g.dx(), g.size()},
                                FourierDirection::forward);
    // i^{m - 1/2}
    const cplx phase = std::polar(1.0, 0.5 * std::numbers::pi * (s.maslov_index() - 0.5));
    const cplx amp = phase * std::sqrt(std::abs(l));
    for (auto& x : v) x *= amp;
    return chirp_multiply(SampledWavefunction(g, std::move(v)), p);
}

SampledWavefunction metaplectic_rotation(const SampledWavefunction& psi, const RotationParams& params)
{
    const auto r = RotationParams::make(params.mu, params.nu);
    const double c = r.mu / r.lambda;
    const double s = r.nu / r.lambda;
    if (r.nu == 0.0) return r.mu > 0.0 ? psi : scale(psi, -1.0);
    if (std::abs(c) <= std::abs(s)) return quadratic_fourier(psi, FreeSymplectic(rotation_from_mu_nu(c, s)));
    const auto inverse_ft = quadratic_fourier(psi, FreeSymplectic(rotation_from_mu_nu(0.0, -1.0)));
    return quadratic_fourier(inverse_ft, FreeSymplectic(rotation_from_mu_nu(-s, c)));
}

}  // namespace symtomo
