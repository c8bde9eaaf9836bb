#include "vomech/lyapunov.hpp"

#include <cmath>
#include <iomanip>
#include <limits>
#include <numeric>
#include <ostream>
#include <vector>

#include <Eigen/Eigenvalues>

#include "vomech/dynamics.hpp"
#include "vomech/errors.hpp"

namespace vomech {

namespace {

using Eigen::Index;
using Eigen::MatrixXd;

// Connected components of the coupling graph of (A, D); indices in each
// component are ascending.
std::vector<std::vector<Index>> components(const MatrixXd& a, const MatrixXd& d) {
    const Index n = a.rows();
    std::vector<Index> parent(static_cast<std::size_t>(n));
    std::iota(parent.begin(), parent.end(), Index{0});
    auto find = [&](Index i) {
        while (parent[i] != i) i = parent[i] = parent[parent[i]];
        return i;
    };
    for (Index i = 0; i < n; ++i)
        for (Index j = 0; j < n; ++j)
            if (i != j && (a(i, j) != 0.0 || d(i, j) != 0.0)) parent[find(i)] = find(j);

    std::vector<std::vector<Index>> out;
    std::vector<Index> slot(static_cast<std::size_t>(n), -1);
    for (Index i = 0; i < n; ++i) {
        const Index r = find(i);
        if (slot[r] < 0) {
            slot[r] = static_cast<Index>(out.size());
            out.emplace_back();
        }
        out[slot[r]].push_back(i);
    }
    return out;
}

// T Y + Y T^T = C for quasi-upper-triangular T and symmetric C, solved
// column block by column block from the right. Only rows 0..j of column j
// are unknown; the rows below come from columns already solved, so Y is
// symmetric by construction rather than up to rounding.
MatrixXd quasi_triangular_solve(const MatrixXd& t, const MatrixXd& c) {
    const Index n = t.rows();
    MatrixXd y = MatrixXd::Zero(n, n);

    Index j = n - 1;
    while (j >= 0) {
        const bool pair = j > 0 && t(j, j - 1) != 0.0;
        const Index lo = pair ? j - 1 : j;
        const Index hi = j;
        const Index m = hi + 1;
        for (Index col = lo; col <= hi; ++col)
            for (Index i = hi + 1; i < n; ++i) y(i, col) = y(col, i);

        auto rhs_col = [&](Index col) {
            Eigen::VectorXd r = c.col(col);
            for (Index k = hi + 1; k < n; ++k) r -= t(col, k) * y.col(k);
            r -= t.rightCols(n - m) * y.col(col).tail(n - m);
            return Eigen::VectorXd(r.head(m));
        };
        const MatrixXd top = t.topLeftCorner(m, m);
        const MatrixXd id = MatrixXd::Identity(m, m);
        if (!pair) {
            y.col(j).head(m) = (top + t(j, j) * id).partialPivLu().solve(rhs_col(j));
        } else {
            MatrixXd big(2 * m, 2 * m);
            big << top + t(lo, lo) * id, t(lo, hi) * id, t(hi, lo) * id, top + t(hi, hi) * id;
            Eigen::VectorXd rhs(2 * m);
            rhs << rhs_col(lo), rhs_col(hi);
            const Eigen::VectorXd sol = big.fullPivLu().solve(rhs);
            y.col(lo).head(m) = sol.head(m);
            y.col(hi).head(m) = sol.tail(m);
            const double off = 0.5 * (y(hi, lo) + y(lo, hi));
            y(hi, lo) = y(lo, hi) = off;
        }
        j = lo - 1;
    }
    for (Index col = 0; col < n; ++col)
        for (Index i = col + 1; i < n; ++i) y(col, i) = y(i, col);
    return y;
}

// Bartels-Stewart on one irreducible block. A nearly undamped mode makes
// the triangular solves lose digits in proportion to 1/|Re lambda|, so
// the solution is refined against the true residual with the same Schur
// factors until the correction stops shrinking.
MatrixXd bartels_stewart(const MatrixXd& a, const MatrixXd& d) {
    Eigen::RealSchur<MatrixXd> schur(a);
    if (schur.info() != Eigen::Success) throw NumericError("real Schur decomposition did not converge");
    const MatrixXd& t = schur.matrixT();
    const MatrixXd& u = schur.matrixU();
    auto solve = [&](const MatrixXd& rhs) {
        return MatrixXd(u * quasi_triangular_solve(t, -u.transpose() * rhs * u) * u.transpose());
    };

    MatrixXd v = solve(d);
    double last = std::numeric_limits<double>::infinity();
    for (int it = 0; it < 4; ++it) {
        MatrixXd r = a * v + v * a.transpose() + d;
        r = 0.5 * (r + r.transpose());
        const MatrixXd dv = solve(r);
        const double size = dv.cwiseAbs().maxCoeff();
        if (!(size < last)) break;
        v += dv;
        last = size;
        if (size <= 1e-16 * v.cwiseAbs().maxCoeff()) break;
    }
    return v;
}

} // namespace

double lyapunov_residual(const MatrixXd& a, const MatrixXd& d, const MatrixXd& v) {
    const double r = (a * v + v * a.transpose() + d).cwiseAbs().maxCoeff();
    const double scale = d.cwiseAbs().maxCoeff();
    return scale > 0.0 ? r / scale : r;
}

LyapunovSolution solve_lyapunov(const MatrixXd& a, const MatrixXd& d) {
    if (a.rows() != a.cols() || d.rows() != a.rows() || d.cols() != a.cols())
        throw ArgumentError("solve_lyapunov: dimension mismatch");
    const StabilityReport rep = is_stable_eigen(a);
    if (!rep.stable)
        throw UnstableError("solve_lyapunov requires a stable drift matrix (max Re = " +
                            std::to_string(rep.max_real_part) + ")");

    const Index n = a.rows();
    MatrixXd v = MatrixXd::Zero(n, n);
    for (const auto& comp : components(a, d)) {
        const Index m = static_cast<Index>(comp.size());
        MatrixXd sa(m, m), sd(m, m);
        for (Index i = 0; i < m; ++i)
            for (Index k = 0; k < m; ++k) {
                sa(i, k) = a(comp[i], comp[k]);
                sd(i, k) = d(comp[i], comp[k]);
            }
        const MatrixXd sv = bartels_stewart(sa, sd);
        for (Index i = 0; i < m; ++i)
            for (Index k = 0; k < m; ++k) v(comp[i], comp[k]) = sv(i, k);
    }

    const double vmax = v.cwiseAbs().maxCoeff();
    const double asym = (v - v.transpose()).cwiseAbs().maxCoeff();
    if (asym > 1e-12 * std::max(1.0, vmax))
        throw NumericError("Lyapunov solution is not symmetric (log10 relative asymmetry " + std::to_string(std::log10(asym / std::max(1.0, vmax))) + ")", asym);
    v = 0.5 * (v + v.transpose()).eval();

    LyapunovSolution sol{v, lyapunov_residual(a, d, v)};
    if (!(sol.residual < kLyapunovResidualTol))
        throw NumericError("Lyapunov residual above tolerance", sol.residual);
    return sol;
}

MatrixXd solve_lyapunov_kronecker(const MatrixXd& a, const MatrixXd& d) {
    const Index n = a.rows();
    const MatrixXd id = MatrixXd::Identity(n, n);
    MatrixXd k = MatrixXd::Zero(n * n, n * n);
    // Column-major vec: vec(A V) = (I kron A) vec V, vec(V A^T) = (A kron I) vec V.
    for (Index i = 0; i < n; ++i)
        for (Index j = 0; j < n; ++j) {
            k.block(i * n, j * n, n, n) += id(i, j) * a;
            k.block(i * n, j * n, n, n) += a(i, j) * id;
        }
    const Eigen::VectorXd rhs = -Eigen::Map<const Eigen::VectorXd>(MatrixXd(d).data(), n * n);
    const Eigen::VectorXd sol = k.fullPivLu().solve(rhs);
    MatrixXd v = Eigen::Map<const MatrixXd>(sol.data(), n, n);
    return 0.5 * (v + v.transpose());
}

void write_lyapunov_dump(std::ostream& os, const MatrixXd& a, const MatrixXd& d,
                         const LyapunovSolution& sol) {
    const auto flags = os.flags();
    const auto prec = os.precision();
    os << std::setprecision(17);
    auto dump = [&](const char* label, const MatrixXd& m) {
        os << "# " << label << " " << m.rows() << " " << m.cols() << "\n";
        for (Index i = 0; i < m.rows(); ++i) {
            for (Index j = 0; j < m.cols(); ++j) os << (j ? " " : "") << m(i, j);
            os << "\n";
        }
    };
    dump("A", a);
    dump("D", d);
    dump("V", sol.v);
    os << "# residual\n" << sol.residual << "\n";
    os.flags(flags);
    os.precision(prec);
}

} // namespace vomech
