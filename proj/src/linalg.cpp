#include "tensortail/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "tensortail/error.hpp"

namespace tensortail {
namespace linalg {

FlatMatrix matmul(const FlatMatrix& a, const FlatMatrix& b) {
    if (a.cols != b.rows) throw Error(ErrorKind::Dimension, "matmul: inner dimension mismatch");
    FlatMatrix out(a.rows, b.cols);
    for (std::int64_t i = 0; i < a.rows; ++i) {
        for (std::int64_t k = 0; k < a.cols; ++k) {
            const cplx aik = a.at(i, k);
            if (aik == cplx{}) continue;
            for (std::int64_t j = 0; j < b.cols; ++j) out.at(i, j) += aik * b.at(k, j);
        }
    }
    return out;
}

FlatMatrix adjoint(const FlatMatrix& a) {
    FlatMatrix out(a.cols, a.rows);
    for (std::int64_t r = 0; r < a.rows; ++r)
        for (std::int64_t c = 0; c < a.cols; ++c) out.at(c, r) = std::conj(a.at(r, c));
    return out;
}

double frobenius(const FlatMatrix& a) {
    double s = 0.0;
    for (const auto& e : a.entries) s += std::norm(e);
    return std::sqrt(s);
}

namespace {

double offdiag_norm(const FlatMatrix& a) {
    double s = 0.0;
    for (std::int64_t r = 0; r < a.rows; ++r)
        for (std::int64_t c = 0; c < a.cols; ++c)
            if (r != c) s += std::norm(a.at(r, c));
    return std::sqrt(s);
}

double norm1(const FlatMatrix& a) {
    double best = 0.0;
    for (std::int64_t c = 0; c < a.cols; ++c) {
        double s = 0.0;
        for (std::int64_t r = 0; r < a.rows; ++r) s += std::abs(a.at(r, c));
        best = std::max(best, s);
    }
    return best;
}

}  // namespace

HermitianEig hermitian_eig(const FlatMatrix& input) {
    if (input.rows != input.cols) throw Error(ErrorKind::Dimension, "hermitian_eig: not square");
    const std::int64_t n = input.rows;

    FlatMatrix a = input;
    FlatMatrix v(n, n);
    for (std::int64_t i = 0; i < n; ++i) v.at(i, i) = 1.0;

    const double total = frobenius(a);
    const double target = 1e-12 * std::max(total, 1e-300);

    for (int sweep = 0; sweep < 100 && offdiag_norm(a) > target; ++sweep) {
        for (std::int64_t p = 0; p < n - 1; ++p) {
            for (std::int64_t q = p + 1; q < n; ++q) {
                const cplx g = a.at(p, q);
                const double absg = std::abs(g);
                if (absg <= 1e-300) continue;

                const double alpha = a.at(p, p).real();
                const double beta = a.at(q, q).real();
                const cplx phase = g / absg;

                // Unitary plane rotation J with J_pp=c, J_pq=s*phase,
                // J_qp=-s*conj(phase), J_qq=c annihilating a_pq.
                const double theta = (beta - alpha) / (2.0 * absg);
                const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                                 (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;

                // A <- A J
                for (std::int64_t r = 0; r < n; ++r) {
                    const cplx arp = a.at(r, p), arq = a.at(r, q);
                    a.at(r, p) = c * arp - s * std::conj(phase) * arq;
                    a.at(r, q) = s * phase * arp + c * arq;
                }
                // A <- J^H A
                for (std::int64_t col = 0; col < n; ++col) {
                    const cplx apc = a.at(p, col), aqc = a.at(q, col);
                    a.at(p, col) = c * apc - s * phase * aqc;
                    a.at(q, col) = s * std::conj(phase) * apc + c * aqc;
                }
                // V <- V J
                for (std::int64_t r = 0; r < n; ++r) {
                    const cplx vrp = v.at(r, p), vrq = v.at(r, q);
                    v.at(r, p) = c * vrp - s * std::conj(phase) * vrq;
                    v.at(r, q) = s * phase * vrp + c * vrq;
                }
            }
        }
    }

    std::vector<std::int64_t> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::int64_t x, std::int64_t y) {
        return a.at(x, x).real() < a.at(y, y).real();
    });

    HermitianEig out;
    out.values.reserve(static_cast<std::size_t>(n));
    out.vectors = FlatMatrix(n, n);
    for (std::int64_t k = 0; k < n; ++k) {
        const auto src = order[static_cast<std::size_t>(k)];
        out.values.push_back(a.at(src, src).real());
        for (std::int64_t r = 0; r < n; ++r) out.vectors.at(r, k) = v.at(r, src);
    }
    return out;
}

double largest_singular_value(const FlatMatrix& a) {
    if (a.entries.empty()) return 0.0;
    const auto gram = matmul(adjoint(a), a);
    const auto eig = hermitian_eig(gram);
    const double top = eig.values.empty() ? 0.0 : eig.values.back();
    return std::sqrt(std::max(top, 0.0));
}

InverseResult lu_inverse(const FlatMatrix& input) {
    if (input.rows != input.cols) throw Error(ErrorKind::Dimension, "lu_inverse: not square");
    const std::int64_t n = input.rows;

    FlatMatrix lu = input;
    std::vector<std::int64_t> piv(static_cast<std::size_t>(n));
    std::iota(piv.begin(), piv.end(), 0);

    for (std::int64_t k = 0; k < n; ++k) {
        std::int64_t best = k;
        double bestmag = std::abs(lu.at(k, k));
        for (std::int64_t r = k + 1; r < n; ++r) {
            const double mag = std::abs(lu.at(r, k));
            if (mag > bestmag) { best = r; bestmag = mag; }
        }
        if (bestmag == 0.0) {
            throw Error(ErrorKind::Singular, "lu_inverse: exactly singular (rcond 0)");
        }
        if (best != k) {
            for (std::int64_t c = 0; c < n; ++c) std::swap(lu.at(k, c), lu.at(best, c));
            std::swap(piv[static_cast<std::size_t>(k)], piv[static_cast<std::size_t>(best)]);
        }
        for (std::int64_t r = k + 1; r < n; ++r) {
            const cplx m = lu.at(r, k) / lu.at(k, k);
            lu.at(r, k) = m;
            for (std::int64_t c = k + 1; c < n; ++c) lu.at(r, c) -= m * lu.at(k, c);
        }
    }

    FlatMatrix inv(n, n);
    std::vector<cplx> x(static_cast<std::size_t>(n));
    for (std::int64_t col = 0; col < n; ++col) {
        // forward/back substitution of the permuted unit vector
        for (std::int64_t r = 0; r < n; ++r)
            x[static_cast<std::size_t>(r)] = (piv[static_cast<std::size_t>(r)] == col) ? 1.0 : 0.0;
        for (std::int64_t r = 1; r < n; ++r)
            for (std::int64_t c = 0; c < r; ++c)
                x[static_cast<std::size_t>(r)] -= lu.at(r, c) * x[static_cast<std::size_t>(c)];
        for (std::int64_t r = n - 1; r >= 0; --r) {
            for (std::int64_t c = r + 1; c < n; ++c)
                x[static_cast<std::size_t>(r)] -= lu.at(r, c) * x[static_cast<std::size_t>(c)];
            x[static_cast<std::size_t>(r)] /= lu.at(r, r);
        }
        for (std::int64_t r = 0; r < n; ++r) inv.at(r, col) = x[static_cast<std::size_t>(r)];
    }

    const double denom = norm1(input) * norm1(inv);
    const double rcond = denom > 0.0 ? 1.0 / denom : 0.0;
    if (rcond < 1e-14) {
        throw Error(ErrorKind::Singular,
                    "lu_inverse: ill-conditioned, rcond estimate " + std::to_string(rcond));
    }
    return {std::move(inv), rcond};
}

}  // namespace linalg
}  // namespace tensortail
