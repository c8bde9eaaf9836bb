#pragma once

// Lane-generic body of the spectral integrand. V is a lane type with
// broadcast construction from double, + - * /, unary minus, and static
// load/store. Each lane carries one frequency.
//
// With a = -k + i w and B = [[a, D], [-D, a]] the optical blocks of
// (i w + A) invert in closed form; the mechanical Schur complement is
//   S = [[i w, 1], [-1 - sigma, i w - g]],  sigma = sum_j h_j B^-1 v_j,
// with v_j = (-Gy, Gx)^T feeding the q column and h_j = (Gx, Gy) the p row.

#include <cstddef>

#include "vomech/constants.hpp"
#include "vomech/simd/spectral_kernel.hpp"

namespace vomech::simd::detail {

template <class V>
struct Cx {
    V re;
    V im;
};

template <class V> inline Cx<V> operator+(const Cx<V>& a, const Cx<V>& b) { return {a.re + b.re, a.im + b.im}; }
template <class V> inline Cx<V> operator-(const Cx<V>& a, const Cx<V>& b) { return {a.re - b.re, a.im - b.im}; }
template <class V> inline Cx<V> operator-(const Cx<V>& a) { return {-a.re, -a.im}; }
template <class V> inline Cx<V> operator*(const Cx<V>& a, const Cx<V>& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}
template <class V> inline Cx<V> operator*(const V& s, const Cx<V>& a) { return {s * a.re, s * a.im}; }
template <class V> inline Cx<V> inverse(const Cx<V>& a) {
    const V n = a.re * a.re + a.im * a.im;
    return {a.re / n, -a.im / n};
}
// a * conj(b)
template <class V> inline Cx<V> mul_conj(const Cx<V>& a, const Cx<V>& b) {
    return {a.re * b.re + a.im * b.im, a.im * b.re - a.re * b.im};
}

template <class V>
inline void spectral_integrand_lanes(const KernelModel& m, const NodeBatch& b, std::size_t i0, double* out) {
    using C = Cx<V>;
    const V zero(0.0);
    const V k(m.kappa);
    const V g(m.gamma_m);
    const V dlt(m.delta);
    const V gx[2] = {V(m.gx[0]), V(m.gx[1])};
    const V gy[2] = {V(m.gy[0]), V(m.gy[1])};

    const V w = V::load(&b.omega[i0]);
    const V noise = V::load(&b.noise[i0]);

    const C a{-k, w};
    const C det = a * a + C{dlt * dlt, zero};
    const C idet = inverse(det);
    C binv[2][2];
    binv[0][0] = idet * a;
    binv[0][1] = (-dlt) * idet;
    binv[1][0] = dlt * idet;
    binv[1][1] = binv[0][0];

    C bv[2][2];  // B^-1 v_j
    C hb[2][2];  // h_j B^-1
    C sigma{zero, zero};
    for (int j = 0; j < 2; ++j) {
        bv[j][0] = (-gy[j]) * binv[0][0] + gx[j] * binv[0][1];
        bv[j][1] = (-gy[j]) * binv[1][0] + gx[j] * binv[1][1];
        hb[j][0] = gx[j] * binv[0][0] + gy[j] * binv[1][0];
        hb[j][1] = gx[j] * binv[0][1] + gy[j] * binv[1][1];
        sigma = sigma + gx[j] * bv[j][0] + gy[j] * bv[j][1];
    }

    const V one(1.0);
    const C det_s{one - w * w + sigma.re, sigma.im - g * w};
    const C ids = inverse(det_s);
    C sinv[2][2];
    sinv[0][0] = ids * C{-g, w};
    sinv[0][1] = -ids;
    sinv[1][0] = ids * C{one + sigma.re, sigma.im};
    sinv[1][1] = ids * C{zero, w};

    // M = (i w + A)^-1; column 4 (q) is never needed downstream since the
    // diffusion matrix has no q entry.
    C mm[6][6];
    for (int r = 0; r < 2; ++r)
        for (int c = 0; c < 2; ++c) mm[4 + r][4 + c] = sinv[r][c];
    for (int j = 0; j < 2; ++j)
        for (int r = 0; r < 2; ++r)
            for (int c = 0; c < 2; ++c) {
                mm[4 + r][2 * j + c] = -(sinv[r][1] * hb[j][c]);
                mm[2 * j + r][4 + c] = -(bv[j][r] * sinv[0][c]);
            }
    for (int j = 0; j < 2; ++j)
        for (int l = 0; l < 2; ++l)
            for (int r = 0; r < 2; ++r)
                for (int c = 0; c < 2; ++c) {
                    C v = sinv[0][1] * bv[j][r] * hb[l][c];
                    if (j == l) v = v + binv[r][c];
                    mm[2 * j + r][2 * l + c] = v;
                }

    const V inv_sqrt_2pi(1.0 / std::sqrt(constants::two_pi));
    C lm[6][6];
    C tx[2], ty[2];
    if (m.kind == IntegrandKind::filtered_output) {
        const V half_over_k(0.5 / m.kappa);
        for (int i = 0; i < 4; ++i) mm[i][i].re = mm[i][i].re + half_over_k;
        for (int j = 0; j < 2; ++j) {
            tx[j] = C{V::load(&b.tx_re[j][i0]), V::load(&b.tx_im[j][i0])};
            ty[j] = C{V::load(&b.ty_re[j][i0]), V::load(&b.ty_im[j][i0])};
            for (int c = 0; c < 6; ++c) {
                lm[2 * j][c] = tx[j] * mm[2 * j][c] - ty[j] * mm[2 * j + 1][c];
                lm[2 * j + 1][c] = ty[j] * mm[2 * j][c] + tx[j] * mm[2 * j + 1][c];
            }
        }
        for (int r = 4; r < 6; ++r)
            for (int c = 0; c < 6; ++c) lm[r][c] = inv_sqrt_2pi * mm[r][c];
    } else {
        for (int r = 0; r < 6; ++r)
            for (int c = 0; c < 6; ++c) lm[r][c] = inv_sqrt_2pi * mm[r][c];
    }

    std::size_t idx = 0;
    for (int r = 0; r < 6; ++r)
        for (int c = r; c < 6; ++c, ++idx) {
            C acc = mul_conj(lm[r][0], lm[c][0]);
            for (int col = 1; col < 4; ++col) acc = acc + mul_conj(lm[r][col], lm[c][col]);
            acc = k * acc + noise * mul_conj(lm[r][5], lm[c][5]);
            if (m.kind == IntegrandKind::filtered_output && r < 4 && (r / 2) == (c / 2)) {
                // Large-|w| limit T (P/2k) D (P/2k) T^dag = T_j T_j^dag / 4k.
                const int j = r / 2;
                const V quarter_over_k(0.25 / m.kappa);
                C lim;
                if (r == c) {
                    lim = C{tx[j].re * tx[j].re + tx[j].im * tx[j].im + ty[j].re * ty[j].re + ty[j].im * ty[j].im, zero};
                } else {
                    lim = mul_conj(tx[j], ty[j]) - mul_conj(ty[j], tx[j]);
                }
                acc = acc - quarter_over_k * lim;
            }
            acc.re.store(&out[(2 * idx) * kBatch + i0]);
            acc.im.store(&out[(2 * idx + 1) * kBatch + i0]);
        }
}

} // namespace vomech::simd::detail
