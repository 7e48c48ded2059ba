#pragma once

// Exact dense linear algebra: fraction-free Bareiss elimination, Berkowitz
// characteristic polynomials, signatures by Descartes counting.

#include <vector>

#include "rational.hpp"
#include "unipoly.hpp"

namespace rrc {

template <class T>
struct Mat {
    int rows = 0, cols = 0;
    std::vector<T> a;

    Mat() = default;
    Mat(int r, int c, const T& fill = T()) : rows(r), cols(c), a(static_cast<size_t>(r) * c, fill) {}

    T& at(int i, int j) { return a[static_cast<size_t>(i) * cols + j]; }
    const T& at(int i, int j) const { return a[static_cast<size_t>(i) * cols + j]; }

    bool is_square() const { return rows == cols; }

    Mat<T> submatrix(const std::vector<int>& ri, const std::vector<int>& ci) const {
        Mat<T> s(static_cast<int>(ri.size()), static_cast<int>(ci.size()));
        for (size_t i = 0; i < ri.size(); ++i)
            for (size_t j = 0; j < ci.size(); ++j) s.at(static_cast<int>(i), static_cast<int>(j)) = at(ri[i], ci[j]);
        return s;
    }

    Mat<T> leading_block(int k) const {
        std::vector<int> idx(k);
        for (int i = 0; i < k; ++i) idx[i] = i;
        return submatrix(idx, idx);
    }
};

using MatQ = Mat<Rat>;
using MatZ = Mat<Int>;

inline bool is_symmetric(const MatQ& m) {
    if (!m.is_square()) return false;
    for (int i = 0; i < m.rows; ++i)
        for (int j = i + 1; j < m.cols; ++j)
            if (m.at(i, j) != m.at(j, i)) return false;
    return true;
}

// Clear denominators row by row; det(M) = det(Z) / prod(row scales).
inline MatZ clear_rows(const MatQ& m, Rat& scale) {
    MatZ z(m.rows, m.cols);
    scale = 1;
    for (int i = 0; i < m.rows; ++i) {
        Int den(1);
        for (int j = 0; j < m.cols; ++j) den = lcm(den, m.at(i, j).get_den());
        scale *= Rat(den);
        for (int j = 0; j < m.cols; ++j) {
            Rat v = m.at(i, j) * Rat(den);
            z.at(i, j) = v.get_num();
        }
    }
    return z;
}

inline Int det_bareiss_int(MatZ m) {
    int n = m.rows;
    if (n == 0) return Int(1);
    Int prev(1);
    int sgn_flip = 1;
    for (int k = 0; k < n - 1; ++k) {
        if (m.at(k, k) == 0) {
            int piv = -1;
            for (int i = k + 1; i < n; ++i)
                if (m.at(i, k) != 0) {
                    piv = i;
                    break;
                }
            if (piv < 0) return Int(0);
            for (int j = 0; j < n; ++j) std::swap(m.at(k, j), m.at(piv, j));
            sgn_flip = -sgn_flip;
        }
        for (int i = k + 1; i < n; ++i) {
            for (int j = k + 1; j < n; ++j) {
                Int v = m.at(i, j) * m.at(k, k) - m.at(i, k) * m.at(k, j);
                m.at(i, j) = v / prev; // exact by Bareiss
            }
            m.at(i, k) = 0;
        }
        prev = m.at(k, k);
    }
    return sgn_flip > 0 ? m.at(n - 1, n - 1) : -m.at(n - 1, n - 1);
}

inline Rat det_exact(const MatQ& m) {
    if (!m.is_square()) throw Error("det of non-square matrix");
    Rat scale;
    MatZ z = clear_rows(m, scale);
    return Rat(det_bareiss_int(std::move(z))) / scale;
}

inline int rank(const MatQ& m) {
    Rat scale;
    MatZ z = clear_rows(m, scale);
    int r = 0;
    Int prev(1);
    int row = 0;
    for (int col = 0; col < z.cols && row < z.rows; ++col) {
        int piv = -1;
        for (int i = row; i < z.rows; ++i)
            if (z.at(i, col) != 0) {
                piv = i;
                break;
            }
        if (piv < 0) continue;
        if (piv != row)
            for (int j = 0; j < z.cols; ++j) std::swap(z.at(row, j), z.at(piv, j));
        for (int i = row + 1; i < z.rows; ++i) {
            for (int j = col + 1; j < z.cols; ++j) {
                Int v = z.at(i, j) * z.at(row, col) - z.at(i, col) * z.at(row, j);
                z.at(i, j) = v / prev;
            }
            z.at(i, col) = 0;
        }
        prev = z.at(row, col);
        ++row;
        ++r;
    }
    return r;
}

// Division-free Berkowitz: coefficients of det(lambda*I - M), degree n first
// returned last, i.e. result[i] is the coefficient of lambda^i.
inline std::vector<Rat> char_poly(const MatQ& m) {
    if (!m.is_square()) throw Error("char_poly of non-square matrix");
    int n = m.rows;
    std::vector<Rat> c{Rat(1)}; // char poly of the empty matrix
    for (int k = 1; k <= n; ++k) {
        // principal k x k block; Berkowitz Toeplitz vector
        // t[0] = 1 (lambda coefficient layer), t[1] = -a_kk, t[j] = -(row * M^{j-2} * col)
        std::vector<Rat> t(static_cast<size_t>(k) + 1, Rat(0));
        t[0] = 1;
        t[1] = -m.at(k - 1, k - 1);
        if (k >= 2) {
            std::vector<Rat> v(static_cast<size_t>(k) - 1);
            for (int i = 0; i < k - 1; ++i) v[i] = m.at(k - 1, i); // row
            for (int j = 2; j <= k; ++j) {
                Rat dot(0);
                for (int i = 0; i < k - 1; ++i) dot += v[i] * m.at(i, k - 1);
                t[j] = -dot;
                if (j < k) {
                    std::vector<Rat> nv(static_cast<size_t>(k) - 1, Rat(0));
                    for (int i = 0; i < k - 1; ++i) {
                        if (v[i] == 0) continue;
                        for (int l = 0; l < k - 1; ++l) nv[l] += v[i] * m.at(i, l);
                    }
                    v = std::move(nv);
                }
            }
        }
        // multiply: new_c = truncated conv(t, c); entries beyond degree k vanish
        // in the Toeplitz product and are skipped
        std::vector<Rat> nc(static_cast<size_t>(k) + 1, Rat(0));
        for (size_t i = 0; i < t.size(); ++i) {
            if (t[i] == 0) continue;
            for (size_t j = 0; j < c.size() && i + j < nc.size(); ++j) nc[i + j] += t[i] * c[j];
        }
        c = std::move(nc);
    }
    // c[i] currently multiplies lambda^{n-i}; flip to ascending powers
    std::vector<Rat> out(static_cast<size_t>(n) + 1);
    for (int i = 0; i <= n; ++i) out[n - i] = c[i];
    return out;
}

inline int descartes_variations(const std::vector<Rat>& coeffs) {
    int v = 0, last = 0;
    for (auto& x : coeffs) {
        int s = sign(x);
        if (!s) continue;
        if (last && s != last) ++v;
        last = s;
    }
    return v;
}

// Signature of a symmetric rational matrix: Descartes on the characteristic
// polynomial is exact because all its roots are real.
inline int signature(const MatQ& m) {
    if (!is_symmetric(m)) throw Error("signature requires a symmetric matrix");
    std::vector<Rat> cp = char_poly(m);
    int pos = descartes_variations(cp);
    std::vector<Rat> cpn = cp;
    for (size_t i = 0; i < cpn.size(); ++i)
        if (i & 1) cpn[i] = -cpn[i];
    int neg = descartes_variations(cpn);
    return pos - neg;
}

// ha = A^T * h * A over any coefficient ring; `zero` supplies the additive
// identity (value types may carry a context), `mul_int` scales by an integer.
template <class T, class MulInt>
Mat<T> congruence_transform(const Mat<T>& h, const MatZ& a, const T& zero, MulInt mul_int) {
    int n = h.rows;
    if (a.rows != n || a.cols != n) throw Error("congruence: size mismatch");
    Mat<T> tmp(n, n, zero), ha(n, n, zero);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            T acc = zero;
            for (int k = 0; k < n; ++k)
                if (a.at(k, j) != 0) acc = acc + mul_int(h.at(i, k), a.at(k, j));
            tmp.at(i, j) = acc;
        }
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            T acc = zero;
            for (int k = 0; k < n; ++k)
                if (a.at(k, i) != 0) acc = acc + mul_int(tmp.at(k, j), a.at(k, i));
            ha.at(i, j) = acc;
        }
    return ha;
}

inline MatQ congruence(const MatQ& h, const MatZ& a) {
    return congruence_transform<Rat>(h, a, Rat(0),
                                     [](const Rat& x, const Int& z) { return Rat(x * Rat(z)); });
}

// All leading principal minors M_1..M_n of a rational matrix.  The Bareiss
// pivots deliver them in one sweep when no pivot vanishes; vanishing pivots
// fall back to direct determinants of the affected blocks.
inline std::vector<Rat> leading_principal_minors_q(const MatQ& m) {
    int n = m.rows;
    std::vector<Rat> out(static_cast<size_t>(n));
    MatQ w = m;
    Rat prev(1);
    bool clean = true;
    for (int k = 0; k < n; ++k) {
        if (clean) {
            Rat piv = w.at(k, k);
            if (piv == 0) {
                clean = false;
            } else {
                out[k] = piv; // Bareiss invariant: pivot k equals M_{k+1}
                for (int i = k + 1; i < n; ++i) {
                    for (int j = k + 1; j < n; ++j)
                        w.at(i, j) = (w.at(i, j) * piv - w.at(i, k) * w.at(k, j)) / prev;
                    w.at(i, k) = 0;
                }
                prev = piv;
                continue;
            }
        }
        out[k] = det_exact(m.leading_block(k + 1));
    }
    return out;
}

// Fraction-free Bareiss over the polynomial ring (divisions are exact).
inline MultiPoly poly_mat_det(Mat<MultiPoly> m) {
    if (!m.is_square()) throw Error("det of non-square matrix");
    int n = m.rows;
    if (n == 0) throw Error("det of empty matrix");
    const CtxPtr ctx = m.at(0, 0).ctx();
    MultiPoly prev = MultiPoly::constant(ctx, Rat(1));
    int sgn_flip = 1;
    for (int k = 0; k < n - 1; ++k) {
        if (m.at(k, k).is_zero()) {
            int piv = -1;
            for (int i = k + 1; i < n; ++i)
                if (!m.at(i, k).is_zero()) {
                    piv = i;
                    break;
                }
            if (piv < 0) return MultiPoly::zero(ctx);
            for (int j = 0; j < n; ++j) std::swap(m.at(k, j), m.at(piv, j));
            sgn_flip = -sgn_flip;
        }
        for (int i = k + 1; i < n; ++i) {
            for (int j = k + 1; j < n; ++j) {
                MultiPoly v = m.at(i, j) * m.at(k, k) - m.at(i, k) * m.at(k, j);
                m.at(i, j) = v.is_zero() ? v : exact_div(v, prev);
            }
            m.at(i, k) = MultiPoly::zero(ctx);
        }
        prev = m.at(k, k);
    }
    MultiPoly d = m.at(n - 1, n - 1);
    return sgn_flip > 0 ? d : -d;
}

// seeded invertible integer matrix with entries in {-3..3}
inline MatZ random_unimodularish(int n, SeedStream& rng, int max_tries = 20) {
    for (int t = 0; t < max_tries; ++t) {
        MatZ a(n, n);
        MatQ aq(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                long v = rng.next_in(-3, 3);
                a.at(i, j) = Int(v);
                aq.at(i, j) = Rat(v);
            }
        if (det_exact(aq) != 0) return a;
    }
    throw Error("failed to draw an invertible congruence matrix");
}

} // namespace rrc
