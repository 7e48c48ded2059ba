#pragma once

// Dense multivariate interpolation on tensor grids: nested Newton divided
// differences, one variable at a time.  Exact over Q.

#include <functional>

#include "poly.hpp"

namespace rrc {

namespace detail {

// in-place Newton divided differences over nodes xs
inline void divided_differences(std::vector<Rat>& v, size_t base, size_t stride,
                                const std::vector<Rat>& xs) {
    size_t m = xs.size();
    for (size_t i = 1; i < m; ++i)
        for (size_t pos = m - 1; pos >= i; --pos) {
            Rat& hi = v[base + pos * stride];
            const Rat& lo = v[base + (pos - 1) * stride];
            hi = (hi - lo) / (xs[pos] - xs[pos - i]);
            if (pos == i) break;
        }
}

} // namespace detail

// values: row-major over the grid, last axis fastest.
inline MultiPoly interp_tensor(const CtxPtr& ctx, const std::vector<int>& slots,
                               const std::vector<std::vector<Rat>>& nodes,
                               std::vector<Rat> values) {
    size_t k = slots.size();
    if (nodes.size() != k) throw Error("interp_tensor: nodes/slots mismatch");
    size_t total = 1;
    for (auto& xs : nodes) {
        if (xs.empty()) throw Error("interp_tensor: empty axis");
        total *= xs.size();
    }
    if (values.size() != total) throw Error("interp_tensor: wrong number of values");
    if (k == 0) return MultiPoly::constant(ctx, values[0]);

    size_t m_last = nodes[k - 1].size();
    size_t outer = total / m_last;
    // divided differences along the last axis for every prefix
    for (size_t o = 0; o < outer; ++o)
        detail::divided_differences(values, o * m_last, 1, nodes[k - 1]);

    // recursively interpolate each Newton coefficient slice over the first k-1 axes
    std::vector<std::vector<Rat>> inner_nodes(nodes.begin(), nodes.end() - 1);
    std::vector<int> inner_slots(slots.begin(), slots.end() - 1);
    std::vector<MultiPoly> coeff(m_last, MultiPoly::zero(ctx));
    std::vector<Rat> slice(outer);
    for (size_t j = 0; j < m_last; ++j) {
        for (size_t o = 0; o < outer; ++o) slice[o] = values[o * m_last + j];
        coeff[j] = interp_tensor(ctx, inner_slots, inner_nodes, slice);
    }

    // Horner assembly in the Newton basis of the last axis
    MultiPoly v = MultiPoly::var(ctx, slots[k - 1]);
    MultiPoly r = coeff[m_last - 1];
    for (size_t j = m_last - 1; j-- > 0;) {
        r = r * (v - MultiPoly::constant(ctx, nodes[k - 1][j])) + coeff[j];
    }
    return r;
}

// Abscissae 0, 1, ..., bound per axis (deterministic, reproducible fixtures).
inline std::vector<std::vector<Rat>> integer_grid(size_t k, int bound) {
    std::vector<Rat> xs;
    for (int i = 0; i <= bound; ++i) xs.push_back(Rat(i));
    return std::vector<std::vector<Rat>>(k, xs);
}

// Interpolate a polynomial of total degree <= bound in the given slots from an
// evaluator called at every integer grid point.
inline MultiPoly interp_on_integer_grid(const CtxPtr& ctx, const std::vector<int>& slots, int bound,
                                        const std::function<Rat(std::span<const Rat>)>& eval) {
    size_t k = slots.size();
    auto nodes = integer_grid(k, bound);
    size_t total = 1;
    for (size_t a = 0; a < k; ++a) total *= nodes[a].size();
    std::vector<Rat> values(total);
    std::vector<Rat> pt(k, Rat(0));
    std::vector<size_t> idx(k, 0);
    for (size_t flat = 0; flat < total; ++flat) {
        size_t rem = flat;
        for (size_t a = k; a-- > 0;) {
            idx[a] = rem % nodes[a].size();
            rem /= nodes[a].size();
            pt[a] = nodes[a][idx[a]];
        }
        values[flat] = eval(pt);
    }
    MultiPoly r = interp_tensor(ctx, slots, nodes, std::move(values));
    if (r.total_degree() > bound) throw ResidualMismatchError();
    return r;
}

// Spec-shaped front: list of (point, value) pairs which must form a tensor
// grid with side degree_bound+1 on every axis.
inline MultiPoly interpolate(const CtxPtr& ctx, const std::vector<int>& slots,
                             const std::vector<std::pair<std::vector<Rat>, Rat>>& evals,
                             int degree_bound) {
    size_t k = slots.size();
    size_t side = static_cast<size_t>(degree_bound) + 1;
    std::vector<std::vector<Rat>> nodes(k);
    for (auto& [pt, val] : evals) {
        (void)val;
        if (pt.size() != k) throw Error("interpolate: wrong point arity");
        for (size_t a = 0; a < k; ++a)
            if (std::find(nodes[a].begin(), nodes[a].end(), pt[a]) == nodes[a].end())
                nodes[a].push_back(pt[a]);
    }
    size_t total = 1;
    for (auto& xs : nodes) {
        if (xs.size() != side) throw Error("interpolate: insufficient or duplicated grid points");
        std::sort(xs.begin(), xs.end());
        total *= xs.size();
    }
    if (evals.size() != total) throw Error("interpolate: insufficient or duplicated grid points");
    std::vector<Rat> values(total);
    std::vector<bool> seen(total, false);
    for (auto& [pt, val] : evals) {
        size_t flat = 0;
        for (size_t a = 0; a < k; ++a) {
            auto it = std::find(nodes[a].begin(), nodes[a].end(), pt[a]);
            flat = flat * side + static_cast<size_t>(it - nodes[a].begin());
        }
        if (seen[flat]) throw Error("interpolate: insufficient or duplicated grid points");
        seen[flat] = true;
        values[flat] = val;
    }
    return interp_tensor(ctx, slots, nodes, std::move(values));
}

} // namespace rrc
