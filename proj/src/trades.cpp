#include "qtrade/trades.hpp"

#include <algorithm>
#include <stdexcept>

#include "qtrade/errors.hpp"
#include "qtrade/parallel.hpp"

namespace qtrade {

TradeParams TradeParams::make(FieldPtr field, int t, int k, int v) {
    if (!(0 <= t && t < k && k < v - t))
        throw InadmissibleParams("trade parameters must satisfy 0 <= t < k < v - t");
    TradeParams p;
    p.field = std::move(field);
    p.t = t;
    p.k = k;
    p.v = v;
    return p;
}

Fe QuadraticForm::evaluate(const FieldPtr& f, std::span<const Fe> x) const {
    Fe acc = 0;
    for (auto [a, b] : pairs) acc = f->add(acc, f->mul(x[a], x[b]));
    return acc;
}

Fe QuadraticForm::polar(const FieldPtr& f, std::span<const Fe> u, std::span<const Fe> w) const {
    Fe acc = 0;
    for (auto [a, b] : pairs) {
        acc = f->add(acc, f->mul(u[a], w[b]));
        acc = f->add(acc, f->mul(u[b], w[a]));
    }
    return acc;
}

bool QuadraticForm::zero_coords_hold(std::span<const Fe> x) const {
    return std::all_of(zero_coords.begin(), zero_coords.end(),
                       [&](int c) { return x[c] == 0; });
}

QuadraticForm hyperbolic_form(const TradeParams& params) {
    QuadraticForm qf;
    qf.ambient_v = params.v;
    for (int i = 0; i <= params.t; ++i) qf.pairs.emplace_back(i, params.t + 1 + i);
    for (int c = params.k + params.t + 1; c < params.v; ++c) qf.zero_coords.push_back(c);
    return qf;
}

bool is_totally_singular(const CanonicalSubspace& y, const QuadraticForm& qf) {
    if (y.ambient() != qf.ambient_v)
        throw AmbientMismatch("form and subspace live in different ambient spaces");
    const FieldPtr& f = y.field();
    for (int r = 0; r < y.dim(); ++r) {
        auto row = y.basis().row(r);
        if (!qf.zero_coords_hold(row)) return false;
        if (qf.evaluate(f, row) != 0) return false;
    }
    // Q vanishes on a subspace iff it vanishes on a basis and the polar
    // form vanishes on basis pairs.
    for (int r = 0; r < y.dim(); ++r)
        for (int s = r + 1; s < y.dim(); ++s)
            if (qf.polar(f, y.basis().row(r), y.basis().row(s)) != 0) return false;
    return true;
}

BigInt min_cardinality(unsigned q, int t) {
    if (t < 0) throw OutOfRange("t must be nonnegative");
    if (q < 2) throw OutOfRange("q must be a prime power >= 2");
    BigInt product = 1;
    BigInt qpow = 1;
    for (int i = 0; i <= t; ++i) {
        product *= 1 + qpow;
        qpow *= q;
    }
    BigInt sum = 0;
    for (int j = 0; j <= t + 1; ++j) {
        BigInt term = boost::multiprecision::pow(BigInt(q),
                                                 static_cast<unsigned>(j * (j - 1) / 2));
        sum += term * gaussian_binomial(t + 1, j, q);
    }
    if (product != sum)
        throw std::logic_error("cardinality product and sum forms disagree");
    return product;
}

std::pair<std::vector<CanonicalSubspace>, std::vector<CanonicalSubspace>> split_families(
    const std::vector<CanonicalSubspace>& total, const TradeParams& params) {
    const QuadraticForm qf = hyperbolic_form(params);
    std::vector<int> first(params.t + 1);
    for (int i = 0; i <= params.t; ++i) first[i] = i;
    const CanonicalSubspace zprime = coordinate_subspace(params.v, params.field, first);

    std::pair<std::vector<CanonicalSubspace>, std::vector<CanonicalSubspace>> out;
    for (const CanonicalSubspace& y : total) {
        if (y.dim() != params.k || y.ambient() != params.v || !is_totally_singular(y, qf))
            throw NotATotalTradeSet("member fails the quadric or zero-coordinate conditions");
        // dim(y' ∩ z') where y' = y ∩ <e_0..e_{2t+1}>; z' ⊆ that window,
        // so intersecting y with z' directly gives the same space.
        int meet = y.dim() + zprime.dim() - rank_of(stack_rows(y.basis(), zprime.basis()));
        if (((params.t + 1 - meet) % 2) == 0) {
            out.first.push_back(y);
        } else {
            out.second.push_back(y);
        }
    }
    return out;
}

namespace {

Bitrade apply_basis_choice(Bitrade b, const std::vector<int>& perm) {
    const int v = b.params.v;
    if (static_cast<int>(perm.size()) != v)
        throw OutOfRange("coordinate permutation must have length v");
    std::vector<bool> seen(v, false);
    for (int image : perm) {
        if (image < 0 || image >= v || seen[image])
            throw OutOfRange("basis choice is not a permutation of 0..v-1");
        seen[image] = true;
    }
    auto permute = [&](std::vector<CanonicalSubspace>& family) {
        for (CanonicalSubspace& y : family) {
            MatrixGF m(y.dim(), v, y.field());
            for (int r = 0; r < y.dim(); ++r)
                for (int c = 0; c < v; ++c) m.at(r, perm[c]) = y.basis().at(r, c);
            y = CanonicalSubspace::from_spanning(m);
        }
        std::sort(family.begin(), family.end());
    };
    permute(b.t0);
    permute(b.t1);
    return b;
}

}  // namespace

Bitrade construct_minimum(const TradeParams& params,
                          const std::optional<std::vector<int>>& basis_choice) {
    Bitrade out;
    out.params = params;

    if (params.t == 0) {
        // No quadric at t = 0: any two distinct k-subspaces balance the
        // single 0-subspace. Take the first two in enumeration order.
        SubspaceEnumerator en(params.v, params.k, params.field);
        out.t0.push_back(*en.next());
        out.t1.push_back(*en.next());
    } else {
        // Every member lies inside the first k+t+1 coordinates, so
        // enumerate that window and pad; padding preserves both RREF
        // shape and enumeration order.
        const int window = params.k + params.t + 1;
        const QuadraticForm qf = hyperbolic_form(params);
        std::vector<CanonicalSubspace> total;
        SubspaceEnumerator en(window, params.k, params.field);
        while (auto w = en.next()) {
            MatrixGF padded(params.k, params.v, params.field);
            for (int r = 0; r < params.k; ++r)
                for (int c = 0; c < window; ++c) padded.at(r, c) = w->basis().at(r, c);
            CanonicalSubspace y =
                CanonicalSubspace::from_rref_unchecked(std::move(padded), w->pivots());
            if (is_totally_singular(y, qf)) total.push_back(std::move(y));
        }
        std::tie(out.t0, out.t1) = split_families(total, params);
    }

    if (basis_choice) out = apply_basis_choice(std::move(out), *basis_choice);
    return out;
}

VerifyReport verify_bitrade(const Bitrade& b, int s, int threads) {
    const TradeParams& p = b.params;
    if (s < 0 || s > p.t) throw ParamsMismatch("cover level s must lie in [0, t]");
    if (b.t0.empty() || b.t1.empty()) throw ParamsMismatch("both parts must be nonempty");
    for (const auto* family : {&b.t0, &b.t1})
        for (const CanonicalSubspace& y : *family) {
            if (y.dim() != p.k || y.ambient() != p.v)
                throw ParamsMismatch("member dimensions do not match the parameters");
            if (!y.field()->same_field(*p.field))
                throw ParamsMismatch("member field does not match the parameters");
        }
    {
        std::vector<CanonicalSubspace> a = b.t0, c = b.t1;
        std::sort(a.begin(), a.end());
        std::sort(c.begin(), c.end());
        std::vector<CanonicalSubspace> overlap;
        std::set_intersection(a.begin(), a.end(), c.begin(), c.end(),
                              std::back_inserter(overlap));
        if (!overlap.empty()) throw ParamsMismatch("the two parts must be disjoint");
    }

    const std::vector<CanonicalSubspace> level =
        enumerate_subspaces(p.v, s, p.field, ScaleGuard::from_env());
    std::vector<long long> count0(level.size(), 0), count1(level.size(), 0);
    parallel_chunks(level.size(), threads, [&](std::size_t lo, std::size_t hi) {
        for (std::size_t i = lo; i < hi; ++i) {
            for (const CanonicalSubspace& y : b.t0)
                if (covers(level[i], y)) ++count0[i];
            for (const CanonicalSubspace& y : b.t1)
                if (covers(level[i], y)) ++count1[i];
        }
    });

    VerifyReport report;
    report.s = s;
    for (std::size_t i = 0; i < level.size(); ++i)
        if (count0[i] != count1[i])
            report.violations.push_back({level[i], count0[i], count1[i]});
    report.balanced = report.violations.empty();
    return report;
}

}  // namespace qtrade
