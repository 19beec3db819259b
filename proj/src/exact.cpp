#include "wreathsim/exact.hpp"

#include <gmpxx.h>

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

namespace wreathsim {

namespace {

RationalValue make_rational(mpq_class q) {
    q.canonicalize();
    RationalValue v;
    v.numerator = q.get_num().get_str();
    v.denominator = q.get_den().get_str();
    v.value = q.get_d();
    return v;
}

mpz_class checked_divexact(const mpz_class& t, const mpz_class& d) {
    mpz_class q, r;
    mpz_tdiv_qr(q.get_mpz_t(), r.get_mpz_t(), t.get_mpz_t(), d.get_mpz_t());
    if (r != 0) throw std::logic_error("fraction-free elimination: inexact division");
    return q;
}

// Row echelon of [gram | I] by fraction-free (Bareiss) elimination with
// column skipping; entries stay integer minors throughout.
struct Echelon {
    std::vector<std::vector<mpz_class>> g;  // echelonized gram part
    std::vector<std::vector<mpz_class>> e;  // accumulated row transform
    std::vector<size_t> pivot_col;
    size_t rank() const { return pivot_col.size(); }
};

Echelon bareiss_echelon(std::vector<std::vector<mpz_class>> g) {
    const size_t c = g.size();
    Echelon ech;
    ech.e.assign(c, std::vector<mpz_class>(c, 0));
    for (size_t i = 0; i < c; ++i) ech.e[i][i] = 1;
    auto& e = ech.e;
    size_t row = 0;
    mpz_class prev = 1;
    for (size_t col = 0; col < c && row < c; ++col) {
        size_t pr = row;
        while (pr < c && g[pr][col] == 0) ++pr;
        if (pr == c) continue;  // free column
        std::swap(g[row], g[pr]);
        std::swap(e[row], e[pr]);
        const mpz_class piv = g[row][col];
        for (size_t i = row + 1; i < c; ++i) {
            const mpz_class f = g[i][col];
            for (size_t j = col; j < c; ++j)
                g[i][j] = checked_divexact(piv * g[i][j] - f * g[row][j], prev);
            for (size_t j = 0; j < c; ++j)
                e[i][j] = checked_divexact(piv * e[i][j] - f * e[row][j], prev);
        }
        prev = piv;
        ech.pivot_col.push_back(col);
        ++row;
    }
    ech.g = std::move(g);
    return ech;
}

// Solves gram * x = b (consistent by construction: b lies in range(B^T))
// with free variables zero; returns x.b / norm, the squared projection
// ratio, which is invariant across least-squares solutions.
mpq_class echelon_p1(const Echelon& ech, const std::vector<mpz_class>& b, const mpq_class& norm) {
    const size_t c = b.size();
    const size_t r = ech.rank();
    std::vector<mpz_class> rhs(r, 0);
    for (size_t i = 0; i < r; ++i)
        for (size_t j = 0; j < c; ++j)
            if (ech.e[i][j] != 0) rhs[i] += ech.e[i][j] * b[j];
    for (size_t i = r; i < c; ++i) {
        mpz_class tail = 0;
        for (size_t j = 0; j < c; ++j)
            if (ech.e[i][j] != 0) tail += ech.e[i][j] * b[j];
        if (tail != 0) throw std::logic_error("normal equations unexpectedly inconsistent");
    }
    std::vector<mpq_class> x(c, 0);
    for (size_t i = r; i-- > 0;) {
        size_t pc = ech.pivot_col[i];
        mpq_class acc(rhs[i]);
        for (size_t j = i + 1; j < r; ++j) {
            size_t jc = ech.pivot_col[j];
            if (ech.g[i][jc] != 0) acc -= mpq_class(ech.g[i][jc]) * x[jc];
        }
        x[pc] = acc / mpq_class(ech.g[i][pc]);
    }
    mpq_class num = 0;
    for (size_t j = 0; j < c; ++j)
        if (x[j] != 0 && b[j] != 0) num += x[j] * mpq_class(b[j]);
    mpq_class p1 = num / norm;
    p1.canonicalize();
    return p1;
}

// Independent route for tests: plain rational Gaussian elimination.
mpq_class gauss_p1(const std::vector<std::vector<mpz_class>>& gram, const std::vector<mpz_class>& b,
                   const mpq_class& norm) {
    const size_t c = b.size();
    std::vector<std::vector<mpq_class>> m(c, std::vector<mpq_class>(c + 1));
    for (size_t i = 0; i < c; ++i) {
        for (size_t j = 0; j < c; ++j) m[i][j] = mpq_class(gram[i][j]);
        m[i][c] = mpq_class(b[i]);
    }
    size_t row = 0;
    std::vector<size_t> pivots;
    for (size_t col = 0; col < c && row < c; ++col) {
        size_t pr = row;
        while (pr < c && m[pr][col] == 0) ++pr;
        if (pr == c) continue;
        std::swap(m[row], m[pr]);
        for (size_t i = 0; i < c; ++i) {
            if (i == row || m[i][col] == 0) continue;
            mpq_class f = m[i][col] / m[row][col];
            for (size_t j = col; j <= c; ++j) m[i][j] -= f * m[row][j];
        }
        pivots.push_back(col);
        ++row;
    }
    std::vector<mpq_class> x(c, 0);
    for (size_t i = 0; i < pivots.size(); ++i) x[pivots[i]] = m[i][c] / m[i][pivots[i]];
    mpq_class num = 0;
    for (size_t j = 0; j < c; ++j) num += x[j] * mpq_class(b[j]);
    mpq_class p1 = num / norm;
    p1.canonicalize();
    return p1;
}

}  // namespace

struct ExactProjector::Impl {
    SpaceConfig cfg;
    uint64_t columns = 0;
    std::vector<std::vector<uint64_t>> column_indices;
    Echelon echelon;
};

ExactProjector::ExactProjector(const SpaceConfig& cfg, const EngineLimits& lim,
                               std::vector<int> swap_filter)
    : impl_(std::make_unique<Impl>()) {
    KDictionary dict(cfg, lim.nnz_budget, std::move(swap_filter));
    if (dict.columns() > lim.exact_max_columns)
        throw resource_error("exact method: " + std::to_string(dict.columns()) +
                             " columns over the guard of " + std::to_string(lim.exact_max_columns));
    impl_->cfg = cfg;
    impl_->columns = dict.columns();
    impl_->column_indices.resize(dict.columns());
    dict.for_each_column([&](uint64_t col, std::span<const uint64_t> idx) {
        impl_->column_indices[col].assign(idx.begin(), idx.end());
    });

    // integer Gram of the unnormalized 0/1 dictionary
    const size_t c = impl_->column_indices.size();
    std::unordered_map<uint64_t, std::vector<uint32_t>> rows;
    for (size_t j = 0; j < c; ++j)
        for (uint64_t i : impl_->column_indices[j]) rows[i].push_back(static_cast<uint32_t>(j));
    std::vector<std::vector<mpz_class>> gram(c, std::vector<mpz_class>(c, 0));
    for (const auto& [i, js] : rows)
        for (uint32_t a : js)
            for (uint32_t b : js) gram[a][b] += 1;
    impl_->echelon = bareiss_echelon(std::move(gram));
}

ExactProjector::~ExactProjector() = default;
ExactProjector::ExactProjector(ExactProjector&&) noexcept = default;

uint64_t ExactProjector::columns() const { return impl_->columns; }

RationalValue ExactProjector::p1(std::span<const WreathElement> reps, const HiddenSubgroup& h) const {
    const SpaceConfig& cfg = impl_->cfg;
    if (static_cast<int>(reps.size()) != cfg.m)
        throw std::invalid_argument("ExactProjector::p1: need m representatives");
    GroupIndexer gi(cfg.n);

    // psi scaled by |H|^{m/2} is the 0/1 indicator of the coset product
    std::vector<std::vector<uint64_t>> coset_ranks(reps.size());
    for (size_t i = 0; i < reps.size(); ++i) {
        coset_ranks[i].reserve(h.elements.size());
        for (const auto& x : h.elements) coset_ranks[i].push_back(gi.rank(compose(reps[i], x)));
    }
    std::unordered_set<uint64_t> support;
    double projected = std::pow(static_cast<double>(h.order()), static_cast<double>(cfg.m));
    if (projected > 1e8) throw resource_error("exact method: coset support too large");
    support.reserve(static_cast<size_t>(projected) * 2);
    std::vector<size_t> pos(reps.size(), 0);
    for (;;) {
        uint64_t idx = 0;
        for (size_t i = 0; i < reps.size(); ++i)
            idx = idx * cfg.group_order + coset_ranks[i][pos[i]];
        support.insert(idx);
        int i = static_cast<int>(reps.size()) - 1;
        for (; i >= 0; --i) {
            if (++pos[static_cast<size_t>(i)] < coset_ranks[static_cast<size_t>(i)].size()) break;
            pos[static_cast<size_t>(i)] = 0;
        }
        if (i < 0) break;
    }

    std::vector<mpz_class> b(impl_->columns, 0);
    for (size_t j = 0; j < impl_->column_indices.size(); ++j) {
        long hits = 0;
        for (uint64_t i : impl_->column_indices[j]) hits += support.count(i) ? 1 : 0;
        b[j] = hits;
    }
    mpz_class norm;
    mpz_ui_pow_ui(norm.get_mpz_t(), static_cast<unsigned long>(h.order()),
                  static_cast<unsigned long>(cfg.m));
    return make_rational(echelon_p1(impl_->echelon, b, mpq_class(norm)));
}

RationalValue p1_exact_rational(std::span<const WreathElement> reps, const HiddenSubgroup& h,
                                const SpaceConfig& cfg, const EngineLimits& lim) {
    ExactProjector proj(cfg, lim);
    return proj.p1(reps, h);
}

ProjectionReport to_report(const RationalValue& v, const SpaceConfig& cfg, uint64_t columns) {
    ProjectionReport rep;
    rep.p1 = v.value;
    rep.p0 = 1.0 - rep.p1;
    rep.method = ProjectionMethod::exact_rational;
    rep.residual_norm = std::sqrt(std::max(0.0, 1.0 - rep.p1));
    rep.iterations = 0;
    rep.dictionary_size = columns;
    rep.dim_bound = k_dictionary_columns(cfg);
    rep.converged = true;
    return rep;
}

namespace detail {

RationalValue exact_projection_ratio(const std::vector<std::vector<long long>>& gram,
                                     const std::vector<long long>& load, long long norm_num,
                                     long long norm_den, bool use_bareiss) {
    const size_t c = load.size();
    std::vector<std::vector<mpz_class>> g(c, std::vector<mpz_class>(c));
    for (size_t i = 0; i < c; ++i)
        for (size_t j = 0; j < c; ++j) g[i][j] = static_cast<long>(gram[i][j]);
    std::vector<mpz_class> b(c);
    for (size_t j = 0; j < c; ++j) b[j] = static_cast<long>(load[j]);
    mpq_class norm(static_cast<long>(norm_num), static_cast<long>(norm_den));
    norm.canonicalize();
    if (use_bareiss) {
        Echelon ech = bareiss_echelon(std::move(g));
        return make_rational(echelon_p1(ech, b, norm));
    }
    return make_rational(gauss_p1(g, b, norm));
}

}  // namespace detail

}  // namespace wreathsim
