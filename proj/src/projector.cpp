#include "wreathsim/projector.hpp"

#include <Eigen/Dense>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "wreathsim/exact.hpp"

namespace wreathsim {

const char* method_name(ProjectionMethod m) {
    switch (m) {
        case ProjectionMethod::exact_rational: return "exact-rational";
        case ProjectionMethod::dense_orthonormal: return "dense-orthonormal";
        case ProjectionMethod::dictionary_least_squares: return "dictionary-least-squares";
    }
    return "?";
}

std::optional<ProjectionMethod> method_from_name(const std::string& name) {
    if (name == "exact" || name == "exact-rational") return ProjectionMethod::exact_rational;
    if (name == "dense" || name == "dense-orthonormal") return ProjectionMethod::dense_orthonormal;
    if (name == "lsq" || name == "dictionary-least-squares")
        return ProjectionMethod::dictionary_least_squares;
    return std::nullopt;
}

KDictionary::KDictionary(const SpaceConfig& cfg, uint64_t nnz_budget, std::vector<int> swap_filter)
    : cfg_(cfg) {
    GroupIndexer gi(cfg.n);
    auto swaps = involutive_swaps(cfg.n);
    if (swap_filter.empty()) {
        swap_ranks_.resize(swaps.size());
        for (size_t i = 0; i < swaps.size(); ++i) swap_ranks_[i] = static_cast<int>(i);
    } else {
        swap_ranks_ = std::move(swap_filter);
        for (int s : swap_ranks_)
            if (s < 0 || s >= static_cast<int>(swaps.size()))
                throw std::invalid_argument("KDictionary: swap rank out of range");
    }
    u128 per_swap = 1;
    for (int i = 0; i < cfg.m; ++i) per_swap = checked_mul_u128(per_swap, cfg.group_order / 2);
    u128 cols = checked_mul_u128(per_swap, static_cast<u128>(swap_ranks_.size()));
    u128 nnz = checked_mul_u128(cols, u128{1} << cfg.m);
    if (nnz > nnz_budget)
        throw resource_error("k-vector dictionary needs " + to_string_u128(nnz) +
                             " nonzeros, over the budget of " + std::to_string(nnz_budget));
    columns_ = static_cast<uint64_t>(cols);
    dimension_ = static_cast<uint64_t>(cfg.dimension);

    blocks_.reserve(swap_ranks_.size());
    for (int s : swap_ranks_) {
        const WreathElement& k = swaps[static_cast<size_t>(s)];
        std::vector<uint32_t> table(gi.order());
        for (uint64_t r = 0; r < gi.order(); ++r)
            table[r] = static_cast<uint32_t>(gi.rank(compose(gi.unrank(r), k)));
        SwapBlock blk;
        blk.labels.reserve(gi.order() / 2);
        blk.moved.reserve(gi.order() / 2);
        for (uint64_t r = 0; r < gi.order(); ++r) {
            if (r < table[r]) {
                blk.labels.push_back(static_cast<uint32_t>(r));
                blk.moved.push_back(table[r]);
            }
        }
        blocks_.push_back(std::move(blk));
    }
}

double KDictionary::amplitude() const { return std::sqrt(std::ldexp(1.0, -cfg_.m)); }

namespace {

double dot(std::span<const double> a, std::span<const double> b) {
    long double acc = 0;
    for (size_t i = 0; i < a.size(); ++i) acc += static_cast<long double>(a[i]) * b[i];
    return static_cast<double>(acc);
}

u128 dictionary_dim_bound(const SpaceConfig& cfg) { return k_dictionary_columns(cfg); }

std::vector<double> densify(const SparseState& psi, uint64_t dim) {
    std::vector<double> v(dim, 0.0);
    for (const auto& [idx, amp] : psi.entries()) {
        if (idx >= dim) throw std::invalid_argument("state index out of range for this space");
        v[static_cast<uint64_t>(idx)] = amp;
    }
    return v;
}

}  // namespace

ProjectionReport p1_least_squares(const KDictionary& dict, const SparseState& psi,
                                  const EngineLimits& lim) {
    const uint64_t D = dict.dimension();
    const uint64_t C = dict.columns();
    const double amp = dict.amplitude();
    uint64_t max_iters = lim.lsq_max_iters
                             ? lim.lsq_max_iters
                             : static_cast<uint64_t>(20.0 * std::sqrt(static_cast<double>(C))) + 1;

    std::vector<double> r = densify(psi, D);
    const double psi_norm_sq = dot(r, r);
    std::vector<double> q(D, 0.0);
    std::vector<double> x(C, 0.0), p(C, 0.0), s(C, 0.0);

    auto apply_bt = [&](const std::vector<double>& vec, std::vector<double>& out) {
        dict.for_each_column([&](uint64_t col, std::span<const uint64_t> idx) {
            double acc = 0;
            for (uint64_t i : idx) acc += vec[i];
            out[col] = amp * acc;
        });
    };
    auto apply_b = [&](const std::vector<double>& coef, std::vector<double>& out) {
        std::fill(out.begin(), out.end(), 0.0);
        dict.for_each_column([&](uint64_t col, std::span<const uint64_t> idx) {
            double v = amp * coef[col];
            if (v == 0.0) return;
            for (uint64_t i : idx) out[i] += v;
        });
    };

    apply_bt(r, s);
    p = s;
    double gamma = dot(s, s);
    const double grad0 = std::sqrt(gamma);
    uint64_t it = 0;
    bool converged = grad0 == 0.0;  // psi already orthogonal to the span
    double rel = converged ? 0.0 : 1.0;
    while (!converged && it < max_iters) {
        ++it;
        apply_b(p, q);
        double qq = dot(q, q);
        if (qq == 0.0) {
            converged = true;
            break;
        }
        double alpha = gamma / qq;
        for (uint64_t j = 0; j < C; ++j) x[j] += alpha * p[j];
        for (uint64_t i = 0; i < D; ++i) r[i] -= alpha * q[i];
        apply_bt(r, s);
        double gamma_next = dot(s, s);
        rel = std::sqrt(gamma_next) / grad0;
        if (rel <= lim.lsq_tol) {
            converged = true;
            break;
        }
        double beta = gamma_next / gamma;
        gamma = gamma_next;
        for (uint64_t j = 0; j < C; ++j) p[j] = s[j] + beta * p[j];
    }

    ProjectionReport rep;
    double rr = dot(r, r);
    rep.p1 = std::max(0.0, psi_norm_sq - rr);
    rep.p0 = 1.0 - rep.p1;
    rep.method = ProjectionMethod::dictionary_least_squares;
    rep.residual_norm = std::sqrt(rr);
    rep.iterations = it;
    rep.dictionary_size = C;
    rep.dim_bound = dictionary_dim_bound(dict.config());
    rep.converged = converged;
    return rep;
}

ProjectionReport p1_least_squares(const SparseState& psi, const SpaceConfig& cfg,
                                  const EngineLimits& lim, std::vector<int> swap_filter) {
    KDictionary dict(cfg, lim.nnz_budget, std::move(swap_filter));
    return p1_least_squares(dict, psi, lim);
}

// ---------------------------------------------------------------------------
// Dense rank-revealing route.
// ---------------------------------------------------------------------------

struct DenseProjector::Impl {
    SpaceConfig cfg;
    uint64_t dimension = 0;
    uint64_t columns = 0;
    Eigen::MatrixXd q;  // dimension x rank, orthonormal columns
    int64_t rank = 0;

    void build_svd(const KDictionary& dict);
    void build_blocked(const KDictionary& dict);
};

namespace {
constexpr double kRankTol = 1e-10;  // relative singular-value cutoff
}

// Densifies the dictionary and takes a thin SVD; rank = count of singular
// values above kRankTol * sigma_max.
void DenseProjector::Impl::build_svd(const KDictionary& dict) {
    Impl& impl = *this;
    Eigen::MatrixXd b(impl.dimension, impl.columns);
    b.setZero();
    const double amp = dict.amplitude();
    dict.for_each_column([&](uint64_t col, std::span<const uint64_t> idx) {
        for (uint64_t i : idx) b(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(col)) = amp;
    });
    Eigen::BDCSVD<Eigen::MatrixXd> svd(b, Eigen::ComputeThinU);
    const auto& sv = svd.singularValues();
    double cut = sv.size() ? sv(0) * kRankTol : 0.0;
    int64_t rank = 0;
    for (Eigen::Index i = 0; i < sv.size(); ++i)
        if (sv(i) > cut) ++rank;
    impl.q = svd.matrixU().leftCols(rank);
    impl.rank = rank;
}

// Blocked Gram-Schmidt with two reorthogonalization passes. Exploits that
// the columns of a single swap have pairwise disjoint supports (they are
// already orthonormal), so the first swap seeds the basis for free. Columns
// whose residual drops below kRankTol (all dictionary columns are unit norm)
// are dependent.
void DenseProjector::Impl::build_blocked(const KDictionary& dict) {
    Impl& impl = *this;
    const Eigen::Index d = static_cast<Eigen::Index>(impl.dimension);
    const Eigen::Index c_total = static_cast<Eigen::Index>(impl.columns);
    const Eigen::Index max_rank = std::min(d, c_total);
    const double amp = dict.amplitude();
    const uint64_t per_swap = impl.columns / dict.swap_ranks().size();

    impl.q.setZero(d, max_rank);
    Eigen::Index rank = 0;

    const Eigen::Index block_cols = 256;
    Eigen::MatrixXd z(d, block_cols);
    std::vector<uint64_t> cols_in_block;
    cols_in_block.reserve(static_cast<size_t>(block_cols));

    auto flush = [&](Eigen::Index bc) {
        if (bc == 0) return;
        auto zb = z.leftCols(bc);
        if (rank > 0) {
            auto qb = impl.q.leftCols(rank);
            zb -= qb * (qb.transpose() * zb);
            zb -= qb * (qb.transpose() * zb);
        }
        // in-block rank-revealing QR; pivots with residual <= kRankTol are
        // dependent on what was already accepted
        Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(zb);
        const auto& rdiag = qr.matrixR().diagonal();
        Eigen::Index keep = 0;
        for (Eigen::Index i = 0; i < std::min(bc, d - rank); ++i) {
            if (std::abs(rdiag(i)) > kRankTol)
                ++keep;
            else
                break;  // ColPiv orders |R_ii| non-increasing
        }
        if (keep > 0) {
            Eigen::MatrixXd qnew = qr.householderQ() * Eigen::MatrixXd::Identity(d, keep);
            impl.q.middleCols(rank, keep) = qnew;
            rank += keep;
        }
    };

    Eigen::Index bc = 0;
    dict.for_each_column([&](uint64_t col, std::span<const uint64_t> idx) {
        if (col < per_swap) {
            // first swap: disjoint supports, unit norm
            for (uint64_t i : idx) impl.q(static_cast<Eigen::Index>(i), rank) = amp;
            ++rank;
            return;
        }
        z.col(bc).setZero();
        for (uint64_t i : idx) z(static_cast<Eigen::Index>(i), bc) = amp;
        if (++bc == block_cols) {
            flush(bc);
            bc = 0;
        }
    });
    flush(bc);
    impl.q.conservativeResize(d, rank);
    impl.rank = rank;
}

DenseProjector::DenseProjector(const SpaceConfig& cfg, const EngineLimits& lim,
                               std::vector<int> swap_filter)
    : impl_(std::make_unique<Impl>()) {
    if (cfg.dimension > lim.dense_max_dimension)
        throw resource_error("dense method: dimension " + to_string_u128(cfg.dimension) +
                             " over the guard of " + std::to_string(lim.dense_max_dimension));
    KDictionary dict(cfg, lim.nnz_budget, std::move(swap_filter));
    if (dict.columns() > lim.dense_max_columns)
        throw resource_error("dense method: " + std::to_string(dict.columns()) +
                             " columns over the guard of " + std::to_string(lim.dense_max_columns));
    impl_->cfg = cfg;
    impl_->dimension = dict.dimension();
    impl_->columns = dict.columns();
    if (impl_->dimension * impl_->columns <= 2'000'000)
        impl_->build_svd(dict);
    else
        impl_->build_blocked(dict);
}

DenseProjector::~DenseProjector() = default;
DenseProjector::DenseProjector(DenseProjector&&) noexcept = default;
DenseProjector& DenseProjector::operator=(DenseProjector&&) noexcept = default;

int64_t DenseProjector::rank() const { return impl_->rank; }
uint64_t DenseProjector::columns() const { return impl_->columns; }

ProjectionReport DenseProjector::project(const SparseState& psi) const {
    Eigen::VectorXd y = Eigen::VectorXd::Zero(impl_->rank);
    for (const auto& [idx, amp] : psi.entries()) {
        if (idx >= impl_->dimension)
            throw std::invalid_argument("state index out of range for this space");
        y += amp * impl_->q.row(static_cast<Eigen::Index>(static_cast<uint64_t>(idx))).transpose();
    }
    ProjectionReport rep;
    rep.p1 = y.squaredNorm();
    rep.p0 = 1.0 - rep.p1;
    rep.method = ProjectionMethod::dense_orthonormal;
    rep.residual_norm = std::sqrt(std::max(0.0, psi.norm_sq() - rep.p1));
    rep.iterations = 0;
    rep.dictionary_size = impl_->columns;
    rep.dim_bound = dictionary_dim_bound(impl_->cfg);
    rep.converged = true;
    rep.measured_rank = impl_->rank;
    return rep;
}

ProjectionReport p1_dense(const SparseState& psi, const SpaceConfig& cfg, const EngineLimits& lim,
                          std::vector<int> swap_filter) {
    DenseProjector proj(cfg, lim, std::move(swap_filter));
    return proj.project(psi);
}

// ---------------------------------------------------------------------------

UnionBound union_bound_check(std::span<const WreathElement> reps, const HiddenSubgroup& h,
                             const SpaceConfig& cfg) {
    UnionBound ub;
    for (const auto& k : involutive_swaps(cfg.n)) {
        double e = swap_expectation(reps, h, k);
        ub.sum += e;
        ub.max = std::max(ub.max, e);
    }
    return ub;
}

void check_sandwich(double p1, const UnionBound& ub, double tol) {
    if (p1 < ub.max - tol || p1 > ub.sum + tol)
        throw theorem_violation("p1 = " + format_double(p1) + " escapes the swap-expectation sandwich [" +
                                format_double(ub.max) + ", " + format_double(ub.sum) + "]");
}

ProjectionMethod select_method(const SpaceConfig& cfg, const EngineLimits& lim) {
    u128 cols = k_dictionary_columns(cfg);
    if (cols <= lim.exact_max_columns) return ProjectionMethod::exact_rational;
    if (cfg.dimension <= lim.dense_max_dimension && cols <= lim.dense_max_columns)
        return ProjectionMethod::dense_orthonormal;
    u128 nnz = checked_mul_u128(cols, u128{1} << cfg.m);
    if (nnz <= lim.nnz_budget) return ProjectionMethod::dictionary_least_squares;
    throw resource_error("no projection method admits this configuration (dictionary " +
                         to_string_u128(cols) + " columns, " + to_string_u128(nnz) + " nonzeros)");
}

// ---------------------------------------------------------------------------

struct P1Solver::Impl {
    std::unique_ptr<ExactProjector> exact;
    std::unique_ptr<DenseProjector> dense;
    std::unique_ptr<KDictionary> dict;
};

P1Solver::P1Solver(const SpaceConfig& cfg, const EngineLimits& lim, ProjectionMethod method)
    : cfg_(cfg), lim_(lim), method_(method), impl_(std::make_unique<Impl>()) {}

P1Solver::~P1Solver() = default;
P1Solver::P1Solver(P1Solver&&) noexcept = default;

ProjectionReport P1Solver::run(std::span<const WreathElement> reps, const HiddenSubgroup& h) {
    switch (method_) {
        case ProjectionMethod::exact_rational: {
            if (!impl_->exact) impl_->exact = std::make_unique<ExactProjector>(cfg_, lim_);
            return to_report(impl_->exact->p1(reps, h), cfg_, impl_->exact->columns());
        }
        case ProjectionMethod::dense_orthonormal: {
            if (!impl_->dense) impl_->dense = std::make_unique<DenseProjector>(cfg_, lim_);
            return impl_->dense->project(coset_tensor_state(reps, h, cfg_, lim_.nnz_budget));
        }
        case ProjectionMethod::dictionary_least_squares: {
            if (!impl_->dict) impl_->dict = std::make_unique<KDictionary>(cfg_, lim_.nnz_budget);
            return p1_least_squares(*impl_->dict, coset_tensor_state(reps, h, cfg_, lim_.nnz_budget),
                                    lim_);
        }
    }
    throw std::logic_error("P1Solver: unknown method");
}

}  // namespace wreathsim
