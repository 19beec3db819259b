#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "wreathsim/common.hpp"
#include "wreathsim/graph.hpp"
#include "wreathsim/state_space.hpp"

namespace wreathsim {

enum class ProjectionMethod { exact_rational, dense_orthonormal, dictionary_least_squares };

const char* method_name(ProjectionMethod m);
std::optional<ProjectionMethod> method_from_name(const std::string& name);

struct EngineLimits {
    uint64_t exact_max_columns = 512;
    uint64_t dense_max_dimension = 10'000;
    uint64_t dense_max_columns = 10'000;
    uint64_t nnz_budget = kDefaultNnzBudget;
    double lsq_tol = 1e-10;
    uint64_t lsq_max_iters = 0;  // 0 = 20 * sqrt(columns)
};

struct ProjectionReport {
    double p1 = 0.0;
    double p0 = 1.0;
    ProjectionMethod method = ProjectionMethod::dictionary_least_squares;
    double residual_norm = 0.0;
    uint64_t iterations = 0;
    uint64_t dictionary_size = 0;
    u128 dim_bound = 0;  // n! (|G|/2)^m
    bool converged = true;
    int64_t measured_rank = -1;  // dim H1 as seen by the dense method
};

// Streaming view of the k-vector dictionary: per-swap right-multiplication
// tables plus sorted canonical coset labels. Columns are enumerated
// swap-major, labels in lexicographic order, matching for_each_k_vector_id.
class KDictionary {
public:
    KDictionary(const SpaceConfig& cfg, uint64_t nnz_budget, std::vector<int> swap_filter = {});

    const SpaceConfig& config() const { return cfg_; }
    uint64_t columns() const { return columns_; }
    uint64_t nnz() const { return columns_ << cfg_.m; }
    uint64_t dimension() const { return dimension_; }
    int entries_per_column() const { return 1 << cfg_.m; }
    double amplitude() const;  // 2^{-m/2}, the normalized k-vector entry
    const std::vector<int>& swap_ranks() const { return swap_ranks_; }

    // visit(column, indices): indices is a span of 2^m basis indices, valid
    // only during the call. Columns stream in a fixed deterministic order.
    template <typename F>
    void for_each_column(F&& visit) const {
        std::vector<uint64_t> idx(static_cast<size_t>(entries_per_column()));
        std::vector<size_t> pos(static_cast<size_t>(cfg_.m));
        uint64_t col = 0;
        for (const auto& blk : blocks_) {
            std::fill(pos.begin(), pos.end(), 0);
            for (;;) {
                for (uint64_t mask = 0; mask < (uint64_t{1} << cfg_.m); ++mask) {
                    uint64_t v = 0;
                    for (int i = 0; i < cfg_.m; ++i) {
                        size_t p = pos[static_cast<size_t>(i)];
                        v = v * cfg_.group_order +
                            ((mask >> (cfg_.m - 1 - i) & 1) ? blk.moved[p] : blk.labels[p]);
                    }
                    idx[static_cast<size_t>(mask)] = v;
                }
                visit(col, std::span<const uint64_t>(idx));
                ++col;
                int i = cfg_.m - 1;
                for (; i >= 0; --i) {
                    if (++pos[static_cast<size_t>(i)] < blk.labels.size()) break;
                    pos[static_cast<size_t>(i)] = 0;
                }
                if (i < 0) break;
            }
        }
    }

private:
    struct SwapBlock {
        std::vector<uint32_t> labels;  // canonical labels, ascending
        std::vector<uint32_t> moved;   // rank(label * k), parallel
    };
    SpaceConfig cfg_;
    std::vector<int> swap_ranks_;
    std::vector<SwapBlock> blocks_;
    uint64_t columns_ = 0;
    uint64_t dimension_ = 0;
};

// Rank-revealing orthonormal basis of the dictionary span, reusable across
// states; building it is the expensive part, projecting is cheap.
class DenseProjector {
public:
    DenseProjector(const SpaceConfig& cfg, const EngineLimits& lim, std::vector<int> swap_filter = {});
    ~DenseProjector();
    DenseProjector(DenseProjector&&) noexcept;
    DenseProjector& operator=(DenseProjector&&) noexcept;

    int64_t rank() const;
    uint64_t columns() const;
    ProjectionReport project(const SparseState& psi) const;

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

ProjectionReport p1_dense(const SparseState& psi, const SpaceConfig& cfg,
                          const EngineLimits& lim = {}, std::vector<int> swap_filter = {});

// Matrix-free conjugate-direction least squares (CGLS) over the streamed
// dictionary; returns p1 = |psi|^2 - |r|^2, a lower bound when flagged
// unconverged.
ProjectionReport p1_least_squares(const SparseState& psi, const SpaceConfig& cfg,
                                  const EngineLimits& lim = {}, std::vector<int> swap_filter = {});
ProjectionReport p1_least_squares(const KDictionary& dict, const SparseState& psi,
                                  const EngineLimits& lim = {});

struct UnionBound {
    double sum = 0.0;
    double max = 0.0;
};

// Sum and max of the closed-form swap expectations over all n! swaps.
UnionBound union_bound_check(std::span<const WreathElement> reps, const HiddenSubgroup& h,
                             const SpaceConfig& cfg);

// max_k <P(k)> - tol <= p1 <= sum_k <P(k)> + tol must hold for every
// computed p1; a breach is an implementation bug.
void check_sandwich(double p1, const UnionBound& ub, double tol = 1e-9);

// Strongest method whose size guard admits cfg: exact, then dense, then
// least squares. Throws resource_error when nothing fits.
ProjectionMethod select_method(const SpaceConfig& cfg, const EngineLimits& lim);

// Binds (config, limits, method) and caches the per-dictionary work
// (echelon form, orthonormal basis, streaming tables) across states.
class P1Solver {
public:
    P1Solver(const SpaceConfig& cfg, const EngineLimits& lim, ProjectionMethod method);
    ~P1Solver();
    P1Solver(P1Solver&&) noexcept;

    ProjectionMethod method() const { return method_; }
    ProjectionReport run(std::span<const WreathElement> reps, const HiddenSubgroup& h);

private:
    struct Impl;
    SpaceConfig cfg_;
    EngineLimits lim_;
    ProjectionMethod method_;
    std::unique_ptr<Impl> impl_;
};

}  // namespace wreathsim
