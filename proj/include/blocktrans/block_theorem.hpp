#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include <blocktrans/matrix.hpp>

namespace blocktrans {

constexpr std::size_t kMaxConditionBlocks = 24;          // row blocks + column blocks
constexpr std::uint64_t kDefaultSearchLimit = 10'000'000;  // brute-force candidate cap

/// A matrix together with a partition of its rows into blocks S_1..S_m, a
/// partition of its columns into blocks T_1..T_n, and per-block selection
/// quotas. The row quotas and column quotas must have equal sums; that
/// common value R is the side length of the sought nonsingular submatrix.
struct BlockInstance {
    ExactMatrix matrix;
    std::vector<IndexSet> row_blocks;
    std::vector<IndexSet> col_blocks;
    std::vector<std::size_t> row_quotas;
    std::vector<std::size_t> col_quotas;

    /// Throws PartitionError if the blocks do not partition the row and
    /// column index sets exactly, QuotaMismatchError if the quota sums
    /// differ. Empty blocks and quotas exceeding their block size are
    /// both permitted.
    void validate() const;

    /// The common quota sum R. Calls validate().
    std::size_t total_quota() const;

    /// The same instance with rows and columns swapped.
    BlockInstance transposed() const;

    bool operator==(const BlockInstance& rhs) const;
};

/// Per-block index picks; row_picks[i] is drawn from row block i.
struct Selection {
    std::vector<IndexSet> row_picks;
    std::vector<IndexSet> col_picks;

    /// All picked row indices merged ascending; likewise for columns.
    IndexSet all_rows() const;
    IndexSet all_cols() const;

    bool operator==(const Selection&) const = default;
};

/// A violated instance of the feasibility condition: block index sets I, K
/// with rank(G(union of S_i over I, union of T_k over K)) < sum of the
/// I quotas + sum of the K quotas - R.
struct ConditionViolation {
    IndexSet row_block_set;  // I, original block indices ascending
    IndexSet col_block_set;  // K
    std::size_t lhs_rank = 0;
    std::size_t rhs_bound = 0;

    bool operator==(const ConditionViolation&) const = default;
};

struct ConditionCheck {
    bool feasible = true;
    std::optional<ConditionViolation> violation;

    bool operator==(const ConditionCheck&) const = default;
};

/// Decides feasibility by checking every pair (I, K) of block index sets in
/// ascending (I bitmask, K bitmask) order, skipping zero-quota blocks whose
/// conditions are implied. Returns the first violation, if any. Requires
/// m + n <= 24.
ConditionCheck check_conditions(const BlockInstance& inst);

enum class Verdict { feasible, infeasible };

/// Machine-checkable outcome: a selection whose square submatrix has
/// nonzero determinant, or the first violated rank condition.
struct Certificate {
    Verdict verdict = Verdict::feasible;
    std::optional<Selection> selection;        // feasible only
    std::optional<Scalar> determinant;         // feasible only
    std::optional<ConditionViolation> violation;  // infeasible only

    bool operator==(const Certificate&) const = default;
};

/// Full decision plus construction. Infeasible instances return the
/// check_conditions certificate. Feasible instances are solved by
/// self-reduction: per side, repeatedly take the lowest residual block
/// with positive quota, try its members in ascending order, and commit the
/// first whose fixation keeps the refined instance feasible; rows are fixed
/// before columns. The final submatrix is re-verified before returning.
Certificate extract_witness(const BlockInstance& inst);

enum class SelectionDefect {
    none,
    block_count,  // wrong number of pick lists
    cardinality,  // some |picks_i| differs from its quota
    membership,   // a pick falls outside its block (or a list is malformed)
    singular,     // the selected square submatrix has determinant zero
};

struct SelectionCheck {
    bool ok = true;
    SelectionDefect defect = SelectionDefect::none;

    bool operator==(const SelectionCheck&) const = default;
};

/// Never throws on a bad selection; defects come back as reason codes.
SelectionCheck verify_selection(const BlockInstance& inst, const Selection& sel);

/// Independent existence oracle: enumerates every block-respecting
/// selection in lexicographic order of per-block combinations (row blocks
/// first, rightmost block advancing fastest) and returns the first whose
/// submatrix is nonsingular. Throws SearchSpaceTooLargeError when the
/// candidate count exceeds the limit.
std::optional<Selection> brute_force_solve(const BlockInstance& inst,
                                           std::uint64_t search_limit = kDefaultSearchLimit);

struct KungRadoViolation {
    IndexSet row_families;  // violating row-block indices
    IndexSet col_families;  // violating column-block indices
    std::size_t lhs = 0;
    std::size_t rhs = 0;

    bool operator==(const KungRadoViolation&) const = default;
};

struct KungRadoResult {
    bool feasible = true;
    std::optional<KungRadoViolation> violation;

    bool operator==(const KungRadoResult&) const = default;
};

/// The same feasibility question answered through the generic Rado-Hall
/// test on the kung_rank oracle, with column families quota'd by their
/// complements |T_j| - t_j. Exists to cross-validate check_conditions; the
/// two must always agree. Column quotas above their block size short-circuit
/// to infeasible. Requires n_rows + n_cols <= 63 for the oracle ground.
KungRadoResult rado_hall_on_kung(const BlockInstance& inst);

/// Seeded generator used by the test sweeps. Dimensions, block counts,
/// block assignment, entries (integers in [-5, 5] for rationals), the
/// common quota total R and its distribution over blocks are all drawn
/// from one PRNG stream, so a seed fully determines the instance. Quotas
/// may exceed their block size; such instances are simply infeasible.
BlockInstance random_instance(std::uint64_t seed, const FieldSpec& field, std::size_t max_rows,
                              std::size_t max_cols, std::size_t max_row_blocks,
                              std::size_t max_col_blocks);

}  // namespace blocktrans
