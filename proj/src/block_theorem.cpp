#include <blocktrans/block_theorem.hpp>

#include <algorithm>
#include <bit>
#include <random>
#include <utility>

#include <blocktrans/matroid.hpp>

namespace blocktrans {

namespace {

void check_partition(const std::vector<IndexSet>& blocks, std::size_t dimension,
                     const char* what) {
    std::vector<int> seen(dimension, 0);
    for (const IndexSet& block : blocks) {
        for (std::size_t i = 0; i < block.size(); ++i) {
            if (block[i] >= dimension) {
                throw PartitionError(std::string(what) + " index " + std::to_string(block[i]) +
                                     " out of range (dimension " + std::to_string(dimension) +
                                     ")");
            }
            if (i > 0 && block[i] <= block[i - 1]) {
                throw PartitionError(std::string(what) + " block is not strictly ascending");
            }
            if (++seen[block[i]] > 1) {
                throw PartitionError(std::string(what) + " index " + std::to_string(block[i]) +
                                     " appears in more than one block");
            }
        }
    }
    for (std::size_t i = 0; i < dimension; ++i) {
        if (seen[i] == 0) {
            throw PartitionError(std::string(what) + " index " + std::to_string(i) +
                                 " is missing from the blocks");
        }
    }
}

IndexSet merge_sorted(const IndexSet& a, const IndexSet& b) {
    IndexSet out;
    out.reserve(a.size() + b.size());
    std::merge(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

// One side of the enumeration, restricted to positive-quota blocks (the
// conditions contributed by zero-quota blocks are implied). Union index
// sets are tabulated up to 2^16 subsets and merged on the fly past that.
class SidePositive {
public:
    SidePositive(const std::vector<IndexSet>& blocks, const std::vector<std::size_t>& quotas)
        : blocks_(blocks), quotas_(quotas) {
        for (std::size_t i = 0; i < blocks.size(); ++i) {
            if (quotas[i] > 0) positive_.push_back(i);
        }
        if (positive_.size() <= 16) {
            table_.resize(std::size_t{1} << positive_.size());
            for (std::size_t mask = 1; mask < table_.size(); ++mask) {
                const auto low = static_cast<std::size_t>(std::countr_zero(mask));
                table_[mask] = merge_sorted(table_[mask & (mask - 1)], blocks[positive_[low]]);
            }
        }
    }

    std::size_t subset_count() const { return std::size_t{1} << positive_.size(); }

    IndexSet union_for(std::size_t mask) const {
        if (!table_.empty()) return table_[mask];
        IndexSet out;
        for (std::size_t rest = mask; rest != 0; rest &= rest - 1) {
            out = merge_sorted(out, blocks_[positive_[std::countr_zero(rest)]]);
        }
        return out;
    }

    std::size_t quota_sum(std::size_t mask) const {
        std::size_t sum = 0;
        for (std::size_t rest = mask; rest != 0; rest &= rest - 1) {
            sum += quotas_[positive_[std::countr_zero(rest)]];
        }
        return sum;
    }

    // Original block indices for a compressed mask, ascending.
    IndexSet expand(std::size_t mask) const {
        IndexSet out;
        for (std::size_t rest = mask; rest != 0; rest &= rest - 1) {
            out.push_back(positive_[std::countr_zero(rest)]);
        }
        return out;
    }

private:
    const std::vector<IndexSet>& blocks_;
    const std::vector<std::size_t>& quotas_;
    std::vector<std::size_t> positive_;
    std::vector<IndexSet> table_;
};

// The enumeration core, shared by the public entry point and the
// self-reduction (which refines instances past the public block cap by
// one extra fixed block per side).
ConditionCheck check_conditions_impl(const BlockInstance& inst) {
    const SidePositive rows(inst.row_blocks, inst.row_quotas);
    const SidePositive cols(inst.col_blocks, inst.col_quotas);
    long long total = 0;
    for (std::size_t q : inst.row_quotas) total += static_cast<long long>(q);

    for (std::size_t imask = 0; imask < rows.subset_count(); ++imask) {
        const IndexSet row_union = rows.union_for(imask);
        const long long row_quota = static_cast<long long>(rows.quota_sum(imask));
        for (std::size_t kmask = 0; kmask < cols.subset_count(); ++kmask) {
            const long long rhs = row_quota + static_cast<long long>(cols.quota_sum(kmask)) -
                                  total;
            if (rhs <= 0) continue;  // cannot be violated; condition implied
            const std::size_t lhs =
                inst.matrix.submatrix(row_union, cols.union_for(kmask)).rank();
            if (static_cast<long long>(lhs) < rhs) {
                ConditionCheck result;
                result.feasible = false;
                result.violation = ConditionViolation{rows.expand(imask), cols.expand(kmask),
                                                      lhs, static_cast<std::size_t>(rhs)};
                return result;
            }
        }
    }
    return ConditionCheck{};
}

void check_block_cap(const BlockInstance& inst) {
    const std::size_t blocks = inst.row_blocks.size() + inst.col_blocks.size();
    if (blocks > kMaxConditionBlocks) {
        throw TooManyBlocksError(std::to_string(blocks) + " blocks exceed the cap of " +
                                 std::to_string(kMaxConditionBlocks));
    }
}

std::uint64_t binomial_clamped(std::size_t n, std::size_t k, std::uint64_t cap) {
    if (k > n) return 0;
    k = std::min(k, n - k);
    std::uint64_t result = 1;
    for (std::size_t i = 1; i <= k; ++i) {
        // result * (n - k + i) / i stays integral at every step
        const std::uint64_t numerator = n - k + i;
        if (result > (cap * 2) / numerator) return cap * 2;
        result = result * numerator / i;
    }
    return result;
}

// Lexicographic k-combinations of one block's members.
class CombinationOdometer {
public:
    CombinationOdometer(const IndexSet& members, std::size_t k) : members_(members), k_(k) {
        reset();
    }

    void reset() {
        positions_.resize(k_);
        for (std::size_t i = 0; i < k_; ++i) positions_[i] = i;
    }

    // False once the last combination has been passed (odometer wraps).
    bool advance() {
        if (k_ == 0) return false;
        std::size_t i = k_;
        while (i > 0) {
            --i;
            if (positions_[i] + (k_ - i) <= members_.size() - 1) {
                ++positions_[i];
                for (std::size_t j = i + 1; j < k_; ++j) positions_[j] = positions_[j - 1] + 1;
                return true;
            }
        }
        reset();
        return false;
    }

    IndexSet current() const {
        IndexSet out(k_);
        for (std::size_t i = 0; i < k_; ++i) out[i] = members_[positions_[i]];
        return out;
    }

private:
    const IndexSet& members_;
    std::size_t k_;
    std::vector<std::size_t> positions_;
};

}  // namespace

void BlockInstance::validate() const {
    if (row_blocks.size() != row_quotas.size() || col_blocks.size() != col_quotas.size()) {
        throw Error("one quota required per block");
    }
    check_partition(row_blocks, matrix.n_rows(), "row");
    check_partition(col_blocks, matrix.n_cols(), "column");
    std::size_t row_total = 0, col_total = 0;
    for (std::size_t q : row_quotas) row_total += q;
    for (std::size_t q : col_quotas) col_total += q;
    if (row_total != col_total) {
        throw QuotaMismatchError("row quotas sum to " + std::to_string(row_total) +
                                 " but column quotas sum to " + std::to_string(col_total));
    }
}

std::size_t BlockInstance::total_quota() const {
    validate();
    std::size_t total = 0;
    for (std::size_t q : row_quotas) total += q;
    return total;
}

BlockInstance BlockInstance::transposed() const {
    return BlockInstance{matrix.transpose(), col_blocks, row_blocks, col_quotas, row_quotas};
}

bool BlockInstance::operator==(const BlockInstance& rhs) const {
    return matrix == rhs.matrix && row_blocks == rhs.row_blocks && col_blocks == rhs.col_blocks &&
           row_quotas == rhs.row_quotas && col_quotas == rhs.col_quotas;
}

IndexSet Selection::all_rows() const {
    IndexSet out;
    for (const IndexSet& picks : row_picks) out = merge_sorted(out, picks);
    return out;
}

IndexSet Selection::all_cols() const {
    IndexSet out;
    for (const IndexSet& picks : col_picks) out = merge_sorted(out, picks);
    return out;
}

ConditionCheck check_conditions(const BlockInstance& inst) {
    inst.validate();
    check_block_cap(inst);
    return check_conditions_impl(inst);
}

Certificate extract_witness(const BlockInstance& inst) {
    inst.validate();
    check_block_cap(inst);
    {
        const ConditionCheck initial = check_conditions_impl(inst);
        if (!initial.feasible) {
            Certificate cert;
            cert.verdict = Verdict::infeasible;
            cert.violation = initial.violation;
            return cert;
        }
    }

    const std::size_t m = inst.row_blocks.size();
    const std::size_t n = inst.col_blocks.size();
    BlockInstance work = inst;
    work.row_blocks.emplace_back();
    work.row_quotas.push_back(0);
    work.col_blocks.emplace_back();
    work.col_quotas.push_back(0);

    Selection picked{std::vector<IndexSet>(m), std::vector<IndexSet>(n)};

    auto fix_side = [&work](std::size_t original_blocks, std::vector<IndexSet>& blocks,
                            std::vector<std::size_t>& quotas, std::vector<IndexSet>& picks) {
        IndexSet& fixed = blocks[original_blocks];
        std::size_t& fixed_quota = quotas[original_blocks];
        for (;;) {
            std::size_t active = original_blocks;
            for (std::size_t b = 0; b < original_blocks; ++b) {
                if (quotas[b] > 0) {
                    active = b;
                    break;
                }
            }
            if (active == original_blocks) break;

            bool committed = false;
            const IndexSet candidates = blocks[active];
            for (std::size_t member : candidates) {
                blocks[active].erase(
                    std::find(blocks[active].begin(), blocks[active].end(), member));
                --quotas[active];
                fixed.insert(std::lower_bound(fixed.begin(), fixed.end(), member), member);
                ++fixed_quota;
                if (check_conditions_impl(work).feasible) {
                    picks[active].insert(
                        std::lower_bound(picks[active].begin(), picks[active].end(), member),
                        member);
                    committed = true;
                    break;
                }
                fixed.erase(std::find(fixed.begin(), fixed.end(), member));
                --fixed_quota;
                blocks[active].insert(
                    std::lower_bound(blocks[active].begin(), blocks[active].end(), member),
                    member);
                ++quotas[active];
            }
            if (!committed) {
                throw InternalInconsistencyError(
                    "no member of a residual block preserves feasibility");
            }
        }
    };

    fix_side(m, work.row_blocks, work.row_quotas, picked.row_picks);
    fix_side(n, work.col_blocks, work.col_quotas, picked.col_picks);

    const ExactMatrix witness = inst.matrix.submatrix(picked.all_rows(), picked.all_cols());
    if (!witness.is_nonsingular()) {
        throw InternalInconsistencyError("extracted selection is singular");
    }
    Certificate cert;
    cert.verdict = Verdict::feasible;
    cert.selection = std::move(picked);
    cert.determinant = witness.determinant();
    return cert;
}

SelectionCheck verify_selection(const BlockInstance& inst, const Selection& sel) {
    inst.validate();
    if (sel.row_picks.size() != inst.row_blocks.size() ||
        sel.col_picks.size() != inst.col_blocks.size()) {
        return {false, SelectionDefect::block_count};
    }
    auto side_defect = [](const std::vector<IndexSet>& picks,
                          const std::vector<IndexSet>& blocks,
                          const std::vector<std::size_t>& quotas) {
        for (std::size_t b = 0; b < picks.size(); ++b) {
            if (picks[b].size() != quotas[b]) return SelectionDefect::cardinality;
        }
        for (std::size_t b = 0; b < picks.size(); ++b) {
            for (std::size_t i = 0; i < picks[b].size(); ++i) {
                if (i > 0 && picks[b][i] <= picks[b][i - 1]) return SelectionDefect::membership;
                if (!std::binary_search(blocks[b].begin(), blocks[b].end(), picks[b][i])) {
                    return SelectionDefect::membership;
                }
            }
        }
        return SelectionDefect::none;
    };
    if (auto defect = side_defect(sel.row_picks, inst.row_blocks, inst.row_quotas);
        defect != SelectionDefect::none) {
        return {false, defect};
    }
    if (auto defect = side_defect(sel.col_picks, inst.col_blocks, inst.col_quotas);
        defect != SelectionDefect::none) {
        return {false, defect};
    }
    const ExactMatrix chosen = inst.matrix.submatrix(sel.all_rows(), sel.all_cols());
    if (!chosen.is_nonsingular()) return {false, SelectionDefect::singular};
    return {true, SelectionDefect::none};
}

std::optional<Selection> brute_force_solve(const BlockInstance& inst,
                                           std::uint64_t search_limit) {
    inst.validate();

    std::vector<std::uint64_t> ways;
    for (std::size_t b = 0; b < inst.row_blocks.size(); ++b) {
        ways.push_back(binomial_clamped(inst.row_blocks[b].size(), inst.row_quotas[b],
                                        search_limit));
    }
    for (std::size_t b = 0; b < inst.col_blocks.size(); ++b) {
        ways.push_back(binomial_clamped(inst.col_blocks[b].size(), inst.col_quotas[b],
                                        search_limit));
    }
    // A quota above its block size makes the whole space empty, no matter
    // how large the other factors are.
    for (std::uint64_t w : ways) {
        if (w == 0) return std::nullopt;
    }
    std::uint64_t candidates = 1;
    for (std::uint64_t w : ways) {
        if (candidates > search_limit / w) {
            throw SearchSpaceTooLargeError("brute-force space exceeds the cap of " +
                                           std::to_string(search_limit) + " candidates");
        }
        candidates *= w;
    }
    if (candidates > search_limit) {
        throw SearchSpaceTooLargeError("brute-force space exceeds the cap of " +
                                       std::to_string(search_limit) + " candidates");
    }

    std::vector<CombinationOdometer> wheels;
    wheels.reserve(inst.row_blocks.size() + inst.col_blocks.size());
    for (std::size_t b = 0; b < inst.row_blocks.size(); ++b) {
        wheels.emplace_back(inst.row_blocks[b], inst.row_quotas[b]);
    }
    for (std::size_t b = 0; b < inst.col_blocks.size(); ++b) {
        wheels.emplace_back(inst.col_blocks[b], inst.col_quotas[b]);
    }

    const std::size_t m = inst.row_blocks.size();
    for (;;) {
        Selection sel{std::vector<IndexSet>(m),
                      std::vector<IndexSet>(inst.col_blocks.size())};
        for (std::size_t w = 0; w < wheels.size(); ++w) {
            if (w < m) {
                sel.row_picks[w] = wheels[w].current();
            } else {
                sel.col_picks[w - m] = wheels[w].current();
            }
        }
        if (inst.matrix.submatrix(sel.all_rows(), sel.all_cols()).is_nonsingular()) {
            return sel;
        }
        // advance the rightmost wheel, carrying leftward
        std::size_t w = wheels.size();
        bool advanced = false;
        while (w > 0) {
            --w;
            if (wheels[w].advance()) {
                advanced = true;
                break;
            }
        }
        if (!advanced) return std::nullopt;
    }
}

KungRadoResult rado_hall_on_kung(const BlockInstance& inst) {
    inst.validate();
    check_block_cap(inst);

    for (std::size_t j = 0; j < inst.col_blocks.size(); ++j) {
        if (inst.col_quotas[j] > inst.col_blocks[j].size()) {
            KungRadoResult result;
            result.feasible = false;
            result.violation =
                KungRadoViolation{{}, {j}, inst.col_blocks[j].size(), inst.col_quotas[j]};
            return result;
        }
    }

    const RankOracle oracle = make_kung_oracle(inst.matrix);
    const std::size_t n_rows = inst.matrix.n_rows();
    std::vector<SubsetMask> families;
    std::vector<std::size_t> quotas;
    for (std::size_t i = 0; i < inst.row_blocks.size(); ++i) {
        SubsetMask mask = 0;
        for (std::size_t r : inst.row_blocks[i]) mask |= SubsetMask{1} << r;
        families.push_back(mask);
        quotas.push_back(inst.row_quotas[i]);
    }
    for (std::size_t j = 0; j < inst.col_blocks.size(); ++j) {
        SubsetMask mask = 0;
        for (std::size_t c : inst.col_blocks[j]) mask |= SubsetMask{1} << (n_rows + c);
        families.push_back(mask);
        quotas.push_back(inst.col_blocks[j].size() - inst.col_quotas[j]);
    }

    const RadoHallResult generic = rado_hall_feasible(oracle, families, quotas);
    KungRadoResult result;
    result.feasible = generic.feasible;
    if (generic.violation.has_value()) {
        KungRadoViolation detail;
        const std::size_t m = inst.row_blocks.size();
        for (std::size_t family : generic.violation->family_indices) {
            if (family < m) {
                detail.row_families.push_back(family);
            } else {
                detail.col_families.push_back(family - m);
            }
        }
        detail.lhs = generic.violation->lhs;
        detail.rhs = generic.violation->rhs;
        result.violation = detail;
    }
    return result;
}

BlockInstance random_instance(std::uint64_t seed, const FieldSpec& field, std::size_t max_rows,
                              std::size_t max_cols, std::size_t max_row_blocks,
                              std::size_t max_col_blocks) {
    if (max_rows == 0 || max_cols == 0 || max_row_blocks == 0 || max_col_blocks == 0) {
        throw Error("generator bounds must be positive");
    }
    std::mt19937_64 rng(seed);
    auto pick = [&rng](std::size_t n) { return static_cast<std::size_t>(rng() % n); };

    const std::size_t n_rows = 1 + pick(max_rows);
    const std::size_t n_cols = 1 + pick(max_cols);
    const std::size_t m = 1 + pick(max_row_blocks);
    const std::size_t n = 1 + pick(max_col_blocks);

    std::vector<IndexSet> row_blocks(m), col_blocks(n);
    for (std::size_t r = 0; r < n_rows; ++r) row_blocks[pick(m)].push_back(r);
    for (std::size_t c = 0; c < n_cols; ++c) col_blocks[pick(n)].push_back(c);

    ExactMatrix matrix(field, n_rows, n_cols);
    for (std::size_t r = 0; r < n_rows; ++r) {
        for (std::size_t c = 0; c < n_cols; ++c) {
            if (field.kind == FieldKind::prime) {
                matrix.set(r, c, Scalar::from_integer(field, static_cast<long long>(
                                                                 pick(field.modulus))));
            } else {
                matrix.set(r, c,
                           Scalar::from_integer(field, static_cast<long long>(pick(11)) - 5));
            }
        }
    }

    const std::size_t total = pick(std::min(n_rows, n_cols) + 1);
    std::vector<std::size_t> row_quotas(m, 0), col_quotas(n, 0);
    for (std::size_t i = 0; i < total; ++i) ++row_quotas[pick(m)];
    for (std::size_t i = 0; i < total; ++i) ++col_quotas[pick(n)];

    return BlockInstance{std::move(matrix), std::move(row_blocks), std::move(col_blocks),
                         std::move(row_quotas), std::move(col_quotas)};
}

}  // namespace blocktrans
