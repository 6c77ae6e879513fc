#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <blocktrans/matrix.hpp>

namespace blocktrans {

/// Subsets of a ground set are bitmasks over the element order fixed at
/// construction; bit i is element i.
using SubsetMask = std::uint64_t;

constexpr std::size_t kMaxGroundSize = 63;
constexpr std::size_t kMaxExhaustiveGround = 12;   // matroid axiom sweep
constexpr std::size_t kMaxExhaustiveSide = 5;      // bimatroid / exchange sweeps
constexpr std::size_t kMaxFamilies = 20;

/// Ordered set of distinct element labels.
class GroundSet {
public:
    explicit GroundSet(std::vector<std::string> labels);

    std::size_t size() const { return labels_.size(); }
    const std::string& label(std::size_t i) const { return labels_.at(i); }
    const std::vector<std::string>& labels() const { return labels_; }
    SubsetMask full_mask() const { return size() == 0 ? 0 : (SubsetMask{1} << size()) - 1; }

private:
    std::vector<std::string> labels_;
};

/// A set function r : 2^E -> N supplied by the caller. Queries must be
/// deterministic; verifiers spot re-query to enforce this.
class RankOracle {
public:
    using QueryFn = std::function<std::size_t(SubsetMask)>;

    RankOracle(GroundSet ground, QueryFn query);

    const GroundSet& ground() const { return ground_; }

    /// Throws ElementNotInGroundError if the mask mentions elements
    /// outside the ground set.
    std::size_t query(SubsetMask subset) const;

private:
    GroundSet ground_;
    QueryFn query_;
};

enum class Axiom {
    rank_bounded_by_cardinality,  // r(A) <= |A|
    rank_monotone,                // A subset of B implies r(A) <= r(B)
    rank_submodular,              // r(A u B) + r(A n B) <= r(A) + r(B)
    linking_bounded_by_min,       // lambda(U,V) <= min(|U|,|V|)
    linking_monotone,             // lambda monotone in both arguments
    linking_exchange,             // the bimatroid exchange inequality
    complement_rank_exchange,     // the exchange inequality on complemented columns
};

const char* axiom_name(Axiom axiom);

/// One failed axiom instance. The inequality asserted by the axiom reads
/// lhs <= rhs; a violation stores lhs > rhs together with the subsets it
/// was evaluated on, so it can be re-checked independently. For matroid
/// axioms the witnesses are subsets of the ground set; for linking and
/// exchange axioms they alternate row mask, column mask.
struct AxiomViolation {
    Axiom axiom;
    std::vector<SubsetMask> witnesses;
    std::size_t lhs = 0;
    std::size_t rhs = 0;

    bool operator==(const AxiomViolation&) const = default;
};

struct VerifyMode {
    enum class Kind { exhaustive, sampled } kind = Kind::exhaustive;
    std::uint64_t seed = 0;
    std::size_t samples = 0;

    static VerifyMode exhaustive() { return {}; }
    static VerifyMode sampled(std::uint64_t seed, std::size_t samples) {
        return {Kind::sampled, seed, samples};
    }

    bool operator==(const VerifyMode&) const = default;
};

struct AxiomReport {
    bool passed = true;
    std::vector<AxiomViolation> violations;
    std::size_t subsets_checked = 0;  // distinct subset / tuple rank evaluations
    VerifyMode mode;

    bool operator==(const AxiomReport&) const = default;
};

/// Checks the three matroid rank axioms. Exhaustive mode sweeps every
/// subset for boundedness, every (subset, extra element) step for
/// monotonicity and every subset pair for submodularity; it requires
/// |E| <= 12. Sampled mode draws the given number of random instances of
/// each axiom from the stated seed.
AxiomReport verify_matroid_axioms(const RankOracle& oracle, const VerifyMode& mode);

/// True iff r(A) = |A|.
bool is_independent(const RankOracle& oracle, SubsetMask subset);

/// The rank function induced on E = rows u cols by a matrix:
/// r(s u t) = rank(G(s, T \ t)) + |t|.
std::size_t kung_rank(const ExactMatrix& g, std::span<const std::size_t> row_set,
                      std::span<const std::size_t> col_set);

/// Rank oracle over E = rows u cols (row bits first) querying kung_rank.
/// Requires n_rows + n_cols <= 63.
RankOracle make_kung_oracle(const ExactMatrix& g);

/// lambda(U, V) = rank(G(U, V)).
std::size_t linking_rank(const ExactMatrix& g, std::span<const std::size_t> row_set,
                         std::span<const std::size_t> col_set);

/// Checks the three bimatroid axioms of the linking function
/// lambda(U, V) = rank(G(U, V)). Exhaustive mode requires
/// n_rows <= 5 and n_cols <= 5.
AxiomReport verify_bimatroid_axioms(const ExactMatrix& g, const VerifyMode& mode);

/// Checks, for quadruples (s1, t1, s2, t2), the inequality
///   rank(G(s1 n s2, T\(t1 n t2))) + rank(G(s1 u s2, T\(t1 u t2)))
///     <= rank(G(s1, T\t1)) + rank(G(s2, T\t2)),
/// the linking exchange axiom instantiated at complemented column sets and
/// exactly the submodularity input to the matroid of kung_rank.
AxiomReport verify_rank_exchange(const ExactMatrix& g, const VerifyMode& mode);

struct RadoHallViolation {
    std::vector<std::size_t> family_indices;  // the violating I, ascending
    std::size_t lhs = 0;                      // r(union of the families in I)
    std::size_t rhs = 0;                      // sum of their quotas

    bool operator==(const RadoHallViolation&) const = default;
};

struct RadoHallResult {
    bool feasible = true;
    std::optional<RadoHallViolation> violation;

    bool operator==(const RadoHallResult&) const = default;
};

/// Decides whether pairwise disjoint subsets a_i of the families A_i with
/// |a_i| = quota_i and independent union exist, by checking
/// r(union over I of A_i) >= sum over I of quota_i for every I in ascending
/// bitmask order. Returns the first violating I, if any. Existence only;
/// no transversal is constructed.
RadoHallResult rado_hall_feasible(const RankOracle& oracle,
                                  const std::vector<SubsetMask>& families,
                                  const std::vector<std::size_t>& quotas);

}  // namespace blocktrans
