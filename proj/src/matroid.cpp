#include <blocktrans/matroid.hpp>

#include <algorithm>
#include <bit>
#include <random>
#include <set>
#include <utility>

namespace blocktrans {

namespace {

std::vector<std::size_t> mask_to_indices(SubsetMask mask) {
    std::vector<std::size_t> out;
    while (mask != 0) {
        out.push_back(static_cast<std::size_t>(std::countr_zero(mask)));
        mask &= mask - 1;
    }
    return out;
}

// Queries a probe set twice and insists on identical answers.
void spot_check_determinism(const RankOracle& oracle, const std::vector<SubsetMask>& probes) {
    for (SubsetMask probe : probes) {
        const std::size_t first = oracle.query(probe);
        const std::size_t second = oracle.query(probe);
        if (first != second) {
            throw Error("rank oracle is not deterministic: subset " + std::to_string(probe) +
                        " answered " + std::to_string(first) + " then " + std::to_string(second));
        }
    }
}

// Precomputed index sets for every subset of one matrix side.
std::vector<IndexSet> all_index_sets(std::size_t n) {
    std::vector<IndexSet> out(std::size_t{1} << n);
    for (SubsetMask mask = 0; mask < out.size(); ++mask) {
        out[mask] = mask_to_indices(mask);
    }
    return out;
}

IndexSet complement_set(SubsetMask mask, std::size_t n) {
    IndexSet out;
    for (std::size_t i = 0; i < n; ++i) {
        if ((mask & (SubsetMask{1} << i)) == 0) out.push_back(i);
    }
    return out;
}

void check_exhaustive_sides(const ExactMatrix& g) {
    if (g.n_rows() > kMaxExhaustiveSide || g.n_cols() > kMaxExhaustiveSide) {
        throw GroundTooLargeError("exhaustive verification needs at most " +
                                  std::to_string(kMaxExhaustiveSide) +
                                  " rows and columns, got " + std::to_string(g.n_rows()) + "x" +
                                  std::to_string(g.n_cols()));
    }
}

// lambda(U, V) tables indexed [row mask][col mask].
std::vector<std::vector<std::uint32_t>> linking_table(const ExactMatrix& g) {
    const auto rows = all_index_sets(g.n_rows());
    const auto cols = all_index_sets(g.n_cols());
    std::vector<std::vector<std::uint32_t>> table(rows.size(),
                                                  std::vector<std::uint32_t>(cols.size(), 0));
    for (std::size_t u = 0; u < rows.size(); ++u) {
        for (std::size_t v = 0; v < cols.size(); ++v) {
            table[u][v] = static_cast<std::uint32_t>(g.submatrix(rows[u], cols[v]).rank());
        }
    }
    return table;
}

// rho(s, t) = rank(G(s, T \ t)) tables indexed [row mask][removed-col mask].
std::vector<std::vector<std::uint32_t>> complement_rank_table(const ExactMatrix& g) {
    const auto rows = all_index_sets(g.n_rows());
    std::vector<std::vector<std::uint32_t>> table(
        rows.size(), std::vector<std::uint32_t>(std::size_t{1} << g.n_cols(), 0));
    for (std::size_t s = 0; s < rows.size(); ++s) {
        for (SubsetMask t = 0; t < (SubsetMask{1} << g.n_cols()); ++t) {
            const IndexSet kept = complement_set(t, g.n_cols());
            table[s][t] = static_cast<std::uint32_t>(g.submatrix(rows[s], kept).rank());
        }
    }
    return table;
}

SubsetMask random_mask(std::mt19937_64& rng, SubsetMask full) {
    return rng() & full;
}

}  // namespace

const char* axiom_name(Axiom axiom) {
    switch (axiom) {
        case Axiom::rank_bounded_by_cardinality: return "rank_bounded_by_cardinality";
        case Axiom::rank_monotone: return "rank_monotone";
        case Axiom::rank_submodular: return "rank_submodular";
        case Axiom::linking_bounded_by_min: return "linking_bounded_by_min";
        case Axiom::linking_monotone: return "linking_monotone";
        case Axiom::linking_exchange: return "linking_exchange";
        case Axiom::complement_rank_exchange: return "complement_rank_exchange";
    }
    return "unknown";
}

GroundSet::GroundSet(std::vector<std::string> labels) : labels_(std::move(labels)) {
    if (labels_.size() > kMaxGroundSize) {
        throw GroundTooLargeError("ground set of " + std::to_string(labels_.size()) +
                                  " elements exceeds the cap of " +
                                  std::to_string(kMaxGroundSize));
    }
    std::set<std::string> seen;
    for (const auto& label : labels_) {
        if (!seen.insert(label).second) {
            throw Error("duplicate ground set label \"" + label + "\"");
        }
    }
}

RankOracle::RankOracle(GroundSet ground, QueryFn query)
    : ground_(std::move(ground)), query_(std::move(query)) {}

std::size_t RankOracle::query(SubsetMask subset) const {
    if ((subset & ~ground_.full_mask()) != 0) {
        throw ElementNotInGroundError("subset mentions elements outside the ground set");
    }
    return query_(subset);
}

AxiomReport verify_matroid_axioms(const RankOracle& oracle, const VerifyMode& mode) {
    const std::size_t n = oracle.ground().size();
    const SubsetMask full = oracle.ground().full_mask();
    AxiomReport report;
    report.mode = mode;

    spot_check_determinism(oracle, {0, full, full / 2, full / 3});

    auto record = [&report](Axiom axiom, std::vector<SubsetMask> witnesses, std::size_t lhs,
                            std::size_t rhs) {
        report.violations.push_back({axiom, std::move(witnesses), lhs, rhs});
    };

    if (mode.kind == VerifyMode::Kind::exhaustive) {
        if (n > kMaxExhaustiveGround) {
            throw GroundTooLargeError("exhaustive matroid verification caps the ground at " +
                                      std::to_string(kMaxExhaustiveGround) + " elements, got " +
                                      std::to_string(n));
        }
        const std::size_t count = std::size_t{1} << n;
        std::vector<std::uint32_t> rank_of(count);
        for (SubsetMask a = 0; a < count; ++a) {
            rank_of[a] = static_cast<std::uint32_t>(oracle.query(a));
        }
        // Axiom 1: bounded by cardinality.
        for (SubsetMask a = 0; a < count; ++a) {
            ++report.subsets_checked;
            const auto size = static_cast<std::size_t>(std::popcount(a));
            if (rank_of[a] > size) record(Axiom::rank_bounded_by_cardinality, {a}, rank_of[a], size);
        }
        // Axiom 2: single-element growth steps cover all nested pairs.
        for (SubsetMask a = 0; a < count; ++a) {
            for (std::size_t e = 0; e < n; ++e) {
                const SubsetMask bit = SubsetMask{1} << e;
                if ((a & bit) != 0) continue;
                ++report.subsets_checked;
                if (rank_of[a] > rank_of[a | bit]) {
                    record(Axiom::rank_monotone, {a, a | bit}, rank_of[a], rank_of[a | bit]);
                }
            }
        }
        // Axiom 3: submodularity over all pairs.
        for (SubsetMask a = 0; a < count; ++a) {
            for (SubsetMask b = 0; b < count; ++b) {
                ++report.subsets_checked;
                const std::size_t lhs = rank_of[a | b] + rank_of[a & b];
                const std::size_t rhs = rank_of[a] + rank_of[b];
                if (lhs > rhs) record(Axiom::rank_submodular, {a, b}, lhs, rhs);
            }
        }
    } else {
        std::mt19937_64 rng(mode.seed);
        for (std::size_t i = 0; i < mode.samples; ++i) {
            const SubsetMask a = random_mask(rng, full);
            ++report.subsets_checked;
            const std::size_t ra = oracle.query(a);
            const auto size = static_cast<std::size_t>(std::popcount(a));
            if (ra > size) record(Axiom::rank_bounded_by_cardinality, {a}, ra, size);

            const SubsetMask b = random_mask(rng, full);
            const SubsetMask lo = a & b, hi = a | b;
            ++report.subsets_checked;
            if (oracle.query(lo) > oracle.query(hi)) {
                record(Axiom::rank_monotone, {lo, hi}, oracle.query(lo), oracle.query(hi));
            }

            const SubsetMask c = random_mask(rng, full);
            const SubsetMask d = random_mask(rng, full);
            ++report.subsets_checked;
            const std::size_t lhs = oracle.query(c | d) + oracle.query(c & d);
            const std::size_t rhs = oracle.query(c) + oracle.query(d);
            if (lhs > rhs) record(Axiom::rank_submodular, {c, d}, lhs, rhs);
        }
    }
    report.passed = report.violations.empty();
    return report;
}

bool is_independent(const RankOracle& oracle, SubsetMask subset) {
    return oracle.query(subset) == static_cast<std::size_t>(std::popcount(subset));
}

std::size_t kung_rank(const ExactMatrix& g, std::span<const std::size_t> row_set,
                      std::span<const std::size_t> col_set) {
    SubsetMask col_mask = 0;
    for (std::size_t c : col_set) {
        if (c >= g.n_cols()) {
            throw IndexOutOfRangeError("column index " + std::to_string(c) +
                                       " out of range (dimension " + std::to_string(g.n_cols()) +
                                       ")");
        }
        col_mask |= SubsetMask{1} << c;
    }
    const IndexSet kept_cols = complement_set(col_mask, g.n_cols());
    return g.submatrix(row_set, kept_cols).rank() + col_set.size();
}

RankOracle make_kung_oracle(const ExactMatrix& g) {
    std::vector<std::string> labels;
    labels.reserve(g.n_rows() + g.n_cols());
    for (std::size_t r = 0; r < g.n_rows(); ++r) labels.push_back("row" + std::to_string(r));
    for (std::size_t c = 0; c < g.n_cols(); ++c) labels.push_back("col" + std::to_string(c));
    GroundSet ground(std::move(labels));
    const std::size_t n_rows = g.n_rows();
    return RankOracle(std::move(ground), [g, n_rows](SubsetMask subset) {
        IndexSet rows, cols;
        for (SubsetMask rest = subset; rest != 0; rest &= rest - 1) {
            const auto i = static_cast<std::size_t>(std::countr_zero(rest));
            if (i < n_rows) {
                rows.push_back(i);
            } else {
                cols.push_back(i - n_rows);
            }
        }
        return kung_rank(g, rows, cols);
    });
}

std::size_t linking_rank(const ExactMatrix& g, std::span<const std::size_t> row_set,
                         std::span<const std::size_t> col_set) {
    return g.submatrix(row_set, col_set).rank();
}

AxiomReport verify_bimatroid_axioms(const ExactMatrix& g, const VerifyMode& mode) {
    AxiomReport report;
    report.mode = mode;
    auto record = [&report](Axiom axiom, std::vector<SubsetMask> witnesses, std::size_t lhs,
                            std::size_t rhs) {
        report.violations.push_back({axiom, std::move(witnesses), lhs, rhs});
    };

    if (mode.kind == VerifyMode::Kind::exhaustive) {
        check_exhaustive_sides(g);
        const auto lambda = linking_table(g);
        const SubsetMask row_count = SubsetMask{1} << g.n_rows();
        const SubsetMask col_count = SubsetMask{1} << g.n_cols();
        // Axiom 1: bounded by min cardinality.
        for (SubsetMask u = 0; u < row_count; ++u) {
            for (SubsetMask v = 0; v < col_count; ++v) {
                ++report.subsets_checked;
                const auto bound = static_cast<std::size_t>(
                    std::min(std::popcount(u), std::popcount(v)));
                if (lambda[u][v] > bound) {
                    record(Axiom::linking_bounded_by_min, {u, v}, lambda[u][v], bound);
                }
            }
        }
        // Axiom 2: monotone under shrinking both arguments.
        for (SubsetMask u = 0; u < row_count; ++u) {
            for (SubsetMask v = 0; v < col_count; ++v) {
                for (SubsetMask up = 0; up <= u; ++up) {
                    if ((up & u) != up) continue;
                    for (SubsetMask vp = 0; vp <= v; ++vp) {
                        if ((vp & v) != vp) continue;
                        ++report.subsets_checked;
                        if (lambda[up][vp] > lambda[u][v]) {
                            record(Axiom::linking_monotone, {up, vp, u, v}, lambda[up][vp],
                                   lambda[u][v]);
                        }
                    }
                }
            }
        }
        // Axiom 3: the exchange inequality.
        for (SubsetMask u1 = 0; u1 < row_count; ++u1) {
            for (SubsetMask v1 = 0; v1 < col_count; ++v1) {
                for (SubsetMask u2 = 0; u2 < row_count; ++u2) {
                    for (SubsetMask v2 = 0; v2 < col_count; ++v2) {
                        ++report.subsets_checked;
                        const std::size_t lhs = lambda[u1 & u2][v1 | v2] + lambda[u1 | u2][v1 & v2];
                        const std::size_t rhs = lambda[u1][v1] + lambda[u2][v2];
                        if (lhs > rhs) {
                            record(Axiom::linking_exchange, {u1, v1, u2, v2}, lhs, rhs);
                        }
                    }
                }
            }
        }
    } else {
        std::mt19937_64 rng(mode.seed);
        const SubsetMask row_full = g.n_rows() == 0 ? 0 : (SubsetMask{1} << g.n_rows()) - 1;
        const SubsetMask col_full = g.n_cols() == 0 ? 0 : (SubsetMask{1} << g.n_cols()) - 1;
        const auto lam = [&g](SubsetMask u, SubsetMask v) {
            return g.submatrix(mask_to_indices(u), mask_to_indices(v)).rank();
        };
        for (std::size_t i = 0; i < mode.samples; ++i) {
            const SubsetMask u = random_mask(rng, row_full);
            const SubsetMask v = random_mask(rng, col_full);
            ++report.subsets_checked;
            const auto bound =
                static_cast<std::size_t>(std::min(std::popcount(u), std::popcount(v)));
            if (lam(u, v) > bound) {
                record(Axiom::linking_bounded_by_min, {u, v}, lam(u, v), bound);
            }

            const SubsetMask up = random_mask(rng, row_full) & u;
            const SubsetMask vp = random_mask(rng, col_full) & v;
            ++report.subsets_checked;
            if (lam(up, vp) > lam(u, v)) {
                record(Axiom::linking_monotone, {up, vp, u, v}, lam(up, vp), lam(u, v));
            }

            const SubsetMask u2 = random_mask(rng, row_full);
            const SubsetMask v2 = random_mask(rng, col_full);
            ++report.subsets_checked;
            const std::size_t lhs = lam(u & u2, v | v2) + lam(u | u2, v & v2);
            const std::size_t rhs = lam(u, v) + lam(u2, v2);
            if (lhs > rhs) record(Axiom::linking_exchange, {u, v, u2, v2}, lhs, rhs);
        }
    }
    report.passed = report.violations.empty();
    return report;
}

AxiomReport verify_rank_exchange(const ExactMatrix& g, const VerifyMode& mode) {
    AxiomReport report;
    report.mode = mode;
    auto record = [&report](std::vector<SubsetMask> witnesses, std::size_t lhs, std::size_t rhs) {
        report.violations.push_back({Axiom::complement_rank_exchange, std::move(witnesses), lhs,
                                     rhs});
    };

    if (mode.kind == VerifyMode::Kind::exhaustive) {
        check_exhaustive_sides(g);
        const auto rho = complement_rank_table(g);
        const SubsetMask row_count = SubsetMask{1} << g.n_rows();
        const SubsetMask col_count = SubsetMask{1} << g.n_cols();
        for (SubsetMask s1 = 0; s1 < row_count; ++s1) {
            for (SubsetMask t1 = 0; t1 < col_count; ++t1) {
                for (SubsetMask s2 = 0; s2 < row_count; ++s2) {
                    for (SubsetMask t2 = 0; t2 < col_count; ++t2) {
                        ++report.subsets_checked;
                        const std::size_t lhs = rho[s1 & s2][t1 & t2] + rho[s1 | s2][t1 | t2];
                        const std::size_t rhs = rho[s1][t1] + rho[s2][t2];
                        if (lhs > rhs) record({s1, t1, s2, t2}, lhs, rhs);
                    }
                }
            }
        }
    } else {
        std::mt19937_64 rng(mode.seed);
        const SubsetMask row_full = g.n_rows() == 0 ? 0 : (SubsetMask{1} << g.n_rows()) - 1;
        const SubsetMask col_full = g.n_cols() == 0 ? 0 : (SubsetMask{1} << g.n_cols()) - 1;
        const auto rho = [&g](SubsetMask s, SubsetMask t) {
            return g.submatrix(mask_to_indices(s), complement_set(t, g.n_cols())).rank();
        };
        for (std::size_t i = 0; i < mode.samples; ++i) {
            const SubsetMask s1 = random_mask(rng, row_full);
            const SubsetMask t1 = random_mask(rng, col_full);
            const SubsetMask s2 = random_mask(rng, row_full);
            const SubsetMask t2 = random_mask(rng, col_full);
            ++report.subsets_checked;
            const std::size_t lhs = rho(s1 & s2, t1 & t2) + rho(s1 | s2, t1 | t2);
            const std::size_t rhs = rho(s1, t1) + rho(s2, t2);
            if (lhs > rhs) record({s1, t1, s2, t2}, lhs, rhs);
        }
    }
    report.passed = report.violations.empty();
    return report;
}

RadoHallResult rado_hall_feasible(const RankOracle& oracle,
                                  const std::vector<SubsetMask>& families,
                                  const std::vector<std::size_t>& quotas) {
    const std::size_t n = families.size();
    if (quotas.size() != n) {
        throw Error("expected one quota per family: " + std::to_string(n) + " families, " +
                    std::to_string(quotas.size()) + " quotas");
    }
    if (n > kMaxFamilies) {
        throw TooManyFamiliesError(std::to_string(n) + " families exceed the cap of " +
                                   std::to_string(kMaxFamilies));
    }
    const SubsetMask full = oracle.ground().full_mask();
    SubsetMask seen = 0;
    for (SubsetMask family : families) {
        if ((family & ~full) != 0) {
            throw ElementNotInGroundError("family mentions elements outside the ground set");
        }
        if ((family & seen) != 0) {
            throw FamiliesNotDisjointError("families overlap");
        }
        seen |= family;
    }
    spot_check_determinism(oracle, {0, seen});

    for (SubsetMask chosen = 0; chosen < (SubsetMask{1} << n); ++chosen) {
        SubsetMask union_mask = 0;
        std::size_t quota_sum = 0;
        for (SubsetMask rest = chosen; rest != 0; rest &= rest - 1) {
            const auto i = static_cast<std::size_t>(std::countr_zero(rest));
            union_mask |= families[i];
            quota_sum += quotas[i];
        }
        const std::size_t rank = oracle.query(union_mask);
        if (rank < quota_sum) {
            RadoHallResult result;
            result.feasible = false;
            result.violation = RadoHallViolation{mask_to_indices(chosen), rank, quota_sum};
            return result;
        }
    }
    return RadoHallResult{};
}

}  // namespace blocktrans
