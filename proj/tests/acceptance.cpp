// Acceptance suite. Each criterion prints one PASS/FAIL line; the binary
// exits nonzero if any criterion fails. All arithmetic is exact, so every
// comparison is zero-tolerance.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include <blocktrans/cli.hpp>
#include <blocktrans/instance_io.hpp>
#include <blocktrans/matroid.hpp>

#include "oracles.hpp"

using namespace blocktrans;
using nlohmann::json;

namespace {

struct Criterion {
    int number;
    std::string name;
    bool passed;
    std::string detail;
};

std::vector<FieldSpec> acceptance_fields() {
    return {make_field("gf 2"), make_field("gf 3"), make_field("gf 5"),
            FieldSpec::rationals()};
}

// The shared instance pool: >= 500 seeded draws over all four fields,
// matrices up to 6x6, up to 3 row and 3 column blocks.
std::vector<BlockInstance> criterion_pool() {
    const std::vector<FieldSpec> fields = acceptance_fields();
    std::vector<BlockInstance> pool;
    pool.reserve(600);
    for (std::uint64_t seed = 1; seed <= 600; ++seed) {
        pool.push_back(random_instance(seed, fields[seed % fields.size()], 6, 6, 3, 3));
    }
    return pool;
}

Criterion oracle_equivalence(const std::vector<BlockInstance>& pool, double pool_seconds) {
    const auto t0 = std::chrono::steady_clock::now();
    std::size_t agreements = 0, feasible = 0;
    for (const BlockInstance& inst : pool) {
        const bool direct = check_conditions(inst).feasible;
        const bool brute = brute_force_solve(inst).has_value();
        if (direct == brute) ++agreements;
        if (direct) ++feasible;
    }
    const double elapsed =
        pool_seconds +
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::ostringstream detail;
    detail << agreements << "/" << pool.size() << " verdicts agree, " << feasible
           << " feasible, generated and solved in " << elapsed << "s";
    return {1, "conditions verdict equals brute-force existence",
            agreements == pool.size() && elapsed < 60.0, detail.str()};
}

Criterion kung_matroid_axioms() {
    const std::vector<FieldSpec> fields = acceptance_fields();
    std::size_t clean = 0;
    const std::size_t total = 100;
    for (std::uint64_t seed = 1; seed <= total; ++seed) {
        const ExactMatrix m =
            random_instance(seed, fields[seed % fields.size()], 5, 5, 2, 2).matrix;
        const AxiomReport report =
            verify_matroid_axioms(make_kung_oracle(m), VerifyMode::exhaustive());
        if (report.passed && report.violations.empty()) ++clean;
    }
    std::ostringstream detail;
    detail << clean << "/" << total << " exhaustive sweeps clean (|E| <= 10)";
    return {2, "induced rank oracles satisfy all matroid axioms", clean == total, detail.str()};
}

Criterion bimatroid_and_exchange() {
    const std::vector<FieldSpec> fields = acceptance_fields();
    std::size_t clean = 0;
    const std::size_t total = 50;
    for (std::uint64_t seed = 1; seed <= total; ++seed) {
        const ExactMatrix m =
            random_instance(seed, fields[seed % fields.size()], 4, 4, 2, 2).matrix;
        const AxiomReport linking = verify_bimatroid_axioms(m, VerifyMode::exhaustive());
        const AxiomReport exchange = verify_rank_exchange(m, VerifyMode::exhaustive());
        if (linking.passed && exchange.passed) ++clean;
    }
    std::ostringstream detail;
    detail << clean << "/" << total << " matrices pass both exhaustive sweeps";
    return {3, "linking axioms and the complement rank exchange inequality hold",
            clean == total, detail.str()};
}

bool witness_is_valid(const BlockInstance& inst, const Certificate& cert) {
    if (cert.verdict == Verdict::feasible) {
        if (!cert.selection.has_value() || !cert.determinant.has_value()) return false;
        const Selection& sel = *cert.selection;
        if (sel.row_picks.size() != inst.row_blocks.size()) return false;
        if (sel.col_picks.size() != inst.col_blocks.size()) return false;
        for (std::size_t b = 0; b < sel.row_picks.size(); ++b) {
            if (sel.row_picks[b].size() != inst.row_quotas[b]) return false;
        }
        for (std::size_t b = 0; b < sel.col_picks.size(); ++b) {
            if (sel.col_picks[b].size() != inst.col_quotas[b]) return false;
        }
        if (!verify_selection(inst, sel).ok) return false;
        const ExactMatrix chosen = inst.matrix.submatrix(sel.all_rows(), sel.all_cols());
        const Scalar det = chosen.determinant();
        if (det.is_zero() || det != *cert.determinant) return false;
        if (chosen.n_rows() <= 4 && testing::cofactor_determinant(chosen) != det) return false;
        return true;
    }
    if (!cert.violation.has_value()) return false;
    const ConditionViolation& violation = *cert.violation;
    IndexSet rows, cols;
    std::size_t quota_sum = 0;
    for (std::size_t i : violation.row_block_set) {
        rows.insert(rows.end(), inst.row_blocks[i].begin(), inst.row_blocks[i].end());
        quota_sum += inst.row_quotas[i];
    }
    for (std::size_t k : violation.col_block_set) {
        cols.insert(cols.end(), inst.col_blocks[k].begin(), inst.col_blocks[k].end());
        quota_sum += inst.col_quotas[k];
    }
    std::sort(rows.begin(), rows.end());
    std::sort(cols.begin(), cols.end());
    const std::size_t total = inst.total_quota();
    if (quota_sum < total) return false;
    if (violation.rhs_bound != quota_sum - total) return false;
    const std::size_t lhs = inst.matrix.submatrix(rows, cols).rank();
    return lhs == violation.lhs_rank && lhs < violation.rhs_bound;
}

Criterion witness_validity(const std::vector<BlockInstance>& pool) {
    std::size_t valid = 0, feasible = 0;
    for (const BlockInstance& inst : pool) {
        const Certificate cert = extract_witness(inst);
        if (cert.verdict == Verdict::feasible) ++feasible;
        if ((cert.verdict == Verdict::feasible) == check_conditions(inst).feasible &&
            witness_is_valid(inst, cert)) {
            ++valid;
        }
    }
    std::ostringstream detail;
    detail << valid << "/" << pool.size() << " certificates re-verified (" << feasible
           << " witnesses, " << pool.size() - feasible << " violations)";
    return {4, "every certificate re-verifies independently", valid == pool.size(),
            detail.str()};
}

Criterion derivation_equivalence(const std::vector<BlockInstance>& pool) {
    std::size_t agreements = 0;
    for (const BlockInstance& inst : pool) {
        if (rado_hall_on_kung(inst).feasible == check_conditions(inst).feasible) ++agreements;
    }
    std::ostringstream detail;
    detail << agreements << "/" << pool.size() << " verdicts agree";
    return {5, "transversal test on the induced matroid matches the direct conditions",
            agreements == pool.size(), detail.str()};
}

Criterion transpose_symmetry(const std::vector<BlockInstance>& pool) {
    std::size_t agreements = 0;
    for (const BlockInstance& inst : pool) {
        if (check_conditions(inst).feasible == check_conditions(inst.transposed()).feasible) {
            ++agreements;
        }
    }
    std::ostringstream detail;
    detail << agreements << "/" << pool.size() << " verdicts invariant";
    return {6, "verdicts are invariant under transposition", agreements == pool.size(),
            detail.str()};
}

struct CommandResult {
    int exit_code;
    std::string out;
    std::string err;
};

CommandResult run_cli(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    const int code = cli::run_command(args, out, err);
    return {code, out.str(), err.str()};
}

std::string slurp(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

bool pipeline_round_trip(std::uint64_t seed, std::string& failure) {
    const std::vector<const char*> field_names = {"gf 2", "gf 3", "gf 5", "rational"};
    const auto path = std::filesystem::temp_directory_path() /
                      ("blocktrans_acceptance_" + std::to_string(seed) + ".bt");
    const CommandResult gen =
        run_cli({"gen", "--seed", std::to_string(seed), "--field",
                 field_names[seed % field_names.size()], "--out", path.string()});
    if (gen.exit_code != 0) {
        failure = "gen failed for seed " + std::to_string(seed);
        return false;
    }

    BlockInstance inst = parse_instance(slurp(path));

    const CommandResult first = run_cli({"solve", path.string()});
    const CommandResult second = run_cli({"solve", path.string()});
    std::filesystem::remove(path);
    if (first.out != second.out || first.exit_code != second.exit_code) {
        failure = "solve output not reproducible for seed " + std::to_string(seed);
        return false;
    }
    if (first.exit_code != 0 && first.exit_code != 1) {
        failure = "solve exited " + std::to_string(first.exit_code) + " for seed " +
                  std::to_string(seed);
        return false;
    }

    const json doc = json::parse(first.out);
    if (first.exit_code == 0) {
        Selection sel;
        for (const auto& block : doc["row_blocks_selected"]) {
            sel.row_picks.push_back(block.get<IndexSet>());
        }
        for (const auto& block : doc["col_blocks_selected"]) {
            sel.col_picks.push_back(block.get<IndexSet>());
        }
        if (!verify_selection(inst, sel).ok) {
            failure = "selection failed verification for seed " + std::to_string(seed);
            return false;
        }
    } else {
        if (doc["status"] != "infeasible" || !check_conditions(inst).violation.has_value()) {
            failure = "infeasible document inconsistent for seed " + std::to_string(seed);
            return false;
        }
    }
    return true;
}

Criterion cli_pipeline() {
    std::string failure;
    std::size_t round_trips = 0;
    for (std::uint64_t seed = 1; seed <= 50; ++seed) {
        if (pipeline_round_trip(seed, failure)) {
            ++round_trips;
        } else {
            break;
        }
    }

    std::size_t golden_matches = 0;
    const std::filesystem::path golden_dir = BLOCKTRANS_GOLDEN_DIR;
    for (const char* stem : {"gf5_3x3", "allones_2x2", "identity_2x2"}) {
        const CommandResult result =
            run_cli({"solve", (golden_dir / (std::string(stem) + ".bt")).string()});
        const std::string expected =
            slurp(golden_dir / (std::string(stem) + ".solve.json"));
        if (!expected.empty() && result.out == expected) ++golden_matches;
    }

    std::ostringstream detail;
    detail << round_trips << "/50 pipeline round-trips, " << golden_matches
           << "/3 golden documents byte-identical";
    if (!failure.empty()) detail << "; first failure: " << failure;
    return {7, "gen/parse/solve/verify pipeline and golden files",
            round_trips == 50 && golden_matches == 3, detail.str()};
}

}  // namespace

int main() {
    std::vector<Criterion> results;

    const auto start = std::chrono::steady_clock::now();
    const std::vector<BlockInstance> pool = criterion_pool();
    const double pool_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    results.push_back(oracle_equivalence(pool, pool_seconds));
    results.push_back(kung_matroid_axioms());
    results.push_back(bimatroid_and_exchange());
    results.push_back(witness_validity(pool));
    results.push_back(derivation_equivalence(pool));
    results.push_back(transpose_symmetry(pool));
    results.push_back(cli_pipeline());

    bool all_passed = true;
    for (const Criterion& criterion : results) {
        std::printf("[%s] criterion %d: %s (%s)\n", criterion.passed ? "PASS" : "FAIL",
                    criterion.number, criterion.name.c_str(), criterion.detail.c_str());
        all_passed = all_passed && criterion.passed;
    }
    std::printf("%s\n", all_passed ? "acceptance: all criteria passed"
                                   : "acceptance: FAILURES PRESENT");
    return all_passed ? 0 : 1;
}
