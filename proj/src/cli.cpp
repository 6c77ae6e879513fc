#include <blocktrans/cli.hpp>

#include <fstream>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include <blocktrans/instance_io.hpp>
#include <blocktrans/matroid.hpp>

#ifndef BLOCKTRANS_VERSION
#define BLOCKTRANS_VERSION "dev"
#endif

namespace blocktrans::cli {

namespace {

using ordered_json = nlohmann::ordered_json;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open \"" + path + "\"");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write \"" + path + "\"");
    out << content;
}

std::string error_kind(const Error& e) {
    if (dynamic_cast<const ParseError*>(&e)) return "ParseError";
    if (dynamic_cast<const PartitionError*>(&e)) return "PartitionError";
    if (dynamic_cast<const QuotaMismatchError*>(&e)) return "QuotaMismatch";
    if (dynamic_cast<const NotPrimeError*>(&e)) return "NotPrime";
    if (dynamic_cast<const OutOfRangeError*>(&e)) return "OutOfRange";
    if (dynamic_cast<const TooManyBlocksError*>(&e)) return "TooManyBlocks";
    if (dynamic_cast<const SearchSpaceTooLargeError*>(&e)) return "SearchSpaceTooLarge";
    if (dynamic_cast<const GroundTooLargeError*>(&e)) return "GroundTooLarge";
    if (dynamic_cast<const TooManyFamiliesError*>(&e)) return "TooManyFamilies";
    if (dynamic_cast<const FamiliesNotDisjointError*>(&e)) return "FamiliesNotDisjoint";
    if (dynamic_cast<const InternalInconsistencyError*>(&e)) return "InternalInconsistency";
    if (dynamic_cast<const IndexOutOfRangeError*>(&e)) return "IndexOutOfRange";
    return "Error";
}

bool is_guard_error(const Error& e) {
    return dynamic_cast<const TooManyBlocksError*>(&e) != nullptr ||
           dynamic_cast<const SearchSpaceTooLargeError*>(&e) != nullptr ||
           dynamic_cast<const GroundTooLargeError*>(&e) != nullptr ||
           dynamic_cast<const TooManyFamiliesError*>(&e) != nullptr;
}

void emit_error(std::ostream& err, const Error& e) {
    ordered_json doc;
    doc["error"] = error_kind(e);
    doc["message"] = e.what();
    if (const auto* parse = dynamic_cast<const ParseError*>(&e)) {
        doc["line"] = parse->line();
        doc["column"] = parse->column();
    }
    err << doc.dump(2) << "\n";
}

ordered_json instance_summary(const BlockInstance& inst) {
    ordered_json doc;
    doc["field"] = inst.matrix.field().to_string();
    doc["rows"] = inst.matrix.n_rows();
    doc["cols"] = inst.matrix.n_cols();
    doc["row_blocks"] = inst.row_blocks.size();
    doc["col_blocks"] = inst.col_blocks.size();
    doc["total_quota"] = inst.total_quota();
    return doc;
}

ordered_json envelope(const char* command, const BlockInstance& inst) {
    ordered_json doc;
    doc["tool"] = "blocktrans";
    doc["tool_version"] = BLOCKTRANS_VERSION;
    doc["format_version"] = kCertificateFormatVersion;
    doc["command"] = command;
    doc["instance"] = instance_summary(inst);
    return doc;
}

ordered_json picks_json(const std::vector<IndexSet>& picks) {
    ordered_json out = ordered_json::array();
    for (const IndexSet& block : picks) out.push_back(block);
    return out;
}

void add_selection(ordered_json& doc, const BlockInstance& inst, const Selection& sel) {
    doc["row_blocks_selected"] = picks_json(sel.row_picks);
    doc["col_blocks_selected"] = picks_json(sel.col_picks);
    doc["determinant"] =
        inst.matrix.submatrix(sel.all_rows(), sel.all_cols()).determinant().to_string();
}

void add_violation(ordered_json& doc, const ConditionViolation& violation) {
    doc["violating_row_blocks"] = violation.row_block_set;
    doc["violating_col_blocks"] = violation.col_block_set;
    doc["lhs_rank"] = violation.lhs_rank;
    doc["rhs_bound"] = violation.rhs_bound;
}

void print_document(std::ostream& out, const ordered_json& doc) { out << doc.dump(2) << "\n"; }

// Witness subsets rendered as element labels; for linking/exchange axioms
// the masks alternate row side, column side.
ordered_json witnesses_json(const AxiomViolation& violation,
                            const std::vector<std::string>& row_labels,
                            const std::vector<std::string>& col_labels,
                            const std::vector<std::string>* single_ground) {
    ordered_json out = ordered_json::array();
    for (std::size_t i = 0; i < violation.witnesses.size(); ++i) {
        const std::vector<std::string>& labels =
            single_ground != nullptr ? *single_ground : (i % 2 == 0 ? row_labels : col_labels);
        ordered_json subset = ordered_json::array();
        SubsetMask mask = violation.witnesses[i];
        for (std::size_t bit = 0; bit < labels.size(); ++bit) {
            if ((mask >> bit) & 1) subset.push_back(labels[bit]);
        }
        out.push_back(subset);
    }
    return out;
}

ordered_json report_json(const AxiomReport& report, const std::vector<std::string>& row_labels,
                         const std::vector<std::string>& col_labels,
                         const std::vector<std::string>* single_ground) {
    ordered_json doc;
    doc["passed"] = report.passed;
    doc["mode"] = report.mode.kind == VerifyMode::Kind::exhaustive ? "exhaustive" : "sampled";
    if (report.mode.kind == VerifyMode::Kind::sampled) {
        doc["seed"] = report.mode.seed;
        doc["samples"] = report.mode.samples;
    }
    doc["subsets_checked"] = report.subsets_checked;
    ordered_json violations = ordered_json::array();
    for (const AxiomViolation& violation : report.violations) {
        ordered_json entry;
        entry["axiom"] = axiom_name(violation.axiom);
        entry["witnesses"] = witnesses_json(violation, row_labels, col_labels, single_ground);
        entry["lhs"] = violation.lhs;
        entry["rhs"] = violation.rhs;
        violations.push_back(entry);
    }
    doc["violations"] = violations;
    return doc;
}

int run_check(const std::string& path, std::ostream& out) {
    const BlockInstance inst = parse_instance(read_file(path));
    const ConditionCheck result = check_conditions(inst);
    ordered_json doc = envelope("check", inst);
    doc["status"] = result.feasible ? "feasible" : "infeasible";
    if (result.violation.has_value()) add_violation(doc, *result.violation);
    print_document(out, doc);
    return result.feasible ? 0 : 1;
}

int run_solve(const std::string& path, std::ostream& out) {
    const BlockInstance inst = parse_instance(read_file(path));
    const Certificate cert = extract_witness(inst);
    ordered_json doc = envelope("solve", inst);
    doc["status"] = cert.verdict == Verdict::feasible ? "feasible" : "infeasible";
    if (cert.selection.has_value()) add_selection(doc, inst, *cert.selection);
    if (cert.violation.has_value()) add_violation(doc, *cert.violation);
    print_document(out, doc);
    return cert.verdict == Verdict::feasible ? 0 : 1;
}

int run_oracle(const std::string& path, std::uint64_t limit, std::ostream& out) {
    const BlockInstance inst = parse_instance(read_file(path));
    const std::optional<Selection> sel = brute_force_solve(inst, limit);
    ordered_json doc = envelope("oracle", inst);
    doc["status"] = sel.has_value() ? "feasible" : "infeasible";
    if (sel.has_value()) add_selection(doc, inst, *sel);
    print_document(out, doc);
    return sel.has_value() ? 0 : 1;
}

int run_axioms(const std::string& path, bool sampled, std::size_t samples, std::uint64_t seed,
               std::ostream& out) {
    const BlockInstance inst = parse_instance(read_file(path));
    const VerifyMode mode =
        sampled ? VerifyMode::sampled(seed, samples) : VerifyMode::exhaustive();

    const RankOracle kung = make_kung_oracle(inst.matrix);
    const AxiomReport matroid = verify_matroid_axioms(kung, mode);
    const AxiomReport bimatroid = verify_bimatroid_axioms(inst.matrix, mode);
    const AxiomReport exchange = verify_rank_exchange(inst.matrix, mode);

    std::vector<std::string> row_labels, col_labels;
    for (std::size_t r = 0; r < inst.matrix.n_rows(); ++r) {
        row_labels.push_back("row" + std::to_string(r));
    }
    for (std::size_t c = 0; c < inst.matrix.n_cols(); ++c) {
        col_labels.push_back("col" + std::to_string(c));
    }

    ordered_json doc = envelope("axioms", inst);
    const bool passed = matroid.passed && bimatroid.passed && exchange.passed;
    doc["status"] = passed ? "pass" : "violations";
    doc["matroid"] = report_json(matroid, row_labels, col_labels, &kung.ground().labels());
    doc["bimatroid"] = report_json(bimatroid, row_labels, col_labels, nullptr);
    doc["rank_exchange"] = report_json(exchange, row_labels, col_labels, nullptr);
    print_document(out, doc);
    return passed ? 0 : 1;
}

int run_gen(std::uint64_t seed, const std::string& field_text, std::size_t max_rows,
            std::size_t max_cols, std::size_t row_blocks, std::size_t col_blocks,
            const std::string& out_path, std::ostream& out) {
    const FieldSpec field = make_field(field_text);
    const BlockInstance inst =
        random_instance(seed, field, max_rows, max_cols, row_blocks, col_blocks);
    write_file(out_path, format_instance(inst));
    ordered_json doc = envelope("gen", inst);
    doc["seed"] = seed;
    doc["out"] = out_path;
    print_document(out, doc);
    return 0;
}

}  // namespace

const char* tool_version() { return BLOCKTRANS_VERSION; }

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"feasibility and witness certificates for block-quota submatrix selection"};
    app.set_version_flag("--version", std::string("blocktrans ") + BLOCKTRANS_VERSION +
                                          " (instance format " +
                                          std::to_string(kInstanceFormatVersion) +
                                          ", certificate format " +
                                          std::to_string(kCertificateFormatVersion) + ")");
    app.require_subcommand(0, 1);

    std::string check_file, solve_file, oracle_file, axioms_file;
    std::uint64_t oracle_limit = kDefaultSearchLimit;
    std::size_t axioms_samples = 0;
    std::uint64_t axioms_seed = 0;
    std::uint64_t gen_seed = 0;
    std::string gen_field = "gf 5";
    std::size_t gen_max_rows = 6, gen_max_cols = 6, gen_row_blocks = 3, gen_col_blocks = 3;
    std::string gen_out;

    CLI::App* check = app.add_subcommand("check", "decide feasibility via the rank conditions");
    check->add_option("file", check_file, "instance file")->required();

    CLI::App* solve = app.add_subcommand("solve", "decide and extract a witness selection");
    solve->add_option("file", solve_file, "instance file")->required();

    CLI::App* oracle = app.add_subcommand("oracle", "brute-force search over all selections");
    oracle->add_option("file", oracle_file, "instance file")->required();
    oracle->add_option("--limit", oracle_limit, "candidate cap (default 10^7)");

    CLI::App* axioms =
        app.add_subcommand("axioms", "verify matroid/bimatroid axioms on the instance matrix");
    axioms->add_option("file", axioms_file, "instance file")->required();
    CLI::Option* sampled_opt =
        axioms->add_option("--sampled", axioms_samples, "check this many random samples");
    axioms->add_option("--seed", axioms_seed, "sampling seed");

    CLI::App* gen = app.add_subcommand("gen", "generate a random instance file");
    gen->add_option("--seed", gen_seed, "generator seed")->required();
    gen->add_option("--field", gen_field, "field descriptor, e.g. \"gf 5\" or \"rational\"");
    gen->add_option("--max-rows", gen_max_rows, "maximum matrix rows");
    gen->add_option("--max-cols", gen_max_cols, "maximum matrix columns");
    gen->add_option("--row-blocks", gen_row_blocks, "maximum row blocks");
    gen->add_option("--col-blocks", gen_col_blocks, "maximum column blocks");
    gen->add_option("--out", gen_out, "output path")->required();

    std::vector<const char*> argv;
    argv.push_back("blocktrans");
    for (const std::string& arg : args) argv.push_back(arg.c_str());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForVersion& e) {
        out << app.version() << "\n";
        return 0;
    } catch (const CLI::ParseError& e) {
        ordered_json doc;
        doc["error"] = "Usage";
        doc["message"] = e.what();
        err << doc.dump(2) << "\n";
        return 2;
    }

    try {
        if (check->parsed()) return run_check(check_file, out);
        if (solve->parsed()) return run_solve(solve_file, out);
        if (oracle->parsed()) return run_oracle(oracle_file, oracle_limit, out);
        if (axioms->parsed()) {
            return run_axioms(axioms_file, sampled_opt->count() > 0, axioms_samples, axioms_seed,
                              out);
        }
        if (gen->parsed()) {
            return run_gen(gen_seed, gen_field, gen_max_rows, gen_max_cols, gen_row_blocks,
                           gen_col_blocks, gen_out, out);
        }
        out << app.help();
        return 2;
    } catch (const Error& e) {
        emit_error(err, e);
        return is_guard_error(e) ? 3 : 2;
    }
}

}  // namespace blocktrans::cli
