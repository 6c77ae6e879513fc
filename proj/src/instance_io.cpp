#include <blocktrans/instance_io.hpp>

#include <algorithm>
#include <cctype>
#include <optional>
#include <sstream>

namespace blocktrans {

namespace {

struct Token {
    std::string text;
    std::size_t column;  // 1-based
};

std::vector<Token> tokenize(std::string_view line) {
    std::vector<Token> tokens;
    std::size_t i = 0;
    while (i < line.size()) {
        if (line[i] == '#') break;
        if (std::isspace(static_cast<unsigned char>(line[i]))) {
            ++i;
            continue;
        }
        const std::size_t start = i;
        while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i])) &&
               line[i] != '#') {
            ++i;
        }
        tokens.push_back({std::string(line.substr(start, i - start)), start + 1});
    }
    return tokens;
}

std::size_t parse_count(const Token& token, std::size_t line, const char* what) {
    if (token.text.empty() ||
        !std::all_of(token.text.begin(), token.text.end(),
                     [](char c) { return std::isdigit(static_cast<unsigned char>(c)); })) {
        throw ParseError(line, token.column,
                         std::string("expected a nonnegative ") + what + ", got \"" +
                             token.text + "\"");
    }
    if (token.text.size() > 9) {
        throw ParseError(line, token.column, std::string(what) + " \"" + token.text +
                                                 "\" is unreasonably large");
    }
    return static_cast<std::size_t>(std::stoull(token.text));
}

struct ParserState {
    std::optional<FieldSpec> field;
    std::optional<std::size_t> n_rows;
    std::optional<std::size_t> n_cols;
    std::vector<IndexSet> row_blocks;
    std::vector<IndexSet> col_blocks;
    std::optional<std::vector<std::size_t>> row_quotas;
    std::optional<std::vector<std::size_t>> col_quotas;
};

void parse_block_line(const std::vector<Token>& tokens, std::size_t line,
                      std::vector<IndexSet>& blocks, const char* keyword) {
    if (tokens.size() < 3 || tokens[2].text != ":") {
        throw ParseError(line, tokens.size() > 1 ? tokens[1].column : tokens[0].column,
                         std::string("expected \"") + keyword + " <k> : <indices...>\"");
    }
    const std::size_t number = parse_count(tokens[1], line, "block number");
    if (number != blocks.size()) {
        throw ParseError(line, tokens[1].column,
                         std::string(keyword) + " numbers must be consecutive from 0; expected " +
                             std::to_string(blocks.size()) + ", got " + std::to_string(number));
    }
    IndexSet block;
    for (std::size_t i = 3; i < tokens.size(); ++i) {
        block.push_back(parse_count(tokens[i], line, "index"));
    }
    for (std::size_t i = 1; i < block.size(); ++i) {
        if (block[i] <= block[i - 1]) {
            throw ParseError(line, tokens[3 + i].column,
                             "block indices must be strictly ascending");
        }
    }
    blocks.push_back(std::move(block));
}

std::vector<std::size_t> parse_quota_line(const std::vector<Token>& tokens, std::size_t line) {
    if (tokens.size() < 3 || tokens[2].text != ":") {
        throw ParseError(line, tokens[0].column,
                         "expected \"require rows : <quotas...>\" or \"require cols : ...\"");
    }
    std::vector<std::size_t> quotas;
    for (std::size_t i = 3; i < tokens.size(); ++i) {
        quotas.push_back(parse_count(tokens[i], line, "quota"));
    }
    return quotas;
}

}  // namespace

BlockInstance parse_instance(std::string_view text) {
    ParserState state;
    std::vector<std::vector<Scalar>> matrix_rows;
    bool in_matrix = false;

    std::vector<std::string_view> lines;
    for (std::size_t start = 0; start <= text.size();) {
        const std::size_t eol = std::min(text.find('\n', start), text.size());
        lines.push_back(text.substr(start, eol - start));
        if (eol == text.size()) break;
        start = eol + 1;
    }

    std::size_t line_number = 0;
    for (const std::string_view line : lines) {
        ++line_number;
        const std::vector<Token> tokens = tokenize(line);
        if (tokens.empty()) continue;

        if (in_matrix) {
            if (matrix_rows.size() == *state.n_rows) {
                throw ParseError(line_number, tokens[0].column,
                                 "unexpected content after the matrix body");
            }
            if (tokens.size() != *state.n_cols) {
                throw ParseError(line_number, tokens[0].column,
                                 "expected " + std::to_string(*state.n_cols) +
                                     " entries in matrix row, got " +
                                     std::to_string(tokens.size()));
            }
            std::vector<Scalar> row;
            row.reserve(tokens.size());
            for (const Token& token : tokens) {
                try {
                    row.push_back(Scalar::parse(*state.field, token.text));
                } catch (const Error& e) {
                    throw ParseError(line_number, token.column, e.what());
                }
            }
            matrix_rows.push_back(std::move(row));
            continue;
        }

        const std::string& keyword = tokens[0].text;
        if (keyword == "field") {
            if (state.field) throw ParseError(line_number, tokens[0].column, "duplicate field");
            if (tokens.size() < 2) {
                throw ParseError(line_number, tokens[0].column, "missing field descriptor");
            }
            std::string descriptor;
            for (std::size_t i = 1; i < tokens.size(); ++i) {
                if (i > 1) descriptor += ' ';
                descriptor += tokens[i].text;
            }
            try {
                state.field = make_field(descriptor);
            } catch (const Error& e) {
                throw ParseError(line_number, tokens[1].column, e.what());
            }
        } else if (keyword == "rows") {
            if (state.n_rows) throw ParseError(line_number, tokens[0].column, "duplicate rows");
            if (tokens.size() != 2) {
                throw ParseError(line_number, tokens[0].column, "expected \"rows <n>\"");
            }
            state.n_rows = parse_count(tokens[1], line_number, "row count");
        } else if (keyword == "cols") {
            if (state.n_cols) throw ParseError(line_number, tokens[0].column, "duplicate cols");
            if (tokens.size() != 2) {
                throw ParseError(line_number, tokens[0].column, "expected \"cols <n>\"");
            }
            state.n_cols = parse_count(tokens[1], line_number, "column count");
        } else if (keyword == "rowblock") {
            parse_block_line(tokens, line_number, state.row_blocks, "rowblock");
        } else if (keyword == "colblock") {
            parse_block_line(tokens, line_number, state.col_blocks, "colblock");
        } else if (keyword == "require") {
            if (tokens.size() < 2 || (tokens[1].text != "rows" && tokens[1].text != "cols")) {
                throw ParseError(line_number, tokens[0].column,
                                 "expected \"require rows : ...\" or \"require cols : ...\"");
            }
            auto& slot = tokens[1].text == "rows" ? state.row_quotas : state.col_quotas;
            if (slot) {
                throw ParseError(line_number, tokens[0].column,
                                 "duplicate require " + tokens[1].text);
            }
            slot = parse_quota_line(tokens, line_number);
        } else if (keyword == "matrix") {
            if (tokens.size() != 1) {
                throw ParseError(line_number, tokens[1].column,
                                 "the matrix keyword takes no arguments");
            }
            if (!state.field) throw ParseError(line_number, tokens[0].column, "missing field");
            if (!state.n_rows) throw ParseError(line_number, tokens[0].column, "missing rows");
            if (!state.n_cols) throw ParseError(line_number, tokens[0].column, "missing cols");
            in_matrix = true;
        } else {
            throw ParseError(line_number, tokens[0].column,
                             "unknown directive \"" + keyword + "\"");
        }
    }

    if (!in_matrix) throw ParseError(line_number, 1, "missing matrix body");
    if (matrix_rows.size() != *state.n_rows) {
        throw ParseError(line_number, 1,
                         "expected " + std::to_string(*state.n_rows) + " matrix rows, got " +
                             std::to_string(matrix_rows.size()));
    }
    if (!state.row_quotas) throw ParseError(line_number, 1, "missing require rows line");
    if (!state.col_quotas) throw ParseError(line_number, 1, "missing require cols line");
    if (state.row_quotas->size() != state.row_blocks.size()) {
        throw ParseError(line_number, 1,
                         "require rows lists " + std::to_string(state.row_quotas->size()) +
                             " quotas for " + std::to_string(state.row_blocks.size()) +
                             " row blocks");
    }
    if (state.col_quotas->size() != state.col_blocks.size()) {
        throw ParseError(line_number, 1,
                         "require cols lists " + std::to_string(state.col_quotas->size()) +
                             " quotas for " + std::to_string(state.col_blocks.size()) +
                             " column blocks");
    }

    ExactMatrix matrix(*state.field, *state.n_rows, *state.n_cols);
    for (std::size_t r = 0; r < matrix_rows.size(); ++r) {
        for (std::size_t c = 0; c < matrix_rows[r].size(); ++c) {
            matrix.set(r, c, matrix_rows[r][c]);
        }
    }
    BlockInstance inst{std::move(matrix), std::move(state.row_blocks),
                       std::move(state.col_blocks), std::move(*state.row_quotas),
                       std::move(*state.col_quotas)};
    inst.validate();  // PartitionError / QuotaMismatchError
    return inst;
}

std::string format_instance(const BlockInstance& inst) {
    std::ostringstream out;
    out << "field " << inst.matrix.field().to_string() << "\n";
    out << "rows " << inst.matrix.n_rows() << "\n";
    out << "cols " << inst.matrix.n_cols() << "\n";
    auto emit_blocks = [&out](const char* keyword, const std::vector<IndexSet>& blocks) {
        for (std::size_t b = 0; b < blocks.size(); ++b) {
            out << keyword << " " << b << " :";
            for (std::size_t index : blocks[b]) out << " " << index;
            out << "\n";
        }
    };
    emit_blocks("rowblock", inst.row_blocks);
    emit_blocks("colblock", inst.col_blocks);
    auto emit_quotas = [&out](const char* which, const std::vector<std::size_t>& quotas) {
        out << "require " << which << " :";
        for (std::size_t q : quotas) out << " " << q;
        out << "\n";
    };
    emit_quotas("rows", inst.row_quotas);
    emit_quotas("cols", inst.col_quotas);
    out << "matrix\n";
    for (std::size_t r = 0; r < inst.matrix.n_rows(); ++r) {
        for (std::size_t c = 0; c < inst.matrix.n_cols(); ++c) {
            if (c > 0) out << " ";
            out << inst.matrix.at(r, c).to_string();
        }
        out << "\n";
    }
    return out.str();
}

}  // namespace blocktrans
