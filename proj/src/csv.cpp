#include "sparselag/csv.hpp"

#include "sparselag/error.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace sparselag {

namespace {

std::vector<std::string> split_line(const std::string& line, std::size_t line_no) {
    std::vector<std::string> cells;
    std::string cell;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char ch = line[i];
        if (quoted) {
            if (ch == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    cell.push_back('"');
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                cell.push_back(ch);
            }
        } else if (ch == '"') {
            quoted = true;
        } else if (ch == ',') {
            cells.push_back(std::move(cell));
            cell.clear();
        } else {
            cell.push_back(ch);
        }
    }
    if (quoted) {
        throw Error(ErrorCode::parse, "unterminated quote on line " + std::to_string(line_no));
    }
    cells.push_back(std::move(cell));
    return cells;
}

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::optional<double> parse_number(const std::string& text) {
    const std::string t = trim(text);
    if (t.empty()) return std::nullopt;
    double v = 0.0;
    const char* first = t.data();
    if (*first == '+') ++first;
    const auto [ptr, ec] = std::from_chars(first, t.data() + t.size(), v);
    if (ec != std::errc() || ptr != t.data() + t.size()) return std::nullopt;
    return v;
}

double numeric_cell(const CsvTable& table, std::size_t row, std::size_t col) {
    const auto& cell = table.rows[row][col];
    const auto value = parse_number(cell);
    if (!value || !std::isfinite(*value)) {
        std::ostringstream msg;
        msg << "row " << row + 1 << " (line " << row + 2 << "), column '" << table.header[col] << "': ";
        if (trim(cell).empty() || trim(cell) == "NA") {
            msg << "missing value (gaps must be resolved before fitting)";
        } else {
            msg << "'" << cell << "' is not a number";
        }
        throw Error(ErrorCode::parse, msg.str());
    }
    return *value;
}

void check_time_order(const CsvTable& table, std::size_t col) {
    bool all_numeric = true;
    std::vector<double> numeric;
    for (const auto& row : table.rows) {
        const auto v = parse_number(row[col]);
        if (!v) {
            all_numeric = false;
            break;
        }
        numeric.push_back(*v);
    }
    for (std::size_t i = 1; i < table.rows.size(); ++i) {
        const bool ordered = all_numeric ? numeric[i] > numeric[i - 1]
                                         : trim(table.rows[i][col]) > trim(table.rows[i - 1][col]);
        if (!ordered) {
            std::ostringstream msg;
            msg << "time column '" << table.header[col] << "' is not strictly increasing at row " << i + 1;
            throw Error(ErrorCode::parse, msg.str());
        }
    }
}

std::pair<CategoricalBlock, Eigen::MatrixXd> expand_with_levels(const CategoricalSpec& spec,
                                                                const std::vector<std::string>& labels) {
    CategoricalBlock block{spec.column, spec.baseline, spec.levels, {}};
    for (const auto& level : block.levels) block.columns.push_back(spec.column + "=" + level);
    Eigen::MatrixXd ind = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(labels.size()),
                                                static_cast<Eigen::Index>(block.levels.size()));
    for (std::size_t i = 0; i < labels.size(); ++i) {
        if (labels[i] == spec.baseline) continue;
        const auto it = std::find(block.levels.begin(), block.levels.end(), labels[i]);
        if (it == block.levels.end()) {
            std::ostringstream msg;
            msg << "row " << i + 1 << ", column '" << spec.column << "': level '" << labels[i]
                << "' was not seen when the model was fitted";
            throw Error(ErrorCode::parse, msg.str());
        }
        ind(static_cast<Eigen::Index>(i), it - block.levels.begin()) = 1.0;
    }
    return {std::move(block), std::move(ind)};
}

}  // namespace

std::size_t CsvTable::column(const std::string& name) const {
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (header[i] == name) return i;
    }
    std::ostringstream msg;
    msg << "unknown column '" << name << "'; available columns:";
    for (const auto& h : header) msg << " " << h;
    throw Error(ErrorCode::config, msg.str());
}

CsvTable read_csv(std::istream& in) {
    CsvTable table;
    std::string line;
    std::size_t line_no = 0;
    std::size_t pending_blank = 0;  // blank lines are rows only if data follows them
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (trim(line).empty()) {
            if (!table.header.empty()) ++pending_blank;
            continue;
        }
        auto cells = split_line(line, line_no);
        if (table.header.empty()) {
            for (auto& c : cells) c = trim(c);
            table.header = std::move(cells);
            continue;
        }
        for (; pending_blank > 0; --pending_blank) {
            if (table.header.size() != 1) {
                std::ostringstream msg;
                msg << "line " << line_no - pending_blank << " is blank; header has " << table.header.size() << " fields";
                throw Error(ErrorCode::parse, msg.str());
            }
            table.rows.push_back({""});
        }
        if (cells.size() != table.header.size()) {
            std::ostringstream msg;
            msg << "line " << line_no << " has " << cells.size() << " fields; header has " << table.header.size();
            throw Error(ErrorCode::parse, msg.str());
        }
        table.rows.push_back(std::move(cells));
    }
    if (table.header.empty()) throw Error(ErrorCode::parse, "CSV input is empty");
    return table;
}

CsvTable read_csv_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::io, "cannot open '" + path + "' for reading");
    return read_csv(in);
}

ExogColumns load_exog(const CsvTable& table, const SeriesColumns& columns) {
    const std::size_t n = table.rows.size();
    std::vector<std::size_t> exog_cols;
    for (const auto& name : columns.exog) exog_cols.push_back(table.column(name));

    ExogColumns out;
    out.names = columns.exog;
    Eigen::MatrixXd numeric(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(exog_cols.size()));
    for (std::size_t j = 0; j < exog_cols.size(); ++j) {
        for (std::size_t i = 0; i < n; ++i) {
            numeric(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = numeric_cell(table, i, exog_cols[j]);
        }
    }
    std::vector<Eigen::MatrixXd> blocks;
    Eigen::Index total = numeric.cols();
    for (const auto& spec : columns.categorical) {
        const std::size_t col = table.column(spec.column);
        std::vector<std::string> labels(n);
        for (std::size_t i = 0; i < n; ++i) labels[i] = trim(table.rows[i][col]);
        auto [block, ind] = spec.levels.empty() ? expand_categorical(spec.column, labels, spec.baseline)
                                                : expand_with_levels(spec, labels);
        out.names.insert(out.names.end(), block.columns.begin(), block.columns.end());
        total += ind.cols();
        out.categorical.push_back(std::move(block));
        blocks.push_back(std::move(ind));
    }
    out.matrix.resize(static_cast<Eigen::Index>(n), total);
    out.matrix.leftCols(numeric.cols()) = numeric;
    Eigen::Index at = numeric.cols();
    for (const auto& b : blocks) {
        out.matrix.middleCols(at, b.cols()) = b;
        at += b.cols();
    }
    return out;
}

TimeSeries load_series(const CsvTable& table, const SeriesColumns& columns) {
    const std::size_t n = table.rows.size();
    const std::size_t value_col = table.column(columns.value);
    if (columns.time) check_time_order(table, table.column(*columns.time));
    std::vector<double> values(n);
    for (std::size_t i = 0; i < n; ++i) values[i] = numeric_cell(table, i, value_col);
    auto exog = load_exog(table, columns);
    return TimeSeries(std::move(values), std::move(exog.matrix), std::move(exog.names), std::move(exog.categorical));
}

std::string format_double(double value) {
    if (std::isnan(value)) return "NA";
    if (std::isinf(value)) return value > 0 ? "Inf" : "-Inf";
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
    return std::string(buf, ptr);
}

void write_csv_row(std::ostream& out, const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i) out << ',';
        const auto& c = cells[i];
        if (c.find_first_of(",\"\n") != std::string::npos) {
            out << '"';
            for (char ch : c) {
                if (ch == '"') out << '"';
                out << ch;
            }
            out << '"';
        } else {
            out << c;
        }
    }
    out << '\n';
}

}  // namespace sparselag
