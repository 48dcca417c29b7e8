#pragma once

#include "sparselag/series.hpp"

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace sparselag {

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    /// Column index by name; throws a config error listing the available columns.
    std::size_t column(const std::string& name) const;
};

CsvTable read_csv(std::istream& in);
CsvTable read_csv_file(const std::string& path);

struct CategoricalSpec {
    std::string column;
    std::string baseline;
    std::vector<std::string> levels;  // fixed level order; empty = first appearance
};

/// Which CSV columns make up a series.
struct SeriesColumns {
    std::string value = "y";
    std::vector<std::string> exog;
    std::vector<CategoricalSpec> categorical;
    std::optional<std::string> time;  // validated for strictly increasing order only
};

struct ExogColumns {
    Eigen::MatrixXd matrix;
    std::vector<std::string> names;
    std::vector<CategoricalBlock> categorical;
};

/// Exogenous part of `columns` only; the value column need not exist.
ExogColumns load_exog(const CsvTable& table, const SeriesColumns& columns);

/// Numeric exogenous columns come first, then the indicator columns of each
/// categorical column in the order given.
TimeSeries load_series(const CsvTable& table, const SeriesColumns& columns);

/// Shortest round-trip decimal representation.
std::string format_double(double value);

void write_csv_row(std::ostream& out, const std::vector<std::string>& cells);

}  // namespace sparselag
