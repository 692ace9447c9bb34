#include "hogboost/dataset.hpp"
#include "hogboost/errors.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numeric>
#include <random>

namespace hogboost {

RowSet RowSet::all(std::size_t n_rows) {
    RowSet rs;
    rs.indices.resize(n_rows);
    std::iota(rs.indices.begin(), rs.indices.end(), 0u);
    return rs;
}

Dataset::Dataset(std::vector<std::vector<double>> columns, std::vector<double> labels)
    : columns_(std::move(columns)), labels_(std::move(labels)) {
    n_rows_ = labels_.size();
    if (n_rows_ == 0) throw DataError("dataset has no rows");
    for (std::size_t f = 0; f < columns_.size(); ++f) {
        if (columns_[f].size() != n_rows_)
            throw DataError("column " + std::to_string(f) + " has " +
                            std::to_string(columns_[f].size()) + " entries, expected " +
                            std::to_string(n_rows_));
        for (double v : columns_[f])
            if (!std::isfinite(v)) throw DataError("non-finite feature value in column " + std::to_string(f));
    }
    for (double y : labels_)
        if (!std::isfinite(y)) throw DataError("non-finite label value");

    sort_index_.resize(columns_.size());
    for (std::size_t f = 0; f < columns_.size(); ++f) {
        auto& idx = sort_index_[f];
        idx.resize(n_rows_);
        std::iota(idx.begin(), idx.end(), 0u);
        const auto& col = columns_[f];
        std::stable_sort(idx.begin(), idx.end(),
                         [&col](std::uint32_t a, std::uint32_t b) { return col[a] < col[b]; });
    }
}

bool Dataset::labels_are_binary() const {
    return std::all_of(labels_.begin(), labels_.end(),
                       [](double y) { return y == 0.0 || y == 1.0; });
}

namespace {

std::vector<std::string> split_line(const std::string& line) {
    std::vector<std::string> cells;
    std::size_t start = 0;
    while (true) {
        std::size_t pos = line.find(',', start);
        if (pos == std::string::npos) {
            cells.push_back(line.substr(start));
            break;
        }
        cells.push_back(line.substr(start, pos - start));
        start = pos + 1;
    }
    return cells;
}

std::string trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    std::size_t e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

double parse_cell(const std::string& raw, std::size_t line_no, std::size_t col) {
    std::string cell = trim(raw);
    if (cell.empty())
        throw DataError("missing value at line " + std::to_string(line_no) + ", column " +
                        std::to_string(col) + " (missing values are not supported)");
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
    if (ec != std::errc{} || ptr != cell.data() + cell.size())
        throw DataError("non-numeric cell '" + cell + "' at line " + std::to_string(line_no) +
                        ", column " + std::to_string(col));
    if (!std::isfinite(v))
        throw DataError("non-finite value '" + cell + "' at line " + std::to_string(line_no) +
                        ", column " + std::to_string(col));
    return v;
}

std::size_t resolve_label_column(const LabelColumn& label, const std::vector<std::string>& header,
                                 std::size_t n_cols, bool has_header) {
    if (has_header) {
        for (std::size_t i = 0; i < header.size(); ++i)
            if (trim(header[i]) == label.name_or_index) return i;
    }
    std::size_t idx = 0;
    auto s = label.name_or_index;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), idx);
    if (ec == std::errc{} && ptr == s.data() + s.size() && idx < n_cols) return idx;
    throw DataError("label column '" + label.name_or_index + "' not found");
}

} // namespace

Dataset load_csv(const std::string& path, const LabelColumn& label, bool has_header,
                 std::size_t max_rows, bool require_binary_labels) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open '" + path + "'");

    std::string line;
    std::size_t line_no = 0;
    std::vector<std::string> header;
    if (has_header) {
        if (!std::getline(in, line)) throw DataError("'" + path + "' is empty");
        ++line_no;
        header = split_line(line);
    }

    std::vector<std::vector<double>> columns;
    std::vector<double> labels;
    std::size_t n_cols = 0, label_col = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty()) continue;
        auto cells = split_line(line);
        if (columns.empty() && labels.empty()) {
            n_cols = cells.size();
            if (has_header && header.size() != n_cols)
                throw DataError("header has " + std::to_string(header.size()) +
                                " columns but data rows have " + std::to_string(n_cols));
            if (n_cols < 2) throw DataError("need at least one feature column and a label column");
            label_col = resolve_label_column(label, header, n_cols, has_header);
            columns.resize(n_cols - 1);
        }
        if (cells.size() != n_cols)
            throw DataError("malformed row at line " + std::to_string(line_no) + ": expected " +
                            std::to_string(n_cols) + " cells, got " + std::to_string(cells.size()));
        std::size_t f = 0;
        for (std::size_t c = 0; c < n_cols; ++c) {
            double v = parse_cell(cells[c], line_no, c);
            if (c == label_col)
                labels.push_back(v);
            else
                columns[f++].push_back(v);
        }
        if (max_rows != 0 && labels.size() >= max_rows) break;
    }
    if (labels.empty()) throw DataError("'" + path + "' contains no data rows");
    if (require_binary_labels)
        for (std::size_t i = 0; i < labels.size(); ++i)
            if (labels[i] != 0.0 && labels[i] != 1.0)
                throw DataError("classification label " + std::to_string(labels[i]) + " at data row " +
                                std::to_string(i) + " is outside {0, 1}");
    return Dataset(std::move(columns), std::move(labels));
}

Dataset load_feature_csv(const std::string& path, bool has_header, std::size_t max_rows) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open '" + path + "'");

    std::string line;
    std::size_t line_no = 0;
    if (has_header) {
        if (!std::getline(in, line)) throw DataError("'" + path + "' is empty");
        ++line_no;
    }
    std::vector<std::vector<double>> columns;
    std::size_t n_rows = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty()) continue;
        auto cells = split_line(line);
        if (columns.empty()) columns.resize(cells.size());
        if (cells.size() != columns.size())
            throw DataError("malformed row at line " + std::to_string(line_no) + ": expected " +
                            std::to_string(columns.size()) + " cells, got " +
                            std::to_string(cells.size()));
        for (std::size_t c = 0; c < cells.size(); ++c)
            columns[c].push_back(parse_cell(cells[c], line_no, c));
        ++n_rows;
        if (max_rows != 0 && n_rows >= max_rows) break;
    }
    if (n_rows == 0) throw DataError("'" + path + "' contains no data rows");
    return Dataset(std::move(columns), std::vector<double>(n_rows, 0.0));
}

namespace {

void append_double(std::string& out, double v) {
    char buf[32];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    out.append(buf, ptr);
}

} // namespace

void save_csv(const Dataset& data, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw DataError("cannot write '" + path + "'");
    std::string buf;
    for (std::size_t f = 0; f < data.n_features(); ++f) {
        buf += 'f';
        buf += std::to_string(f);
        buf += ',';
    }
    buf += "label\n";
    for (std::size_t r = 0; r < data.n_rows(); ++r) {
        for (std::size_t f = 0; f < data.n_features(); ++f) {
            append_double(buf, data.value(f, r));
            buf += ',';
        }
        append_double(buf, data.label(r));
        buf += '\n';
        if (buf.size() > 1 << 20) {
            out << buf;
            buf.clear();
        }
    }
    out << buf;
    if (!out) throw DataError("I/O error writing '" + path + "'");
}

namespace {

// Uniform in [0,1) from the raw engine word; avoids the implementation-defined
// std::uniform_real_distribution so the dataset is bitwise stable everywhere.
double next_uniform(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

double uniform_in(std::mt19937_64& rng, double lo, double hi) {
    return lo + (hi - lo) * next_uniform(rng);
}

// Irwin-Hall(4) shifted to zero mean; std 1/sqrt(3). Deterministic stand-in
// for gaussian margin noise.
double next_noise(std::mt19937_64& rng) {
    double s = next_uniform(rng) + next_uniform(rng) + next_uniform(rng) + next_uniform(rng);
    return s - 2.0;
}

} // namespace

Dataset make_synthetic(std::size_t n_rows, std::size_t n_features, std::uint64_t seed) {
    if (n_rows < 2) throw DataError("make_synthetic needs n_rows >= 2");
    if (n_features < 1) throw DataError("make_synthetic needs n_features >= 1");

    std::mt19937_64 rng(seed);
    std::vector<std::vector<double>> columns(n_features, std::vector<double>(n_rows));
    std::vector<double> labels(n_rows);

    const std::size_t m = n_features;
    for (std::size_t r = 0; r < n_rows; ++r) {
        for (std::size_t f = 0; f < m; ++f) columns[f][r] = uniform_in(rng, -2.0, 2.0);
        const auto u = [&](std::size_t k) { return columns[k % m][r]; };
        // Fixed nonlinear rule: two pairwise interactions, a periodic term,
        // a linear term and a centered quadratic (E[x^2] = 4/3 under
        // U(-2,2)). Label noise is kept small so most of the space is
        // confidently classifiable and the accuracy ceiling is high.
        const double score = 1.1 * u(0) * u(1) + std::sin(2.0 * u(2)) + 0.6 * u(3) -
                             0.5 * (u(4) * u(4) - 4.0 / 3.0) + 0.7 * u(5) * u(6);
        // Irwin-Hall(4) noise scaled to unit variance, then down to std 0.25
        const double noise = 0.25 * (next_noise(rng) / 0.5773502691896258);
        labels[r] = (score + noise > 0.0) ? 1.0 : 0.0;
    }
    return Dataset(std::move(columns), std::move(labels));
}

} // namespace hogboost
