#pragma once
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace hogboost {

// Set of row indices into a Dataset. Indices are unique and < n_rows.
struct RowSet {
    std::vector<std::uint32_t> indices;

    static RowSet all(std::size_t n_rows);
    std::size_t size() const { return indices.size(); }
    bool empty() const { return indices.empty(); }
};

// Column-oriented feature matrix with labels. Immutable after construction;
// per-feature sort indices are computed once and reused for every tree node.
class Dataset {
public:
    Dataset(std::vector<std::vector<double>> columns, std::vector<double> labels);

    std::size_t n_rows() const { return n_rows_; }
    std::size_t n_features() const { return columns_.size(); }

    double value(std::size_t feature, std::size_t row) const {
        return columns_[feature][row];
    }
    double label(std::size_t row) const { return labels_[row]; }

    std::span<const double> column(std::size_t feature) const { return columns_[feature]; }
    std::span<const double> labels() const { return labels_; }

    // Permutation of 0..n_rows-1 ordering `feature` non-decreasingly.
    // Ties keep original row order (stable).
    std::span<const std::uint32_t> sort_index(std::size_t feature) const {
        return sort_index_[feature];
    }

    bool labels_are_binary() const;

private:
    std::size_t n_rows_ = 0;
    std::vector<std::vector<double>> columns_;
    std::vector<double> labels_;
    std::vector<std::vector<std::uint32_t>> sort_index_;
};

// Which column of a CSV holds the label. Resolved against the header when one
// is present, otherwise parsed as a 0-based index.
struct LabelColumn {
    std::string name_or_index = "label";
};

// Loads a numeric CSV into a Dataset. Rejects missing/empty cells and any
// non-finite value. `max_rows` = 0 means no limit; otherwise at most that
// many data rows are read (row-limit option for downsampling large files).
// With `require_binary_labels`, any label outside {0,1} is an error.
Dataset load_csv(const std::string& path, const LabelColumn& label, bool has_header,
                 std::size_t max_rows = 0, bool require_binary_labels = false);

// Loads a CSV with no label column as features only (labels are set to 0).
// Used for prediction inputs.
Dataset load_feature_csv(const std::string& path, bool has_header, std::size_t max_rows = 0);

// Writes the dataset back as CSV (header f0..f{m-1},label; shortest
// round-trip decimal encoding, so reload is bitwise identical).
void save_csv(const Dataset& data, const std::string& path);

// Deterministic pseudo-random binary-classification dataset. Same seed gives
// a bitwise-identical dataset; labels follow a fixed nonlinear rule on the
// first few features plus margin noise, so accuracy well above chance is
// learnable but not trivially 1.0.
Dataset make_synthetic(std::size_t n_rows, std::size_t n_features, std::uint64_t seed);

} // namespace hogboost
