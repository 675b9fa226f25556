#ifndef MN_DATASET_HPP
#define MN_DATASET_HPP

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "mn/graph.hpp"

namespace mn {

/// Optional sidecar schema: declared arity per variable, keyed by name.
/// Lets a column carry categories that never occur in the data.
struct Schema {
    std::vector<std::string> names;
    std::vector<int> arities;
};

/// Discrete tabular sample. Cells hold dense category codes in [0, arity).
/// Immutable after construction; all queries are const and safe to run
/// from several workers at once.
class Dataset {
  public:
    Dataset() = default;
    Dataset(std::vector<std::string> names, std::vector<int> arities,
            std::vector<std::vector<std::string>> labels, std::vector<std::int32_t> cells);

    int var_count() const { return static_cast<int>(names_.size()); }
    long row_count() const { return rows_; }

    const std::vector<std::string>& variable_names() const { return names_; }
    const std::vector<int>& arities() const { return arities_; }
    int arity(int j) const { return arities_.at(j); }

    /// Original category label for a code, for serialization and reporting.
    const std::vector<std::vector<std::string>>& categories() const { return labels_; }

    std::int32_t value(long row, int col) const {
        return cells_[static_cast<std::size_t>(row) * names_.size() + col];
    }

  private:
    std::vector<std::string> names_;
    std::vector<int> arities_;
    std::vector<std::vector<std::string>> labels_; // per variable, code -> label
    std::vector<std::int32_t> cells_;              // row-major
    long rows_ = 0;
};

/// Counts for a (x ; y | z) query: one x-arity by y-arity matrix per
/// configuration of z. Slices are kept as (packed z-code, cell block) pairs;
/// when |z| is small every configuration is materialized, otherwise only
/// configurations that occur in the data are stored.
class ContingencyTable {
  public:
    using SliceMap = std::vector<std::pair<std::uint64_t, std::vector<long>>>;

    ContingencyTable(Triplet t, int x_arity, int y_arity, long total, bool dense,
                     SliceMap slices)
        : triplet_(std::move(t)), x_arity_(x_arity), y_arity_(y_arity),
          total_(total), dense_(dense), slices_(std::move(slices)) {}

    const Triplet& triplet() const { return triplet_; }
    int x_arity() const { return x_arity_; }
    int y_arity() const { return y_arity_; }
    long total() const { return total_; }
    int dimension() const { return triplet_.span(); }
    bool dense() const { return dense_; }

    /// Number of stored slices (all z-configurations when dense).
    std::size_t slice_count() const { return slices_.size(); }
    std::uint64_t slice_key(std::size_t i) const { return slices_[i].first; }
    const std::vector<long>& slice(std::size_t i) const { return slices_[i].second; }

    long cell(std::size_t slice_index, int x, int y) const {
        return slices_[slice_index].second[static_cast<std::size_t>(x) * y_arity_ + y];
    }

  private:
    Triplet triplet_;
    int x_arity_;
    int y_arity_;
    long total_;
    bool dense_;
    SliceMap slices_;
};

/// Reads comma-separated text: mandatory header of variable names, then one
/// record per row. Category labels are mapped to dense codes 0..arity-1 in
/// first-appearance order and arities are inferred, unless a schema declares
/// them. Throws std::runtime_error with the offending line number on ragged
/// rows or empty fields, and on a header-only stream.
Dataset load_dataset(std::istream& in);
Dataset load_dataset(std::istream& in, const Schema& schema);
Dataset load_dataset_file(const std::string& path);
Dataset load_dataset_file(const std::string& path, const std::string& schema_path);

/// Writes the same comma-separated format using the original labels.
/// load -> save -> load reproduces the code-mapped dataset exactly.
void save_dataset(std::ostream& out, const Dataset& d);
void save_dataset_file(const std::string& path, const Dataset& d);

Schema parse_schema(std::istream& in);

/// Uniform sample of `size` rows without replacement. Arities and labels are
/// carried over from the parent, never re-inferred, so codes keep meaning.
Dataset subsample(const Dataset& d, long size, std::uint64_t seed);

/// Single pass tally of (x, y, z-configuration) counts.
/// Configurations of z are materialized exhaustively while |z| stays within
/// `dense_z_cap` variables and the configuration count stays addressable;
/// larger conditioning sets fall back to sparse storage.
ContingencyTable contingency_table(const Dataset& d, const Triplet& t,
                                   int dense_z_cap = 12);

} // namespace mn

#endif
